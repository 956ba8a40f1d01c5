#include "taubnut/dirac.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace taubnut {

namespace {

using cd = std::complex<double>;
const cd I1(0.0, 1.0);

int sector_dim(double j) {
  double two_j = 2.0 * j;
  int tj = int(std::lround(two_j));
  if (tj < 1 || std::abs(two_j - tj) > 1e-12)
    throw std::invalid_argument("sector label j must be a positive half-integer");
  return tj + 1;
}

/// Spectral derivative matrix for N uniform samples of an L-periodic
/// function (Nyquist mode derivative set to zero).
Eigen::MatrixXcd spectral_derivative(int n, double period) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int k = -(n - 1) / 2; k <= (n - 1) / 2; ++k) {
    cd freq = I1 * (2.0 * M_PI * k / period);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        d(j, l) += freq * std::exp(I1 * (2.0 * M_PI * k * double(j - l) / n)) / double(n);
  }
  return d;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

DiracCoefficients dirac_coefficients(const MetricParams& p, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
  RadialProfile pr = eval_profiles(p, 1.0 / x);
  double dab = pr.dalpha * pr.beta + pr.alpha * pr.dbeta;  // (alpha beta)'
  double dxa = pr.alpha + x * pr.dalpha;                   // (x alpha)'
  DiracCoefficients c;
  c.a0 = pr.alpha * x * x;
  c.z0 = -x * x * dab / (2.0 * pr.beta) - x * dxa;
  c.a1 = pr.alpha * pr.beta;
  c.z1 = -0.5 * pr.alpha * pr.beta;
  c.a2 = pr.alpha * x;
  c.z3 = x * x * pr.alpha / (4.0 * pr.beta);
  return c;
}

void validate_mode(const ModeSpec& m) {
  int dim = sector_dim(m.j);
  int tj = dim - 1;
  if (std::abs(m.n) > tj || mod(m.n - tj, 2) != 0)
    throw std::invalid_argument("fiber mode n must satisfy |n| <= 2j, n = 2j (mod 2)");
}

SectorMatrices sector_su2(double j) {
  int dim = sector_dim(j);
  Eigen::MatrixXd j3 = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) j3(i, i) = j - i;  // m = j, j-1, ..., -j
  for (int i = 1; i < dim; ++i) {
    double m = j - i;  // raising from m to m+1
    jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  Eigen::MatrixXd jm = jp.transpose();
  SectorMatrices s;
  s.X1 = I1 * j3;                             // I/2, eigenvalues i n/2 with n = 2m
  s.X2 = I1 * ((jp - jm) / (2.0 * I1));       // i J2
  s.X3 = I1 * (0.5 * (jp + jm));              // i J1
  return s;
}

Eigen::MatrixXcd sector_potential(const MetricParams& p, double j, double x) {
  const GammaSet& gs = build_gamma();
  DiracCoefficients c = dirac_coefficients(p, x);
  SectorMatrices s = sector_su2(j);
  int dim = sector_dim(j);
  Mat4 cube = gs.gamma[1] * gs.gamma[2] * gs.gamma[3];
  Eigen::MatrixXcd idsec = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd out =
      c.a1 * Eigen::kroneckerProduct(s.X1, gs.gamma[1]).eval() +
      c.a2 * Eigen::kroneckerProduct(s.X2, gs.gamma[2]).eval() +
      c.a2 * Eigen::kroneckerProduct(s.X3, gs.gamma[3]).eval() +
      (c.z1 + c.z3) * Eigen::kroneckerProduct(idsec, cube).eval();
  return out;
}

AssembledBlock assemble_block(const MetricParams& p, const ModeSpec& mode,
                              const Grid1D& grid, BoundaryCondition bc) {
  validate_mode(mode);
  grid.check();
  MetricParams pn = normalize_b(p);
  const GammaSet& gs = build_gamma();
  int dsec = sector_dim(mode.j);
  int nb = 4 * dsec;  // block size per node
  int n = grid.n;
  double h = grid.step();

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(nb * n, nb * n);
  Eigen::MatrixXcd c0 = Eigen::kroneckerProduct(
      Eigen::MatrixXcd::Identity(dsec, dsec), gs.gamma[0]);

  for (int i = 0; i < n; ++i)
    m.block(nb * i, nb * i, nb, nb) = sector_potential(pn, mode.j, grid.x_node(i));

  // Staggered radial derivative: in the half-density gauge the radial
  // term is atil d_s + atil'/2 with atil(s) = a0(x(s)) ds/dx, which the
  // midpoint-coefficient scheme discretizes with an exactly skew matrix.
  for (int i = 0; i + 1 < n; ++i) {
    double smid = 0.5 * (grid.s_node(i) + grid.s_node(i + 1));
    double xm = grid.x_of_s(smid);
    double atil = dirac_coefficients(pn, xm).a0 * grid.dsdx(smid);
    Eigen::MatrixXcd off = (atil / (2.0 * h)) * c0;
    m.block(nb * i, nb * (i + 1), nb, nb) += off;
    m.block(nb * (i + 1), nb * i, nb, nb) -= off;
  }

  // Chirality of spinor component s: omega = diag(-1,-1,+1,+1).
  auto chi_of = [](int s) { return s < 2 ? -1 : +1; };

  std::vector<int> keep;
  keep.reserve(nb * n);
  for (int i = 0; i < n; ++i)
    for (int mu = 0; mu < dsec; ++mu)
      for (int s = 0; s < 4; ++s) {
        if (bc == BoundaryCondition::ChiralityProjection) {
          if (i == 0 && chi_of(s) > 0) continue;
          if (i == n - 1 && chi_of(s) < 0) continue;
        }
        keep.push_back((i * dsec + mu) * 4 + s);
      }

  AssembledBlock out;
  out.grid = grid;
  out.mode = mode;
  out.bc = bc;
  out.matrix.resize(keep.size(), keep.size());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < keep.size(); ++c)
      out.matrix(r, c) = m(keep[r], keep[c]);
  for (int dof : keep) {
    int s = dof % 4;
    out.node_of_dof.push_back(dof / nb);
    out.spinor_of_dof.push_back(s);
    out.chirality_of_dof.push_back(chi_of(s));
  }
  return out;
}

void export_coo(const Eigen::MatrixXcd& m, const std::string& path,
                double drop_tol) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.precision(15);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) > drop_tol)
        os << r << " " << c << " " << m(r, c).real() << " " << m(r, c).imag()
           << "\n";
}

// ---------------------------------------------------------------------

void Grid4::check() const {
  if (x.size() < 8) throw std::invalid_argument("Grid4: need >= 8 radial nodes");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs((x[i] - x[i - 1]) - dx()) > 1e-10 * dx())
      throw std::invalid_argument("Grid4: radial nodes must be uniform");
  if (!(x.front() > 0.0)) throw std::invalid_argument("Grid4: x must stay positive");
  if (ntheta < 8 || nphi < 8 || nchi < 8)
    throw std::invalid_argument("Grid4: need >= 8 points per angle");
  if (nchi % 4 != 0) throw std::invalid_argument("Grid4: nchi must be divisible by 4");
  double pshift = nphi * M_PI / phi_period;
  if (std::abs(pshift - std::lround(pshift)) > 1e-12)
    throw std::invalid_argument("Grid4: nphi incompatible with pole reflection");
  if (fd_order != 2 && fd_order != 4)
    throw std::invalid_argument("Grid4: fd_order must be 2 or 4");
}

Field4 make_field(const Grid4& g,
                  const std::function<SpinorVec(double, double, double, double)>& f) {
  g.check();
  Field4 out(4 * g.npoints());
  for (std::size_t ix = 0; ix < g.x.size(); ++ix)
    for (int it = 0; it < g.ntheta; ++it)
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int ic = 0; ic < g.nchi; ++ic) {
          SpinorVec v = f(g.x[ix], g.theta(it), g.phi(ip), g.chi(ic));
          std::size_t base = 4 * g.index(ix, it, ip, ic);
          for (int s = 0; s < 4; ++s) out[base + s] = v[s];
        }
  return out;
}

namespace {

/// Value with theta ghost handling: reflection across the poles maps
/// (-u, phi, chi) -> (u, phi - pi, chi + pi) and
/// (pi + u, phi, chi) -> (pi - u, phi + pi, chi + pi).
cd theta_ghost(const Grid4& g, const Field4& u, int ix, int it, int ip, int ic,
               int s) {
  int pshift = int(std::lround(g.nphi * M_PI / g.phi_period));
  int cshift = g.nchi / 4;
  if (it < 0) {
    it = -1 - it;
    ip = mod(ip - pshift, g.nphi);
    ic = mod(ic + cshift, g.nchi);
  } else if (it >= g.ntheta) {
    it = 2 * g.ntheta - 1 - it;
    ip = mod(ip + pshift, g.nphi);
    ic = mod(ic + cshift, g.nchi);
  }
  return u[4 * g.index(ix, it, ip, ic) + s];
}

cd x_ghost(const Grid4& g, const Field4& u, int ix, int it, int ip, int ic,
           int s) {
  if (ix < 0 || ix >= int(g.x.size())) return cd(0.0, 0.0);
  return u[4 * g.index(ix, it, ip, ic) + s];
}

void nyquist_check(const Grid4& g, const Field4& u) {
  // Energy in the top chi and phi Fourier bins must be negligible.
  double total = 0.0, top_chi = 0.0, top_phi = 0.0;
  for (const cd& v : u) total += std::norm(v);
  if (total == 0.0) return;
  for (std::size_t ix = 0; ix < g.x.size(); ++ix)
    for (int it = 0; it < g.ntheta; ++it) {
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int s = 0; s < 4; ++s) {
          cd acc(0.0, 0.0);
          for (int ic = 0; ic < g.nchi; ++ic)
            acc += (ic % 2 == 0 ? 1.0 : -1.0) * u[4 * g.index(ix, it, ip, ic) + s];
          top_chi += std::norm(acc) / g.nchi;
        }
      for (int ic = 0; ic < g.nchi; ++ic)
        for (int s = 0; s < 4; ++s) {
          cd acc(0.0, 0.0);
          for (int ip = 0; ip < g.nphi; ++ip)
            acc += (ip % 2 == 0 ? 1.0 : -1.0) * u[4 * g.index(ix, it, ip, ic) + s];
          top_phi += std::norm(acc) / g.nphi;
        }
    }
  if (top_chi > 1e-8 * total || top_phi > 1e-8 * total)
    throw std::runtime_error(
        "apply_direct: fiber modes under-resolved (Nyquist bin energy)");
}

}  // namespace

Field4 apply_direct(const MetricParams& p, const Grid4& g, const Field4& in) {
  g.check();
  if (in.size() != 4 * g.npoints())
    throw std::invalid_argument("field size does not match grid");
  nyquist_check(g, in);

  const GammaSet& gs = build_gamma();
  const Mat4& c0 = gs.gamma[0];
  const Mat4& c1 = gs.gamma[1];
  const Mat4& c2 = gs.gamma[2];
  const Mat4& c3 = gs.gamma[3];
  Mat4 cube = c1 * c2 * c3;

  int nx = int(g.x.size());
  Eigen::MatrixXcd dphi_mat = spectral_derivative(g.nphi, g.phi_period);
  Eigen::MatrixXcd dchi_mat = spectral_derivative(g.nchi, 4.0 * M_PI);

  // Spectral derivatives along phi and chi as full fields.
  Field4 dph(in.size()), dch(in.size());
  for (int ix = 0; ix < nx; ++ix)
    for (int it = 0; it < g.ntheta; ++it) {
      for (int ic = 0; ic < g.nchi; ++ic)
        for (int s = 0; s < 4; ++s) {
          for (int ip = 0; ip < g.nphi; ++ip) {
            cd acc(0.0, 0.0);
            for (int lp = 0; lp < g.nphi; ++lp)
              acc += dphi_mat(ip, lp) * in[4 * g.index(ix, it, lp, ic) + s];
            dph[4 * g.index(ix, it, ip, ic) + s] = acc;
          }
        }
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int s = 0; s < 4; ++s) {
          for (int ic = 0; ic < g.nchi; ++ic) {
            cd acc(0.0, 0.0);
            for (int lc = 0; lc < g.nchi; ++lc)
              acc += dchi_mat(ic, lc) * in[4 * g.index(ix, it, ip, lc) + s];
            dch[4 * g.index(ix, it, ip, ic) + s] = acc;
          }
        }
    }

  Field4 out(in.size());
  double hx = g.dx(), hth = g.dtheta();
  std::vector<DiracCoefficients> coef(nx);
  for (int ix = 0; ix < nx; ++ix) coef[ix] = dirac_coefficients(p, g.x[ix]);

  for (int ix = 0; ix < nx; ++ix) {
    const DiracCoefficients& c = coef[ix];
    for (int it = 0; it < g.ntheta; ++it) {
      double th = g.theta(it);
      double st = std::sin(th), cot = std::cos(th) / st;
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int ic = 0; ic < g.nchi; ++ic) {
          double ch = g.chi(ic);
          double sc = std::sin(ch), cc = std::cos(ch);
          SpinorVec u, dx, dt, dphv, dchv;
          std::size_t base = 4 * g.index(ix, it, ip, ic);
          for (int s = 0; s < 4; ++s) {
            u[s] = in[base + s];
            dphv[s] = dph[base + s];
            dchv[s] = dch[base + s];
            if (g.fd_order == 2) {
              dx[s] = (x_ghost(g, in, ix + 1, it, ip, ic, s) -
                       x_ghost(g, in, ix - 1, it, ip, ic, s)) / (2.0 * hx);
              dt[s] = (theta_ghost(g, in, ix, it + 1, ip, ic, s) -
                       theta_ghost(g, in, ix, it - 1, ip, ic, s)) / (2.0 * hth);
            } else {
              dx[s] = (-x_ghost(g, in, ix + 2, it, ip, ic, s) +
                       8.0 * x_ghost(g, in, ix + 1, it, ip, ic, s) -
                       8.0 * x_ghost(g, in, ix - 1, it, ip, ic, s) +
                       x_ghost(g, in, ix - 2, it, ip, ic, s)) / (12.0 * hx);
              dt[s] = (-theta_ghost(g, in, ix, it + 2, ip, ic, s) +
                       8.0 * theta_ghost(g, in, ix, it + 1, ip, ic, s) -
                       8.0 * theta_ghost(g, in, ix, it - 1, ip, ic, s) +
                       theta_ghost(g, in, ix, it - 2, ip, ic, s)) / (12.0 * hth);
            }
          }
          // E1, E2 are the J/2, K/2 legs in coordinates.
          SpinorVec e1 = cc * dt + (sc / st) * dphv - sc * cot * dchv;
          SpinorVec e2 = -sc * dt + (cc / st) * dphv - cc * cot * dchv;
          SpinorVec res = c0 * (c.a0 * dx + c.z0 * u) + c.a1 * (c1 * dchv) +
                          (c.z1 + c.z3) * (cube * u) + c.a2 * (c2 * e1) +
                          c.a2 * (c3 * e2);
          for (int s = 0; s < 4; ++s) out[base + s] = res[s];
        }
    }
  }
  return out;
}

std::complex<double> inner_product(const MetricParams& p, const Grid4& g,
                                   const Field4& u, const Field4& v) {
  g.check();
  double cell = g.dx() * g.dtheta() * g.dphi() * g.dchi();
  cd acc(0.0, 0.0);
  for (std::size_t ix = 0; ix < g.x.size(); ++ix) {
    double w = radial_volume_weight(p, g.x[ix]);
    for (int it = 0; it < g.ntheta; ++it) {
      double wt = w * std::sin(g.theta(it));
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int ic = 0; ic < g.nchi; ++ic) {
          std::size_t base = 4 * g.index(ix, it, ip, ic);
          for (int s = 0; s < 4; ++s)
            acc += std::conj(u[base + s]) * v[base + s] * wt;
        }
    }
  }
  return acc * cell;
}

double symmetry_defect(const MetricParams& p, const Grid4& g, const Field4& psi,
                       const Field4& phi) {
  int nx = int(g.x.size());
  auto boundary_mass = [&](const Field4& u) {
    double m = 0.0;
    for (int ix : {0, 1, nx - 2, nx - 1})
      for (int it = 0; it < g.ntheta; ++it)
        for (int ip = 0; ip < g.nphi; ++ip)
          for (int ic = 0; ic < g.nchi; ++ic) {
            std::size_t base = 4 * g.index(ix, it, ip, ic);
            for (int s = 0; s < 4; ++s) m += std::norm(u[base + s]);
          }
    return m;
  };
  if (boundary_mass(psi) > 1e-24 || boundary_mass(phi) > 1e-24)
    throw std::invalid_argument("symmetry_defect: support touches the radial boundary");
  Field4 dpsi = apply_direct(p, g, psi);
  Field4 dphi = apply_direct(p, g, phi);
  cd lhs = inner_product(p, g, dpsi, phi);
  cd rhs = inner_product(p, g, psi, dphi);
  return std::abs(lhs - rhs);
}

std::map<int, double> lifted_mode_content(const Grid4& g, const Field4& u) {
  g.check();
  // Unitary change to the c2c3 eigenbasis; s_sign = +1 for the first two
  // columns (+i eigenvectors), -1 for the last two.
  const GammaSet& gs = build_gamma();
  Eigen::ComplexEigenSolver<Mat4> es(gs.gamma[2] * gs.gamma[3]);
  Mat4 basis;
  int col = 0;
  std::array<int, 4> s_sign{};
  for (int pass = 0; pass < 2; ++pass)
    for (int k = 0; k < 4; ++k) {
      double im = es.eigenvalues()[k].imag();
      if ((pass == 0 && im > 0.0) || (pass == 1 && im < 0.0)) {
        basis.col(col) = es.eigenvectors().col(k);
        s_sign[col] = pass == 0 ? 1 : -1;
        ++col;
      }
    }
  Mat4 to_eig = basis.adjoint();

  std::map<int, double> content;
  for (std::size_t ix = 0; ix < g.x.size(); ++ix)
    for (int it = 0; it < g.ntheta; ++it)
      for (int ip = 0; ip < g.nphi; ++ip)
        for (int comp = 0; comp < 4; ++comp) {
          // DFT along chi of the comp-th eigenbasis amplitude.
          for (int bin = 0; bin < g.nchi; ++bin) {
            cd acc(0.0, 0.0);
            for (int ic = 0; ic < g.nchi; ++ic) {
              SpinorVec v;
              std::size_t base = 4 * g.index(ix, it, ip, ic);
              for (int s = 0; s < 4; ++s) v[s] = u[base + s];
              cd amp = (to_eig * v)[comp];
              acc += amp * std::exp(-I1 * (2.0 * M_PI * bin * double(ic) / g.nchi));
            }
            int k = bin <= g.nchi / 2 ? bin : bin - g.nchi;
            content[k + s_sign[comp]] += std::norm(acc) / g.nchi;
          }
        }
  return content;
}

}  // namespace taubnut
