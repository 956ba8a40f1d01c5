#include "taubnut/metric.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace taubnut {

namespace {

void require_valid(const MetricParams& p) {
  ValidationReport rep = validate(p);
  if (!rep.ok) throw std::invalid_argument("invalid metric parameters: " + rep.violation);
}

void require_interior(double r, double theta) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (!(theta > 0.0 && theta < M_PI))
    throw std::invalid_argument("theta pole rejected: coordinate chart degenerates");
}

/// Sixth-order Richardson extrapolation of a central difference.
template <typename F>
auto richardson6(const F& f, double t, double h) -> decltype(f(t)) {
  auto d = [&](double hh) { return ((f(t + hh) - f(t - hh)) / (2.0 * hh)).eval(); };
  auto d1 = d(h), d2 = d(h / 2.0), d3 = d(h / 4.0);
  auto r1 = ((4.0 * d2 - d1) / 3.0).eval();
  auto r2 = ((4.0 * d3 - d2) / 3.0).eval();
  return ((16.0 * r2 - r1) / 15.0).eval();
}

/// d/dr and d/dtheta of the coordinate metric, in closed form.
std::pair<Eigen::Matrix4d, Eigen::Matrix4d> metric_derivs_closed(
    const MetricParams& p, double r, double theta) {
  RadialProfile pr = eval_profiles(p, r);
  double st = std::sin(theta), ct = std::cos(theta);
  Eigen::Matrix4d dr = Eigen::Matrix4d::Zero(), dth = Eigen::Matrix4d::Zero();
  dr(0, 0) = pr.df;
  dr(1, 1) = pr.df * r * r + 2.0 * pr.f * r;
  dr(2, 2) = (pr.df * r * r + 2.0 * pr.f * r) * st * st + pr.dg * ct * ct;
  dr(3, 3) = pr.dg;
  dr(2, 3) = dr(3, 2) = pr.dg * ct;
  dth(2, 2) = 2.0 * st * ct * (pr.f * r * r - pr.g);
  dth(2, 3) = dth(3, 2) = -pr.g * st;
  return {dr, dth};
}

std::pair<Eigen::Matrix4d, Eigen::Matrix4d> metric_derivs_fd(
    const MetricParams& p, double r, double theta) {
  double hr = 0.02 * r, hth = 0.02;
  auto in_r = [&](double rr) { return metric_tensor(p, rr, theta); };
  auto in_th = [&](double th) { return metric_tensor(p, r, th); };
  return {richardson6(in_r, r, hr), richardson6(in_th, theta, hth)};
}

std::array<Eigen::Matrix4d, 4> christoffel_at(const MetricParams& p, double r,
                                              double theta, bool closed) {
  Eigen::Matrix4d g = metric_tensor(p, r, theta);
  Eigen::Matrix4d ginv = g.inverse();
  auto [dgr, dgth] = closed ? metric_derivs_closed(p, r, theta)
                            : metric_derivs_fd(p, r, theta);
  // dg[mu](lam,nu) = d_mu g_{lam nu}; only mu = r, theta are nonzero.
  std::array<Eigen::Matrix4d, 4> dg = {dgr, dgth, Eigen::Matrix4d::Zero(),
                                       Eigen::Matrix4d::Zero()};
  std::array<Eigen::Matrix4d, 4> gam;
  for (int rho = 0; rho < 4; ++rho) {
    gam[rho].setZero();
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double s = 0.0;
        for (int lam = 0; lam < 4; ++lam)
          s += ginv(rho, lam) * (dg[mu](lam, nu) + dg[nu](lam, mu) - dg[lam](mu, nu));
        gam[rho](mu, nu) = 0.5 * s;
      }
  }
  return gam;
}

using GammaField = Eigen::Matrix<double, 4, 16>;  // Gamma^rho_{mu nu} flattened

GammaField christoffel_flat(const MetricParams& p, double r, double theta,
                            bool closed) {
  auto gam = christoffel_at(p, r, theta, closed);
  GammaField out;
  for (int rho = 0; rho < 4; ++rho)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) out(rho, 4 * mu + nu) = gam[rho](mu, nu);
  return out;
}

Curvature curvature_pipeline(const MetricParams& p, double r, bool closed,
                             double step_scale) {
  require_valid(p);
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  const double theta = 1.0;
  double hr = step_scale * r, hth = step_scale;
  if (hr < 1e-12) throw std::runtime_error("curvature step-size underflow at r=" + std::to_string(r));

  auto gam0 = christoffel_at(p, r, theta, closed);
  auto in_r = [&](double rr) { return christoffel_flat(p, rr, theta, closed); };
  auto in_th = [&](double th) { return christoffel_flat(p, r, th, closed); };
  GammaField dgam_r = richardson6(in_r, r, hr);
  GammaField dgam_th = richardson6(in_th, theta, hth);

  // dGamma[mu](rho, 4*nu+sig) = d_mu Gamma^rho_{nu sig}
  auto dgam = [&](int mu, int rho, int nu, int sig) -> double {
    if (mu == 0) return dgam_r(rho, 4 * nu + sig);
    if (mu == 1) return dgam_th(rho, 4 * nu + sig);
    return 0.0;
  };

  // R^rho_{sig mu nu} = d_mu G^rho_{nu sig} - d_nu G^rho_{mu sig}
  //                     + G^rho_{mu lam} G^lam_{nu sig} - G^rho_{nu lam} G^lam_{mu sig}
  double riem[4][4][4][4];
  for (int rho = 0; rho < 4; ++rho)
    for (int sig = 0; sig < 4; ++sig)
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
          double v = dgam(mu, rho, nu, sig) - dgam(nu, rho, mu, sig);
          for (int lam = 0; lam < 4; ++lam)
            v += gam0[rho](mu, lam) * gam0[lam](nu, sig) -
                 gam0[rho](nu, lam) * gam0[lam](mu, sig);
          riem[rho][sig][mu][nu] = v;
        }

  Eigen::Matrix4d ric = Eigen::Matrix4d::Zero();
  for (int sig = 0; sig < 4; ++sig)
    for (int nu = 0; nu < 4; ++nu) {
      double v = 0.0;
      for (int mu = 0; mu < 4; ++mu) v += riem[mu][sig][mu][nu];
      ric(sig, nu) = v;
    }

  Eigen::Matrix4d g = metric_tensor(p, r, theta);
  Curvature out;
  out.kappa = (g.inverse() * ric).trace();

  // Frame components Ricci(V_i,V_j) with V_i written in the r chart
  // (d_x = -r^2 d_r).
  FrameAtPoint fr = frame_vectors(p, 1.0 / r, theta, 0.0, 0.0);
  Eigen::Matrix4d vr = fr.vectors;
  vr.row(0) *= -r * r;
  out.ricci_frame = vr.transpose() * ric * vr;
  return out;
}

double smoothstep5(double t) {
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

}  // namespace

ValidationReport validate(const MetricParams& p) {
  ValidationReport rep;
  if (!(p.a > 0.0)) return {false, "a <= 0"};
  if (!(p.b > 0.0)) return {false, "b <= 0"};
  if (!(p.d > 0.0)) return {false, "d <= 0"};
  if (!(p.c > -2.0 * std::sqrt(p.d))) return {false, "c <= -2*sqrt(d)"};
  return rep;
}

bool is_standard(const MetricParams& p) {
  require_valid(p);
  double c0 = 2.0 * p.b / p.a, d0 = (p.b / p.a) * (p.b / p.a);
  double tol = 1e-12;
  return std::abs(p.c - c0) <= tol * std::max(1.0, std::abs(c0)) &&
         std::abs(p.d - d0) <= tol * std::max(1.0, std::abs(d0));
}

MetricParams normalize_b(const MetricParams& p) {
  require_valid(p);
  return {p.a / p.b, 1.0, p.c, p.d};
}

RadialProfile eval_profiles(const MetricParams& p, double r) {
  require_valid(p);
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  RadialProfile out;
  out.r = r;
  out.x = 1.0 / r;
  double x = out.x;
  double q = 1.0 + p.c * r + p.d * r * r;
  out.f = (p.a + p.b * r) / r;
  out.g = (p.a * r + p.b * r * r) / q;
  out.df = -p.a / (r * r);
  out.dg = ((p.a + 2.0 * p.b * r) * q -
            (p.a * r + p.b * r * r) * (p.c + 2.0 * p.d * r)) / (q * q);
  double ab = p.a * x + p.b;
  out.alpha = 1.0 / std::sqrt(ab);
  out.dalpha = -0.5 * p.a / (ab * std::sqrt(ab));
  double b2 = x * x + p.c * x + p.d;
  out.beta = std::sqrt(b2);
  out.dbeta = (2.0 * x + p.c) / (2.0 * out.beta);
  return out;
}

Eigen::Matrix4d metric_tensor(const MetricParams& p, double r, double theta) {
  require_valid(p);
  require_interior(r, theta);
  RadialProfile pr = eval_profiles(p, r);
  double st = std::sin(theta), ct = std::cos(theta);
  Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
  g(0, 0) = pr.f;
  g(1, 1) = pr.f * r * r;
  g(2, 2) = pr.f * r * r * st * st + pr.g * ct * ct;
  g(3, 3) = pr.g;
  g(2, 3) = g(3, 2) = pr.g * ct;
  return g;
}

Eigen::Matrix4d metric_tensor_x(const MetricParams& p, double x, double theta) {
  if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
  Eigen::Matrix4d g = metric_tensor(p, 1.0 / x, theta);
  g(0, 0) /= x * x * x * x;  // dr/dx = -1/x^2
  return g;
}

Eigen::Matrix3d su2_vector_fields(double theta, double phi, double chi) {
  (void)phi;
  double st = std::sin(theta), ct = std::cos(theta);
  double sc = std::sin(chi), cc = std::cos(chi);
  Eigen::Matrix3d v;  // columns I, J, K; rows (theta, phi, chi)
  v.col(0) << 0.0, 0.0, 2.0;
  v.col(1) << 2.0 * cc, 2.0 * sc / st, -2.0 * sc * ct / st;
  v.col(2) << -2.0 * sc, 2.0 * cc / st, -2.0 * cc * ct / st;
  return v;
}

FrameAtPoint frame_vectors(const MetricParams& p, double x, double theta,
                           double phi, double chi) {
  if (!(x > 0.0)) throw std::invalid_argument("x must be positive");
  require_interior(1.0 / x, theta);
  RadialProfile pr = eval_profiles(p, 1.0 / x);
  Eigen::Matrix3d ijk = su2_vector_fields(theta, phi, chi);
  FrameAtPoint out{x, theta, phi, chi, Eigen::Matrix4d::Zero()};
  out.vectors(0, 0) = pr.alpha * x * x;
  out.vectors.block<3, 1>(1, 1) = 0.5 * pr.alpha * pr.beta * ijk.col(0);
  out.vectors.block<3, 1>(1, 2) = 0.5 * pr.alpha * x * ijk.col(1);
  out.vectors.block<3, 1>(1, 3) = 0.5 * pr.alpha * x * ijk.col(2);
  return out;
}

Curvature curvature(const MetricParams& p, double r) {
  return curvature_pipeline(p, r, true, 0.05);
}

Curvature curvature_all_fd(const MetricParams& p, double r) {
  return curvature_pipeline(p, r, false, 0.03);
}

double scalar_curvature(const MetricParams& p, double r) {
  return curvature(p, r).kappa;
}

double conformal_profile(const MetricParams& p, double r,
                         const ConformalWindow& w) {
  require_valid(p);
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  double outer = r * (p.a + p.b * r);
  if (r <= w.r1) return 1.0;
  if (r >= w.r2) return outer;
  double s = smoothstep5((r - w.r1) / (w.r2 - w.r1));
  return (1.0 - s) + s * outer;
}

DMetricForm dmetric_form(const MetricParams& p, double x,
                         const ConformalWindow& w) {
  require_valid(p);
  if (std::abs(p.b - 1.0) > 1e-12)
    throw std::invalid_argument("dmetric_form requires b=1 (call normalize_b)");
  if (!(x > 0.0 && x <= 1.0 / w.r2))
    throw std::invalid_argument("x outside the exact h = r(a+br) regime");
  double r = 1.0 / x;
  RadialProfile pr = eval_profiles(p, r);
  double h = conformal_profile(p, r, w);
  DMetricForm out;
  // h^{-1} f dr^2 = (f / (h x^4)) dx^2 = radial_factor dx^2/x^2
  out.radial_factor = pr.f / (h * x * x);
  out.base_factor = pr.f * r * r / h;
  out.vertical_factor = pr.g / h;
  return out;
}

double radial_volume_weight(const MetricParams& p, double x) {
  RadialProfile pr = eval_profiles(p, 1.0 / x);
  return std::pow(pr.f, 1.5) * std::sqrt(pr.g) / (x * x * x * x);
}

namespace detail {
std::array<Eigen::Matrix4d, 4> christoffel(const MetricParams& p, double r,
                                           double theta, bool closed_form_dg) {
  return christoffel_at(p, r, theta, closed_form_dg);
}
}  // namespace detail

}  // namespace taubnut
