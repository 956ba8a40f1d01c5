#pragma once

#include "taubnut/clifford.hpp"
#include "taubnut/grid.hpp"
#include "taubnut/metric.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <vector>

namespace taubnut {

/// Scalar coefficient functions of the Dirac operator at one x:
///   D = c0 (a0 d_x + z0) + a1 c1 (I/2) + a2 (c2 J/2 + c3 K/2)
///       + (z1 + z3) c1 c2 c3
/// with a0 = alpha x^2, z0 = -x^2 (alpha beta)'/(2 beta) - x (x alpha)',
/// a1 = alpha beta, z1 = -alpha beta / 2, a2 = alpha x,
/// z3 = x^2 alpha / (4 beta).
struct DiracCoefficients {
  double a0, z0, a1, z1, a2, z3;
};

DiracCoefficients dirac_coefficients(const MetricParams& p, double x);

/// Fiber-mode / angular-sector labels: j is the half-integer sector,
/// n the fiber Fourier index (I-eigenvalue i*n on the scalar factor).
/// Constraints: |n| <= 2j and n = 2j (mod 2).
struct ModeSpec {
  double j = 0.5;
  int n = 1;
};

void validate_mode(const ModeSpec& m);

/// Anti-Hermitian matrices realizing I/2, J/2, K/2 on the (2j+1)-dim
/// sector, basis ordered by n = 2m descending (n = 2j, 2j-2, ..., -2j).
/// They satisfy [X1,X2] = X3 cyclically and X1 = diag(i n/2).
struct SectorMatrices {
  Eigen::MatrixXcd X1, X2, X3;
};

SectorMatrices sector_su2(double j);

/// Pointwise sector-reduced Dirac matrix at radius x, acting on
/// C^{2j+1} (x) C^4 (Kronecker order: sector first, spinor second).
/// The radial derivative term c0 a0 d_x is NOT included.
Eigen::MatrixXcd sector_potential(const MetricParams& p, double j, double x);

enum class BoundaryCondition {
  ChiralityProjection,  // keep omega=-1 spinor half at the first node,
                        // omega=+1 at the last
  Truncate,             // plain zero-exterior truncation
};

/// Discretized radial system for sector j on a Grid1D, in the
/// half-density gauge (the L^2 weight is absorbed so the discrete inner
/// product is the plain l^2 one times the grid step). Hermitian by
/// construction; the radial derivative block is exactly skew via
/// staggered midpoint coefficients.
struct AssembledBlock {
  Eigen::MatrixXcd matrix;
  Grid1D grid;
  ModeSpec mode;
  BoundaryCondition bc;
  /// grid node of each matrix dof
  std::vector<int> node_of_dof;
  /// spinor component (0..3) of each dof
  std::vector<int> spinor_of_dof;
  /// +1/-1 chirality of each dof
  std::vector<int> chirality_of_dof;
};

AssembledBlock assemble_block(const MetricParams& p, const ModeSpec& mode,
                              const Grid1D& grid,
                              BoundaryCondition bc = BoundaryCondition::ChiralityProjection);

/// Coordinate-list sparse text export: lines "row col re im".
void export_coo(const Eigen::MatrixXcd& m, const std::string& path,
                double drop_tol = 0.0);

// ---------------------------------------------------------------------
// Direct collocation on an (x, theta, phi, chi) product grid: the
// brute-force route the sector reduction is checked against.

struct Grid4 {
  std::vector<double> x;  // uniform radial nodes
  int ntheta = 16;
  int nphi = 8;
  int nchi = 8;
  /// phi period: 2*pi for integer sectors; half-integer sectors live on
  /// the doubled chart with period 4*pi.
  double phi_period = 2.0 * M_PI;
  int fd_order = 4;  // centered differences in x and theta: 2 or 4

  double dx() const { return x.at(1) - x.at(0); }
  double dtheta() const { return M_PI / ntheta; }
  double theta(int t) const { return (t + 0.5) * dtheta(); }
  double dphi() const { return phi_period / nphi; }
  double phi(int pindex) const { return pindex * dphi(); }
  double dchi() const { return 4.0 * M_PI / nchi; }
  double chi(int c) const { return c * dchi(); }
  std::size_t npoints() const {
    return x.size() * std::size_t(ntheta) * nphi * nchi;
  }
  std::size_t index(int ix, int it, int ip, int ic) const {
    return ((std::size_t(ix) * ntheta + it) * nphi + ip) * nchi + ic;
  }
  void check() const;
};

/// Spinor field sampled on a Grid4; 4 components per point, component
/// index fastest.
using Field4 = std::vector<std::complex<double>>;

Field4 make_field(const Grid4& g,
                  const std::function<SpinorVec(double, double, double, double)>& f);

/// Apply the Dirac operator by spectral differentiation in phi and chi
/// and centered differences in x and theta (zero exterior in x, pole
/// reflection in theta). Fields must be resolved: the chi content is
/// Nyquist-checked.
Field4 apply_direct(const MetricParams& p, const Grid4& g, const Field4& in);

/// Discrete L^2 pairing with the volume form
/// f^{3/2} g^{1/2} r^2 sin(theta) |dr/dx| dx dtheta dphi dchi.
std::complex<double> inner_product(const MetricParams& p, const Grid4& g,
                                   const Field4& u, const Field4& v);

/// |<D psi, phi> - <psi, D phi>| under the pairing above. Supports must
/// stay clear of the radial boundary.
double symmetry_defect(const MetricParams& p, const Grid4& g, const Field4& psi,
                       const Field4& phi);

/// Energy of the field per lifted fiber index n (the Fourier index of
/// the spin-equivariant fiber rotation psi -> e^{t c2 c3} psi(e^{it} p)).
/// The Dirac operator commutes with that rotation, so apply_direct must
/// preserve this distribution.
std::map<int, double> lifted_mode_content(const Grid4& g, const Field4& u);

}  // namespace taubnut
