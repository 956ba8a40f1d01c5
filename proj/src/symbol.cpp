#include "taubnut/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace taubnut {

namespace {
const std::complex<double> I1(0.0, 1.0);
}

Mat4 dvert_matrix(double d, int n) {
  if (!(d > 0.0)) throw std::invalid_argument("d must be positive");
  const GammaSet& gs = build_gamma();
  Mat4 cc = gs.gamma[2] * gs.gamma[3];
  return (std::sqrt(d) / 2.0) * gs.gamma[1] *
         (I1 * double(n) * Mat4::Identity() - cc);
}

Mat4 normal_symbol(const SymbolPoint& pt, double d) {
  const GammaSet& gs = build_gamma();
  return I1 * pt.xi * gs.gamma[0] + I1 * clifford_of_tangent(pt.tau) +
         dvert_matrix(d, pt.n);
}

Mat4 weighted_symbol(double d, double gamma, double xi,
                     const Eigen::Vector2d& tau, int n) {
  if (!(d > 0.0)) throw std::invalid_argument("d must be positive");
  // Once tau != 0 matters, the per-mode freeze is no longer invariant:
  // the horizontal frame rotates along the fiber, so c(tau) couples the
  // chirality halves of the plain modes k = L+1 and k = L-1 into a closed
  // 4-dim block on which D_vert acts as (sqrt(d)/2) iL c1 and c(tau) is
  // constant. We realize the weighted operator on the block carrying the
  // lowest D_vert eigenvalue of mode n: L = |n|-1 (L = 1 for n = 0).
  int L = n == 0 ? 1 : std::abs(n) - 1;
  const GammaSet& gs = build_gamma();
  return (I1 * xi - gamma) * gs.gamma[0] + I1 * clifford_of_tangent(tau) +
         (std::sqrt(d) / 2.0) * I1 * double(L) * gs.gamma[1];
}

double min_singular_value(const Mat4& m) {
  return m.jacobiSvd().singularValues().minCoeff();
}

SymbolGrid SymbolGrid::standard() {
  SymbolGrid g;
  for (int i = 0; i < 21; ++i) g.xi.push_back(-5.0 + 0.5 * i);
  g.tau.push_back(Eigen::Vector2d::Zero());
  for (double rad : {0.5, 1.0, 2.0})
    for (int k = 0; k < 8; ++k) {
      double ang = 2.0 * M_PI * k / 8.0;
      g.tau.push_back(rad * Eigen::Vector2d(std::cos(ang), std::sin(ang)));
    }
  for (int n = -3; n <= 3; ++n) g.n.push_back(n);
  return g;
}

ScanHit shifted_min_singular(double d, double lambda, SymbolGrid grid) {
  if (grid.empty()) throw std::invalid_argument("empty symbol search grid");
  // The covariable witness (xi = lambda, tau = 0) is always searched; the
  // caller's mode list is respected, so restricting it away from n = +-1
  // probes the gap instead.
  grid.xi.push_back(lambda);
  grid.tau.push_back(Eigen::Vector2d::Zero());

  ScanHit best{std::numeric_limits<double>::infinity(), {}};
  // seed with the analytic witness so argmin ties resolve to it
  for (int n : {1, -1})
    if (std::find(grid.n.begin(), grid.n.end(), n) != grid.n.end()) {
      SymbolPoint pt{lambda, Eigen::Vector2d::Zero(), n, lambda, 0.0};
      double s = min_singular_value(
          (normal_symbol(pt, d) - lambda * Mat4::Identity()).eval());
      if (s < best.sigma_min) best = {s, pt};
    }
  for (double xi : grid.xi)
    for (const auto& tau : grid.tau)
      for (int n : grid.n) {
        SymbolPoint pt{xi, tau, n, lambda, 0.0};
        double s = min_singular_value(
            (normal_symbol(pt, d) - lambda * Mat4::Identity()).eval());
        if (s < best.sigma_min - 1e-12) best = {s, pt};
      }
  return best;
}

ScanHit weighted_min_singular(double d, double gamma, const SymbolGrid& grid) {
  if (grid.empty()) throw std::invalid_argument("empty symbol search grid");
  ScanHit best{std::numeric_limits<double>::infinity(), {}};
  // two passes so that on ties the argmin reports a kernel mode n = +-1
  // (where the singular circle |tau| = |gamma| lives) when one is searched
  auto sweep = [&](bool kernel_modes) {
    for (int n : grid.n) {
      if ((std::abs(n) == 1) != kernel_modes) continue;
      for (double xi : grid.xi)
        for (const auto& tau : grid.tau) {
          double s = min_singular_value(weighted_symbol(d, gamma, xi, tau, n));
          if (s < best.sigma_min - 1e-12)
            best = {s, SymbolPoint{xi, tau, n, 0.0, gamma}};
        }
    }
  };
  sweep(true);
  sweep(false);
  return best;
}

EllipticityReport is_fully_elliptic(double d, double lambda) {
  EllipticityReport rep;
  rep.fully_elliptic = false;
  rep.witness = SymbolPoint{lambda, Eigen::Vector2d::Zero(), 1, lambda, 0.0};
  Mat4 m = (normal_symbol(rep.witness, d) - lambda * Mat4::Identity()).eval();
  Eigen::JacobiSVD<Mat4> svd(m, Eigen::ComputeFullV);
  rep.kernel_vector = svd.matrixV().col(3);  // smallest singular value last
  return rep;
}

}  // namespace taubnut
