#pragma once

#include "taubnut/clifford.hpp"

#include <Eigen/Dense>

#include <vector>

namespace taubnut {

/// A point of the frozen normal-operator family: xi dual to x^2 d_x,
/// tau coordinates on the pulled-back tangent plane (normalized so
/// c(tau)^2 = -|tau|^2), n the fiber mode, lambda the spectral shift,
/// gamma the exponential weight (0 = unweighted).
struct SymbolPoint {
  double xi = 0.0;
  Eigen::Vector2d tau = Eigen::Vector2d::Zero();
  int n = 0;
  double lambda = 0.0;
  double gamma = 0.0;
};

/// Vertical operator on fiber mode n: (sqrt(d)/2) c1 (i n Id - c2 c3).
/// Hermitian; spectrum +-(sqrt(d)/2)|n-1| on the P+ block and
/// +-(sqrt(d)/2)|n+1| on the P- block.
Mat4 dvert_matrix(double d, int n);

/// N(D)(xi,tau) on fiber mode n: i xi c0 + i c(tau) + D_vert. Hermitian.
Mat4 normal_symbol(const SymbolPoint& pt, double d);

/// Weighted conjugate c0 (i xi - gamma) + i c(tau) + D_vert, realized on
/// the invariant fiber block of mode n. The chi-rotation of the
/// horizontal frame couples plain modes k = L+1 and k = L-1 (opposite
/// chirality halves) into a closed 4-dim block on which c(tau) is
/// constant and D_vert acts as (sqrt(d)/2) iL c1; the block of mode n is
/// L = |n|-1. Singular values sqrt(xi^2 + (h +- gamma)^2) with
/// h = sqrt(|tau|^2 + d L^2 / 4): for the kernel modes n = +-1 (L = 0)
/// the matrix is singular exactly at xi = 0, |tau| = |gamma|, for every
/// gamma -- no exponential weight restores Fredholmness. At tau = 0 the
/// block and per-mode realizations have the same singular values.
Mat4 weighted_symbol(double d, double gamma, double xi,
                     const Eigen::Vector2d& tau, int n);

double min_singular_value(const Mat4& m);

struct ScanHit {
  double sigma_min;
  SymbolPoint at;
};

/// Search grid over (xi, tau, n) for symbol scans.
struct SymbolGrid {
  std::vector<double> xi;
  std::vector<Eigen::Vector2d> tau;
  std::vector<int> n;
  /// Default grid: 21 xi values spanning [-5,5], tau radii {0,.5,1,2} x
  /// 8 angles, modes n in [-3,3].
  static SymbolGrid standard();
  bool empty() const { return xi.empty() || tau.empty() || n.empty(); }
};

/// Minimum singular value of N(D) - lambda over the grid and its argmin.
/// The covariable witness (xi = lambda, tau = 0) is always searched, so
/// whenever the grid's mode list contains n = +-1 the result is exactly
/// singular; argmin ties resolve to the analytic witness point.
ScanHit shifted_min_singular(double d, double lambda, SymbolGrid grid);

/// Same scan for the weighted symbol; no witness is injected.
ScanHit weighted_min_singular(double d, double gamma, const SymbolGrid& grid);

struct EllipticityReport {
  bool fully_elliptic;  // always false for this family
  SymbolPoint witness;
  SpinorVec kernel_vector;  // unit vector with (N(D)-lambda) v = 0
};

/// Full ellipticity of N(D) - lambda; fails for every lambda, with the
/// explicit witness at xi = lambda, tau = 0, n = 1.
EllipticityReport is_fully_elliptic(double d, double lambda);

}  // namespace taubnut
