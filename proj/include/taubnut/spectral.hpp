#pragma once

#include "taubnut/dirac.hpp"
#include "taubnut/grid.hpp"
#include "taubnut/metric.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace taubnut {

/// Eigenvalues and certified residuals of an assembled block.
struct EigResult {
  std::vector<double> eigenvalues;  // sorted ascending
  std::vector<double> residuals;    // ||M v - lambda v|| per pair
  Grid1D grid;
  ModeSpec mode;
};

/// `count` smallest-|lambda| eigenpairs by dense Hermitian solve, each
/// re-verified by direct application of the matrix.
EigResult block_spectrum(const AssembledBlock& block, int count);

/// One quasi-mode u_k = cutoff(x) e^{-i lambda / x} psi0 supported on
/// x in [eps/sigma, eps] (r in [R, sigma R]).
struct WeylProbe {
  double lambda;
  double r_lo, r_hi;
  int n;
  double j;
  double residual_ratio;  // ||(D - lambda) u|| / ||u||
};

struct WeylOptions {
  double j = 0.5;
  int n = 1;
  double sigma = 2.0;    // support ratio
  double eps0 = 0.25;    // largest support endpoint in x
  int k_max = 4;
  int quadrature_n = 4000;
};

/// Weyl sequence for lambda: the phase cancels the frozen radial symbol
/// exactly (x^2 d_x e^{-i lambda/x} = i lambda e^{-i lambda/x}) and the
/// spinor direction lies in ker(D_vert) (+1 eigenspace of i c0), so the
/// residual ratio decays like the support scale. Requires b = 1.
std::vector<WeylProbe> weyl_sequence(const MetricParams& p, double lambda,
                                     const WeylOptions& opt = {});

struct ConformalCheck {
  double lhs;     // ||h^{3/4} phi||^2 in L^2(g_d), via the numeric volume form
  double rhs;     // integral of h^{-1/2} |phi|^2 dvol(ds^2), closed-form volume
  double defect;  // |lhs - rhs|
};

/// Both sides of the conformal norm identity by independent quadratures.
/// `profile` is the radial part of the test spinor, supported in
/// [r_lo, r_hi] strictly inside (0, infinity).
ConformalCheck conformal_norm_check(
    const MetricParams& p, const std::function<std::complex<double>(double)>& profile,
    double r_lo, double r_hi, int nr = 2000, int ntheta = 200,
    const ConformalWindow& w = {});

struct KernelCandidate {
  double eigenvalue;
  double residual;
  double outer_mass_fraction;  // mass in the outer (large r) half
};

struct KernelDomainReport {
  Grid1D grid;
  int candidate_count;
  std::vector<KernelCandidate> candidates;
};

/// HEURISTIC EVIDENCE ONLY. With essential spectrum equal to the whole
/// line, truncated domains accumulate small eigenvalues near every
/// level; candidate zero modes are judged by whether their mass stays
/// normalizable (not escaping to the large-r boundary) as the domain
/// grows, never by eigenvalue gaps.
struct KernelProbeReport {
  bool heuristic = true;
  double threshold;
  std::vector<KernelDomainReport> domains;
  int persistent_normalizable_candidates = 0;
  std::string note;
};

KernelProbeReport kernel_probe(const MetricParams& p, const Grid1D& base,
                               int ndomains, double threshold);

}  // namespace taubnut
