#include "taubnut/spectral.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using namespace taubnut;

TEST_CASE("block spectrum: residual certificates and chirality pairing") {
  MetricParams p{1, 1, 0, 1};
  Grid1D grid{0.05, 1.5, 64};
  AssembledBlock blk = assemble_block(p, {0.5, 1}, grid);
  EigResult r = block_spectrum(blk, 16);
  REQUIRE(r.eigenvalues.size() == 16);
  for (double res : r.residuals) CHECK(res < 1e-10);
  CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
  // eigenvalues come in +- pairs
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    double mirror = -r.eigenvalues[r.eigenvalues.size() - 1 - k];
    double scale = std::max(1e-12, std::abs(r.eigenvalues[k]));
    CHECK(std::abs(r.eigenvalues[k] - mirror) / scale < 1e-8);
  }
}

TEST_CASE("weyl sequence: residuals decay, control mode is gapped") {
  MetricParams p{1, 1, 2, 1};
  WeylOptions opt;
  opt.k_max = 4;
  for (double lambda : {1.0, -2.5}) {
    auto seq = weyl_sequence(p, lambda, opt);
    REQUIRE(int(seq.size()) == opt.k_max);
    for (std::size_t k = 1; k < seq.size(); ++k) {
      double ratio = seq[k - 1].residual_ratio / seq[k].residual_ratio;
      CHECK(ratio > 1.5);
      CHECK(ratio < 2.5);
    }
    CHECK(seq.back().residual_ratio < 0.25);
  }
  // n = 0 control: no kernel direction for dvert, residual stays gapped
  WeylOptions ctrl = opt;
  ctrl.j = 1.0;  // n = 0 lives in integer-spin sectors
  ctrl.n = 0;
  auto seq = weyl_sequence(p, 1.0, ctrl);
  for (const auto& w : seq)
    CHECK(w.residual_ratio > 0.3 * std::sqrt(p.d) / 2.0);
}

TEST_CASE("conformal norm identity: generic bump and exact h == 1 case") {
  MetricParams p{1, 1, 0.5, 1.3};
  auto profile = [](double r) {
    double t = (r - 3.0) / 9.0;
    if (t <= 0.0 || t >= 1.0) return std::complex<double>(0.0);
    return std::complex<double>(std::exp(-1.0 / (t * (1.0 - t))));
  };
  ConformalCheck c = conformal_norm_check(p, profile, 3.0, 12.0);
  CHECK(c.lhs > 0.0);
  CHECK(c.defect / c.lhs < 1e-6);

  // push the blending window past the support so h == 1 exactly there:
  // the two quadratures then integrate identical densities
  ConformalWindow w{100.0, 200.0};
  auto narrow = [](double r) {
    double t = (r - 1.0) / 1.0;
    if (t <= 0.0 || t >= 1.0) return std::complex<double>(0.0);
    return std::complex<double>(std::exp(-1.0 / (t * (1.0 - t))));
  };
  ConformalCheck e = conformal_norm_check(p, narrow, 0.8, 2.5, 1500, 150, w);
  CHECK(e.defect / e.lhs < 1e-12);
}

TEST_CASE("kernel probe: heuristic report shape and threshold guard") {
  MetricParams p{1, 1, 0, 1};
  Grid1D base{0.1, 1.2, 32};
  KernelProbeReport rep = kernel_probe(p, base, 3, 0.05);
  CHECK(rep.heuristic);
  CHECK(rep.threshold == 0.05);
  REQUIRE(rep.domains.size() == 3);
  // domains grow toward x = 0 (large radius)
  CHECK(rep.domains[1].grid.x_min < rep.domains[0].grid.x_min);
  CHECK(rep.domains[2].grid.x_min < rep.domains[1].grid.x_min);
  for (const auto& d : rep.domains)
    for (const auto& c : d.candidates) {
      CHECK(std::abs(c.eigenvalue) <= 0.05);
      CHECK(c.outer_mass_fraction >= 0.0);
      CHECK(c.outer_mass_fraction <= 1.0);
    }
  CHECK_FALSE(rep.note.empty());
  CHECK_THROWS(kernel_probe(p, base, 3, 1e-13));
}
