#include "taubnut/clifford.hpp"

#include "doctest.h"

#include <cmath>
#include <complex>

using namespace taubnut;

namespace {
double mnorm(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("gamma matrices: skew-Hermitian, anticommutation, chirality") {
  const GammaSet& gs = build_gamma();
  for (int mu = 0; mu < 4; ++mu) {
    CHECK(mnorm(gs.gamma[mu] + gs.gamma[mu].adjoint()) < 1e-14);
    for (int nu = 0; nu < 4; ++nu) {
      Mat4 anti = gs.gamma[mu] * gs.gamma[nu] + gs.gamma[nu] * gs.gamma[mu];
      Mat4 expect = (mu == nu) ? Mat4(-2.0 * Mat4::Identity()) : Mat4(Mat4::Zero());
      CHECK(mnorm(anti - expect) < 1e-14);
    }
  }
  Mat4 omega = gs.gamma[0] * gs.gamma[1] * gs.gamma[2] * gs.gamma[3];
  CHECK(mnorm(omega - gs.chirality) < 1e-14);
  Mat4 diag = Mat4::Zero();
  diag.diagonal() << -1.0, -1.0, 1.0, 1.0;
  CHECK(mnorm(gs.chirality - diag) < 1e-14);
  CHECK(mnorm(omega * omega - Mat4::Identity()) < 1e-14);
}

TEST_CASE("bivector exponential: group law and full period") {
  const GammaSet& gs = build_gamma();
  Mat4 cc = gs.gamma[2] * gs.gamma[3];
  // derivative of t -> bivector_exp(t) is cc * bivector_exp(t)
  double h = 1e-6, t = 0.37;
  Mat4 fd = (bivector_exp(t + h) - bivector_exp(t - h)) / (2.0 * h);
  CHECK(mnorm(fd - cc * bivector_exp(t)) < 1e-9);
  CHECK(mnorm(bivector_exp(0.7) * bivector_exp(0.4) - bivector_exp(1.1)) < 1e-14);
  // full 2*pi rotation is the identity on spinors
  CHECK(mnorm(bivector_exp(2.0 * M_PI) - Mat4::Identity()) < 1e-12);
}

TEST_CASE("tangent Clifford action squares to minus the norm") {
  Eigen::Vector2d tau(0.8, -1.3);
  Mat4 m = clifford_of_tangent(tau);
  CHECK(mnorm(m * m + tau.squaredNorm() * Mat4::Identity()) < 1e-14);
  CHECK(mnorm(m + m.adjoint()) < 1e-14);
}

TEST_CASE("c2c3 eigenprojectors") {
  const GammaSet& gs = build_gamma();
  Mat4 cc = gs.gamma[2] * gs.gamma[3];
  auto [pp, pm] = cc_eigenprojectors();
  CHECK(mnorm(pp + pm - Mat4::Identity()) < 1e-14);
  CHECK(mnorm(pp * pp - pp) < 1e-14);
  CHECK(mnorm(pm * pm - pm) < 1e-14);
  CHECK(mnorm(pp * pm) < 1e-14);
  std::complex<double> i(0.0, 1.0);
  CHECK(mnorm(cc * pp - i * pp) < 1e-14);
  CHECK(mnorm(cc * pm + i * pm) < 1e-14);
}
