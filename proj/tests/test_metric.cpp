#include "taubnut/metric.hpp"

#include "doctest.h"

#include <cmath>
#include <random>

using namespace taubnut;

TEST_CASE("parameter validation") {
  CHECK(validate({1, 1, 2, 1}).ok);
  CHECK(validate({1, 1, -1.9, 1}).ok);  // c > -2 sqrt(d)
  CHECK_FALSE(validate({0, 1, 2, 1}).ok);
  CHECK_FALSE(validate({1, -1, 2, 1}).ok);
  CHECK_FALSE(validate({1, 1, 2, 0}).ok);
  CHECK_FALSE(validate({1, 1, -2.0, 1}).ok);  // boundary excluded
  CHECK(validate({1, 1, -2.1, 1}).violation == "c <= -2*sqrt(d)");
}

TEST_CASE("standard locus detection and b-normalization") {
  CHECK(is_standard({1, 1, 2, 1}));
  CHECK(is_standard({2, 3, 3, 2.25}));
  CHECK_FALSE(is_standard({1, 1, 0, 1}));
  MetricParams p{2, 5, 1, 3};
  MetricParams q = normalize_b(p);
  CHECK(q.b == 1.0);
  // tensor scales by exactly 1/b
  Eigen::Matrix4d gp = metric_tensor(p, 1.7, 0.9);
  Eigen::Matrix4d gq = metric_tensor(q, 1.7, 0.9);
  CHECK((gq - gp / 5.0).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("profile functions and closed-form derivatives") {
  MetricParams p{1.3, 0.8, 0.4, 2.1};
  double r = 2.3;
  RadialProfile pr = eval_profiles(p, r);
  CHECK(pr.f == doctest::Approx((p.a + p.b * r) / r).epsilon(1e-14));
  CHECK(pr.g ==
        doctest::Approx((p.a * r + p.b * r * r) / (1 + p.c * r + p.d * r * r))
            .epsilon(1e-14));
  // alpha beta are functions of x=1/r with alpha = 1/sqrt(f)
  CHECK(pr.alpha == doctest::Approx(1.0 / std::sqrt(pr.f)).epsilon(1e-14));
  // g = 1/(alpha^2 beta^2): the identity tying the two charts together
  CHECK(pr.g * pr.alpha * pr.alpha * pr.beta * pr.beta ==
        doctest::Approx(1.0).epsilon(1e-13));
  double h = 1e-6;
  RadialProfile lo = eval_profiles(p, r - h), hi = eval_profiles(p, r + h);
  CHECK(pr.df == doctest::Approx((hi.f - lo.f) / (2 * h)).epsilon(1e-7));
  CHECK(pr.dg == doctest::Approx((hi.g - lo.g) / (2 * h)).epsilon(1e-7));
  // dalpha, dbeta are d/dx
  double x = 1.0 / r, hx = 1e-6;
  RadialProfile lox = eval_profiles(p, 1.0 / (x - hx));
  RadialProfile hix = eval_profiles(p, 1.0 / (x + hx));
  CHECK(pr.dalpha == doctest::Approx((hix.alpha - lox.alpha) / (2 * hx)).epsilon(1e-7));
  CHECK(pr.dbeta == doctest::Approx((hix.beta - lox.beta) / (2 * hx)).epsilon(1e-7));
}

TEST_CASE("metric tensor determinant and pole rejection") {
  MetricParams p{1.1, 0.9, 0.3, 1.4};
  double r = 1.8, theta = 1.1;
  Eigen::Matrix4d g = metric_tensor(p, r, theta);
  RadialProfile pr = eval_profiles(p, r);
  double det_expect = pr.f * pr.f * pr.f * pr.g * std::pow(r, 4) *
                      std::sin(theta) * std::sin(theta);
  CHECK(g.determinant() == doctest::Approx(det_expect).epsilon(1e-12));
  CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS(metric_tensor(p, r, 0.0));
  CHECK_THROWS(metric_tensor(p, 0.0, 1.0));
}

TEST_CASE("frame is orthonormal at random points") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    MetricParams p{0.2 + 2.8 * u(rng), 0.2 + 2.8 * u(rng), 0.0,
                   0.2 + 2.8 * u(rng)};
    p.c = -2.0 * std::sqrt(p.d) + 0.1 + 3.0 * u(rng);
    double x = 0.05 + 2.0 * u(rng);
    double theta = 0.1 + 2.9 * u(rng);
    double phi = 6.2 * u(rng), chi = 12.5 * u(rng);
    FrameAtPoint fr = frame_vectors(p, x, theta, phi, chi);
    Eigen::Matrix4d gx = metric_tensor_x(p, x, theta);
    Eigen::Matrix4d gram = fr.vectors.transpose() * gx * fr.vectors;
    CHECK((gram - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("su(2) fields satisfy the bracket relations by flow commutators") {
  // [I,J] = 2K (cyclic), checked by finite-difference Lie brackets of the
  // coordinate component functions
  double theta = 1.2, phi = 0.7, chi = 2.1, h = 1e-5;
  auto fields = [&](double t, double f, double c) {
    return su2_vector_fields(t, f, c);
  };
  Eigen::Matrix3d F = fields(theta, phi, chi);
  auto lie = [&](int i, int j) {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    // derivative of component vector of field j along field i minus
    // the reverse
    for (int dir = 0; dir < 3; ++dir) {
      Eigen::Vector3d dp(theta, phi, chi), dm(theta, phi, chi);
      dp[dir] += h;
      dm[dir] -= h;
      Eigen::Matrix3d Fp = fields(dp[0], dp[1], dp[2]);
      Eigen::Matrix3d Fm = fields(dm[0], dm[1], dm[2]);
      out += F(dir, i) * (Fp.col(j) - Fm.col(j)) / (2 * h);
      out -= F(dir, j) * (Fp.col(i) - Fm.col(i)) / (2 * h);
    }
    return out;
  };
  CHECK((lie(0, 1) - 2.0 * F.col(2)).cwiseAbs().maxCoeff() < 1e-5);
  CHECK((lie(1, 2) - 2.0 * F.col(0)).cwiseAbs().maxCoeff() < 1e-5);
  CHECK((lie(2, 0) - 2.0 * F.col(1)).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("curvature: standard case is flat in the scalar sense") {
  for (MetricParams p : {MetricParams{1, 1, 2, 1}, MetricParams{2, 1, 1, 0.25},
                         MetricParams{0.5, 2, 8, 16}}) {
    for (double r : {0.05, 0.5, 1.0, 7.0, 50.0}) {
      Curvature c = curvature(p, r);
      CHECK(std::abs(c.kappa) < 1e-6);
      CHECK(c.ricci_frame.cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("curvature: generalized case has nonzero kappa, two routes agree") {
  MetricParams p{1, 1, 0, 1};
  Curvature a = curvature(p, 1.0);
  Curvature b = curvature_all_fd(p, 1.0);
  CHECK(std::abs(a.kappa) > 0.1);
  CHECK(a.kappa == doctest::Approx(b.kappa).epsilon(1e-6));
  CHECK((a.ricci_frame - b.ricci_frame).cwiseAbs().maxCoeff() < 1e-6);
  // frozen regression value from the two agreeing implementations
  CHECK(a.kappa == doctest::Approx(0.1875).epsilon(1e-6));
  CHECK(scalar_curvature(p, 1.0) == doctest::Approx(a.kappa).epsilon(1e-12));
}

TEST_CASE("conformal profile and the rescaled asymptotic form") {
  MetricParams p{1.4, 1.0, 0.6, 1.9};
  ConformalWindow w;
  CHECK(conformal_profile(p, 0.3, w) == 1.0);
  CHECK(conformal_profile(p, 5.0, w) ==
        doctest::Approx(5.0 * (p.a + p.b * 5.0)).epsilon(1e-14));
  // blend is continuous at both window edges
  CHECK(conformal_profile(p, w.r1 + 1e-9, w) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(conformal_profile(p, w.r2 - 1e-9, w) ==
        doctest::Approx(w.r2 * (p.a + p.b * w.r2)).epsilon(1e-6));
  // exact regime: x <= 1/r2
  for (double x : {0.05, 0.2, 0.5}) {
    DMetricForm f = dmetric_form(p, x, w);
    CHECK(std::abs(f.radial_factor - 1.0) < 1e-9);
    CHECK(std::abs(f.base_factor - 1.0) < 1e-9);
    double expect = x * x / (x * x + p.c * x + p.d);
    CHECK(f.vertical_factor == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("radial volume weight matches the closed-form density") {
  MetricParams p{1.2, 0.7, -0.5, 1.1};
  for (double x : {0.08, 0.4, 1.3}) {
    double r = 1.0 / x;
    RadialProfile pr = eval_profiles(p, r);
    double direct = std::pow(pr.f, 1.5) * std::sqrt(pr.g) * r * r / (x * x);
    CHECK(radial_volume_weight(p, x) == doctest::Approx(direct).epsilon(1e-12));
    double via_ab = 1.0 / (std::pow(pr.alpha, 4) * pr.beta * std::pow(x, 4));
    CHECK(radial_volume_weight(p, x) == doctest::Approx(via_ab).epsilon(1e-12));
  }
}
