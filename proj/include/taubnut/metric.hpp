#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>

namespace taubnut {

/// Parameters (a,b,c,d) of the generalized Taub-NUT line element
///   ds^2 = f(r)(dr^2 + r^2 dOmega^2) + g(r)(dchi + cos(theta) dphi)^2,
///   f(r) = (a + b r)/r,   g(r) = (a r + b r^2)/(1 + c r + d r^2).
struct MetricParams {
  double a = 1.0;
  double b = 1.0;
  double c = 2.0;
  double d = 1.0;
};

struct ValidationReport {
  bool ok = true;
  std::string violation;  // names the violated constraint when !ok
};

/// Positive definiteness requires a>0, b>0, d>0 and c > -2 sqrt(d).
ValidationReport validate(const MetricParams& p);

/// True iff c = 2b/a and d = b^2/a^2 (relative tolerance 1e-12), the
/// parameter locus where the family reduces to the standard Taub-NUT
/// metric up to a constant factor.
bool is_standard(const MetricParams& p);

/// Rescale to b=1: (a,b,c,d) -> (a/b, 1, c, d). The metric tensor of the
/// output equals 1/b times the input's at every point.
MetricParams normalize_b(const MetricParams& p);

/// Profile functions and closed-form first derivatives at one radius.
/// f,g are functions of r; alpha,beta of x = 1/r:
///   alpha(x) = 1/sqrt(ax+b),  beta(x) = sqrt(x^2 + cx + d).
/// df,dg are d/dr; dalpha,dbeta are d/dx.
struct RadialProfile {
  double r, x;
  double f, g, alpha, beta;
  double df, dg, dalpha, dbeta;
};

RadialProfile eval_profiles(const MetricParams& p, double r);

/// Coordinate metric tensor at (r,theta) in coordinates (r,theta,phi,chi).
/// theta in (0,pi); the poles are chart degeneracies and are rejected.
Eigen::Matrix4d metric_tensor(const MetricParams& p, double r, double theta);

/// Same tensor in coordinates (x,theta,phi,chi), x = 1/r.
Eigen::Matrix4d metric_tensor_x(const MetricParams& p, double x, double theta);

/// Orthonormal frame V0..V3 at (x,theta,phi,chi):
///   V0 = alpha x^2 d_x, V1 = alpha beta I/2, V2 = alpha x J/2,
///   V3 = alpha x K/2,
/// where I = 2 d_chi and J,K are twice the duals of
///   sigma1 = cos(chi) dtheta + sin(chi) sin(theta) dphi,
///   sigma2 = -sin(chi) dtheta + cos(chi) sin(theta) dphi.
/// Columns of `vectors` are the coordinate components of V0..V3 in the
/// (x,theta,phi,chi) chart.
struct FrameAtPoint {
  double x, theta, phi, chi;
  Eigen::Matrix4d vectors;
};

FrameAtPoint frame_vectors(const MetricParams& p, double x, double theta,
                           double phi, double chi);

/// Components of I, J, K at (theta,phi,chi), as columns in the
/// (theta,phi,chi) chart (no radial component).
Eigen::Matrix3d su2_vector_fields(double theta, double phi, double chi);

/// Curvature at radius r. `ricci_frame` holds Ricci(V_i, V_j) in the
/// orthonormal frame above (theta-independent by symmetry).
struct Curvature {
  double kappa = 0.0;
  Eigen::Matrix4d ricci_frame = Eigen::Matrix4d::Zero();
};

/// Route A: Christoffel symbols from closed-form first metric
/// derivatives; Riemann via Richardson-extrapolated central differences
/// of the Christoffels.
Curvature curvature(const MetricParams& p, double r);

/// Route B: same pipeline but with every derivative taken by finite
/// differences, with independent step sizes. Cross-check for route A.
Curvature curvature_all_fd(const MetricParams& p, double r);

double scalar_curvature(const MetricParams& p, double r);

/// Conformal factor h: 1 on [0,r1], r(a+br) beyond r2, quintic-smoothstep
/// blend on the window. Defaults r1=1, r2=2.
struct ConformalWindow {
  double r1 = 1.0;
  double r2 = 2.0;
};

double conformal_profile(const MetricParams& p, double r,
                         const ConformalWindow& w = {});

/// The factors of h^{-1} ds^2 in the x chart, valid where h = r(a+br):
///   radial_factor * dx^2/x^2 + base_factor * (sigma1^2+sigma2^2)
///   + vertical_factor * sigma3^2,
/// with radial_factor = base_factor = 1 and
/// vertical_factor = x^2/(x^2+cx+d) in the exact regime.
struct DMetricForm {
  double radial_factor;
  double base_factor;
  double vertical_factor;
};

DMetricForm dmetric_form(const MetricParams& p, double x,
                         const ConformalWindow& w = {});

/// Radial weight of the volume form in the x chart:
/// dvol = weight(x) * sin(theta) dx dtheta dphi dchi,
/// weight = f^{3/2} g^{1/2} r^2 |dr/dx| = 1/(alpha^4 beta x^4).
double radial_volume_weight(const MetricParams& p, double x);

namespace detail {
/// Christoffel symbols Gamma[rho](mu,nu) at (r,theta); closed-form metric
/// derivatives when `closed_form_dg`, otherwise finite differences.
std::array<Eigen::Matrix4d, 4> christoffel(const MetricParams& p, double r,
                                           double theta, bool closed_form_dg);
}  // namespace detail

}  // namespace taubnut
