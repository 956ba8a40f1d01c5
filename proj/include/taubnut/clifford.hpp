#pragma once

#include <Eigen/Dense>

#include <array>
#include <utility>

namespace taubnut {

using Mat4 = Eigen::Matrix4cd;
using SpinorVec = Eigen::Vector4cd;

/// Four skew-Hermitian Clifford generators of R^4 acting on Sigma_4 = C^4,
/// in a fixed chiral representation:
///   c0 = [[0,-I2],[I2,0]],   ck = [[0, i*sigma_k],[i*sigma_k, 0]]
/// so that c^mu c^nu + c^nu c^mu = -2 delta^{mu nu} Id and the chirality
/// omega = c0 c1 c2 c3 = diag(-1,-1,+1,+1).
struct GammaSet {
  std::array<Mat4, 4> gamma;
  Mat4 chirality;
};

/// The fixed representation; built once, deterministic entry for entry.
const GammaSet& build_gamma();

/// exp(t c2 c3) = cos(t) Id + sin(t) c2 c3. Unitary with eigenvalues
/// e^{+-it}, each of multiplicity 2.
Mat4 bivector_exp(double t);

/// c(tau) = tau_2 c2 + tau_3 c3, the Clifford action of a tangent vector
/// on the pulled-back S^2 plane. Squares to -|tau|^2 Id.
Mat4 clifford_of_tangent(const Eigen::Vector2d& tau);

/// Spectral projectors (P+, P-) onto the +i / -i eigenspaces of c2 c3.
/// Rank 2 each, complementary, and commuting with c1.
std::pair<Mat4, Mat4> cc_eigenprojectors();

}  // namespace taubnut
