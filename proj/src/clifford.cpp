#include "taubnut/clifford.hpp"

namespace taubnut {

namespace {

using Mat2 = Eigen::Matrix2cd;
using cd = std::complex<double>;

GammaSet make_gamma() {
  const cd i(0.0, 1.0);
  Mat2 id2 = Mat2::Identity();
  std::array<Mat2, 3> sigma;
  sigma[0] << 0, 1, 1, 0;
  sigma[1] << 0, -i, i, 0;
  sigma[2] << 1, 0, 0, -1;

  GammaSet gs;
  gs.gamma[0].setZero();
  gs.gamma[0].topRightCorner<2, 2>() = -id2;
  gs.gamma[0].bottomLeftCorner<2, 2>() = id2;
  for (int k = 0; k < 3; ++k) {
    Mat4& g = gs.gamma[k + 1];
    g.setZero();
    g.topRightCorner<2, 2>() = i * sigma[k];
    g.bottomLeftCorner<2, 2>() = i * sigma[k];
  }
  gs.chirality = gs.gamma[0] * gs.gamma[1] * gs.gamma[2] * gs.gamma[3];
  return gs;
}

}  // namespace

const GammaSet& build_gamma() {
  static const GammaSet gs = make_gamma();
  return gs;
}

Mat4 bivector_exp(double t) {
  const GammaSet& gs = build_gamma();
  Mat4 cc = gs.gamma[2] * gs.gamma[3];
  // cc squares to -Id, so the exponential series closes in two terms.
  return std::cos(t) * Mat4::Identity() + std::sin(t) * cc;
}

Mat4 clifford_of_tangent(const Eigen::Vector2d& tau) {
  const GammaSet& gs = build_gamma();
  return tau[0] * gs.gamma[2] + tau[1] * gs.gamma[3];
}

std::pair<Mat4, Mat4> cc_eigenprojectors() {
  const GammaSet& gs = build_gamma();
  const std::complex<double> i(0.0, 1.0);
  Mat4 cc = gs.gamma[2] * gs.gamma[3];
  Mat4 plus = 0.5 * (Mat4::Identity() - i * cc);
  Mat4 minus = 0.5 * (Mat4::Identity() + i * cc);
  return {plus, minus};
}

}  // namespace taubnut
