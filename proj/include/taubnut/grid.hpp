#pragma once

#include <stdexcept>
#include <vector>

namespace taubnut {

/// 1-D radial grid in the compactified coordinate x = 1/r.
/// Nodes are uniform either in x or in r = 1/x; in both cases the
/// discretization parameter s runs uniformly and x = x(s).
struct Grid1D {
  enum class Spacing { UniformX, UniformR };

  double x_min = 0.05;
  double x_max = 2.0;
  int n = 64;
  Spacing spacing = Spacing::UniformX;

  void check() const {
    if (!(x_min > 0.0) || !(x_max > x_min))
      throw std::invalid_argument("Grid1D requires 0 < x_min < x_max");
    if (n < 16) throw std::invalid_argument("Grid1D requires n >= 16");
  }

  /// Uniform step in the discretization parameter s.
  double step() const {
    check();
    double lo = s_lo(), hi = s_hi();
    return (hi - lo) / (n + 1);  // nodes are interior: s_lo + (i+1)*h
  }

  double s_lo() const {
    return spacing == Spacing::UniformX ? x_min : 1.0 / x_max;
  }
  double s_hi() const {
    return spacing == Spacing::UniformX ? x_max : 1.0 / x_min;
  }

  double x_of_s(double s) const {
    return spacing == Spacing::UniformX ? s : 1.0 / s;
  }
  /// ds/dx at the point with parameter s.
  double dsdx(double s) const {
    if (spacing == Spacing::UniformX) return 1.0;
    double x = 1.0 / s;
    return -1.0 / (x * x);
  }

  double s_node(int i) const { return s_lo() + (i + 1) * step(); }
  double x_node(int i) const { return x_of_s(s_node(i)); }

  std::vector<double> x_nodes() const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = x_node(i);
    return out;
  }
};

}  // namespace taubnut
