#pragma once

// Test-only oracle for the sector-reduced radial blocks: restrict the 4D
// collocation operator (apply_direct) to the lowest angular sector and
// eigensolve the restriction. The sector functions are
//   Y0 = cos(theta/2) e^{i(chi+phi)/2},  Y1 = sin(theta/2) e^{i(phi-chi)/2},
// the spin-1/2 pair; D preserves their span, so the Galerkin restriction
// onto {grid delta in x} x {Y0,Y1} x {spinor basis} reproduces the j = 1/2
// block through a route that never touches the sector matrices.

#include "taubnut/dirac.hpp"
#include "taubnut/grid.hpp"
#include "taubnut/metric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace taubnut::testing {

inline std::complex<double> sector_fn(int mu, double theta, double phi,
                                      double chi) {
  std::complex<double> i(0.0, 1.0);
  if (mu == 0) return std::cos(theta / 2.0) * std::exp(i * (chi + phi) / 2.0);
  return std::sin(theta / 2.0) * std::exp(i * (phi - chi) / 2.0);
}

/// Low-lying eigenvalues (sorted by |lambda|) of the j = 1/2 restriction
/// of apply_direct on the nodes of `grid`, zero-exterior in x (matching
/// BoundaryCondition::Truncate).
inline std::vector<double> sector_half_oracle(const MetricParams& p,
                                              const Grid1D& grid, int count,
                                              int fd_order = 2) {
  Grid4 g;
  g.x = grid.x_nodes();
  g.ntheta = 16;
  g.nphi = 8;
  g.nchi = 8;
  g.phi_period = 4.0 * M_PI;  // half-integer sector needs the doubled chart
  g.fd_order = fd_order;
  g.check();

  const int nx = static_cast<int>(g.x.size());
  const int dim = nx * 2 * 4;
  auto dof = [&](int ix, int mu, int s) { return (ix * 2 + mu) * 4 + s; };

  // discrete angular norm^2 of Y_mu (equal for both by symmetry)
  double cell = g.dtheta() * g.dphi() * g.dchi();
  double nrm2 = 0.0;
  for (int t = 0; t < g.ntheta; ++t)
    nrm2 += std::norm(sector_fn(0, g.theta(t), 0, 0)) * std::sin(g.theta(t)) *
            cell * g.nphi * g.nchi;

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXd w(nx);
  for (int k = 0; k < nx; ++k)
    w[k] = radial_volume_weight(p, g.x[k]) * g.dx();

  Field4 in(4 * g.npoints());
  for (int ix = 0; ix < nx; ++ix)
    for (int mu = 0; mu < 2; ++mu)
      for (int s = 0; s < 4; ++s) {
        std::fill(in.begin(), in.end(), std::complex<double>(0.0));
        for (int t = 0; t < g.ntheta; ++t)
          for (int fp = 0; fp < g.nphi; ++fp)
            for (int c = 0; c < g.nchi; ++c)
              in[4 * g.index(ix, t, fp, c) + s] =
                  sector_fn(mu, g.theta(t), g.phi(fp), g.chi(c));
        Field4 out = apply_direct(p, g, in);
        // project the image back onto the sector basis, node by node
        for (int k = 0; k < nx; ++k)
          for (int nu = 0; nu < 2; ++nu)
            for (int t2 = 0; t2 < 4; ++t2) {
              std::complex<double> acc(0.0);
              for (int t = 0; t < g.ntheta; ++t) {
                double st = std::sin(g.theta(t));
                for (int fp = 0; fp < g.nphi; ++fp)
                  for (int c = 0; c < g.nchi; ++c)
                    acc += std::conj(sector_fn(nu, g.theta(t), g.phi(fp),
                                               g.chi(c))) *
                           out[4 * g.index(k, t, fp, c) + t2] * st;
              }
              M(dof(k, nu, t2), dof(ix, mu, s)) += acc * cell / nrm2;
            }
      }

  // symmetrize against the L^2 weight: A = W^{1/2} M W^{-1/2}, Hermitized
  Eigen::VectorXd sq(dim);
  for (int k = 0; k < nx; ++k)
    for (int j = 0; j < 8; ++j) sq[8 * k + j] = std::sqrt(w[k]);
  Eigen::MatrixXcd A = sq.asDiagonal() * M * sq.cwiseInverse().asDiagonal();
  A = 0.5 * (A + A.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + dim);
  std::sort(ev.begin(), ev.end(),
            [](double a, double b) { return std::abs(a) < std::abs(b); });
  ev.resize(std::min<std::size_t>(count, ev.size()));
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace taubnut::testing
