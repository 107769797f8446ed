/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_DENSITY_HPP
#define SLINF_DENSITY_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "slinf/alpha.hpp"
#include "slinf/classb.hpp"
#include "slinf/errors.hpp"

namespace slinf {

/// g_a(t) = e^{t arctan(a)} / (2 sqrt(1+a^2) cosh(pi t / 2)), the probability
/// density whose characteristic function is (cosh l - i a sinh l)^{-1}.
inline double density_eval(double a, double t) {
  return std::exp(t * std::atan(a)) /
         (2.0 * std::sqrt(1.0 + a * a) * std::cosh(M_PI * t / 2.0));
}

/// A density sampled on a uniform grid t_k = t_min + k step.
struct DensityGrid {
  double t_min = 0.0;
  double step = 0.0;
  std::vector<double> values;

  double t_at(std::size_t k) const { return t_min + static_cast<double>(k) * step; }
  double t_max() const { return t_at(values.empty() ? 0 : values.size() - 1); }

  /// Trapezoidal mass.
  double mass() const {
    if (values.size() < 2) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    s -= 0.5 * (values.front() + values.back());
    return s * step;
  }
};

namespace detail {

/// Upper bound on the mass of g_a outside [-t_max, t_max]: on each side
/// g_a(t) <= e^{-r|t|}/sqrt(1+a^2), with rate pi/2 -+ arctan|a| on the
/// slow/fast side.
inline double density_tail_bound(double a, double t_max) {
  const double slow = M_PI / 2.0 - std::abs(std::atan(a));
  const double fast = M_PI / 2.0 + std::abs(std::atan(a));
  return (std::exp(-slow * t_max) / slow + std::exp(-fast * t_max) / fast) /
         std::sqrt(1.0 + a * a);
}

inline DensityGrid single_density_grid(double a, double t_max, double step) {
  const auto n = static_cast<std::size_t>(std::llround(2.0 * t_max / step)) + 1;
  DensityGrid d{-t_max, step, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) d.values[k] = density_eval(a, d.t_at(k));
  return d;
}

}  // namespace detail

/// Discrete convolution on the full support, scaled by step.  Masses multiply.
inline DensityGrid convolve(const DensityGrid& d1, const DensityGrid& d2) {
  if (d1.values.empty() || d2.values.empty())
    throw validation_error("convolve: empty grid");
  if (std::abs(d1.step - d2.step) > 1e-12 * d1.step)
    throw validation_error("convolve: step mismatch");
  DensityGrid out{d1.t_min + d2.t_min, d1.step,
                  std::vector<double>(d1.values.size() + d2.values.size() - 1, 0.0)};
  // direct O(N M): no wrap-around, exact linearity at desk-scale sizes
  for (std::size_t i = 0; i < d1.values.size(); ++i) {
    const double vi = d1.values[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < d2.values.size(); ++j)
      out.values[i + j] += vi * d2.values[j];
  }
  for (double& v : out.values) v *= d1.step;
  return out;
}

/// The sampled p-fold convolution g_{a_1} * ... * g_{a_p} on a symmetric grid
/// (support grows to [-p t_max, p t_max]).  Requires each factor's tail mass
/// beyond t_max to be below 1e-8.
inline DensityGrid density_grid(const Alpha& alpha, double t_max, double step) {
  if (alpha.trivial())
    throw validation_error("density_grid: point mass at 0 is not a density");
  if (!(t_max > 0.0 && step > 0.0))
    throw validation_error("density_grid: t_max and step must be > 0");
  for (double a : alpha.values()) {
    if (detail::density_tail_bound(a, t_max) >= 1e-8)
      throw validation_error("density_grid: tail mass exceeds 1e-8, increase t_max");
  }
  DensityGrid grid = detail::single_density_grid(alpha[0], t_max, step);
  for (std::size_t k = 1; k < alpha.order(); ++k)
    grid = convolve(grid, detail::single_density_grid(alpha[k], t_max, step));
  return grid;
}

/// Characteristic function by trapezoidal quadrature: int e^{+i lambda t} g(t) dt.
/// The +i convention is pinned by char_function(grid of g_a) = Pi((a,), .).
inline complexd char_function(const DensityGrid& d, double lambda) {
  if (d.values.size() < 2) throw validation_error("char_function: empty grid");
  complexd s{0.0, 0.0};
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    const double w = (k == 0 || k + 1 == d.values.size()) ? 0.5 : 1.0;
    s += w * d.values[k] * std::polar(1.0, lambda * d.t_at(k));
  }
  return s * d.step;
}

/// Levy-Cramer check at desk scale: weak convergence of the measures is
/// uniform convergence of the characteristic functions on a compact, and the
/// characteristic functions here ARE the Pi's.
struct ConvergenceReport {
  std::vector<double> distances;    // sup (grid) distance per sequence entry
  bool eventually_within_tol = false;
  std::size_t settled_index = 0;    // first index from which all are <= tol
};

inline ConvergenceReport weak_convergence_check(const std::vector<Alpha>& seq,
                                                const Alpha& limit, double lambda_max,
                                                double tol) {
  if (seq.empty()) throw validation_error("weak_convergence_check: empty sequence");
  ConvergenceReport report;
  report.distances.reserve(seq.size());
  for (const Alpha& a : seq)
    report.distances.push_back(classb_sup_distance(a, limit, lambda_max, 0.01));
  std::size_t settled = seq.size();
  for (std::size_t k = seq.size(); k-- > 0;) {
    if (report.distances[k] <= tol)
      settled = k;
    else
      break;
  }
  report.settled_index = settled;
  report.eventually_within_tol = settled < seq.size();
  return report;
}

}  // namespace slinf

#endif
