/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_CLASSB_HPP
#define SLINF_CLASSB_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "slinf/alpha.hpp"
#include "slinf/errors.hpp"

namespace slinf {

using complexd = std::complex<double>;

inline constexpr double kSlopeTol = 0.1;

/// Pi(alpha, lambda) = prod_j (cosh(lambda) - i a_j sinh(lambda))^{-1}.
/// Each factor has modulus >= cosh(lambda) >= 1, so the product never blows up;
/// the empty product (p = 0) is the constant 1.
inline complexd pi_eval(const Alpha& alpha, double lambda) {
  const double ch = std::cosh(lambda);
  const double sh = std::sinh(lambda);
  complexd r{1.0, 0.0};
  for (double a : alpha.values()) r /= complexd{ch, -a * sh};
  return r;
}

/// |Pi(alpha, lambda)|^2 = prod_j (cosh^2 + a_j^2 sinh^2)^{-1}, evaluated
/// without complex arithmetic.
inline double pi_abs2(const Alpha& alpha, double lambda) {
  const double ch2 = std::cosh(lambda) * std::cosh(lambda);
  const double sh2 = std::sinh(lambda) * std::sinh(lambda);
  double r = 1.0;
  for (double a : alpha.values()) r /= ch2 + a * a * sh2;
  return r;
}

/// d/dlambda log Pi = -sum_j (sinh - i a_j cosh) / (cosh - i a_j sinh).
inline complexd log_derivative(const Alpha& alpha, double lambda) {
  const double ch = std::cosh(lambda);
  const double sh = std::sinh(lambda);
  complexd s{0.0, 0.0};
  for (double a : alpha.values()) s -= complexd{sh, -a * ch} / complexd{ch, -a * sh};
  return s;
}

/// Truncated log-derivative series i sum_{m=0}^{M} p~_m(alpha) (i tanh)^m.
/// Converges iff |tanh(lambda)| max(1, max|a_j|) < 1.
inline complexd log_derivative_series(const Alpha& alpha, double lambda, int terms) {
  if (terms < 0) throw validation_error("log_derivative_series: M must be >= 0");
  double amax = 0.0;
  for (double a : alpha.values()) amax = std::max(amax, std::abs(a));
  const double u = std::tanh(lambda);
  if (std::abs(u) * std::max(1.0, amax) >= 1.0)
    throw series_divergent_error("log_derivative_series: series divergent at this lambda");

  const complexd iu{0.0, u};
  complexd pow{1.0, 0.0};
  complexd s{0.0, 0.0};
  for (int m = 0; m <= terms; ++m) {
    s += shifted_power_sum(alpha, m) * pow;
    pow *= iu;
  }
  return complexd{0.0, 1.0} * s;
}

/// Sampled values of one class-B function: Pi(alpha, lambda_k).
struct ClassBSamples {
  std::vector<double> lambdas;
  std::vector<complexd> values;

  ClassBSamples() = default;
  ClassBSamples(std::vector<double> ls, std::vector<complexd> vs)
      : lambdas(std::move(ls)), values(std::move(vs)) {
    if (lambdas.size() != values.size())
      throw validation_error("ClassBSamples: length mismatch");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      if (lambdas[k] == 0.0 && std::abs(values[k] - complexd{1.0, 0.0}) > 1e-12)
        throw validation_error("ClassBSamples: value at lambda = 0 must be 1");
    }
  }

  std::size_t size() const { return lambdas.size(); }
};

/// Stratum order p from the asymptotic slope of -log|Pi| in lambda,
/// estimated from the two largest sample points: |Pi| ~ 2^p e^{-p lambda} C.
inline int recover_order(const ClassBSamples& samples, double slope_tol = kSlopeTol) {
  if (samples.size() < 2)
    throw validation_error("recover_order: need at least two samples");
  std::size_t i1 = 0;  // largest lambda
  std::size_t i2 = 1;  // second largest
  if (samples.lambdas[i2] > samples.lambdas[i1]) std::swap(i1, i2);
  for (std::size_t k = 2; k < samples.size(); ++k) {
    if (samples.lambdas[k] > samples.lambdas[i1]) {
      i2 = i1;
      i1 = k;
    } else if (samples.lambdas[k] > samples.lambdas[i2]) {
      i2 = k;
    }
  }
  const double dl = samples.lambdas[i1] - samples.lambdas[i2];
  if (dl <= 0.0) throw validation_error("recover_order: need two distinct lambdas");
  const double m1 = std::abs(samples.values[i1]);
  const double m2 = std::abs(samples.values[i2]);
  if (m1 <= 0.0 || m2 <= 0.0)
    throw order_ambiguous_error("recover_order: vanishing sample modulus");
  const double slope = (std::log(m2) - std::log(m1)) / dl;
  const double rounded = std::round(slope);
  if (rounded < 0.0 || std::abs(slope - rounded) > slope_tol)
    throw order_ambiguous_error("recover_order: order ambiguous");
  return static_cast<int>(rounded);
}

/// Knobs of the parameter-recovery algorithm.  Defaults are tuned for
/// p <= 4 and |a_k| <= 3 (recovery error below 1e-4, typically ~1e-9).
struct RecoveryOptions {
  double window = 0.4;         // fit uses samples on |lambda| <= window
  int nodes = 81;              // symmetric uniform nodes in the window
  double diff_step = 1e-5;     // central-difference step for Pi'
  double order_lambda_lo = 6.0;
  double order_lambda_hi = 8.0;
  int series_extra_terms = 4;  // absorb truncation in the p~ fit
  double slope_tol = kSlopeTol;
  double root_imag_tol = kRootImagTol;
};

namespace detail {

inline std::vector<double> fit_nodes(const RecoveryOptions& opt) {
  std::vector<double> nodes(opt.nodes);
  for (int k = 0; k < opt.nodes; ++k)
    nodes[k] = -opt.window + 2.0 * opt.window * k / (opt.nodes - 1);
  return nodes;
}

/// Least-squares estimate of the series coefficients p~_0 .. p~_{2p-1} from
/// log-derivative samples: y = i sum_m c_m (i tanh)^m, unknowns real c_m.
inline std::vector<double> fit_shifted_power_sums(const std::vector<double>& nodes,
                                                  const std::vector<complexd>& logderiv,
                                                  std::size_t p, int extra_terms) {
  const std::size_t ncols = 2 * p + static_cast<std::size_t>(extra_terms);
  const std::size_t rows = 2 * nodes.size();
  Eigen::MatrixXd design(rows, ncols);
  Eigen::VectorXd rhs(rows);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const complexd iu{0.0, std::tanh(nodes[k])};
    complexd pow{0.0, 1.0};  // i * (i u)^m
    for (std::size_t m = 0; m < ncols; ++m) {
      design(2 * k, m) = pow.real();
      design(2 * k + 1, m) = pow.imag();
      pow *= iu;
    }
    rhs(2 * k) = logderiv[k].real();
    rhs(2 * k + 1) = logderiv[k].imag();
  }
  Eigen::VectorXd c = design.colPivHouseholderQr().solve(rhs);
  return {c.data(), c.data() + 2 * p};
}

/// p_1..p_p from p~_0..p~_{p-1} via the triangular relations
/// p~_0 = p_1 and p~_m = p_{m+1} + p_{m-1} (p_0 = p).
inline std::vector<double> power_sums_from_shifted(const std::vector<double>& shifted,
                                                   std::size_t p) {
  std::vector<double> ps(p + 1, 0.0);
  ps[0] = static_cast<double>(p);
  if (p >= 1) ps[1] = shifted[0];
  for (std::size_t m = 1; m + 1 <= p; ++m) ps[m + 1] = shifted[m] - ps[m - 1];
  return {ps.begin() + 1, ps.end()};
}

/// Corrects an estimate of e_1..e_p by linear least squares on the exact
/// identity 1/(Pi cosh^p) - 1 = sum_{k=1}^p (-i)^k e_k tanh^k(lambda).
/// The identity pins the monic polynomial coefficients to ~1e-12, which the
/// truncated-series estimate cannot do when roots cluster.
inline std::vector<double> refine_elementary(const std::function<complexd(double)>& oracle,
                                             const std::vector<double>& nodes,
                                             std::vector<double> estimate) {
  const std::size_t p = estimate.size();
  const std::size_t rows = 2 * nodes.size();
  Eigen::MatrixXd design(rows, p);
  Eigen::VectorXd rhs(rows);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double lam = nodes[j];
    const double u = std::tanh(lam);
    complexd z = 1.0 / (oracle(lam) * std::pow(std::cosh(lam), static_cast<double>(p))) - 1.0;
    complexd w{1.0, 0.0};
    for (std::size_t k = 1; k <= p; ++k) {
      w *= complexd{0.0, -u};
      design(2 * j, k - 1) = w.real();
      design(2 * j + 1, k - 1) = w.imag();
      z -= estimate[k - 1] * w;
    }
    rhs(2 * j) = z.real();
    rhs(2 * j + 1) = z.imag();
  }
  Eigen::VectorXd correction = design.colPivHouseholderQr().solve(rhs);
  for (std::size_t k = 0; k < p; ++k) estimate[k] += correction(static_cast<Eigen::Index>(k));
  return estimate;
}

}  // namespace detail

/// All lambdas the recovery algorithm queries, for callers that must
/// pre-tabulate the oracle (e.g. the CLI reading a CSV of samples).
inline std::vector<double> recovery_design_lambdas(const RecoveryOptions& opt = {}) {
  std::vector<double> out;
  for (double lam : detail::fit_nodes(opt)) {
    out.push_back(lam - opt.diff_step);
    out.push_back(lam);
    out.push_back(lam + opt.diff_step);
  }
  out.push_back(opt.order_lambda_lo);
  out.push_back(opt.order_lambda_hi);
  std::sort(out.begin(), out.end());
  return out;
}

/// Inverse of alpha -> Pi(alpha, .): determines p from the large-lambda decay,
/// extracts the shifted power sums from the log-derivative series by least
/// squares, converts to elementary symmetric values (refined on the exact
/// product identity), and root-finds.
inline Alpha recover_alpha(const std::function<complexd(double)>& oracle,
                           std::optional<int> p_hint = std::nullopt,
                           const RecoveryOptions& opt = {}) {
  int p;
  if (p_hint) {
    if (*p_hint < 0) throw validation_error("recover_alpha: p_hint must be >= 0");
    p = *p_hint;
  } else {
    ClassBSamples order_samples({opt.order_lambda_lo, opt.order_lambda_hi},
                                {oracle(opt.order_lambda_lo), oracle(opt.order_lambda_hi)});
    p = recover_order(order_samples, opt.slope_tol);
  }
  if (p == 0) return Alpha{};

  const std::vector<double> nodes = detail::fit_nodes(opt);
  std::vector<complexd> logderiv(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double lam = nodes[k];
    const complexd dpi = (oracle(lam + opt.diff_step) - oracle(lam - opt.diff_step)) /
                         (2.0 * opt.diff_step);
    logderiv[k] = dpi / oracle(lam);
  }

  const std::size_t up = static_cast<std::size_t>(p);
  const std::vector<double> shifted =
      detail::fit_shifted_power_sums(nodes, logderiv, up, opt.series_extra_terms);
  const std::vector<double> psums = detail::power_sums_from_shifted(shifted, up);
  std::vector<double> elem = elementary_from_power_sums(psums, up);
  elem = detail::refine_elementary(oracle, nodes, std::move(elem));
  return roots_from_elementary(elem, opt.root_imag_tol);
}

/// Grid sup distance between two class-B functions on [-lambda_max, lambda_max];
/// the computable stand-in for the topology of uniform convergence on compacts.
inline double classb_sup_distance(const Alpha& a, const Alpha& b, double lambda_max,
                                  double grid_step) {
  if (lambda_max <= 0.0 || grid_step <= 0.0)
    throw validation_error("classb_sup_distance: lambda_max and grid_step must be > 0");
  double worst = 0.0;
  const int steps = static_cast<int>(std::floor(lambda_max / grid_step));
  for (int k = -steps; k <= steps; ++k) {
    const double lam = k * grid_step;
    worst = std::max(worst, std::abs(pi_eval(a, lam) - pi_eval(b, lam)));
  }
  // include the endpoints when the step does not divide the interval
  worst = std::max(worst, std::abs(pi_eval(a, lambda_max) - pi_eval(b, lambda_max)));
  worst = std::max(worst, std::abs(pi_eval(a, -lambda_max) - pi_eval(b, -lambda_max)));
  return worst;
}

/// Compactness box for {alpha : |Pi(alpha, lambda0)| >= C}:
/// each |a_j| <= 1/(C sinh(lambda0)) and p <= -log(C)/log(cosh(lambda0)).
struct CompactnessBounds {
  double alpha_bound;
  double p_bound;  // real-valued; the integer constraint is floor(p_bound)
};

inline CompactnessBounds compactness_bounds(double C, double lambda0) {
  if (!(C > 0.0 && C < 1.0)) throw validation_error("compactness_bounds: need 0 < C < 1");
  if (!(lambda0 > 0.0)) throw validation_error("compactness_bounds: need lambda0 > 0");
  return {1.0 / (C * std::sinh(lambda0)), -std::log(C) / std::log(std::cosh(lambda0))};
}

}  // namespace slinf

#endif
