/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_ALPHA_HPP
#define SLINF_ALPHA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "slinf/errors.hpp"

namespace slinf {

/// Default bound on |Im| of computed polynomial roots before they are
/// declared non-real (scale of double-precision eigensolvers on degree <= 8).
inline constexpr double kRootImagTol = 1e-6;

/// A point of the stratified parameter space R = ⊔_p R_p: a sorted tuple
/// (a_1 <= ... <= a_p) of real parameters.  p = 0 is the distinguished
/// point of R_0 labelling the trivial spherical function.
class Alpha {
 public:
  Alpha() = default;

  /// Accepts entries in any order, stores them sorted ascending.
  explicit Alpha(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw validation_error("Alpha: non-finite entry");
    }
    std::sort(values_.begin(), values_.end());
  }

  std::size_t order() const { return values_.size(); }  // p
  bool trivial() const { return values_.empty(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  std::vector<double> values_;
};

inline Alpha make_alpha(std::vector<double> values) { return Alpha(std::move(values)); }

/// Newton power sum p_m(alpha) = sum_k alpha_k^m, with p_{-1} = 0 by
/// convention and p_0 = p (the number of parts).
inline double power_sum(const Alpha& alpha, int m) {
  if (m < -1) throw validation_error("power_sum: m must be >= -1");
  if (m == -1) return 0.0;
  if (m == 0) return static_cast<double>(alpha.order());
  double s = 0.0;
  for (double a : alpha.values()) s += std::pow(a, m);
  return s;
}

/// Shifted power sum: p~_m = p_{m+1} + p_{m-1}, m >= 0.
inline double shifted_power_sum(const Alpha& alpha, int m) {
  if (m < 0) throw validation_error("shifted_power_sum: m must be >= 0");
  return power_sum(alpha, m + 1) + power_sum(alpha, m - 1);
}

/// Sup metric within a stratum; +inf across strata (the strata are clopen,
/// no sequence crosses between them).
inline double param_distance(const Alpha& a, const Alpha& b) {
  if (a.order() != b.order()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t k = 0; k < a.order(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

/// Newton's identities: elementary symmetric values e_1..e_p from power sums
/// p_1..p_p.  m e_m = sum_{k=1}^m (-1)^{k-1} e_{m-k} p_k, e_0 = 1.
inline std::vector<double> elementary_from_power_sums(const std::vector<double>& power_sums,
                                                      std::size_t p) {
  if (power_sums.size() != p)
    throw validation_error("elementary_from_power_sums: need exactly p power sums");
  std::vector<double> e(p + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m <= p; ++m) {
    double s = 0.0;
    double sign = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
      s += sign * e[m - k] * power_sums[k - 1];
      sign = -sign;
    }
    e[m] = s / static_cast<double>(m);
  }
  return {e.begin() + 1, e.end()};
}

/// Sorted real roots of x^p - e_1 x^{p-1} + e_2 x^{p-2} - ... + (-1)^p e_p,
/// via companion-matrix eigenvalues.  A root with |Im| > root_imag_tol means
/// the coefficients did not come from a real tuple.
inline Alpha roots_from_elementary(const std::vector<double>& elementary,
                                   double root_imag_tol = kRootImagTol) {
  const std::size_t p = elementary.size();
  if (p == 0) return Alpha{};
  if (p == 1) return Alpha{{elementary[0]}};

  // monic coefficients c_j of x^j: c_{p-j} = (-1)^j e_j
  std::vector<double> c(p + 1, 0.0);
  c[p] = 1.0;
  double sign = -1.0;
  for (std::size_t j = 1; j <= p; ++j) {
    c[p - j] = sign * elementary[j - 1];
    sign = -sign;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (std::size_t i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < p; ++i) companion(i, p - 1) = -c[i];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw nonreal_spectrum_error("roots_from_elementary: eigensolver failed");

  // Newton polish: the companion eigensolver leaves ~1e-9 errors when roots
  // crowd; a few corrector steps on the monic polynomial restore ~1e-13.
  const auto horner = [&c, p](std::complex<double> x) {
    std::complex<double> value{1.0, 0.0};
    std::complex<double> derivative{0.0, 0.0};
    for (std::size_t j = p; j-- > 0;) {
      derivative = derivative * x + value;
      value = value * x + c[j];
    }
    return std::pair{value, derivative};
  };

  std::vector<double> roots(p);
  for (std::size_t i = 0; i < p; ++i) {
    std::complex<double> z = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    for (int iter = 0; iter < 3; ++iter) {
      const auto [value, derivative] = horner(z);
      if (value == std::complex<double>{0.0, 0.0}) break;
      const double dmag = std::abs(derivative);
      if (dmag == 0.0) break;
      const std::complex<double> step = value / derivative;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;  // cluster, do not jump
      z -= step;
    }
    if (std::abs(z.imag()) > root_imag_tol)
      throw nonreal_spectrum_error("roots_from_elementary: non-real spectrum");
    roots[i] = z.real();
  }
  return Alpha(std::move(roots));
}

}  // namespace slinf

#endif
