/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_GROUP_HPP
#define SLINF_GROUP_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "slinf/alpha.hpp"
#include "slinf/classb.hpp"
#include "slinf/errors.hpp"
#include "slinf/rng.hpp"

namespace slinf {

inline constexpr double kDetTol = 1e-8;

/// Zero-sum vector of log singular values, sorted descending: the lambda of
/// the Cartan form g = u diag(e^{lambda_1}, ...) v.
class CartanProfile {
 public:
  CartanProfile() = default;

  /// Validates |sum| <= sum_tol, then redistributes the residual uniformly so
  /// the zero-sum invariant holds exactly; sorts descending.
  explicit CartanProfile(std::vector<double> lambdas, double sum_tol = kDetTol)
      : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw validation_error("CartanProfile: empty profile");
    double sum = 0.0;
    for (double l : lambdas_) {
      if (!std::isfinite(l)) throw validation_error("CartanProfile: non-finite entry");
      sum += l;
    }
    if (std::abs(sum) > sum_tol)
      throw validation_error("CartanProfile: profile does not sum to zero");
    const double shift = sum / static_cast<double>(lambdas_.size());
    for (double& l : lambdas_) l -= shift;
    std::sort(lambdas_.begin(), lambdas_.end(), std::greater<>());
  }

  std::size_t size() const { return lambdas_.size(); }
  const std::vector<double>& values() const { return lambdas_; }
  double operator[](std::size_t j) const { return lambdas_[j]; }

  CartanProfile negated() const {
    std::vector<double> neg(lambdas_.size());
    for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -lambdas_[j];
    return CartanProfile(std::move(neg));
  }

 private:
  std::vector<double> lambdas_;
};

/// A finite-rank realization of an SL(infinity) element: an n x n complex
/// matrix with det = 1 (within kDetTol).
class GroupElement {
 public:
  explicit GroupElement(Eigen::MatrixXcd entries, double det_tol = kDetTol)
      : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
      throw validation_error("GroupElement: matrix must be square, n >= 1");
    const complexd det = entries_.partialPivLu().determinant();
    if (std::abs(det - complexd{1.0, 0.0}) > det_tol)
      throw validation_error("GroupElement: determinant is not 1");
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return entries_; }

  GroupElement inverse() const {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(entries_);
    return GroupElement(lu.inverse());
  }

  static GroupElement identity(int n) {
    if (n < 1) throw validation_error("GroupElement::identity: n >= 1");
    return GroupElement(Eigen::MatrixXcd::Identity(n, n));
  }

  /// diag(e^{lambda_1}, ..., e^{lambda_n}); unimodular because the profile
  /// sums to zero.
  static GroupElement from_profile(const CartanProfile& profile) {
    const auto n = static_cast<Eigen::Index>(profile.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      m(j, j) = std::exp(profile[static_cast<std::size_t>(j)]);
    return GroupElement(std::move(m));
  }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.dim() != b.dim()) throw validation_error("GroupElement: dimension mismatch");
    return GroupElement(a.entries_ * b.entries_);
  }

 private:
  Eigen::MatrixXcd entries_;
};

/// The canonical rank-two test element diag(e, 1/e) embedded in SL(n).
inline GroupElement canonical_g0(int n = 2) {
  std::vector<double> lam(static_cast<std::size_t>(n), 0.0);
  lam[0] = 1.0;
  lam[1] = -1.0;
  return GroupElement::from_profile(CartanProfile(std::move(lam)));
}

/// log singular values of g, residual-corrected to sum exactly to zero.
inline CartanProfile cartan_profile(const GroupElement& g) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g.matrix());
  const auto& sigma = svd.singularValues();
  std::vector<double> lam(static_cast<std::size_t>(sigma.size()));
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    if (!(sigma(j) > 0.0))
      throw singular_matrix_error("cartan_profile: singular matrix");
    lam[static_cast<std::size_t>(j)] = std::log(sigma(j));
  }
  return CartanProfile(std::move(lam));
}

/// Identity padding g -> g + I_{N-n}: the inductive-limit embedding.  Appended
/// profile entries are 0, so every spherical value is unchanged.
inline GroupElement embed(const GroupElement& g, int N) {
  const int n = g.dim();
  if (N < n) throw validation_error("embed: N must be >= dim(g)");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(N, N);
  m.topLeftCorner(n, n) = g.matrix();
  return GroupElement(std::move(m));
}

/// Random element of SL(n, C): standard complex Gaussian entries rescaled by
/// det^{-1/n} (principal branch).  Deterministic per seed.
inline GroupElement random_sl(int n, std::uint64_t seed) {
  if (n < 2) throw validation_error("random_sl: n must be >= 2");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    const complexd det = m.partialPivLu().determinant();
    if (std::abs(det) < 1e-12) continue;
    m *= std::pow(det, -1.0 / n);
    return GroupElement(std::move(m));
  }
  throw singular_matrix_error("random_sl: 100 singular draws in a row");
}

/// Haar-distributed element of SU(n): QR of a Ginibre matrix with the
/// R-diagonal phase fix (Q <- Q diag(r_jj/|r_jj|)), then det^{-1/n}.
inline GroupElement random_su(int n, std::uint64_t seed) {
  if (n < 2) throw validation_error("random_su: n must be >= 2");
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& qr_mat = qr.matrixQR();
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      const complexd r = qr_mat(j, j);
      if (std::abs(r) < 1e-12) {
        degenerate = true;
        break;
      }
      q.col(j) *= r / std::abs(r);
    }
    if (degenerate) continue;
    const complexd det = q.partialPivLu().determinant();
    q *= std::pow(det, -1.0 / n);
    return GroupElement(std::move(q));
  }
  throw singular_matrix_error("random_su: 100 degenerate draws in a row");
}

/// Extremal positive-type value: phi_alpha(g) = prod_j Pi(alpha, lambda_j)
/// over the Cartan profile.  phi_alpha(e) = 1 and |phi_alpha| <= 1.
inline complexd spherical_eval(const Alpha& alpha, const CartanProfile& profile) {
  complexd r{1.0, 0.0};
  for (double lam : profile.values()) r *= pi_eval(alpha, lam);
  return r;
}

inline complexd spherical_eval(const Alpha& alpha, const GroupElement& g) {
  return spherical_eval(alpha, cartan_profile(g));
}

/// One row of the spherical functional-equation experiment.
struct SphericalLimitRow {
  int n = 0;
  complexd estimate;   // Monte Carlo average of phi_alpha(x k y), k ~ Haar SU(n)
  complexd target;     // phi_alpha(x) phi_alpha(y)
  double abs_err = 0.0;
  double mc_stderr = 0.0;
};

struct SphericalLimitReport {
  std::vector<SphericalLimitRow> rows;
};

/// Monte Carlo test of lim_n int_{K_n} phi(x k y) dk = phi(x) phi(y).
/// Per-draw seeds derive from (seed, n, draw), so the estimate is independent
/// of evaluation order.
inline SphericalLimitReport spherical_limit_test(const Alpha& alpha, const GroupElement& x,
                                                 const GroupElement& y,
                                                 const std::vector<int>& n_list, int mc,
                                                 std::uint64_t seed) {
  if (mc < 100) throw validation_error("spherical_limit_test: mc must be >= 100");
  if (n_list.empty()) throw validation_error("spherical_limit_test: empty n_list");
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1])
      throw validation_error("spherical_limit_test: n_list must be ascending");

  const complexd target = spherical_eval(alpha, x) * spherical_eval(alpha, y);
  SphericalLimitReport report;
  for (int n : n_list) {
    if (n < std::max(x.dim(), y.dim()))
      throw validation_error("spherical_limit_test: n smaller than element dimension");
    const GroupElement xn = embed(x, n);
    const GroupElement yn = embed(y, n);
    std::vector<complexd> draws(static_cast<std::size_t>(mc));
    for (int d = 0; d < mc; ++d) {
      const GroupElement k =
          random_su(n, derive_seed(seed, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(d)));
      draws[static_cast<std::size_t>(d)] = spherical_eval(alpha, xn * k * yn);
    }
    complexd mean{0.0, 0.0};
    for (const complexd& v : draws) mean += v;
    mean /= static_cast<double>(mc);
    double var = 0.0;
    for (const complexd& v : draws) var += std::norm(v - mean);
    const double stderr_mean = std::sqrt(var / (static_cast<double>(mc) * (mc - 1.0)));
    report.rows.push_back({n, mean, target, std::abs(mean - target), stderr_mean});
  }
  return report;
}

}  // namespace slinf

#endif
