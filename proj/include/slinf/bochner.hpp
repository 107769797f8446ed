/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_BOCHNER_HPP
#define SLINF_BOCHNER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "slinf/alpha.hpp"
#include "slinf/errors.hpp"
#include "slinf/group.hpp"

namespace slinf {

inline constexpr double kRegTol = 1e-10;

/// A finitely atomic positive measure on the parameter space R: the
/// representing measure of the Bochner synthesis.  Duplicate atoms are merged
/// at construction.
class DiscreteParamMeasure {
 public:
  DiscreteParamMeasure() = default;

  DiscreteParamMeasure(std::vector<Alpha> atoms, std::vector<double> weights) {
    if (atoms.size() != weights.size())
      throw validation_error("DiscreteParamMeasure: length mismatch");
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (!(weights[k] >= 0.0) || !std::isfinite(weights[k]))
        throw validation_error("DiscreteParamMeasure: weights must be >= 0");
      add(std::move(atoms[k]), weights[k]);
    }
  }

  const std::vector<Alpha>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  double total_weight() const { return total_weight_; }

  /// Mass on R^* = R \ R_0 (the part visible to negative-type synthesis).
  double nontrivial_mass() const {
    double m = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k)
      if (!atoms_[k].trivial()) m += weights_[k];
    return m;
  }

  /// Restriction to R^*: drops any mass at the trivial point.
  DiscreteParamMeasure restricted_to_nontrivial() const {
    DiscreteParamMeasure out;
    for (std::size_t k = 0; k < atoms_.size(); ++k)
      if (!atoms_[k].trivial()) out.add(atoms_[k], weights_[k]);
    return out;
  }

 private:
  void add(Alpha atom, double weight) {
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      if (atoms_[k] == atom) {
        weights_[k] += weight;
        total_weight_ += weight;
        return;
      }
    }
    atoms_.push_back(std::move(atom));
    weights_.push_back(weight);
    total_weight_ += weight;
  }

  std::vector<Alpha> atoms_;
  std::vector<double> weights_;
  double total_weight_ = 0.0;
};

/// Bochner synthesis: phi(g) = sum_k w_k phi_{alpha_k}(g).
/// phi(e) = total weight; |phi| <= total weight.
inline complexd synth_positive(const DiscreteParamMeasure& mu, const CartanProfile& profile) {
  complexd s{0.0, 0.0};
  for (std::size_t k = 0; k < mu.size(); ++k)
    s += mu.weights()[k] * spherical_eval(mu.atoms()[k], profile);
  return s;
}

inline complexd synth_positive(const DiscreteParamMeasure& mu, const GroupElement& g) {
  return synth_positive(mu, cartan_profile(g));
}

/// Negative-type synthesis: psi(g) = psi0 + sum_k w_k (1 - phi_{alpha_k}(g)),
/// the representation every bounded biinvariant negative-type function admits.
/// Atoms at the trivial point contribute nothing (1 - phi_empty = 0).
inline complexd synth_negative(const DiscreteParamMeasure& mu, double psi0,
                               const CartanProfile& profile) {
  if (!(psi0 >= 0.0)) throw validation_error("synth_negative: psi(e) must be >= 0");
  complexd s{psi0, 0.0};
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (mu.atoms()[k].trivial()) continue;
    s += mu.weights()[k] * (complexd{1.0, 0.0} - spherical_eval(mu.atoms()[k], profile));
  }
  return s;
}

inline complexd synth_negative(const DiscreteParamMeasure& mu, double psi0,
                               const GroupElement& g) {
  return synth_negative(mu, psi0, cartan_profile(g));
}

/// Boundedness certificate for psi = synth_negative(mu, psi0, .):
/// sup |psi - psi0| over random elements and stress profiles must stay below
/// 2 x (mass on R^*), the bound forced by |1 - phi| <= 2.
struct BoundednessReport {
  double bound = 0.0;
  double observed_sup = 0.0;
  bool passed = false;
  std::vector<std::pair<double, double>> stress_rows;  // (lambda, |psi - psi0|)
};

inline BoundednessReport boundedness_check(const DiscreteParamMeasure& mu, double psi0, int n,
                                           int num_samples, std::uint64_t seed) {
  if (num_samples < 1) throw validation_error("boundedness_check: num_samples >= 1");
  if (n < 2) throw validation_error("boundedness_check: n >= 2");
  BoundednessReport report;
  report.bound = 2.0 * mu.nontrivial_mass() + 1e-10;

  for (int s = 0; s < num_samples; ++s) {
    const GroupElement g = random_sl(n, derive_seed(seed, static_cast<std::uint64_t>(s)));
    report.observed_sup =
        std::max(report.observed_sup, std::abs(synth_negative(mu, psi0, g) - psi0));
  }
  // stress profiles diag(e^lambda, e^-lambda) show the approach to the bound
  for (int lam = 1; lam <= 10; ++lam) {
    std::vector<double> prof(static_cast<std::size_t>(n), 0.0);
    prof[0] = static_cast<double>(lam);
    prof[1] = -static_cast<double>(lam);
    const double dev =
        std::abs(synth_negative(mu, psi0, CartanProfile(std::move(prof))) - psi0);
    report.stress_rows.emplace_back(static_cast<double>(lam), dev);
    report.observed_sup = std::max(report.observed_sup, dev);
  }
  report.passed = report.observed_sup <= report.bound;
  return report;
}

/// Lawson-Hanson style active-set NNLS: min ||A x - b||_2 s.t. x >= 0,
/// stopping when no inactive coordinate has gradient above grad_tol.
struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  bool converged = false;
};

inline NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       double grad_tol = kRegTol, int max_iter = 1000) {
  const Eigen::Index n = A.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);

  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::VectorXd grad = A.transpose() * (b - A * x);
    Eigen::Index best = -1;
    double best_grad = grad_tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > best_grad) {
        best_grad = grad(j);
        best = j;
      }
    }
    if (best < 0) {
      return {x, (A * x - b).norm(), true};
    }
    passive[static_cast<std::size_t>(best)] = true;

    // inner loop: solve on the passive set, step back if any coordinate
    // leaves the feasible region
    for (;;) {
      std::vector<Eigen::Index> idx;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
      Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
      const Eigen::VectorXd z = Ap.colPivHouseholderQr().solve(b);

      bool feasible = true;
      for (Eigen::Index c = 0; c < z.size(); ++c)
        if (z(c) <= 0.0) feasible = false;
      if (feasible) {
        x.setZero();
        for (std::size_t c = 0; c < idx.size(); ++c) x(idx[c]) = z(static_cast<Eigen::Index>(c));
        break;
      }
      double step = 1.0;
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const double zc = z(static_cast<Eigen::Index>(c));
        const double xc = x(idx[c]);
        if (zc <= 0.0 && xc - zc > 0.0) step = std::min(step, xc / (xc - zc));
      }
      for (std::size_t c = 0; c < idx.size(); ++c) {
        const double zc = z(static_cast<Eigen::Index>(c));
        x(idx[c]) += step * (zc - x(idx[c]));
        if (x(idx[c]) <= 1e-14) {
          x(idx[c]) = 0.0;
          passive[static_cast<std::size_t>(idx[c])] = false;
        }
      }
    }
  }
  return {x, (A * x - b).norm(), false};
}

/// Result of a discrete-measure fit.
struct FitResult {
  DiscreteParamMeasure measure;
  double residual = 0.0;        // l2 norm of the stacked real/imag residual
  bool ill_conditioned = false; // design condition number above 1e8
  bool converged = true;
};

namespace detail {

inline FitResult fit_on_design(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs,
                               const std::vector<Alpha>& grid, double reg_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const bool ill = !(smin > 0.0) || smax / smin > 1e8;

  const NnlsResult sol = nnls(design, rhs, reg_tol);
  FitResult out;
  out.residual = sol.residual;
  out.ill_conditioned = ill;
  out.converged = sol.converged;
  std::vector<Alpha> atoms;
  std::vector<double> weights;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    atoms.push_back(grid[k]);
    weights.push_back(sol.x(static_cast<Eigen::Index>(k)));
  }
  out.measure = DiscreteParamMeasure(std::move(atoms), std::move(weights));
  return out;
}

}  // namespace detail

/// Recovers the representing measure of a positive-type function from sampled
/// values: nonnegative least squares over candidate atoms on the grid, with
/// the complex samples stacked as real/imag rows.
inline FitResult fit_measure(const std::vector<std::pair<GroupElement, complexd>>& values,
                             const std::vector<Alpha>& grid, double reg_tol = kRegTol) {
  if (grid.empty()) throw validation_error("fit_measure: empty grid");
  if (values.empty()) throw validation_error("fit_measure: no samples");
  const auto S = static_cast<Eigen::Index>(values.size());
  const auto K = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd design(2 * S, K);
  Eigen::VectorXd rhs(2 * S);
  for (Eigen::Index s = 0; s < S; ++s) {
    const CartanProfile prof = cartan_profile(values[static_cast<std::size_t>(s)].first);
    for (Eigen::Index k = 0; k < K; ++k) {
      const complexd v = spherical_eval(grid[static_cast<std::size_t>(k)], prof);
      design(2 * s, k) = v.real();
      design(2 * s + 1, k) = v.imag();
    }
    rhs(2 * s) = values[static_cast<std::size_t>(s)].second.real();
    rhs(2 * s + 1) = values[static_cast<std::size_t>(s)].second.imag();
  }
  return detail::fit_on_design(design, rhs, grid, reg_tol);
}

/// Same fit for negative-type data psi - psi(e), i.e. model
/// sum_k w_k (1 - phi_{alpha_k}).  A trivial atom's column is identically
/// zero, so mass at the trivial point is structurally non-identifiable here:
/// it is reported with weight 0, matching the uniqueness statement, which
/// holds on R^* only.
inline FitResult fit_negative_measure(
    const std::vector<std::pair<GroupElement, complexd>>& values,
    const std::vector<Alpha>& grid, double reg_tol = kRegTol) {
  if (grid.empty()) throw validation_error("fit_negative_measure: empty grid");
  if (values.empty()) throw validation_error("fit_negative_measure: no samples");
  const auto S = static_cast<Eigen::Index>(values.size());
  const auto K = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd design(2 * S, K);
  Eigen::VectorXd rhs(2 * S);
  for (Eigen::Index s = 0; s < S; ++s) {
    const CartanProfile prof = cartan_profile(values[static_cast<std::size_t>(s)].first);
    for (Eigen::Index k = 0; k < K; ++k) {
      const complexd v =
          complexd{1.0, 0.0} - spherical_eval(grid[static_cast<std::size_t>(k)], prof);
      design(2 * s, k) = v.real();
      design(2 * s + 1, k) = v.imag();
    }
    rhs(2 * s) = values[static_cast<std::size_t>(s)].second.real();
    rhs(2 * s + 1) = values[static_cast<std::size_t>(s)].second.imag();
  }
  return detail::fit_on_design(design, rhs, grid, reg_tol);
}

/// Zero-sum diagonal profiles with entries from a low-discrepancy additive
/// recurrence in [lo, hi]^dim: the standard sample design for measure fits
/// (separates nearby atoms better than Gaussian sampling).
inline std::vector<CartanProfile> lowdisc_profiles(int count, int dim, double lo = -2.0,
                                                   double hi = 2.0) {
  if (count < 1 || dim < 2) throw validation_error("lowdisc_profiles: count >= 1, dim >= 2");
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (dim > static_cast<int>(std::size(primes)))
    throw validation_error("lowdisc_profiles: dim too large");
  std::vector<CartanProfile> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 1; s <= count; ++s) {
    std::vector<double> lam(static_cast<std::size_t>(dim));
    double mean = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double irr = std::sqrt(static_cast<double>(primes[j]));
      double x = 0.5 + s * irr;
      x -= std::floor(x);
      lam[static_cast<std::size_t>(j)] = lo + (hi - lo) * x;
      mean += lam[static_cast<std::size_t>(j)];
    }
    mean /= dim;
    for (double& l : lam) l -= mean;
    out.emplace_back(std::move(lam));
  }
  return out;
}

}  // namespace slinf

#endif
