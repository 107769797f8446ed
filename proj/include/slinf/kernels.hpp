/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_KERNELS_HPP
#define SLINF_KERNELS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "slinf/errors.hpp"
#include "slinf/group.hpp"

namespace slinf {

inline constexpr double kGramTol = 1e-8;

/// Certification record for one Gram-matrix test.
struct GramReport {
  std::size_t size = 0;
  double hermiticity_defect = 0.0;   // max |K_ij - conj(K_ji)|
  double extremal_eigenvalue = 0.0;  // min eigenvalue of the checked Hermitian form
  bool passed = false;
  std::optional<Eigen::VectorXcd> witness;  // violating coefficient vector when failed
};

/// K_ij = f(g_j^{-1} g_i): the translated kernel of f on the element set.
inline Eigen::MatrixXcd gram_matrix(const std::function<complexd(const GroupElement&)>& f,
                                    const std::vector<GroupElement>& elements) {
  if (elements.empty()) throw validation_error("gram_matrix: empty element set");
  const int n = elements.front().dim();
  for (const auto& g : elements)
    if (g.dim() != n) throw validation_error("gram_matrix: dimension mismatch");

  const auto N = static_cast<Eigen::Index>(elements.size());
  std::vector<GroupElement> inverses;
  inverses.reserve(elements.size());
  for (const auto& g : elements) inverses.push_back(g.inverse());

  Eigen::MatrixXcd K(N, N);
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = 0; j < N; ++j)
      K(i, j) = f(inverses[static_cast<std::size_t>(j)] * elements[static_cast<std::size_t>(i)]);
  return K;
}

namespace detail {

inline double max_abs(const Eigen::MatrixXcd& K) { return K.cwiseAbs().maxCoeff(); }

inline double hermiticity_defect(const Eigen::MatrixXcd& K) {
  return (K - K.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Positive-type certificate: K must be Hermitian (defect <= tol) and its
/// Hermitian part PSD up to the eigensolver slack tol (1 + max|K|) N.
inline GramReport psd_check(const Eigen::MatrixXcd& K, double tol = kGramTol) {
  if (K.rows() != K.cols()) throw validation_error("psd_check: K must be square");
  GramReport report;
  report.size = static_cast<std::size_t>(K.rows());
  report.hermiticity_defect = detail::hermiticity_defect(K);

  const Eigen::MatrixXcd H = 0.5 * (K + K.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  const Eigen::Index imin = 0;  // eigenvalues sorted ascending
  report.extremal_eigenvalue = eig.eigenvalues()(imin);

  const double slack = tol * (1.0 + detail::max_abs(K)) * static_cast<double>(K.rows());
  report.passed =
      report.hermiticity_defect <= tol && report.extremal_eigenvalue >= -slack;
  if (!report.passed) report.witness = eig.eigenvectors().col(imin);
  return report;
}

/// Negative-type certificate: with P = I - J/N projecting onto sum(c) = 0,
/// the Hermitian part of -PKP must be PSD.  A failing witness lies in the
/// sum-zero subspace (eigenvectors of nonzero eigenvalues are orthogonal to
/// the ones vector).
inline GramReport negtype_check(const Eigen::MatrixXcd& K, double tol = kGramTol) {
  if (K.rows() != K.cols()) throw validation_error("negtype_check: K must be square");
  const Eigen::Index N = K.rows();
  GramReport report;
  report.size = static_cast<std::size_t>(N);
  report.hermiticity_defect = detail::hermiticity_defect(K);

  const Eigen::MatrixXcd P =
      Eigen::MatrixXcd::Identity(N, N) -
      Eigen::MatrixXcd::Constant(N, N, complexd{1.0 / static_cast<double>(N), 0.0});
  const Eigen::MatrixXcd M = -(P * K * P);
  const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
  report.extremal_eigenvalue = eig.eigenvalues()(0);

  const double slack = tol * (1.0 + detail::max_abs(K)) * static_cast<double>(N);
  report.passed =
      report.hermiticity_defect <= tol && report.extremal_eigenvalue >= -slack;
  if (!report.passed) report.witness = eig.eigenvectors().col(0);
  return report;
}

/// Joint Schoenberg certificate: e^{-t psi} positive type for every t in
/// t_list, and psi itself of negative type.
struct SchoenbergReport {
  std::vector<std::pair<double, GramReport>> exp_checks;
  GramReport negtype;
  bool passed = false;
};

inline SchoenbergReport schoenberg_check(
    const std::function<complexd(const GroupElement&)>& psi,
    const std::vector<GroupElement>& elements, const std::vector<double>& t_list,
    double tol = kGramTol) {
  for (double t : t_list)
    if (!(t > 0.0)) throw validation_error("schoenberg_check: t values must be > 0");

  SchoenbergReport report;
  const Eigen::MatrixXcd K_psi = gram_matrix(psi, elements);
  report.negtype = negtype_check(K_psi, tol);
  bool all = report.negtype.passed;
  for (double t : t_list) {
    const auto f = [&psi, t](const GroupElement& g) { return std::exp(-t * psi(g)); };
    GramReport r = psd_check(gram_matrix(f, elements), tol);
    all = all && r.passed;
    report.exp_checks.emplace_back(t, std::move(r));
  }
  report.passed = all;
  return report;
}

}  // namespace slinf

#endif
