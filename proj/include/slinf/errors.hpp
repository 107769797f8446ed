/* This file is part of slinf.
 *
 * Copyright (c) 2026 the slinf developers.
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef SLINF_ERRORS_HPP
#define SLINF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slinf {

/// Bad argument: non-finite input, violated precondition, malformed data.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root finding produced eigenvalues with imaginary part above tolerance;
/// signals corrupted or non-class-B input samples.
class nonreal_spectrum_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The asymptotic slope of -log|Pi| does not round to an integer.
class order_ambiguous_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Log-derivative series evaluated outside its convergence domain.
class series_divergent_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that must be invertible is numerically singular.
class singular_matrix_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CSV/JSON data could not be parsed into the requested type.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slinf

#endif
