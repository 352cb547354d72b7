/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_ERRORS_HPP
#define CAVLOSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cavloss {

// Numerical failures: conditions that arise from the mathematics of a run
// (as opposed to malformed input). The CLI maps these to exit code 3.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Ground-state detection had (numerically) zero probability.
struct postselect_failure : numerical_error {
  explicit postselect_failure(const std::string &msg) : numerical_error(msg) {}
};

// Amplitude would leave the truncated Fock space.
struct truncation_overflow : numerical_error {
  explicit truncation_overflow(const std::string &msg)
      : numerical_error(msg) {}
};

} // namespace cavloss

#endif
