/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_OPTIMIZE_HPP
#define CAVLOSS_OPTIMIZE_HPP

#include <functional>
#include <vector>

#include "cavloss/protocol.hpp"

namespace cavloss {

enum class Objective { fidelity, rate };

// Protocol template with the Ramsey parameters left free. The free vector
// packs (Re eps_1, Im eps_1, ..., Re eps_M, Im eps_M).
struct ObjectiveSpec {
  ProtocolConfig base;                       // epsilons ignored
  Objective objective = Objective::fidelity; // quantity being maximized
};

struct ObjectiveValue {
  double F = 0.0, P = 0.0, R = 0.0;
};

struct OptResult {
  std::vector<ComplexAmp> eps;
  double fidelity = 0.0;
  double probability = 0.0;
  double rate = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct NelderMeadOptions {
  int max_iterations = 2000;
  double diameter_tol = 1e-8;
  double initial_step = 0.5;
};

// F, P, R of the oracle engine at the given Ramsey parameters. Protocol
// errors (failed detection) propagate.
ObjectiveValue evaluate_objective(const ObjectiveSpec &spec,
                                  const std::vector<ComplexAmp> &eps);

// Simplex maximization of f with reflection 1, expansion 2, contraction 0.5,
// shrink 0.5; stops when the simplex diameter drops below the tolerance or
// the iteration cap is reached. Throws numerical_error if f goes non-finite.
struct NelderMeadRun {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
NelderMeadRun nelder_mead(const std::function<double(const std::vector<double> &)> &f,
                          const std::vector<double> &x0,
                          const NelderMeadOptions &opts = {});

// Best of `starts` simplex runs seeded from a low-discrepancy sequence in
// the box |Re eps|, |Im eps| <= 3. Start points depend on (seed, index)
// only, so enlarging `starts` keeps earlier points (nested sets) and results
// are deterministic. Throws numerical_error if every start fails.
OptResult maximize(const ObjectiveSpec &spec, int starts, unsigned seed = 0);

struct SweepCell {
  double g_tau1 = 0.0, g_tau2 = 0.0;
  OptResult result;
};

struct SweepGrid {
  double g_tau1_min = 0.0, g_tau1_max = 0.0, g_tau1_step = 0.0;
  double g_tau2_min = 0.0, g_tau2_max = 0.0, g_tau2_step = 0.0;
};

// One maximize() per grid cell, row-major over (g_tau1, g_tau2).
// Failed cells are recorded as non-converged zero rows rather than thrown.
std::vector<SweepCell> sweep(const SweepGrid &grid, const ObjectiveSpec &spec,
                             int starts, unsigned seed = 0);

namespace detail {

// Radical-inverse low-discrepancy coordinate in [0, 1).
double halton(unsigned long long index, unsigned base);

// Start point j of the seeded sequence, coordinates in [-3, 3].
std::vector<double> start_point(unsigned seed, int j, int n_params);

} // namespace detail

} // namespace cavloss

#endif
