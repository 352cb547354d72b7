/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cavloss/errors.hpp"

namespace cavloss {

namespace detail {

double halton(unsigned long long index, unsigned base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

std::vector<double> start_point(unsigned seed, int j, int n_params) {
  static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                    23, 29, 31, 37, 41, 43, 47, 53};
  if (n_params < 1 || n_params > 16)
    throw std::invalid_argument("start_point: unsupported dimension");
  if (j < 0)
    throw std::invalid_argument("start_point: negative index");
  // Index offset keeps start sets nested in j and disjoint across seeds.
  const unsigned long long idx =
      1ULL + static_cast<unsigned long long>(seed) * 4096ULL +
      static_cast<unsigned long long>(j);
  std::vector<double> x(static_cast<std::size_t>(n_params));
  for (int i = 0; i < n_params; ++i)
    x[static_cast<std::size_t>(i)] =
        -3.0 + 6.0 * halton(idx, primes[i]);
  return x;
}

} // namespace detail

ObjectiveValue evaluate_objective(const ObjectiveSpec &spec,
                                  const std::vector<ComplexAmp> &eps) {
  if (eps.size() != spec.base.steps.size())
    throw std::invalid_argument(
        "evaluate_objective: one epsilon per atom step required");
  ProtocolConfig cfg = spec.base;
  for (std::size_t i = 0; i < eps.size(); ++i)
    cfg.steps[i].epsilon = eps[i];
  const EngineerResult r = run_protocol_oracle(cfg);
  return {r.fidelity, r.total_probability, r.rate};
}

NelderMeadRun
nelder_mead(const std::function<double(const std::vector<double> &)> &f,
            const std::vector<double> &x0, const NelderMeadOptions &opts) {
  const std::size_t n = x0.size();
  if (n == 0)
    throw std::invalid_argument("nelder_mead: empty start point");

  // Internally minimizes -f.
  auto eval = [&](const std::vector<double> &x) {
    const double v = -f(x);
    if (!std::isfinite(v))
      throw numerical_error("nelder_mead: objective is not finite");
    return v;
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i)
    pts[i + 1][i] += opts.initial_step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    vals[i] = eval(pts[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) {
                       return vals[a] < vals[b];
                     });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = std::move(pts[idx[i]]);
      v2[i] = vals[idx[i]];
    }
    pts = std::move(p2);
    vals = std::move(v2);
  };

  int it = 0;
  bool converged = false;
  for (; it < opts.max_iterations; ++it) {
    order();

    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double d = pts[i][k] - pts[0][k];
        d2 += d * d;
      }
      diam = std::max(diam, std::sqrt(d2));
    }
    if (diam < opts.diameter_tol) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        centroid[k] += pts[i][k] / static_cast<double>(n);

    auto blend = [&](const std::vector<double> &a, double ca,
                     const std::vector<double> &b, double cb) {
      std::vector<double> r(n);
      for (std::size_t k = 0; k < n; ++k)
        r[k] = ca * a[k] + cb * b[k];
      return r;
    };

    const std::vector<double> &worst = pts[n];
    std::vector<double> xr = blend(centroid, 2.0, worst, -1.0);
    const double vr = eval(xr);

    if (vr < vals[0]) {
      std::vector<double> xe = blend(centroid, 3.0, worst, -2.0);
      const double ve = eval(xe);
      if (ve < vr) {
        pts[n] = std::move(xe);
        vals[n] = ve;
      } else {
        pts[n] = std::move(xr);
        vals[n] = vr;
      }
    } else if (vr < vals[n - 1]) {
      pts[n] = std::move(xr);
      vals[n] = vr;
    } else {
      bool shrink = false;
      if (vr < vals[n]) {
        std::vector<double> xc = blend(centroid, 0.5, xr, 0.5);
        const double vc = eval(xc);
        if (vc <= vr) {
          pts[n] = std::move(xc);
          vals[n] = vc;
        } else {
          shrink = true;
        }
      } else {
        std::vector<double> xc = blend(centroid, 0.5, worst, 0.5);
        const double vc = eval(xc);
        if (vc < vals[n]) {
          pts[n] = std::move(xc);
          vals[n] = vc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (std::size_t i = 1; i <= n; ++i) {
          pts[i] = blend(pts[0], 0.5, pts[i], 0.5);
          vals[i] = eval(pts[i]);
        }
      }
    }
  }
  order();

  NelderMeadRun run;
  run.x = pts[0];
  run.value = -vals[0];
  run.iterations = it;
  run.converged = converged;
  return run;
}

namespace {

std::vector<ComplexAmp> unpack_eps(const std::vector<double> &x) {
  std::vector<ComplexAmp> eps(x.size() / 2);
  for (std::size_t i = 0; i < eps.size(); ++i)
    eps[i] = ComplexAmp{x[2 * i], x[2 * i + 1]};
  return eps;
}

} // namespace

OptResult maximize(const ObjectiveSpec &spec, int starts, unsigned seed) {
  if (starts < 1)
    throw std::invalid_argument("maximize: starts must be positive");
  const int n_params = 2 * static_cast<int>(spec.base.steps.size());

  // A vanished detection scores zero; the simplex walks back out on its own.
  auto score = [&](const std::vector<double> &x) {
    try {
      const ObjectiveValue v = evaluate_objective(spec, unpack_eps(x));
      return spec.objective == Objective::fidelity ? v.F : v.R;
    } catch (const postselect_failure &) {
      return 0.0;
    }
  };

  bool have_best = false;
  NelderMeadRun best;
  for (int j = 0; j < starts; ++j) {
    try {
      NelderMeadRun run =
          nelder_mead(score, detail::start_point(seed, j, n_params));
      if (!have_best || run.value > best.value) {
        best = std::move(run);
        have_best = true;
      }
    } catch (const numerical_error &) {
      // skip this start
    }
  }
  if (!have_best)
    throw numerical_error("maximize: every start failed");

  OptResult res;
  res.eps = unpack_eps(best.x);
  res.iterations = best.iterations;
  res.converged = best.converged;
  try {
    const ObjectiveValue v = evaluate_objective(spec, res.eps);
    res.fidelity = v.F;
    res.probability = v.P;
    res.rate = v.R;
  } catch (const postselect_failure &) {
    // best point scored zero everywhere; report it as such
  }
  return res;
}

std::vector<SweepCell> sweep(const SweepGrid &grid, const ObjectiveSpec &spec,
                             int starts, unsigned seed) {
  if (spec.base.steps.size() != 2)
    throw std::invalid_argument("sweep: grid spans exactly two atom steps");
  if (!(grid.g_tau1_step > 0.0) || !(grid.g_tau2_step > 0.0))
    throw std::invalid_argument("sweep: grid steps must be positive");
  if (grid.g_tau1_max < grid.g_tau1_min || grid.g_tau2_max < grid.g_tau2_min)
    throw std::invalid_argument("sweep: empty grid range");

  const int n1 = static_cast<int>(
      std::floor((grid.g_tau1_max - grid.g_tau1_min) / grid.g_tau1_step +
                 1e-9)) + 1;
  const int n2 = static_cast<int>(
      std::floor((grid.g_tau2_max - grid.g_tau2_min) / grid.g_tau2_step +
                 1e-9)) + 1;

  std::vector<SweepCell> cells;
  cells.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i1 = 0; i1 < n1; ++i1)
    for (int i2 = 0; i2 < n2; ++i2) {
      SweepCell cell;
      cell.g_tau1 = grid.g_tau1_min + i1 * grid.g_tau1_step;
      cell.g_tau2 = grid.g_tau2_min + i2 * grid.g_tau2_step;
      ObjectiveSpec local = spec;
      local.base.steps[0].g_tau = cell.g_tau1;
      local.base.steps[1].g_tau = cell.g_tau2;
      try {
        cell.result = maximize(local, starts, seed);
      } catch (const numerical_error &) {
        cell.result = OptResult{};
        cell.result.eps.assign(2, ComplexAmp{});
      }
      cells.push_back(std::move(cell));
    }
  return cells;
}

} // namespace cavloss
