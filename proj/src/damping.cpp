/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/damping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cavloss {

namespace {

// Exact in double up to 22!; table covers every dimension this library
// targets (~100 levels).
constexpr int kMaxFact = 170;

const double *factorial_table() {
  static double table[kMaxFact + 1];
  static bool init = [] {
    table[0] = 1.0;
    for (int i = 1; i <= kMaxFact; ++i)
      table[i] = table[i - 1] * i;
    return true;
  }();
  (void)init;
  return table;
}

double fact(int n) { return factorial_table()[n]; }

// sqrt(n! m! / (p! q!)) without overflow for the supported dimensions.
double sqrt_fact_ratio(int n, int m, int p, int q) {
  if (n <= 85 && m <= 85)
    return std::sqrt(fact(n) * fact(m) / (fact(p) * fact(q)));
  const double lg = std::lgamma(n + 1.0) + std::lgamma(m + 1.0) -
                    std::lgamma(p + 1.0) - std::lgamma(q + 1.0);
  return std::exp(0.5 * lg);
}

double binom(int n, int k) {
  if (n <= 85)
    return fact(n) / (fact(k) * fact(n - k));
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

} // namespace

MuFactor mu_factor(const DampingParams &p) {
  if (p.gamma < 0.0 || p.duration < 0.0)
    throw std::invalid_argument("mu_factor: gamma and duration must be >= 0");
  const double mag = std::exp(-0.5 * p.gamma * p.duration);
  double phase = p.delta_omega;
  if (p.apply_carrier_phase)
    phase += p.carrier_omega;
  MuFactor mu;
  mu.value = std::polar(mag, -phase * p.duration);
  return mu;
}

DensityMatrix damp_closed_form(const StateVector &c, const MuFactor &mu) {
  const int dim = c.dim();
  if (dim < 1)
    throw std::invalid_argument("damp_closed_form: empty state");
  if (std::abs(c.norm2() - 1.0) > 1e-9)
    throw std::invalid_argument(
        "damp_closed_form: input state unnormalized beyond 1e-9");

  const double amu = std::abs(mu.value);
  const double ph_arg = (amu > 0.0) ? std::arg(mu.value) : 0.0;

  DensityMatrix rho(dim);
  for (int n = 0; n < dim; ++n) {
    if (c.amps[n] == ComplexAmp{})
      continue;
    for (int m = 0; m < dim; ++m) {
      if (c.amps[m] == ComplexAmp{})
        continue;
      const ComplexAmp pref = c.amps[n] * std::conj(c.amps[m]) *
                              std::polar(1.0, ph_arg * (n - m));
      for (int j = 0; j <= m; ++j) {
        for (int l = 0; l <= j; ++l) {
          const int p = j + n - l - m;
          if (p < 0)
            continue; // annihilated past the vacuum; no such branch
          const int q = j - l;
          const double mag = std::pow(amu, 2 * j + n - m);
          const double sign = (l % 2 == 0) ? 1.0 : -1.0;
          const double coef =
              sign * mag / (fact(l) * fact(m - j)) * sqrt_fact_ratio(n, m, p, q);
          rho.at(p, q) += pref * coef;
        }
      }
    }
  }
  return rho;
}

std::vector<ComplexMatrix> kraus_set(double mu_mag, int dim) {
  if (!(mu_mag > 0.0) || mu_mag > 1.0)
    throw std::invalid_argument("kraus_set: mu_mag must lie in (0, 1]");
  if (dim < 1)
    throw std::invalid_argument("kraus_set: dim must be positive");
  const double s = 1.0 - mu_mag * mu_mag;
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(dim));
  for (int l = 0; l < dim; ++l) {
    ComplexMatrix a(dim);
    for (int n = l; n < dim; ++n)
      a.at(n - l, n) = std::sqrt(binom(n, l)) * std::pow(mu_mag, n - l) *
                       std::pow(s, 0.5 * l);
    ops.push_back(std::move(a));
  }
  return ops;
}

DensityMatrix damp_kraus(const DensityMatrix &rho, const MuFactor &mu) {
  const int dim = rho.dim;
  if (dim < 1)
    throw std::invalid_argument("damp_kraus: empty matrix");
  const double amu = std::abs(mu.value);

  DensityMatrix out(dim);
  if (amu == 0.0) { // every photon is lost
    out.at(0, 0) = rho.trace();
    return out;
  }

  // Each operator holds a single diagonal: a_l maps |n> to |n - l>, so
  // (a_l rho a_l^dag)[i][j] needs only the (i+l, j+l) entry of rho.
  const auto ops = kraus_set(amu, dim);
  for (int l = 0; l < dim; ++l) {
    const ComplexMatrix &a = ops[static_cast<std::size_t>(l)];
    for (int i = 0; i + l < dim; ++i)
      for (int j = 0; j + l < dim; ++j)
        out.at(i, j) +=
            a.at(i, i + l) * rho.at(i + l, j + l) * std::conj(a.at(j, j + l));
  }

  const double ph_arg = std::arg(mu.value);
  if (ph_arg != 0.0)
    for (int n = 0; n < dim; ++n)
      for (int m = 0; m < dim; ++m)
        out.at(n, m) *= std::polar(1.0, ph_arg * (n - m));
  return out;
}

} // namespace cavloss
