/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cavloss/damping.hpp"
#include "cavloss/fock.hpp"
#include "oracles.hpp"

using cavloss::ComplexAmp;
using cavloss::DampingParams;
using cavloss::DensityMatrix;
using cavloss::MuFactor;
using cavloss::StateVector;

namespace {

double max_abs_diff(const DensityMatrix &a, const DensityMatrix &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

} // namespace

TEST_CASE("mu_factor magnitude and optional phases") {
  CHECK(std::abs(cavloss::mu_factor({0.0, 1.0, 0.0, 0.0, false}).value -
                 1.0) < 1e-15);

  const double t = 2.0 * std::log(2.0);
  CHECK(std::abs(cavloss::mu_factor({1.0, t, 0.0, 0.0, false}).value - 0.5) <
        1e-14);

  // pure detuning rotation: gamma=0, delta_omega * t = pi/2
  const MuFactor rot =
      cavloss::mu_factor({0.0, 1.0, 3.14159265358979323846 / 2.0, 0.0, false});
  CHECK(std::abs(rot.value - ComplexAmp{0.0, -1.0}) < 1e-14);

  // carrier frequency only enters when the flag is set
  const MuFactor off = cavloss::mu_factor({0.0, 1.0, 0.0, 5.0, false});
  CHECK(std::abs(off.value - 1.0) < 1e-15);
  const MuFactor on = cavloss::mu_factor({0.0, 1.0, 0.0, 5.0, true});
  CHECK(std::abs(on.value - std::polar(1.0, -5.0)) < 1e-14);

  CHECK_THROWS_AS(cavloss::mu_factor({-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(cavloss::mu_factor({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("closed form on one photon splits binomially") {
  MuFactor mu;
  mu.value = std::sqrt(0.5);
  const DensityMatrix rho =
      cavloss::damp_closed_form(cavloss::make_fock(1, 2), mu);
  CHECK(std::abs(rho.at(0, 0).real() - 0.5) < 1e-14);
  CHECK(std::abs(rho.at(1, 1).real() - 0.5) < 1e-14);
  CHECK(std::abs(rho.at(0, 1)) < 1e-15);
}

TEST_CASE("closed form on a 0-1 superposition") {
  const double m = 0.8;
  MuFactor mu;
  mu.value = m;
  StateVector c;
  c.amps = {ComplexAmp{std::sqrt(0.5), 0.0}, ComplexAmp{std::sqrt(0.5), 0.0}};
  const DensityMatrix rho = cavloss::damp_closed_form(c, mu);
  CHECK(std::abs(rho.at(1, 1).real() - 0.5 * m * m) < 1e-14);
  CHECK(std::abs(rho.at(0, 0).real() - (1.0 - 0.5 * m * m)) < 1e-14);
  CHECK(std::abs(rho.at(1, 0).real() - 0.5 * m) < 1e-14);
  CHECK(std::abs(rho.at(1, 0).imag()) < 1e-15);
}

TEST_CASE("closed form with mu = 1 reproduces the projector") {
  auto gen = oracles::rng(21);
  const StateVector v = oracles::random_state(gen, 6);
  MuFactor mu;
  mu.value = 1.0;
  CHECK(max_abs_diff(cavloss::damp_closed_form(v, mu), cavloss::outer(v)) <
        1e-14);
}

TEST_CASE("closed form rejects unnormalized input") {
  StateVector c;
  c.amps = {ComplexAmp{1.0, 0.0}, ComplexAmp{0.1, 0.0}};
  MuFactor mu;
  mu.value = 0.5;
  CHECK_THROWS_AS(cavloss::damp_closed_form(c, mu), std::invalid_argument);
}

TEST_CASE("kraus_set structure and completeness") {
  const auto ident = cavloss::kraus_set(1.0, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(ident[0].at(i, j) - (i == j ? 1.0 : 0.0)) < 1e-15);
  for (std::size_t l = 1; l < ident.size(); ++l)
    for (const auto &e : ident[l].entries)
      CHECK(std::abs(e) == 0.0);

  const double m = 0.6;
  const auto two = cavloss::kraus_set(m, 2);
  CHECK(std::abs(two[0].at(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(two[0].at(1, 1) - m) < 1e-15);
  CHECK(std::abs(two[1].at(0, 1) - std::sqrt(1.0 - m * m)) < 1e-15);
  CHECK(std::abs(two[1].at(0, 0)) == 0.0);
  CHECK(std::abs(two[1].at(1, 0)) == 0.0);
  CHECK(std::abs(two[1].at(1, 1)) == 0.0);

  // completeness: sum A^dag A = identity
  const auto ops = cavloss::kraus_set(0.7, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      ComplexAmp acc{0.0, 0.0};
      for (const auto &a : ops)
        for (int k = 0; k < 6; ++k)
          acc += std::conj(a.at(k, i)) * a.at(k, j);
      CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
    }

  CHECK_THROWS_AS(cavloss::kraus_set(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(cavloss::kraus_set(1.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(cavloss::kraus_set(-0.2, 3), std::invalid_argument);
}

TEST_CASE("kraus channel: fixed point, binomial diagonal, infinite time") {
  MuFactor mu;
  mu.value = std::polar(0.3, 1.1);
  const DensityMatrix vac = cavloss::outer(cavloss::make_fock(0, 4));
  CHECK(max_abs_diff(cavloss::damp_kraus(vac, mu), vac) < 1e-15);

  const double x = 0.35; // |mu|^2
  mu.value = std::sqrt(x);
  const DensityMatrix two =
      cavloss::damp_kraus(cavloss::outer(cavloss::make_fock(2, 3)), mu);
  CHECK(std::abs(two.at(0, 0).real() - (1.0 - x) * (1.0 - x)) < 1e-14);
  CHECK(std::abs(two.at(1, 1).real() - 2.0 * x * (1.0 - x)) < 1e-14);
  CHECK(std::abs(two.at(2, 2).real() - x * x) < 1e-14);

  // gamma t >= 50 is indistinguishable from total loss
  auto gen = oracles::rng(22);
  const StateVector v = oracles::random_state(gen, 5);
  const MuFactor late = cavloss::mu_factor({1.0, 50.0});
  const DensityMatrix rho = cavloss::damp_kraus(cavloss::outer(v), late);
  CHECK(max_abs_diff(rho, cavloss::outer(cavloss::make_fock(0, 5))) < 1e-9);
}

TEST_CASE("exact total loss maps everything to vacuum") {
  auto gen = oracles::rng(23);
  const StateVector v = oracles::random_state(gen, 4);
  MuFactor mu;
  mu.value = 0.0;
  const DensityMatrix rho = cavloss::damp_kraus(cavloss::outer(v), mu);
  CHECK(std::abs(rho.at(0, 0).real() - 1.0) < 1e-14);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != 0 || j != 0)
        CHECK(std::abs(rho.at(i, j)) == 0.0);
}

TEST_CASE("diagonal law from Fock states is exact") {
  for (int n = 0; n <= 6; ++n) {
    for (const double gt : {0.05, 0.4, 1.7}) {
      const MuFactor mu = cavloss::mu_factor({1.0, gt});
      const DensityMatrix rho =
          cavloss::damp_closed_form(cavloss::make_fock(n, 7), mu);
      for (int m = 0; m <= 6; ++m)
        CHECK(std::abs(rho.at(m, m).real() -
                       oracles::binomial_population(n, m, std::abs(mu.value))) <
              1e-12);
    }
  }
}

TEST_CASE("engines agree on random states, including complex mu") {
  auto gen = oracles::rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(trial % 5);
    const StateVector v = oracles::random_state(gen, dim);
    DampingParams p;
    p.gamma = 1.0;
    p.duration = 0.05 + 0.03 * trial;
    if (trial % 3 == 1)
      p.delta_omega = 0.7;
    if (trial % 3 == 2) {
      p.carrier_omega = 2.1;
      p.apply_carrier_phase = true;
    }
    const MuFactor mu = cavloss::mu_factor(p);
    const DensityMatrix a = cavloss::damp_closed_form(v, mu);
    const DensityMatrix b = cavloss::damp_kraus(cavloss::outer(v), mu);
    CHECK(max_abs_diff(a, b) < 1e-10);
    CHECK(std::abs(a.trace().real() - 1.0) < 1e-12);
    CHECK(a.hermiticity_residual() < 1e-12);
    CHECK(cavloss::min_eigenvalue(a) >= -1e-10);
  }
}

TEST_CASE("damping is a semigroup in time") {
  auto gen = oracles::rng(25);
  const StateVector v = oracles::random_state(gen, 6);
  DampingParams p1{0.8, 0.9, 0.3, 0.0, false};
  DampingParams p2{0.8, 1.4, 0.3, 0.0, false};
  DampingParams p12{0.8, 2.3, 0.3, 0.0, false};
  const DensityMatrix stepwise = cavloss::damp_kraus(
      cavloss::damp_closed_form(v, cavloss::mu_factor(p1)),
      cavloss::mu_factor(p2));
  const DensityMatrix direct =
      cavloss::damp_closed_form(v, cavloss::mu_factor(p12));
  CHECK(max_abs_diff(stepwise, direct) < 1e-10);
}
