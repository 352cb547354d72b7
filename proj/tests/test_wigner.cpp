/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cavloss/wigner.hpp"
#include "oracles.hpp"

using cavloss::ComplexAmp;
using cavloss::DensityMatrix;
using cavloss::StateVector;
using cavloss::WignerGrid;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityMatrix fock_rho(int n, int dim) {
  return cavloss::outer(cavloss::make_fock(n, dim));
}

} // namespace

TEST_CASE("origin values anchor the convention") {
  CHECK(std::abs(cavloss::wigner_point(fock_rho(0, 3), ComplexAmp{}) -
                 2.0 / kPi) < 1e-9);
  CHECK(std::abs(cavloss::wigner_point(fock_rho(1, 3), ComplexAmp{}) +
                 2.0 / kPi) < 1e-6);

  DensityMatrix mix(2);
  mix.at(0, 0) = 0.5;
  mix.at(1, 1) = 0.5;
  CHECK(std::abs(cavloss::wigner_point(mix, ComplexAmp{})) < 1e-9);
}

TEST_CASE("Fock-state points match the closed form") {
  for (int n = 0; n <= 2; ++n) {
    const DensityMatrix rho = fock_rho(n, 4);
    for (const ComplexAmp alpha :
         {ComplexAmp{0.3, 0.0}, ComplexAmp{-0.8, 0.55}, ComplexAmp{1.4, -1.1},
          ComplexAmp{0.0, 2.0}}) {
      CHECK(std::abs(cavloss::wigner_point(rho, alpha) -
                     oracles::fock_wigner(n, alpha)) < 1e-9);
    }
  }
}

TEST_CASE("wigner is linear in the state") {
  auto gen = oracles::rng(51);
  const DensityMatrix a = cavloss::outer(oracles::random_state(gen, 4));
  const DensityMatrix b = cavloss::outer(oracles::random_state(gen, 4));
  DensityMatrix mix(4);
  for (std::size_t i = 0; i < mix.entries.size(); ++i)
    mix.entries[i] = 0.3 * a.entries[i] + 0.7 * b.entries[i];
  for (const ComplexAmp alpha : {ComplexAmp{0.2, 0.1}, ComplexAmp{-1.0, 0.7}}) {
    const double w = cavloss::wigner_point(mix, alpha);
    const double wa = cavloss::wigner_point(a, alpha);
    const double wb = cavloss::wigner_point(b, alpha);
    CHECK(std::abs(w - (0.3 * wa + 0.7 * wb)) < 1e-10);
  }
}

TEST_CASE("vacuum grid is the Gaussian with no negativity") {
  const WignerGrid g = cavloss::wigner_grid(fock_rho(0, 2), -2.0, 2.0, -2.0,
                                            2.0, 0.25);
  CHECK(g.nq == 17);
  CHECK(g.np == 17);
  for (int ip = 0; ip < g.np; ++ip)
    for (int iq = 0; iq < g.nq; ++iq) {
      const double q = g.q_min + iq * g.step;
      const double p = g.p_min + ip * g.step;
      const double expect = 2.0 / kPi * std::exp(-2.0 * (q * q + p * p));
      CHECK(std::abs(g.at(iq, ip) - expect) < 1e-6);
    }
  CHECK(g.min_value >= -1e-9);
  CHECK(g.negative_volume >= -1e-9);
  CHECK(g.negative_volume <= 0.0);
}

TEST_CASE("one-photon grid integrates to the trace") {
  const WignerGrid g =
      cavloss::wigner_grid(fock_rho(1, 2), -4.0, 4.0, -4.0, 4.0, 0.05);
  double integral = 0.0;
  for (const double w : g.values)
    integral += w * g.step * g.step;
  CHECK(std::abs(integral - 1.0) < 2e-3);
  CHECK(g.min_value < -0.5); // deep negativity at the origin
  CHECK(g.negative_volume < -0.1);
  CHECK(g.values[static_cast<std::size_t>(g.np / 2) * g.nq + g.nq / 2] ==
        doctest::Approx(-2.0 / kPi).epsilon(1e-6));
}

TEST_CASE("grid entries agree with pointwise evaluation") {
  auto gen = oracles::rng(52);
  const DensityMatrix rho = cavloss::outer(oracles::random_state(gen, 3));
  const WignerGrid g = cavloss::wigner_grid(rho, -1.0, 1.0, -0.5, 0.5, 0.5);
  CHECK(g.nq == 5);
  CHECK(g.np == 3);
  for (int ip = 0; ip < g.np; ++ip)
    for (int iq = 0; iq < g.nq; ++iq) {
      const ComplexAmp alpha{g.q_min + iq * g.step, g.p_min + ip * g.step};
      CHECK(std::abs(g.at(iq, ip) - cavloss::wigner_point(rho, alpha)) <
            1e-10);
    }

  CHECK_THROWS_AS(cavloss::wigner_grid(rho, -1.0, 1.0, -1.0, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("equal-weight three-level target has negative regions") {
  StateVector t;
  const double a = 1.0 / std::sqrt(3.0);
  t.amps = {ComplexAmp{a, 0.0}, ComplexAmp{a, 0.0}, ComplexAmp{a, 0.0}};
  const DensityMatrix rho = cavloss::outer(t);
  CHECK(std::abs(cavloss::wigner_point(rho, ComplexAmp{}) -
                 2.0 / (3.0 * kPi)) < 1e-9);
  const WignerGrid g = cavloss::wigner_grid(rho, -2.0, 2.0, -2.0, 2.0, 0.05);
  CHECK(g.min_value < -0.05);
  CHECK(g.min_value > -0.25);
  CHECK(std::abs(cavloss::wigner_point(rho, ComplexAmp{-0.16, 0.66}) -
                 (-0.1714505)) < 2e-4);
}

TEST_CASE("histogram rows cover every element") {
  const auto vac = cavloss::rho_histogram(fock_rho(0, 2));
  REQUIRE(vac.size() == 4);
  CHECK(vac[0].i == 0);
  CHECK(vac[0].j == 0);
  CHECK(vac[0].re == doctest::Approx(1.0));
  CHECK(vac[0].abs == doctest::Approx(1.0));
  for (std::size_t k = 1; k < vac.size(); ++k)
    CHECK(vac[k].abs == doctest::Approx(0.0).scale(1.0));

  StateVector plus;
  plus.amps = {ComplexAmp{std::sqrt(0.5), 0.0}, ComplexAmp{std::sqrt(0.5), 0.0}};
  const auto rows = cavloss::rho_histogram(cavloss::outer(plus));
  REQUIRE(rows.size() == 4);
  for (const auto &r : rows)
    CHECK(r.abs == doctest::Approx(0.5).epsilon(1e-12));
}
