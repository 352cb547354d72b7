/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_DAMPING_HPP
#define CAVLOSS_DAMPING_HPP

#include "cavloss/fock.hpp"

namespace cavloss {

// Zero-temperature cavity damping over one relaxation interval.
struct DampingParams {
  double gamma = 0.0;         // decay rate, 1/s
  double duration = 0.0;      // relaxation time, s
  double delta_omega = 0.0;   // detuning, rad/s
  double carrier_omega = 0.0; // carrier frequency, rad/s
  bool apply_carrier_phase = false;
};

// Per-photon survival factor mu = exp(-[gamma/2 + i(delta+omega)]t).
// |mu| = exp(-gamma t / 2); the carrier phase enters only when enabled.
struct MuFactor {
  ComplexAmp value{1.0, 0.0};
};

MuFactor mu_factor(const DampingParams &p);

// Reduced density operator after damping the normalized pure state c,
// evaluated as the literal alternating triple sum over the initial
// amplitudes. Throws std::invalid_argument if c is unnormalized beyond 1e-9.
DensityMatrix damp_closed_form(const StateVector &c, const MuFactor &mu);

// Photon-loss operator set {A_l}: <n-l|A_l|n> = sqrt(C(n,l)) mu^{n-l} s^{l/2}
// with s = 1 - mu^2. Satisfies sum A^dag A = identity within 1e-12.
// Throws std::invalid_argument unless 0 < mu_mag <= 1.
std::vector<ComplexMatrix> kraus_set(double mu_mag, int dim);

// Independent oracle for the damping map: sum_l A_l rho A_l^dag, then the
// deterministic phase of mu applied to coherences as phase^{n-m} on (n,m).
DensityMatrix damp_kraus(const DensityMatrix &rho, const MuFactor &mu);

} // namespace cavloss

#endif
