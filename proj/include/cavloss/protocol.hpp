/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_PROTOCOL_HPP
#define CAVLOSS_PROTOCOL_HPP

#include <array>
#include <utility>
#include <vector>

#include "cavloss/dilation.hpp"
#include "cavloss/fock.hpp"

namespace cavloss {

// One atom of the engineering sequence: Ramsey parameter, resonant
// interaction strength, and the relaxation interval after its detection.
struct AtomStep {
  ComplexAmp epsilon{0.0, 0.0};
  double g_tau = 0.0;
  double relax_duration = 0.0; // s
};

struct ProtocolConfig {
  std::vector<AtomStep> steps;
  double gamma = 0.0; // 1/s
  StateVector target; // dim = steps.size() + 1
};

struct EngineerResult {
  DensityMatrix rho; // normalized
  std::vector<double> step_probabilities;
  double total_probability = 0.0;
  double fidelity = 0.0;
  double rate = 0.0; // total_probability * fidelity
};

// Closed-form entries of the unnormalized two-atom output state:
// a, b, c are the |2>, |1>, |0> populations, d, f, g the (2,1), (2,0),
// (1,0) coherences, all up to one common positive factor.
struct CoeffSet {
  double a = 0.0, b = 0.0, c = 0.0;
  ComplexAmp d{0.0, 0.0}, f{0.0, 0.0}, g{0.0, 0.0};
};

// Atom (x) field pure state; amps indexed a * field_dim + n with
// a = 0 the excited level and a = 1 the ground level.
struct AtomFieldState {
  int field_dim = 0;
  std::vector<ComplexAmp> amps;

  ComplexAmp &at(int atom, int n) {
    return amps[static_cast<std::size_t>(atom) * field_dim + n];
  }
  const ComplexAmp &at(int atom, int n) const {
    return amps[static_cast<std::size_t>(atom) * field_dim + n];
  }
  double norm2() const;
};

// Normalized (|e> + i eps |g>) / sqrt(1 + |eps|^2) as (excited, ground).
std::array<ComplexAmp, 2> prepare_atom(ComplexAmp epsilon);

// Resonant exchange: |e>|n> -> C_n|e>|n> - i S_n|g>|n+1> and
// |g>|n> -> C_{n-1}|g>|n> - i S_{n-1}|e>|n-1>, with C_n = cos(g_tau
// sqrt(n+1)), S_n = sin(g_tau sqrt(n+1)). Throws truncation_overflow if the
// top Fock level carries excited-atom amplitude (its partner level is
// outside the truncation).
AtomFieldState jc_step(const AtomFieldState &joint, double g_tau);

// Project onto the atomic ground state. Returns the unnormalized field part
// and the detection probability relative to the input norm. Throws
// postselect_failure when the probability vanishes.
std::pair<StateVector, double> postselect_ground(const AtomFieldState &joint);

// Density-matrix engine: channel composition of atom preparation, resonant
// interaction, ground-state detection, and photon loss after each detection.
EngineerResult run_protocol_oracle(const ProtocolConfig &cfg);

// Pure-state engine: the same protocol evolved as a field (x) environment
// joint state whose loss records carry the reservoir content, traced out at
// the end. Agrees with the oracle engine within 1e-10.
EngineerResult run_protocol_dilation(const ProtocolConfig &cfg);

// Closed forms for the two-atom run with relaxation intervals t_prime (after
// the first detection) and t (after the second). Derived by expanding the
// environment-record algebra, and cross-validated against the engines.
CoeffSet two_atom_coeffs(ComplexAmp eps1, ComplexAmp eps2, double g_tau1,
                         double g_tau2, double gamma, double t_prime,
                         double t);

// Assemble the 3x3 density matrix from a CoeffSet, normalized by a + b + c.
DensityMatrix coeffs_to_rho(const CoeffSet &cs);

// Shared unnormalized scale: a + b + c equals total detection probability
// times (1+|eps1|^2)(1+|eps2|^2).
double coeffs_probability(const CoeffSet &cs, ComplexAmp eps1,
                          ComplexAmp eps2);

} // namespace cavloss

#endif
