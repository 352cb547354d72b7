/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_DILATION_HPP
#define CAVLOSS_DILATION_HPP

#include <map>
#include <utility>
#include <vector>

#include "cavloss/damping.hpp"
#include "cavloss/fock.hpp"

namespace cavloss {

// One relaxation interval. Epochs must be applied in index order, each once.
struct EpochId {
  int index = 0;
};

// Photons lost per epoch, in epoch order. Environment branches are orthogonal
// unless their full records match, so the reservoir mode structure inside an
// epoch never needs to be resolved.
using LossRecord = std::vector<int>;

// Pure state of field plus loss environment: (photon number, record) -> amp.
struct JointState {
  int dim = 0;         // field truncation
  int next_epoch = 0;  // number of epochs already applied
  std::map<std::pair<int, LossRecord>, ComplexAmp> amps;

  double norm2() const;
};

// Field state with an empty loss history.
JointState embed(const StateVector &v);

// Branch amplitude for n initial photons ending with k survivors:
// sqrt(C(n,k)) mu^k s^{(n-k)/2}, s = 1 - mu^2. For each n the squared
// weights sum to one exactly. Throws std::invalid_argument on k > n
// or mu_mag outside (0, 1].
double loss_weight(int n, int k, double mu_mag);

// Fan every branch out over its possible photon losses for one epoch,
// appending the lost count to each record. Phases of mu enter as
// phase(mu)^k per surviving photon. Throws std::invalid_argument if the
// epoch index does not continue the applied sequence.
JointState apply_epoch(const JointState &j, const MuFactor &mu, EpochId epoch);

// rho[n][m] = sum over records of amp(n, rec) * conj(amp(m, rec)).
DensityMatrix trace_out_env(const JointState &j);

} // namespace cavloss

#endif
