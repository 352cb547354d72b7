/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/dilation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cavloss {

double JointState::norm2() const {
  double s = 0.0;
  for (const auto &kv : amps)
    s += std::norm(kv.second);
  return s;
}

JointState embed(const StateVector &v) {
  if (v.dim() < 1)
    throw std::invalid_argument("embed: empty state");
  JointState j;
  j.dim = v.dim();
  j.next_epoch = 0;
  for (int n = 0; n < v.dim(); ++n)
    if (v.amps[static_cast<std::size_t>(n)] != ComplexAmp{})
      j.amps[{n, LossRecord{}}] = v.amps[static_cast<std::size_t>(n)];
  return j;
}

double loss_weight(int n, int k, double mu_mag) {
  if (k > n)
    throw std::invalid_argument("loss_weight: k exceeds n");
  if (n < 0 || k < 0)
    throw std::invalid_argument("loss_weight: negative photon count");
  if (!(mu_mag > 0.0) || mu_mag > 1.0)
    throw std::invalid_argument("loss_weight: mu_mag must lie in (0, 1]");
  double binom = 1.0;
  for (int i = 1; i <= n - k; ++i)
    binom *= static_cast<double>(k + i) / i;
  const double s = 1.0 - mu_mag * mu_mag;
  return std::sqrt(binom) * std::pow(mu_mag, k) * std::pow(s, 0.5 * (n - k));
}

JointState apply_epoch(const JointState &j, const MuFactor &mu,
                       EpochId epoch) {
  if (epoch.index != j.next_epoch)
    throw std::invalid_argument(
        "apply_epoch: epoch " + std::to_string(epoch.index) +
        " out of order, expected " + std::to_string(j.next_epoch));
  const double amu = std::abs(mu.value);
  const double ph_arg = std::arg(mu.value);

  JointState out;
  out.dim = j.dim;
  out.next_epoch = j.next_epoch + 1;
  for (const auto &kv : j.amps) {
    const int n = kv.first.first;
    const LossRecord &rec = kv.first.second;
    for (int k = 0; k <= n; ++k) {
      const double w = loss_weight(n, k, amu);
      LossRecord next = rec;
      next.push_back(n - k);
      out.amps[{k, std::move(next)}] +=
          kv.second * w * std::polar(1.0, ph_arg * k);
    }
  }
  return out;
}

DensityMatrix trace_out_env(const JointState &j) {
  if (j.dim < 1)
    throw std::invalid_argument("trace_out_env: empty state");
  // Group amplitudes by full loss record; distinct records are orthogonal.
  std::map<LossRecord, std::vector<std::pair<int, ComplexAmp>>> groups;
  for (const auto &kv : j.amps)
    groups[kv.first.second].emplace_back(kv.first.first, kv.second);

  DensityMatrix rho(j.dim);
  for (const auto &g : groups)
    for (const auto &a : g.second)
      for (const auto &b : g.second)
        rho.at(a.first, b.first) += a.second * std::conj(b.second);
  return rho;
}

} // namespace cavloss
