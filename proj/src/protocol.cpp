/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cavloss/errors.hpp"

namespace cavloss {

namespace {

constexpr ComplexAmp kMinusI{0.0, -1.0};
// Population below this at the top excited level is treated as numerical
// dust rather than a real truncation hit.
constexpr double kOverflowTol = 1e-20;
constexpr double kPostselectTol = 1e-15;

void check_config(const ProtocolConfig &cfg) {
  if (cfg.steps.empty())
    throw std::invalid_argument("protocol: no atom steps");
  if (cfg.gamma < 0.0)
    throw std::invalid_argument("protocol: gamma must be >= 0");
  const int want = static_cast<int>(cfg.steps.size()) + 1;
  if (cfg.target.dim() != want)
    throw std::invalid_argument("protocol: target dim " +
                                std::to_string(cfg.target.dim()) +
                                ", expected " + std::to_string(want));
  if (std::abs(cfg.target.norm2() - 1.0) > 1e-9)
    throw std::invalid_argument("protocol: target state unnormalized");
}

} // namespace

double AtomFieldState::norm2() const {
  double s = 0.0;
  for (const auto &a : amps)
    s += std::norm(a);
  return s;
}

std::array<ComplexAmp, 2> prepare_atom(ComplexAmp epsilon) {
  const double norm = std::sqrt(1.0 + std::norm(epsilon));
  return {ComplexAmp{1.0, 0.0} / norm, ComplexAmp{0.0, 1.0} * epsilon / norm};
}

AtomFieldState jc_step(const AtomFieldState &joint, double g_tau) {
  const int fd = joint.field_dim;
  if (fd < 1)
    throw std::invalid_argument("jc_step: empty field");

  AtomFieldState out;
  out.field_dim = fd;
  out.amps.assign(static_cast<std::size_t>(2) * fd, ComplexAmp{});

  const ComplexAmp top = joint.at(0, fd - 1);
  if (std::norm(top) > kOverflowTol * joint.norm2())
    throw truncation_overflow(
        "jc_step: excited amplitude at the top Fock level");
  out.at(0, fd - 1) = top;

  out.at(1, 0) = joint.at(1, 0);
  for (int n = 0; n + 1 < fd; ++n) {
    const double c = std::cos(g_tau * std::sqrt(n + 1.0));
    const double s = std::sin(g_tau * std::sqrt(n + 1.0));
    out.at(0, n) += c * joint.at(0, n) + kMinusI * s * joint.at(1, n + 1);
    out.at(1, n + 1) += kMinusI * s * joint.at(0, n) + c * joint.at(1, n + 1);
  }
  return out;
}

std::pair<StateVector, double> postselect_ground(const AtomFieldState &joint) {
  const int fd = joint.field_dim;
  if (fd < 1)
    throw std::invalid_argument("postselect_ground: empty field");
  const double total = joint.norm2();
  if (total <= 0.0)
    throw std::invalid_argument("postselect_ground: zero state");

  StateVector field;
  field.amps.assign(static_cast<std::size_t>(fd), ComplexAmp{});
  double g2 = 0.0;
  for (int n = 0; n < fd; ++n) {
    field.amps[static_cast<std::size_t>(n)] = joint.at(1, n);
    g2 += std::norm(joint.at(1, n));
  }
  const double prob = g2 / total;
  if (prob < kPostselectTol)
    throw postselect_failure("postselect_ground: ground amplitude vanished");
  return {std::move(field), prob};
}

EngineerResult run_protocol_oracle(const ProtocolConfig &cfg) {
  check_config(cfg);
  const int dim = cfg.target.dim();

  DensityMatrix rho(dim);
  rho.at(0, 0) = 1.0;

  EngineerResult res;
  res.total_probability = 1.0;
  for (std::size_t k = 0; k < cfg.steps.size(); ++k) {
    const AtomStep &st = cfg.steps[k];
    const auto atom = prepare_atom(st.epsilon);

    // The step acts on the field as rho -> m rho m^dag with
    // m = <g| U (|atom> (x) 1); U cannot leak out of the truncation
    // unless the top level holds excited population.
    if (std::norm(atom[0]) * rho.at(dim - 1, dim - 1).real() > kOverflowTol)
      throw truncation_overflow("protocol: top Fock level reached with the "
                                "atom excited at step " +
                                std::to_string(k));

    ComplexMatrix m(dim);
    for (int n = 0; n < dim; ++n) {
      m.at(n, n) = atom[1] * std::cos(st.g_tau * std::sqrt(double(n)));
      if (n + 1 < dim)
        m.at(n + 1, n) =
            atom[0] * kMinusI * std::sin(st.g_tau * std::sqrt(n + 1.0));
    }

    DensityMatrix next(dim);
    double p = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        ComplexAmp acc{0.0, 0.0};
        for (int n = std::max(0, i - 1); n <= std::min(i, dim - 1); ++n)
          for (int mcol = std::max(0, j - 1); mcol <= std::min(j, dim - 1);
               ++mcol)
            acc += m.at(i, n) * rho.at(n, mcol) * std::conj(m.at(j, mcol));
        next.at(i, j) = acc;
        if (i == j)
          p += acc.real();
      }
    if (p < kPostselectTol)
      throw postselect_failure("protocol: detection probability vanished at "
                               "step " +
                               std::to_string(k));
    for (auto &e : next.entries)
      e /= p;

    const MuFactor mu = mu_factor({cfg.gamma, st.relax_duration});
    rho = damp_kraus(next, mu);
    res.step_probabilities.push_back(p);
    res.total_probability *= p;
  }

  res.rho = std::move(rho);
  res.fidelity = fidelity(cfg.target, res.rho);
  res.rate = res.total_probability * res.fidelity;
  return res;
}

EngineerResult run_protocol_dilation(const ProtocolConfig &cfg) {
  check_config(cfg);
  const int dim = cfg.target.dim();

  StateVector vac;
  vac.amps.assign(static_cast<std::size_t>(dim), ComplexAmp{});
  vac.amps[0] = 1.0;
  JointState js = embed(vac);

  EngineerResult res;
  res.total_probability = 1.0;
  using Key = std::pair<int, LossRecord>;
  for (std::size_t k = 0; k < cfg.steps.size(); ++k) {
    const AtomStep &st = cfg.steps[k];
    const auto atom = prepare_atom(st.epsilon);

    // Atom (x) field (x) environment, with the atom level kept explicit.
    std::map<Key, ComplexAmp> exc, gnd;
    for (const auto &kv : js.amps) {
      const int n = kv.first.first;
      if (n == dim - 1 &&
          std::norm(atom[0] * kv.second) > kOverflowTol * js.norm2())
        throw truncation_overflow("protocol: top Fock level reached with the "
                                  "atom excited at step " +
                                  std::to_string(k));
      if (n + 1 < dim)
        exc[kv.first] = atom[0] * kv.second;
      gnd[kv.first] = atom[1] * kv.second;
    }

    // Detection keeps only the ground component, so the excited output
    // branches are never materialized.
    std::map<Key, ComplexAmp> out_g;
    for (const auto &kv : exc) {
      const int n = kv.first.first;
      const double s = std::sin(st.g_tau * std::sqrt(n + 1.0));
      Key up{n + 1, kv.first.second};
      out_g[up] += kMinusI * s * kv.second;
    }
    for (const auto &kv : gnd) {
      const int n = kv.first.first;
      const double c =
          (n == 0) ? 1.0 : std::cos(st.g_tau * std::sqrt(double(n)));
      out_g[kv.first] += c * kv.second;
    }
    double g2 = 0.0;
    for (const auto &kv : out_g)
      g2 += std::norm(kv.second);

    const double total = js.norm2();
    const double p = g2 / total;
    if (p < kPostselectTol)
      throw postselect_failure("protocol: detection probability vanished at "
                               "step " +
                               std::to_string(k));

    const double scale = 1.0 / std::sqrt(g2);
    JointState next;
    next.dim = js.dim;
    next.next_epoch = js.next_epoch;
    for (const auto &kv : out_g)
      next.amps[kv.first] = kv.second * scale;

    const MuFactor mu = mu_factor({cfg.gamma, st.relax_duration});
    js = apply_epoch(next, mu, EpochId{static_cast<int>(k)});
    res.step_probabilities.push_back(p);
    res.total_probability *= p;
  }

  res.rho = trace_out_env(js);
  res.fidelity = fidelity(cfg.target, res.rho);
  res.rate = res.total_probability * res.fidelity;
  return res;
}

CoeffSet two_atom_coeffs(ComplexAmp eps1, ComplexAmp eps2, double g_tau1,
                         double g_tau2, double gamma, double t_prime,
                         double t) {
  if (gamma < 0.0 || t_prime < 0.0 || t < 0.0)
    throw std::invalid_argument("two_atom_coeffs: negative gamma or duration");

  const double s01 = std::sin(g_tau1);
  const double s02 = std::sin(g_tau2);
  const double c02 = std::cos(g_tau2);
  const double s12 = std::sin(g_tau2 * std::sqrt(2.0));
  const double gt = gamma * t;
  const double gtp = gamma * t_prime;
  const double et = std::exp(-gt);
  const double etp = std::exp(-gtp);
  const double ae1 = std::norm(eps1);
  const double ae2 = std::norm(eps2);
  const double cross = 2.0 * (eps1 * std::conj(eps2)).real();
  const ComplexAmp ce1 = std::conj(eps1);
  const ComplexAmp ce2 = std::conj(eps2);
  const double sq2 = std::sqrt(2.0);

  CoeffSet cs;
  cs.a = s01 * s01 * s12 * s12 * etp * et * et;

  cs.b = 2.0 * s01 * s01 * s12 * s12 * etp * et * (1.0 - et) +
         ae2 * s01 * s01 * c02 * c02 * etp * et +
         s01 * s01 * s02 * s02 * et * (1.0 - etp) + ae1 * s02 * s02 * et +
         cross * s01 * c02 * s02 * std::exp(-0.5 * (gtp + 2.0 * gt));

  cs.c = ae2 * s01 * s01 * (1.0 - etp) + ae1 * ae2 +
         s01 * s01 * s12 * s12 * etp * (1.0 - et) * (1.0 - et) +
         ae2 * s01 * s01 * c02 * c02 * etp * (1.0 - et) +
         s01 * s01 * s02 * s02 * (1.0 - etp) * (1.0 - et) +
         ae1 * s02 * s02 * (1.0 - et) +
         cross * s01 * s02 * c02 * std::exp(-0.5 * gtp) * (1.0 - et);

  cs.d = -ce2 * s01 * s01 * s12 * c02 * std::exp(-(gtp + 1.5 * gt)) -
         ce1 * s01 * s12 * s02 * std::exp(-0.5 * (gtp + 3.0 * gt));

  cs.f = ce1 * ce2 * s01 * s12 * std::exp(-0.5 * (gtp + 2.0 * gt));

  cs.g = -ce2 * s01 * s01 * s02 * std::exp(-0.5 * gt) * (1.0 - etp) -
         ce1 * ae2 * s01 * c02 * std::exp(-0.5 * (gtp + gt)) -
         ce2 * ae1 * s02 * std::exp(-0.5 * gt) -
         sq2 * ce2 * s01 * s01 * s12 * c02 *
             std::exp(-0.5 * (2.0 * gtp + gt)) * (1.0 - et) -
         sq2 * ce1 * s01 * s02 * s12 * std::exp(-0.5 * (gtp + gt)) *
             (1.0 - et);
  return cs;
}

DensityMatrix coeffs_to_rho(const CoeffSet &cs) {
  const double norm = cs.a + cs.b + cs.c;
  if (!(norm > 0.0))
    throw numerical_error("coeffs_to_rho: nonpositive total population");
  DensityMatrix rho(3);
  rho.at(0, 0) = cs.c / norm;
  rho.at(1, 1) = cs.b / norm;
  rho.at(2, 2) = cs.a / norm;
  rho.at(1, 0) = cs.g / norm;
  rho.at(0, 1) = std::conj(cs.g) / norm;
  rho.at(2, 0) = cs.f / norm;
  rho.at(0, 2) = std::conj(cs.f) / norm;
  rho.at(2, 1) = cs.d / norm;
  rho.at(1, 2) = std::conj(cs.d) / norm;
  return rho;
}

double coeffs_probability(const CoeffSet &cs, ComplexAmp eps1,
                          ComplexAmp eps2) {
  return (cs.a + cs.b + cs.c) /
         ((1.0 + std::norm(eps1)) * (1.0 + std::norm(eps2)));
}

} // namespace cavloss
