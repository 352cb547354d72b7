/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cavloss {

namespace {

using nlohmann::json;

void check_keys(const json &j, std::initializer_list<const char *> allowed,
                const char *what) {
  if (!j.is_object())
    throw std::invalid_argument(std::string(what) + ": expected an object");
  for (const auto &item : j.items()) {
    bool ok = false;
    for (const char *k : allowed)
      if (item.key() == k)
        ok = true;
    if (!ok)
      throw std::invalid_argument(std::string(what) + ": unknown key '" +
                                  item.key() + "'");
  }
  for (const char *k : allowed)
    if (!j.contains(k))
      throw std::invalid_argument(std::string(what) + ": missing key '" + k +
                                  "'");
}

json complex_to_json(ComplexAmp z) { return json::array({z.real(), z.imag()}); }

ComplexAmp complex_from_json(const json &j, const char *what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(std::string(what) +
                                ": complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

json state_to_json(const StateVector &v) {
  json amps = json::array();
  for (const ComplexAmp &a : v.amps)
    amps.push_back(complex_to_json(a));
  return json{{"dim", v.dim()}, {"amps", std::move(amps)}};
}

StateVector state_from_json(const json &j) {
  check_keys(j, {"dim", "amps"}, "state");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
    throw std::invalid_argument("state: dim must be a positive integer");
  const int dim = j["dim"].get<int>();
  if (!j["amps"].is_array() || static_cast<int>(j["amps"].size()) != dim)
    throw std::invalid_argument("state: amps must hold dim entries");
  StateVector v;
  v.amps.reserve(static_cast<std::size_t>(dim));
  for (const auto &a : j["amps"])
    v.amps.push_back(complex_from_json(a, "state"));
  return v;
}

json rho_to_json(const DensityMatrix &rho) {
  json entries = json::array();
  for (const ComplexAmp &e : rho.entries)
    entries.push_back(complex_to_json(e));
  return json{{"dim", rho.dim}, {"entries", std::move(entries)}};
}

DensityMatrix rho_from_json(const json &j) {
  check_keys(j, {"dim", "entries"}, "rho");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
    throw std::invalid_argument("rho: dim must be a positive integer");
  const int dim = j["dim"].get<int>();
  const auto &entries = j["entries"];
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("rho: entries must hold dim*dim values "
                                "(row-major)");
  DensityMatrix rho(dim);
  for (std::size_t i = 0; i < rho.entries.size(); ++i)
    rho.entries[i] = complex_from_json(entries[i], "rho");
  return rho;
}

json protocol_config_to_json(const ProtocolConfig &cfg) {
  json steps = json::array();
  for (const AtomStep &s : cfg.steps)
    steps.push_back(json{{"epsilon", complex_to_json(s.epsilon)},
                         {"g_tau", s.g_tau},
                         {"relax_duration", s.relax_duration}});
  return json{{"gamma", cfg.gamma},
              {"steps", std::move(steps)},
              {"target", state_to_json(cfg.target)}};
}

ProtocolConfig protocol_config_from_json(const json &j) {
  check_keys(j, {"gamma", "steps", "target"}, "protocol config");
  ProtocolConfig cfg;
  if (!j["gamma"].is_number() || j["gamma"].get<double>() < 0.0)
    throw std::invalid_argument("protocol config: gamma must be >= 0");
  cfg.gamma = j["gamma"].get<double>();
  if (!j["steps"].is_array() || j["steps"].empty())
    throw std::invalid_argument(
        "protocol config: steps must be a non-empty array");
  for (const auto &s : j["steps"]) {
    check_keys(s, {"epsilon", "g_tau", "relax_duration"}, "atom step");
    AtomStep step;
    step.epsilon = complex_from_json(s["epsilon"], "atom step");
    if (!s["g_tau"].is_number() || !s["relax_duration"].is_number())
      throw std::invalid_argument(
          "atom step: g_tau and relax_duration must be numbers");
    step.g_tau = s["g_tau"].get<double>();
    step.relax_duration = s["relax_duration"].get<double>();
    if (step.relax_duration < 0.0)
      throw std::invalid_argument("atom step: relax_duration must be >= 0");
    cfg.steps.push_back(step);
  }
  cfg.target = state_from_json(j["target"]);
  return cfg;
}

json engineer_result_to_json(const EngineerResult &r) {
  return json{{"rho", rho_to_json(r.rho)},
              {"step_probabilities", r.step_probabilities},
              {"total_probability", r.total_probability},
              {"fidelity", r.fidelity},
              {"rate", r.rate}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

void emit_meta(std::ostringstream &out, const Metadata &meta) {
  for (const auto &kv : meta)
    out << "# " << kv.first << "=" << kv.second << "\n";
}

} // namespace

std::string sweep_csv(const std::vector<SweepCell> &cells,
                      const Metadata &meta) {
  std::ostringstream out;
  emit_meta(out, meta);
  out << "g_tau1,g_tau2,re_eps1,im_eps1,re_eps2,im_eps2,F,P,R\n";
  for (const SweepCell &c : cells) {
    const ComplexAmp e1 = c.result.eps.size() > 0 ? c.result.eps[0]
                                                  : ComplexAmp{};
    const ComplexAmp e2 = c.result.eps.size() > 1 ? c.result.eps[1]
                                                  : ComplexAmp{};
    out << format_double(c.g_tau1) << ',' << format_double(c.g_tau2) << ','
        << format_double(e1.real()) << ',' << format_double(e1.imag()) << ','
        << format_double(e2.real()) << ',' << format_double(e2.imag()) << ','
        << format_double(c.result.fidelity) << ','
        << format_double(c.result.probability) << ','
        << format_double(c.result.rate) << "\n";
  }
  return out.str();
}

std::string wigner_csv(const WignerGrid &grid, const Metadata &meta) {
  std::ostringstream out;
  emit_meta(out, meta);
  out << "q,p,w\n";
  for (int ip = 0; ip < grid.np; ++ip)
    for (int iq = 0; iq < grid.nq; ++iq)
      out << format_double(grid.q_min + iq * grid.step) << ','
          << format_double(grid.p_min + ip * grid.step) << ','
          << format_double(grid.at(iq, ip)) << "\n";
  return out.str();
}

std::string histogram_csv(const std::vector<RhoHistogramRow> &rows,
                          const Metadata &meta) {
  std::ostringstream out;
  emit_meta(out, meta);
  out << "i,j,re,im,abs\n";
  for (const RhoHistogramRow &r : rows)
    out << r.i << ',' << r.j << ',' << format_double(r.re) << ','
        << format_double(r.im) << ',' << format_double(r.abs) << "\n";
  return out.str();
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::invalid_argument("cannot open file for writing: " + path);
  out << content;
  if (!out.flush())
    throw std::invalid_argument("write failed: " + path);
}

} // namespace cavloss
