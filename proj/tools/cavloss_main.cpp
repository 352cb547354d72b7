/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavloss/damping.hpp"
#include "cavloss/dilation.hpp"
#include "cavloss/errors.hpp"
#include "cavloss/fock.hpp"
#include "cavloss/io.hpp"
#include "cavloss/optimize.hpp"
#include "cavloss/protocol.hpp"
#include "cavloss/version.hpp"
#include "cavloss/wigner.hpp"

namespace {

void write_output(const std::string &out_path, const std::string &content) {
  if (out_path.empty())
    std::cout << content;
  else
    cavloss::write_text_file(out_path, content);
}

nlohmann::json read_json(const std::string &path) {
  return nlohmann::json::parse(cavloss::read_text_file(path));
}

nlohmann::json complex_pair(cavloss::ComplexAmp z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

// "min:max:step", all three fields required.
void parse_range(const std::string &text, double &lo, double &hi,
                 double &step) {
  double *slots[3] = {&lo, &hi, &step};
  std::size_t begin = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t end = text.find(':', begin);
    bool last = (i == 2);
    if (last != (end == std::string::npos))
      throw std::invalid_argument("range must be min:max:step, got: " + text);
    std::string field = text.substr(
        begin, end == std::string::npos ? std::string::npos : end - begin);
    std::size_t used = 0;
    *slots[i] = std::stod(field, &used);
    if (used != field.size())
      throw std::invalid_argument("bad number in range: " + field);
    begin = end + 1;
  }
}

cavloss::StateVector equal_superposition(int dim) {
  cavloss::StateVector v(dim);
  for (auto &a : v.amps) a = 1.0 / std::sqrt(static_cast<double>(dim));
  return v;
}

// Echoed into every optimizer output so a run can be reproduced exactly.
cavloss::Metadata run_meta(double gamma, double t, double t_prime, int starts,
                           unsigned seed, const std::string &objective) {
  using cavloss::format_double;
  return {{"gamma", format_double(gamma)},
          {"t", format_double(t)},
          {"t_prime", format_double(t_prime)},
          {"starts", std::to_string(starts)},
          {"seed", std::to_string(seed)},
          {"objective", objective},
          {"version", cavloss::version}};
}

cavloss::ProtocolConfig two_step_config(double gamma, double g_tau1,
                                        double g_tau2, double t_prime,
                                        double t,
                                        const cavloss::StateVector &target) {
  cavloss::ProtocolConfig cfg;
  cfg.gamma = gamma;
  cfg.steps = {{{0.0, 0.0}, g_tau1, t_prime}, {{0.0, 0.0}, g_tau2, t}};
  cfg.target = target;
  return cfg;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"cavity photon-loss and state-engineering toolkit"};
  app.require_subcommand(1);

  // damp ---------------------------------------------------------------
  std::string d_state, d_method = "closed-form", d_out;
  double d_gamma = 100.0, d_t = 1e-3;
  auto *damp = app.add_subcommand("damp", "apply photon loss to a pure state");
  damp->add_option("state", d_state, "input state JSON")->required();
  damp->add_option("--gamma", d_gamma, "decay rate, 1/s")
      ->capture_default_str();
  damp->add_option("--t", d_t, "relaxation time, s")->capture_default_str();
  damp->add_option("--method", d_method, "damping engine")
      ->check(CLI::IsMember({"closed-form", "dilation", "kraus"}))
      ->capture_default_str();
  damp->add_option("--out", d_out, "output path (stdout when omitted)");
  damp->callback([&] {
    cavloss::StateVector v = cavloss::state_from_json(read_json(d_state));
    cavloss::MuFactor mu = cavloss::mu_factor({d_gamma, d_t, 0.0, 0.0, false});
    cavloss::DensityMatrix rho;
    if (d_method == "closed-form") {
      rho = cavloss::damp_closed_form(v, mu);
    } else if (d_method == "kraus") {
      if (std::abs(v.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("input state is not normalized");
      rho = cavloss::damp_kraus(cavloss::outer(v), mu);
    } else {
      if (std::abs(v.norm2() - 1.0) > 1e-9)
        throw std::invalid_argument("input state is not normalized");
      cavloss::JointState joint = cavloss::embed(v);
      joint = cavloss::apply_epoch(joint, mu, cavloss::EpochId{0});
      rho = cavloss::trace_out_env(joint);
    }
    nlohmann::json out = {{"method", d_method},
                          {"gamma", d_gamma},
                          {"t", d_t},
                          {"version", cavloss::version},
                          {"rho", cavloss::rho_to_json(rho)}};
    write_output(d_out, out.dump(2) + "\n");
  });

  // engineer -----------------------------------------------------------
  std::string e_config, e_engine = "oracle", e_out;
  auto *engineer =
      app.add_subcommand("engineer", "run the post-selected protocol");
  engineer->add_option("config", e_config, "protocol config JSON")->required();
  engineer->add_option("--engine", e_engine, "protocol engine")
      ->check(CLI::IsMember({"oracle", "dilation"}))
      ->capture_default_str();
  engineer->add_option("--out", e_out, "output path (stdout when omitted)");
  engineer->callback([&] {
    cavloss::ProtocolConfig cfg =
        cavloss::protocol_config_from_json(read_json(e_config));
    cavloss::EngineerResult r = e_engine == "oracle"
                                    ? cavloss::run_protocol_oracle(cfg)
                                    : cavloss::run_protocol_dilation(cfg);
    nlohmann::json out = {{"engine", e_engine},
                          {"version", cavloss::version},
                          {"params", cavloss::protocol_config_to_json(cfg)},
                          {"result", cavloss::engineer_result_to_json(r)}};
    write_output(e_out, out.dump(2) + "\n");
  });

  // optimize -----------------------------------------------------------
  std::string o_objective = "fidelity", o_target, o_out;
  double o_gamma = 100.0, o_t = 1e-3, o_tp = 0.0, o_g1 = 0.0, o_g2 = 0.0;
  int o_starts = 16;
  unsigned o_seed = 0;
  auto *optimize = app.add_subcommand(
      "optimize", "maximize the two-atom objective over the Ramsey parameters");
  optimize->add_option("--gamma", o_gamma, "decay rate, 1/s")
      ->capture_default_str();
  optimize->add_option("--t", o_t, "relaxation after the second detection, s")
      ->capture_default_str();
  auto *o_tp_opt = optimize->add_option(
      "--t-prime", o_tp, "relaxation after the first detection, s (defaults to --t)");
  optimize->add_option("--g-tau1", o_g1, "first interaction angle")->required();
  optimize->add_option("--g-tau2", o_g2, "second interaction angle")
      ->required();
  optimize->add_option("--seed", o_seed, "start-sequence seed")
      ->capture_default_str();
  optimize->add_option("--starts", o_starts, "simplex starts")
      ->capture_default_str();
  optimize->add_option("--objective", o_objective, "quantity to maximize")
      ->check(CLI::IsMember({"fidelity", "rate"}))
      ->capture_default_str();
  optimize->add_option("--target", o_target,
                       "target state JSON (default equal three-level superposition)");
  optimize->add_option("--out", o_out, "output path (stdout when omitted)");
  optimize->callback([&] {
    if (o_tp_opt->count() == 0) o_tp = o_t;
    cavloss::StateVector target =
        o_target.empty() ? equal_superposition(3)
                         : cavloss::state_from_json(read_json(o_target));
    if (target.dim() != 3)
      throw std::invalid_argument(
          "optimize drives the two-atom protocol; target must have dim 3");
    cavloss::ObjectiveSpec spec;
    spec.base = two_step_config(o_gamma, o_g1, o_g2, o_tp, o_t, target);
    spec.objective = o_objective == "rate" ? cavloss::Objective::rate
                                           : cavloss::Objective::fidelity;
    cavloss::OptResult r = cavloss::maximize(spec, o_starts, o_seed);
    nlohmann::json out = {{"gamma", o_gamma},
                          {"t", o_t},
                          {"t_prime", o_tp},
                          {"g_tau1", o_g1},
                          {"g_tau2", o_g2},
                          {"seed", o_seed},
                          {"starts", o_starts},
                          {"objective", o_objective},
                          {"target", cavloss::state_to_json(target)},
                          {"version", cavloss::version},
                          {"eps", nlohmann::json::array(
                                      {complex_pair(r.eps[0]),
                                       complex_pair(r.eps[1])})},
                          {"fidelity", r.fidelity},
                          {"probability", r.probability},
                          {"rate", r.rate},
                          {"iterations", r.iterations},
                          {"converged", r.converged}};
    write_output(o_out, out.dump(2) + "\n");
  });

  // sweep ----------------------------------------------------------------
  std::string s_r1, s_r2, s_out;
  double s_gamma = 100.0, s_t = 1e-3, s_tp = 0.0;
  int s_starts = 16;
  unsigned s_seed = 0;
  auto *sweep_cmd = app.add_subcommand(
      "sweep", "fidelity-optimized grid over the interaction angles");
  sweep_cmd->add_option("--g-tau1", s_r1, "first-angle range min:max:step")
      ->required();
  sweep_cmd->add_option("--g-tau2", s_r2, "second-angle range min:max:step")
      ->required();
  sweep_cmd->add_option("--gamma", s_gamma, "decay rate, 1/s")
      ->capture_default_str();
  sweep_cmd->add_option("--t", s_t, "relaxation after the second detection, s")
      ->capture_default_str();
  auto *s_tp_opt = sweep_cmd->add_option(
      "--t-prime", s_tp, "relaxation after the first detection, s (defaults to --t)");
  sweep_cmd->add_option("--seed", s_seed, "start-sequence seed")
      ->capture_default_str();
  sweep_cmd->add_option("--starts", s_starts, "simplex starts per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--out", s_out, "output path (stdout when omitted)");
  sweep_cmd->callback([&] {
    if (s_tp_opt->count() == 0) s_tp = s_t;
    cavloss::SweepGrid grid;
    parse_range(s_r1, grid.g_tau1_min, grid.g_tau1_max, grid.g_tau1_step);
    parse_range(s_r2, grid.g_tau2_min, grid.g_tau2_max, grid.g_tau2_step);
    cavloss::ObjectiveSpec spec;
    spec.base =
        two_step_config(s_gamma, 0.0, 0.0, s_tp, s_t, equal_superposition(3));
    spec.objective = cavloss::Objective::fidelity;
    std::vector<cavloss::SweepCell> cells =
        cavloss::sweep(grid, spec, s_starts, s_seed);
    cavloss::Metadata meta =
        run_meta(s_gamma, s_t, s_tp, s_starts, s_seed, "fidelity");
    meta["g_tau1_range"] = s_r1;
    meta["g_tau2_range"] = s_r2;
    write_output(s_out, cavloss::sweep_csv(cells, meta));
  });

  // wigner ---------------------------------------------------------------
  std::string w_rho, w_out, w_hist_out;
  double w_range = 4.0, w_step = 0.1;
  auto *wigner = app.add_subcommand(
      "wigner", "phase-space distribution of a density matrix");
  wigner->add_option("rho", w_rho, "input density-matrix JSON")->required();
  wigner->add_option("--range", w_range, "half-width of the square grid")
      ->capture_default_str();
  wigner->add_option("--step", w_step, "grid step")->capture_default_str();
  wigner->add_option("--out", w_out, "grid CSV path (stdout when omitted)");
  wigner->add_option("--histogram-out", w_hist_out,
                     "optional CSV of the raw matrix elements");
  wigner->callback([&] {
    cavloss::DensityMatrix rho = cavloss::rho_from_json(read_json(w_rho));
    if (w_range <= 0.0)
      throw std::invalid_argument("--range must be positive");
    cavloss::WignerGrid grid = cavloss::wigner_grid(rho, -w_range, w_range,
                                                    -w_range, w_range, w_step);
    cavloss::Metadata meta = {
        {"input", w_rho},
        {"range", cavloss::format_double(w_range)},
        {"step", cavloss::format_double(w_step)},
        {"min_value", cavloss::format_double(grid.min_value)},
        {"negative_volume", cavloss::format_double(grid.negative_volume)},
        {"version", cavloss::version}};
    write_output(w_out, cavloss::wigner_csv(grid, meta));
    if (!w_hist_out.empty()) {
      cavloss::Metadata hist_meta = {{"input", w_rho},
                                     {"version", cavloss::version}};
      cavloss::write_text_file(
          w_hist_out,
          cavloss::histogram_csv(cavloss::rho_histogram(rho), hist_meta));
    }
  });

  // table1 ---------------------------------------------------------------
  std::string t1_out;
  double t1_gamma = 100.0, t1_t = 1e-3, t1_tp = 0.0;
  int t1_starts = 16;
  unsigned t1_seed = 0;
  auto *table1 = app.add_subcommand(
      "table1", "optimize the three reference interaction-angle pairs");
  table1->add_option("--gamma", t1_gamma, "decay rate, 1/s")
      ->capture_default_str();
  table1->add_option("--t", t1_t, "relaxation after the second detection, s")
      ->capture_default_str();
  auto *t1_tp_opt = table1->add_option(
      "--t-prime", t1_tp, "relaxation after the first detection, s (defaults to --t)");
  table1->add_option("--seed", t1_seed, "start-sequence seed")
      ->capture_default_str();
  table1->add_option("--starts", t1_starts, "simplex starts per row")
      ->capture_default_str();
  table1->add_option("--out", t1_out, "output path (stdout when omitted)");
  table1->callback([&] {
    if (t1_tp_opt->count() == 0) t1_tp = t1_t;
    const double pairs[3][2] = {{0.6, 3.0}, {1.3, 1.2}, {1.4, 2.8}};
    std::vector<cavloss::SweepCell> cells;
    for (const auto &pair : pairs) {
      cavloss::ObjectiveSpec spec;
      spec.base = two_step_config(t1_gamma, pair[0], pair[1], t1_tp, t1_t,
                                  equal_superposition(3));
      spec.objective = cavloss::Objective::fidelity;
      cells.push_back(
          {pair[0], pair[1], cavloss::maximize(spec, t1_starts, t1_seed)});
    }
    write_output(t1_out,
                 cavloss::sweep_csv(cells, run_meta(t1_gamma, t1_t, t1_tp,
                                                    t1_starts, t1_seed,
                                                    "fidelity")));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const cavloss::numerical_error &e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range &e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
