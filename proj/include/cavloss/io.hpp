/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_IO_HPP
#define CAVLOSS_IO_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavloss/optimize.hpp"
#include "cavloss/protocol.hpp"
#include "cavloss/wigner.hpp"

namespace cavloss {

// Complex values serialize as [re, im]. Readers reject unknown keys so a
// typo in a config fails loudly instead of silently using a default.

nlohmann::json state_to_json(const StateVector &v);
StateVector state_from_json(const nlohmann::json &j);

nlohmann::json rho_to_json(const DensityMatrix &rho);
DensityMatrix rho_from_json(const nlohmann::json &j);

nlohmann::json protocol_config_to_json(const ProtocolConfig &cfg);
ProtocolConfig protocol_config_from_json(const nlohmann::json &j);

nlohmann::json engineer_result_to_json(const EngineerResult &r);

// Key-value pairs emitted into output files so any result can be re-run.
using Metadata = std::map<std::string, std::string>;

// CSV emitters. Metadata goes first as "# key=value" comment lines; the
// column header is the first non-comment line.
std::string sweep_csv(const std::vector<SweepCell> &cells,
                      const Metadata &meta);
std::string wigner_csv(const WignerGrid &grid, const Metadata &meta);
std::string histogram_csv(const std::vector<RhoHistogramRow> &rows,
                          const Metadata &meta);

// Shortest representation that parses back to the identical double.
std::string format_double(double x);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &content);

} // namespace cavloss

#endif
