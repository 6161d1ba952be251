#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlocal/closedform.hpp"
#include "nlocal/networks.hpp"
#include "nlocal/states.hpp"

namespace nlocal {

/// State wire format: {"re": 4x4, "im": 4x4}; invariants validated on load.
nlohmann::json state_to_json(const TwoQubitState& rho);
TwoQubitState state_from_json(const nlohmann::json& j);

/// Ensemble entries are either raw state objects or named constructors:
/// {"name": "bell" | "gamma" | "werner" | "colored" | "random", ...params}.
SourceEnsemble ensemble_from_json(const nlohmann::json& j);
nlohmann::json ensemble_to_json(const SourceEnsemble& ensemble);

/// Strategy wire format: topology header plus one entry per qubit slot
/// {party, source, input0: [x,y,z], input1: [x,y,z]}.
nlohmann::json strategy_to_json(const NetworkStrategy& strategy);
NetworkStrategy strategy_from_json(const nlohmann::json& j);

/// CSV with columns input_bits,value (17 significant digits); estimated
/// tables carry an extra std_error column.
std::string table_to_csv(const CorrelationTable& table,
                         const std::vector<double>* std_errors = nullptr);
CorrelationTable table_from_csv(const Topology& topology, std::istream& in);

nlohmann::json report_to_json(const Topology& topology, const ScoreReport& report);

}  // namespace nlocal
