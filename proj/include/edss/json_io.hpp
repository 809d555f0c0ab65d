#pragma once

#include <string>

#include <json.hpp>

#include "edss/bell_diagonal.hpp"
#include "edss/graph_state.hpp"
#include "edss/noise.hpp"
#include "edss/optimizer.hpp"
#include "edss/protocol.hpp"
#include "edss/separability.hpp"

namespace edss {

/// Formats a real with 12 significant digits (the CLI-wide printing contract).
std::string format_real(double v);

/// Round-trips a real through the 12-significant-digit representation so JSON output
/// is byte-stable and matches the printed precision.
double round12(double v);

nlohmann::json to_json(const BellDiagonalState& state);
BellDiagonalState bell_state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MeasureReport& report);

/// Coefficient vector as a JSON array ordered by the bitstring read as an integer.
nlohmann::json coefficients_json(const GraphDiagonalState& state);

nlohmann::json to_json(const ProtocolOutcome& outcome);

nlohmann::json to_json(const SeparableDecomposition& decomposition);

nlohmann::json to_json(const OptimizationResult& result);

nlohmann::json to_json(const NoiseComparison& comparison);

/// Fixed sweep header: s01,s10,s11,s,branch,lambda_c_ab,lambda_a_bc,p,ent_lower_bound,i_class,i_edss_naive
std::string sweep_csv_header();
std::string sweep_csv_row(const ProtocolOutcome& outcome, const MeasureReport& measures);

std::string noise_csv_header();
std::string noise_csv_row(const BellDiagonalState& state, ChannelKind kind,
                          const NoiseComparison& comparison);

}  // namespace edss
