#pragma once

// JSON formats for boxes, games, strategies and reports.

#include "dmh/classical.hpp"
#include "dmh/correlations.hpp"
#include "dmh/games.hpp"
#include "dmh/quantum.hpp"
#include "dmh/wiring.hpp"

#include "json.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <variant>

namespace dmh {

using json = nlohmann::json;

/// Malformed input file or document.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using AnyBox = std::variant<ExactBox, FloatBox>;

/// {"entries": [16 numbers or "n/d" strings], "exact": bool}. Exact boxes read
/// JSON numbers through their shortest decimal form ("0.1" is 1/10).
AnyBox box_from_json(const json& j);
json box_to_json(const ExactBox& p);
json box_to_json(const FloatBox& p);

/// {"payoff": [[..]], "prior": [..]} with "-inf" for a bomb.
GameMatrix game_from_json(const json& j);
json game_to_json(const GameMatrix& g);

json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json relabelling_to_json(const Relabelling& r);
json certificate_to_json(const ExactCertificate& c);
json certificate_to_json(const FloatCertificate& c);

/// Guesses are written 1-based.
json vertex_report_to_json(const VertexReport& r);

json sweep_record_to_json(const SweepRecord& r);
json sweep_summary_to_json(const SweepSummary& s);
/// Reads the summary written by sweep_summary_to_json; records are not part of it.
SweepSummary sweep_summary_from_json(const json& j);

/// Operators as nested [re, im] pairs.
json operator_to_json(const QubitOperator& op);
json measurement_to_json(const QubitMeasurement& m);
json strategy_to_json(const QuantumStrategy& qs);
json strategy_matrix_to_json(const StrategyMatrix<double>& s);
json hardy_result_to_json(const HardyResult& r);
json seesaw_result_to_json(const SeesawResult& r);
json theorem4_report_to_json(const Theorem4Report& r);

/// Parses a whole stream; throws ParseError with the parser's message.
json read_json(std::istream& in);

}  // namespace dmh
