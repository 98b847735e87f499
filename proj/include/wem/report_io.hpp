#pragma once

// JSON and CSV forms of codes, matrices and experiment reports.
//
// JSON objects keep insertion order so that identical reports serialize to
// identical bytes. Counts that overflow 64 bits are written as decimal
// strings; rationals are written as "num/den" strings next to a float value.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wem/audit.hpp"
#include "wem/blockmodel.hpp"
#include "wem/codecraft.hpp"
#include "wem/flipsim.hpp"
#include "wem/search.hpp"
#include "wem/semilinear.hpp"

namespace wem {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "wemlab 0.1.0";

/// Shortest text that reads back as the same double, always with a decimal
/// point or exponent ("1.0", not "1").
std::string format_double(double value);

Json count_to_json(Count value);
Count count_from_json(const Json& value);
Rational rational_from_string(std::string_view text);

Json to_json(const BlockShape& shape);
BlockShape shape_from_json(const Json& value);

Json to_json(const Code& code);
/// Throws std::invalid_argument (or a nlohmann exception) on malformed input.
Code code_from_json(const Json& value);

Json to_json(const Validation& validation);
Json to_json(const CostReport& report);
CostReport cost_report_from_json(const Json& value);

Json to_json(const BasisMatrix& matrix);
BasisMatrix matrix_from_json(const Json& value);
Json to_json(const MatrixCheck& check);
Json to_json(const MatrixSearchReport& report);

Json to_json(const SearchReport& report);

Json to_json(const WorkloadConfig& config);
/// Missing fields keep their defaults.
WorkloadConfig workload_from_json(const Json& value);
Json to_json(const FlipReport& report);

Json to_json(const DiscrepancyReport& report);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// RFC 4180 text with "\n" line ends; fields holding commas, quotes or
  /// line breaks are quoted.
  std::string str() const;
};

CsvTable cost_csv(std::string_view encoding, const BlockShape& shape, const MemoryModel& model,
                  const CostReport& report);
CsvTable search_csv(const SearchReport& report);
CsvTable matrix_search_csv(const MatrixSearchReport& report);
/// One row per trace point: encoding, ops, total_flips, flips_per_op,
/// load_factor.
CsvTable flip_csv(const FlipReport& report);
CsvTable discrepancy_csv(const DiscrepancyReport& report);

}  // namespace wem
