#pragma once

// Run metadata, tables and their CSV / JSON serialization.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "helfrich/geometry.hpp"

namespace helfrich::cli {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same binary64; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

enum class Format { csv, json };

/// version, command, params, sign convention, timestamp.
Json make_metadata(const std::string& command, const Json& params, SignConvention convention);

/// Two-column key/value table from a nested JSON summary (keys are JSON pointers).
Table flatten_summary(const Json& summary);

/// `# {"metadata":...,"summary":...}` then the header row and the rows, LF endings.
void write_csv(std::ostream& os, const Json& metadata, const Json& summary, const Table& table);
/// One object: metadata, summary, then columns and rows when a table is present.
void write_json(std::ostream& os, const Json& metadata, const Json& summary, const Table* table);

}  // namespace helfrich::cli
