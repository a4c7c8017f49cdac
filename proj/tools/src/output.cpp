#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <ostream>

#ifndef HELFRICH_VERSION
#define HELFRICH_VERSION "0.0.0"
#endif

namespace helfrich::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return format_number(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(c));
}

Json cell_json(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return std::isfinite(*d) ? Json(*d) : Json(format_number(*d));
  if (auto i = std::get_if<long long>(&c)) return Json(*i);
  return Json(std::get<std::string>(c));
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_null()) return "null";
  return v.dump();
}

}  // namespace

Json make_metadata(const std::string& command, const Json& params, SignConvention convention) {
  Json m;
  m["version"] = HELFRICH_VERSION;
  m["command"] = command;
  m["params"] = params;
  m["sign_convention"] = {{"sigma", static_cast<int>(convention)},
                          {"psi", convention == SignConvention::plus ? "+arctan(dz/dr)" : "-arctan(dz/dr)"}};
  m["timestamp"] = utc_timestamp();
  return m;
}

Table flatten_summary(const Json& summary) {
  Table t;
  t.columns = {"key", "value"};
  const Json flat = summary.flatten();
  for (const auto& [key, value] : flat.items()) t.rows.push_back({key, scalar_text(value)});
  return t;
}

void write_csv(std::ostream& os, const Json& metadata, const Json& summary, const Table& table) {
  Json header;
  header["metadata"] = metadata;
  header["summary"] = summary;
  os << "# " << header.dump() << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_escape(table.columns[i]);
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Json& metadata, const Json& summary, const Table* table) {
  Json out;
  out["metadata"] = metadata;
  out["summary"] = summary;
  if (table) {
    out["columns"] = table->columns;
    Json rows = Json::array();
    for (const auto& row : table->rows) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    out["rows"] = std::move(rows);
  }
  os << out.dump(2) << '\n';
}

}  // namespace helfrich::cli
