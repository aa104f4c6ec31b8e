#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "cli.hpp"

namespace conical_ab::cli {

namespace {

void write_scalar(const Json& v, std::string& out) {
  switch (v.type()) {
    case Json::value_t::number_float:
      out += format_number(v.get<double>());
      break;
    case Json::value_t::null:
    case Json::value_t::boolean:
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
    case Json::value_t::string:
      out += v.dump();
      break;
    default:
      break;
  }
}

void write_value(const Json& v, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write_value(item, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& item : v) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      write_value(item, depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    write_scalar(v, out);
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_array() || v.is_object()) return csv_cell(Json(v.dump()));
  return v.dump();
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string render_json_value(const Json& value) {
  std::string out;
  write_value(value, 0, out);
  out += '\n';
  return out;
}

std::string render_json(const Report& report) {
  Json doc;
  doc["run_config"] = report.run_config;
  doc["rows"] = Json::array();
  for (const auto& row : report.rows) doc["rows"].push_back(row);
  doc["diagnostics"] = report.diagnostics;
  return render_json_value(doc);
}

std::string render_csv(const Report& report) {
  std::vector<std::string> header;
  for (const auto& row : report.rows) {
    for (const auto& [key, _] : row.items()) {
      if (std::find(header.begin(), header.end(), key) == header.end()) {
        header.push_back(key);
      }
    }
  }
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += (i ? "," : "") + header[i];
  }
  out += '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      if (row.contains(header[i])) out += csv_cell(row[header[i]]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace conical_ab::cli
