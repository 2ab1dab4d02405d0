#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radlab/error.hpp"

namespace radlab {

inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline void format_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += v != v ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\"");
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

inline void emit(std::string& out, const nlohmann::ordered_json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (j.empty()) { out += "{}"; return; }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::ordered_json(it.key()).dump() + ": ";
        emit(out, it.value(), indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (j.empty()) { out += "[]"; return; }
      bool scalars = true;
      for (const auto& v : j) scalars = scalars && !v.is_structured();
      out += scalars ? "[" : "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += scalars ? ", " : ",\n";
        first = false;
        if (!scalars) out += pad;
        emit(out, v, indent, depth + 1);
      }
      out += scalars ? "]" : "\n" + close + "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      format_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace detail

// Deterministic JSON text: insertion-ordered keys, doubles with 17 significant digits.
inline std::string to_report_text(const nlohmann::ordered_json& j) {
  std::string out;
  detail::emit(out, j, 2, 0);
  out += "\n";
  return out;
}

inline nlohmann::ordered_json report_header(const std::string& kind) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["report"] = kind;
  return j;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace radlab
