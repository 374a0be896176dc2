#include "records.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "gup_tunnel/gup_tunnel.h"
#include "json.hpp"

namespace gup::cli {

const Value* Record::find(std::string_view name) const {
  for (const auto& [key, value] : fields)
    if (key == name) return &value;
  return nullptr;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_cell(const Value& value) {
  if (const auto* d = std::get_if<double>(&value)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  const auto& s = std::get<std::string>(value);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string human_cell(const Value& value) {
  if (const auto* d = std::get_if<double>(&value)) {
    if (!std::isfinite(*d)) return format_number(*d);
    char buf[64];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, *d).ptr);  // shortest round trip
  }
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return std::get<std::string>(value);
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Record>& records) {
  out << "# gup-tunnel v" << gt_version() << '\n';
  if (records.empty()) return;
  const auto& head = records.front().fields;
  for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i].first;
  out << '\n';
  for (const auto& r : records) {
    if (r.fields.size() != head.size()) throw std::logic_error("ragged CSV records");
    for (std::size_t i = 0; i < r.fields.size(); ++i) out << (i ? "," : "") << csv_cell(r.fields[i].second);
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<Record>& records) {
  nlohmann::ordered_json doc;
  doc["tool"] = "gup-tunnel";
  doc["version"] = gt_version();
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.fields) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v))
                row[key] = v;
              else
                row[key] = nullptr;
            } else {
              row[key] = v;
            }
          },
          value);
    }
    doc["records"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void write_human(std::ostream& out, const std::vector<Record>& records) {
  for (std::size_t n = 0; n < records.size(); ++n) {
    if (n) out << '\n';
    std::size_t width = 0;
    for (const auto& f : records[n].fields) width = std::max(width, f.first.size());
    for (const auto& [key, value] : records[n].fields)
      out << key << std::string(width - key.size() + 2, ' ') << human_cell(value) << '\n';
  }
}

void write(std::ostream& out, Format format, const std::vector<Record>& records) {
  switch (format) {
    case Format::Csv: write_csv(out, records); return;
    case Format::Json: write_json(out, records); return;
    case Format::Human: write_human(out, records); return;
  }
}

}  // namespace gup::cli
