#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gup::cli {

using Value = std::variant<double, std::int64_t, std::string>;

// One output row. Field order is the column order.
struct Record {
  std::vector<std::pair<std::string, Value>> fields;

  void add(std::string name, Value value) { fields.emplace_back(std::move(name), std::move(value)); }
  const Value* find(std::string_view name) const;
};

enum class Format { Csv, Json, Human };

// 17 significant digits, locale independent; non-finite values as nan/inf/-inf.
std::string format_number(double v);

// "# gup-tunnel v<version>", header row, one line per record.
void write_csv(std::ostream& out, const std::vector<Record>& records);
// {"tool": ..., "version": ..., "records": [...]}, non-finite numbers as null.
void write_json(std::ostream& out, const std::vector<Record>& records);
void write_human(std::ostream& out, const std::vector<Record>& records);

void write(std::ostream& out, Format format, const std::vector<Record>& records);

}  // namespace gup::cli
