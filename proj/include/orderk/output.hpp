#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "orderk/scaled_real.hpp"

namespace orderk {

// One emitted document: an echo of the command and its inputs, provenance
// (engine, tolerances, grid), and a rectangular payload.  Cells are stored as
// their final rendered strings, so parse(emit(x)) == x holds bit for bit in
// both formats.
struct OutputRecord {
  std::string schema_version = "1";
  std::string command;
  std::map<std::string, std::string> params;
  std::map<std::string, std::string> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

// Shortest round-trip decimal form of a double (17 significant digits are
// never needed with to_chars, which emits the minimal unique representation).
std::string render_double(double v);
std::string render_int(std::int64_t v);

// Decimal approximation of a ScaledReal; falls back to a manual base-10
// rendering when the exponent leaves the double range, so e^{-100000} still
// prints as a readable magnitude.
std::string render_scaled(const ScaledReal& v);

std::string emit_csv(const OutputRecord& rec);
std::string emit_json(const OutputRecord& rec);
OutputRecord parse_csv(const std::string& text);
OutputRecord parse_json(const std::string& text);

// Writes to the path, or stdout when path is empty or "-".
void write_output(const OutputRecord& rec, const std::string& format, const std::string& path);

}  // namespace orderk
