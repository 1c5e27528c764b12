#include "orderk/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace orderk {

std::string render_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render_int(std::int64_t v) { return std::to_string(v); }

std::string render_scaled(const ScaledReal& v) {
  if (v.is_zero()) return "0";
  if (v.exponent() > -1000 && v.exponent() < 1000) return render_double(v.to_double());
  // value = m * 2^e = lead * 10^{e10}; ~10 accurate digits, display only
  double t = static_cast<double>(v.exponent()) * 0.30102999566398119521 +
             std::log10(std::fabs(v.mantissa()));
  double e10 = std::floor(t);
  double lead = std::pow(10.0, t - e10);
  std::ostringstream os;
  os.precision(10);
  os << std::fixed << (v.negative() ? -lead : lead) << "e"
     << (e10 >= 0 ? "+" : "") << static_cast<long long>(e10);
  return os.str();
}

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_escape(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_kv_block(std::ostringstream& os, const char* tag,
                   const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) os << "# " << tag << "." << key << "=" << value << "\n";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

std::string emit_csv(const OutputRecord& rec) {
  std::ostringstream os;
  os << "# schema_version=" << rec.schema_version << "\n";
  os << "# command=" << rec.command << "\n";
  emit_kv_block(os, "param", rec.params);
  emit_kv_block(os, "provenance", rec.provenance);
  for (std::size_t c = 0; c < rec.columns.size(); ++c)
    os << (c ? "," : "") << csv_escape(rec.columns[c]);
  os << "\n";
  for (const auto& row : rec.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(row[c]);
    os << "\n";
  }
  return os.str();
}

OutputRecord parse_csv(const std::string& text) {
  OutputRecord rec;
  std::istringstream is(text);
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq), value = body.substr(eq + 1);
      if (key == "schema_version") rec.schema_version = value;
      else if (key == "command") rec.command = value;
      else if (key.rfind("param.", 0) == 0) rec.params[key.substr(6)] = value;
      else if (key.rfind("provenance.", 0) == 0) rec.provenance[key.substr(11)] = value;
      continue;
    }
    if (!header_done) {
      rec.columns = split_csv_line(line);
      header_done = true;
    } else {
      rec.rows.push_back(split_csv_line(line));
    }
  }
  return rec;
}

std::string emit_json(const OutputRecord& rec) {
  nlohmann::ordered_json j;
  j["schema_version"] = rec.schema_version;
  j["command"] = rec.command;
  j["params"] = rec.params;
  j["provenance"] = rec.provenance;
  j["columns"] = rec.columns;
  nlohmann::ordered_json payload = nlohmann::ordered_json::array();
  for (const auto& row : rec.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < rec.columns.size(); ++c)
      obj[rec.columns[c]] = row[c];
    payload.push_back(std::move(obj));
  }
  j["payload"] = std::move(payload);
  return j.dump(2) + "\n";
}

OutputRecord parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  OutputRecord rec;
  rec.schema_version = j.at("schema_version").get<std::string>();
  rec.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("params").items()) rec.params[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("provenance").items()) rec.provenance[k] = v.get<std::string>();
  rec.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& obj : j.at("payload")) {
    std::vector<std::string> row;
    row.reserve(rec.columns.size());
    for (const auto& col : rec.columns) row.push_back(obj.at(col).get<std::string>());
    rec.rows.push_back(std::move(row));
  }
  return rec;
}

void write_output(const OutputRecord& rec, const std::string& format, const std::string& path) {
  std::string body = format == "json" ? emit_json(rec) : emit_csv(rec);
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << body;
}

}  // namespace orderk
