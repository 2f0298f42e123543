#include "cli/report.hpp"

#include <algorithm>

namespace xxz::cli {

Row record_row(const Record& r, std::uint64_t seed, const std::string& digest) {
  Row row;
  row["suite"] = r.suite;
  row["check"] = r.check;
  row["eq"] = r.eq;
  row["residual"] = r.residual ? Row(*r.residual) : Row(nullptr);
  row["tol"] = r.tol;
  row["pass"] = r.pass;
  row["seed"] = seed;
  row["params_digest"] = digest;
  if (!r.note.empty()) row["note"] = r.note;
  return row;
}

void write_jsonl(std::ostream& out, const std::vector<Row>& rows) {
  for (const Row& r : rows) out << r.dump() << '\n';
}

namespace {

std::string cell(const Row& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_array()) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + (v[i].is_array() ? cell(v[i]) : v[i].dump());
    return s;
  }
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
  std::vector<std::string> keys;
  for (const Row& r : rows)
    for (const auto& [k, _] : r.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  for (size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << keys[i];
  out << '\n';
  for (const Row& r : rows) {
    for (size_t i = 0; i < keys.size(); ++i) out << (i ? "," : "") << (r.contains(keys[i]) ? cell(r[keys[i]]) : "");
    out << '\n';
  }
}

void write_rows(std::ostream& out, const std::vector<Row>& rows, const std::string& format) {
  if (format == "csv")
    write_csv(out, rows);
  else
    write_jsonl(out, rows);
}

}  // namespace xxz::cli
