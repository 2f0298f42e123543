#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "cli/suites.hpp"

namespace xxz::cli {

using Row = nlohmann::ordered_json;

Row record_row(const Record& r, std::uint64_t seed, const std::string& digest);

// One JSON object per line.
void write_jsonl(std::ostream& out, const std::vector<Row>& rows);
// Header is the union of keys in first-seen order; arrays are joined with ';'.
void write_csv(std::ostream& out, const std::vector<Row>& rows);
void write_rows(std::ostream& out, const std::vector<Row>& rows, const std::string& format);

}  // namespace xxz::cli
