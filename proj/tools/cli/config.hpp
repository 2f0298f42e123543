#pragma once

#include <cstdint>
#include <map>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "xxz/scalars.hpp"

namespace xxz::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  ModelParams model;
  BoundaryParams bp;
  std::string boundary_style;  // factorized, raw, inconsistent or sampled
  int m0 = 0;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::string out_path;  // empty: stdout
  std::string format = "jsonl";
  std::optional<Complex> u0;
  int starts = 200;
  bool homotopy = false;
  unsigned threads = 0;

  double tolerance(const std::string& key) const;
};

// Command-line overrides, applied on top of the JSON document.
struct Overrides {
  std::optional<std::string> config_path;
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> n;
  std::optional<double> q_re, q_im;
  std::optional<unsigned> threads;
};

nlohmann::json default_document();
nlohmann::json load_document(const std::string& path);
// Merges overrides into the document and builds the configuration; missing
// model or boundary parameters are drawn from the seed.
RunConfig materialize(nlohmann::json doc, const Overrides& o);

const std::vector<std::string>& all_suites();
std::map<std::string, double> default_tolerances(int N);

// FNV-1a over a fixed textual rendering of model, boundary and m0
std::string params_digest(const RunConfig& c);

Complex parse_complex(const nlohmann::json& j, const std::string& what);
nlohmann::json complex_json(Complex z);

}  // namespace xxz::cli
