#include "cli/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "xxz/sampling.hpp"

namespace xxz::cli {

using nlohmann::json;

const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {"ybe",     "reflection", "qdet",       "commutation", "dynamical",
                                                 "weights", "offshell",   "conjecture", "triangular",  "constrained"};
  return names;
}

std::map<std::string, double> default_tolerances(int N) {
  return {{"ybe", 1e-11},         {"reflection", 1e-11}, {"qdet", 1e-11},    {"commutation", 1e-10},
          {"dynamical", 1e-10},   {"gauge", 1e-11},      {"weights", 1e-11}, {"offshell", 1e-9},
          {"pole-limit", 1e-4},   {"conjecture", N <= 1 ? 1e-11 : N == 2 ? 1e-10 : 1e-8},
          {"triangular", 1e-10},  {"constrained", 1e-12}, {"locus", 1e-10},  {"spectrum", 1e-8}};
}

double RunConfig::tolerance(const std::string& key) const {
  auto it = tolerances.find(key);
  if (it == tolerances.end()) throw ConfigError("no tolerance named " + key);
  return it->second;
}

Complex parse_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(what + " must be a number or an [re, im] pair");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json default_document() { return json{{"schema", kSchemaVersion}, {"seed", 42}, {"model", {{"n", 2}}}}; }

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

namespace {

std::uint64_t read_seed(const json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw ConfigError("seed must be an unsigned 64-bit integer");
  return j.get<std::uint64_t>();
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + " is missing " + key);
  return obj.at(key);
}

FactorizedBoundary read_factorized(const json& j) {
  const std::string w = "boundary.factorized";
  return {parse_complex(field(j, "xi", w), "xi"),
          parse_complex(field(j, "xi_tilde", w), "xi_tilde"),
          parse_complex(field(j, "kappa", w), "kappa"),
          parse_complex(field(j, "kappa_tilde", w), "kappa_tilde"),
          parse_complex(field(j, "mu", w), "mu"),
          parse_complex(field(j, "mu_tilde", w), "mu_tilde"),
          parse_complex(field(j, "tau", w), "tau"),
          parse_complex(field(j, "tau_tilde", w), "tau_tilde")};
}

RawBoundary read_raw(const json& j) {
  const std::string w = "boundary.raw";
  return {parse_complex(field(j, "eps_plus", w), "eps_plus"),
          parse_complex(field(j, "eps_minus", w), "eps_minus"),
          parse_complex(field(j, "kappa", w), "kappa"),
          parse_complex(field(j, "kappa_tilde", w), "kappa_tilde"),
          parse_complex(field(j, "nu_plus", w), "nu_plus"),
          parse_complex(field(j, "nu_minus", w), "nu_minus"),
          parse_complex(field(j, "tau", w), "tau"),
          parse_complex(field(j, "tau_tilde", w), "tau_tilde")};
}

}  // namespace

RunConfig materialize(json doc, const Overrides& o) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!doc.contains("schema") || doc["schema"] != kSchemaVersion)
    throw ConfigError("config schema must be " + std::to_string(kSchemaVersion));

  if (o.seed) doc["seed"] = *o.seed;
  if (!o.suites.empty()) doc["suites"] = o.suites;
  if (o.n) {
    doc["model"]["n"] = *o.n;
    doc["model"].erase("v");
  }
  if (o.q_re || o.q_im) {
    Complex q = doc.contains("model") && doc["model"].contains("q") ? parse_complex(doc["model"]["q"], "model.q")
                                                                    : Complex(0.0, 0.0);
    if (o.q_re) q.real(*o.q_re);
    if (o.q_im) q.imag(*o.q_im);
    doc["model"]["q"] = complex_json(q);
  }
  if (o.out) doc["output"]["path"] = *o.out;
  if (o.format) doc["output"]["format"] = *o.format;
  if (o.threads) doc["threads"] = *o.threads;

  RunConfig c;
  if (!doc.contains("seed")) throw ConfigError("seed is required");
  c.seed = read_seed(doc["seed"]);
  Sampler sampler(c.seed);

  const json model = doc.value("model", json::object());
  if (model.contains("v")) {
    if (!model.contains("q")) throw ConfigError("model.q is required when model.v is given");
    c.model.q = parse_complex(model["q"], "model.q");
    for (const json& v : model["v"]) c.model.v.push_back(parse_complex(v, "model.v"));
  } else {
    const int n = model.value("n", 2);
    if (n < 1 || n > 8) throw ConfigError("model.n must lie in 1..8");
    c.model = model.value("homogeneous", false) ? sampler.homogeneous(n) : sampler.model(n);
    if (model.contains("q")) c.model.q = parse_complex(model["q"], "model.q");
  }
  try {
    c.model.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  }

  const json boundary = doc.value("boundary", json::object());
  const int styles = int(boundary.contains("factorized")) + int(boundary.contains("raw")) +
                     int(boundary.contains("inconsistent"));
  if (styles > 1) throw ConfigError("boundary must use exactly one parametrization");
  if (boundary.contains("factorized")) {
    c.bp = BoundaryParams::from_factorized(read_factorized(boundary["factorized"]));
    c.boundary_style = "factorized";
  } else if (boundary.contains("raw")) {
    c.bp = BoundaryParams::from_raw(read_raw(boundary["raw"]));
    c.boundary_style = "raw";
  } else if (boundary.contains("inconsistent")) {
    const json& j = boundary["inconsistent"];
    c.bp = BoundaryParams::from_parts(read_raw(field(j, "raw", "boundary.inconsistent")),
                                      read_factorized(field(j, "factorized", "boundary.inconsistent")));
    c.boundary_style = "inconsistent";
  } else {
    c.bp = sampler.boundary();
    c.boundary_style = "sampled";
  }

  c.m0 = doc.value("m0", 0);
  if (doc.contains("suites")) {
    if (!doc["suites"].is_array()) throw ConfigError("suites must be a list");
    for (const json& s : doc["suites"]) {
      const std::string name = s.get<std::string>() == "offshell-theorems" ? "offshell" : s.get<std::string>();
      if (std::find(all_suites().begin(), all_suites().end(), name) == all_suites().end())
        throw ConfigError("unknown suite " + name);
      c.suites.push_back(name);
    }
  } else {
    c.suites = all_suites();
  }

  c.tolerances = default_tolerances(c.model.N());
  if (doc.contains("tolerances")) {
    for (const auto& [k, v] : doc["tolerances"].items()) {
      if (!c.tolerances.count(k)) throw ConfigError("unknown tolerance " + k);
      if (!v.is_number()) throw ConfigError("tolerance " + k + " must be a number");
      c.tolerances[k] = v.get<double>();
    }
  }

  const json output = doc.value("output", json::object());
  c.out_path = output.value("path", std::string());
  c.format = output.value("format", std::string("jsonl"));
  if (c.format != "jsonl" && c.format != "csv") throw ConfigError("output.format must be jsonl or csv");

  if (doc.contains("u0")) c.u0 = parse_complex(doc["u0"], "u0");
  const json solve = doc.value("solve", json::object());
  c.starts = solve.value("starts", 200);
  c.homotopy = solve.value("homotopy", false);
  c.threads = doc.value("threads", 0u);
  return c;
}

std::string params_digest(const RunConfig& c) {
  std::string text;
  char buf[64];
  auto add = [&](Complex z) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g;", z.real(), z.imag());
    text += buf;
  };
  add(c.model.q);
  for (Complex v : c.model.v) add(v);
  const BoundaryParams& b = c.bp;
  for (Complex z : {b.eps_plus, b.eps_minus, b.kappa, b.kappa_tilde, b.xi, b.xi_tilde, b.nu_plus, b.nu_minus, b.tau,
                    b.tau_tilde, b.mu, b.mu_tilde})
    add(z);
  text += std::to_string(c.m0);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace xxz::cli
