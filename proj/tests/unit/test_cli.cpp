#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "xxz/transfer.hpp"

using namespace xxz;
using namespace xxz::cli;
using nlohmann::json;

namespace {

RunConfig config(json doc) { return materialize(std::move(doc), {}); }

json base(int n = 2) { return json{{"schema", 1}, {"seed", 42}, {"model", {{"n", n}}}}; }

std::string render(const CommandResult& r, const std::string& format = "jsonl") {
  std::ostringstream os;
  write_rows(os, r.rows, format);
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

}  // namespace

TEST(Config, DefaultsSelectEverySuite) {
  const RunConfig c = config(default_document());
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.model.N(), 2);
  EXPECT_EQ(c.suites, all_suites());
  EXPECT_EQ(c.boundary_style, "sampled");
  EXPECT_EQ(c.tolerance("conjecture"), 1e-10);
}

TEST(Config, Rejections) {
  json bad_seed = base();
  bad_seed["seed"] = "forty-two";
  EXPECT_THROW(config(bad_seed), ConfigError);
  json negative = base();
  negative["seed"] = -1;
  EXPECT_THROW(config(negative), ConfigError);
  json no_seed = base();
  no_seed.erase("seed");
  EXPECT_THROW(config(no_seed), ConfigError);
  json schema = base();
  schema["schema"] = 2;
  EXPECT_THROW(config(schema), ConfigError);
  json suite = base();
  suite["suites"] = {"ybe", "bogus"};
  EXPECT_THROW(config(suite), ConfigError);
  json tol = base();
  tol["tolerances"] = {{"nope", 1.0}};
  EXPECT_THROW(config(tol), ConfigError);
  json two = base();
  const RunConfig c = config(base());
  const FactorizedBoundary f = c.bp.factors();
  two["boundary"]["factorized"] = {{"xi", complex_json(f.xi)},       {"xi_tilde", complex_json(f.xi_tilde)},
                                   {"kappa", complex_json(f.kappa)}, {"kappa_tilde", complex_json(f.kappa_tilde)},
                                   {"mu", complex_json(f.mu)},       {"mu_tilde", complex_json(f.mu_tilde)},
                                   {"tau", complex_json(f.tau)},     {"tau_tilde", complex_json(f.tau_tilde)}};
  EXPECT_NO_THROW(config(two));
  two["boundary"]["raw"] = json::object();
  EXPECT_THROW(config(two), ConfigError);
}

TEST(Config, ComplexFields) {
  EXPECT_EQ(parse_complex(json(1.5), "x"), Complex(1.5, 0.0));
  EXPECT_EQ(parse_complex(json::array({1.0, -2.0}), "x"), Complex(1.0, -2.0));
  EXPECT_THROW(parse_complex(json("1+2i"), "x"), ConfigError);
}

TEST(Verify, EmptySuiteListIsEmptyAndClean) {
  json doc = base();
  doc["suites"] = json::array();
  const CommandResult r = cmd_verify(config(doc));
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.status, 0);
}

TEST(Verify, DefaultRunPasses) {
  const CommandResult r = cmd_verify(config(base()));
  EXPECT_EQ(r.status, 0);
  ASSERT_FALSE(r.rows.empty());
  for (const Row& row : r.rows) {
    EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
    for (const char* key : {"suite", "check", "eq", "residual", "tol", "pass", "seed", "params_digest"})
      EXPECT_TRUE(row.contains(key)) << key;
  }
}

TEST(Verify, InconsistentBoundaryFailsDeterminant) {
  const RunConfig good = config(base());
  RawBoundary raw = good.bp.raw();
  raw.nu_plus *= 1.01;
  const FactorizedBoundary f = good.bp.factors();
  json doc = base();
  doc["suites"] = {"ybe", "qdet", "reflection"};
  doc["boundary"]["inconsistent"] = {
      {"raw",
       {{"eps_plus", complex_json(raw.eps_plus)},
        {"eps_minus", complex_json(raw.eps_minus)},
        {"kappa", complex_json(raw.kappa)},
        {"kappa_tilde", complex_json(raw.kappa_tilde)},
        {"nu_plus", complex_json(raw.nu_plus)},
        {"nu_minus", complex_json(raw.nu_minus)},
        {"tau", complex_json(raw.tau)},
        {"tau_tilde", complex_json(raw.tau_tilde)}}},
      {"factorized",
       {{"xi", complex_json(f.xi)},
        {"xi_tilde", complex_json(f.xi_tilde)},
        {"kappa", complex_json(f.kappa)},
        {"kappa_tilde", complex_json(f.kappa_tilde)},
        {"mu", complex_json(f.mu)},
        {"mu_tilde", complex_json(f.mu_tilde)},
        {"tau", complex_json(f.tau)},
        {"tau_tilde", complex_json(f.tau_tilde)}}}};
  const CommandResult r = cmd_verify(config(doc));
  EXPECT_EQ(r.status, 1);
  bool qdet_failed = false;
  for (const Row& row : r.rows) {
    if (row["suite"] == "qdet" && !row["pass"].get<bool>()) qdet_failed = true;
    if (row["suite"] == "ybe") EXPECT_TRUE(row["pass"].get<bool>());
  }
  EXPECT_TRUE(qdet_failed);
}

TEST(Verify, SameConfigSameBytes) {
  json doc = base();
  doc["suites"] = {"ybe", "commutation", "offshell", "constrained"};
  const RunConfig c = config(doc);
  EXPECT_EQ(render(cmd_verify(c)), render(cmd_verify(c)));
  EXPECT_EQ(render(cmd_verify(c), "csv"), render(cmd_verify(c), "csv"));
}

TEST(Report, CsvHeaderIsKeyUnion) {
  std::vector<Row> rows(2);
  rows[0]["a"] = 1;
  rows[0]["b"] = "x,y";
  rows[1]["a"] = 2;
  rows[1]["c"] = Row::array({1, 2});
  std::ostringstream os;
  write_csv(os, rows);
  EXPECT_EQ(os.str(), "a,b,c\n1,\"x,y\",\n2,,1;2\n");
}

TEST(Spectrum, OneSiteHasTwoEigenvalues) {
  const CommandResult r = cmd_spectrum(config(base(1)));
  int transfer = 0;
  for (const Row& row : r.rows) transfer += row["kind"] == "transfer";
  EXPECT_EQ(transfer, 2);
}

// Diagonal boundaries: the reported Hamiltonian spectrum equals that of the
// 4x4 matrix written out entry by entry, and H preserves magnetization.
TEST(Spectrum, DiagonalBoundariesTwoSites) {
  json doc = base(2);
  doc["model"] = {{"n", 2}, {"homogeneous", true}, {"q", {1.4, 0.0}}};
  doc["boundary"]["raw"] = {{"eps_plus", 0.7}, {"eps_minus", 1.3}, {"kappa", 0.0}, {"kappa_tilde", 0.0},
                            {"nu_plus", 1.1},  {"nu_minus", 0.4},  {"tau", 0.0},   {"tau_tilde", 0.0}};
  const RunConfig c = config(doc);
  const CommandResult r = cmd_spectrum(c);
  std::vector<Complex> got;
  bool check_passed = false;
  for (const Row& row : r.rows) {
    if (row["kind"] == "hamiltonian") got.emplace_back(row["re"].get<double>(), row["im"].get<double>());
    if (row["kind"] == "hamiltonian_check") check_passed = row["pass"].get<bool>();
  }
  EXPECT_TRUE(check_passed);
  ASSERT_EQ(got.size(), 4u);

  const double q = 1.4, qd = q - 1 / q, delta = (q + 1 / q) / 2;
  const double eps = 0.5 * qd * (0.7 - 1.3) / 2.0, nu = 0.5 * qd * (0.4 - 1.1) / 1.5;
  // basis up-up, up-down, down-up, down-down
  Eigen::Matrix4d h = Eigen::Matrix4d::Zero();
  h(0, 0) = delta + eps + nu;
  h(1, 1) = -delta + eps - nu;
  h(2, 2) = -delta - eps + nu;
  h(3, 3) = delta - eps - nu;
  h(1, 2) = h(2, 1) = 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(h);
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(got[k].real(), es.eigenvalues()(k), 1e-12);
    EXPECT_NEAR(got[k].imag(), 0.0, 1e-12);
  }

  const Matrix H = OpenChain(c.model, c.bp).hamiltonian_direct();
  Matrix sz = pauli_on_site(Pauli::Z, 1, 2).matrix() + pauli_on_site(Pauli::Z, 2, 2).matrix();
  EXPECT_LE((H * sz - sz * H).norm(), 1e-13);
}

TEST(Solve, OneSiteFindsBothLevels) {
  json doc = base(1);
  doc["solve"] = {{"starts", 100}};
  const CommandResult r = cmd_solve(config(doc));
  const Row& summary = r.rows.back();
  EXPECT_EQ(summary["kind"], "completeness");
  EXPECT_EQ(summary["dimension"], 2);
  EXPECT_EQ(summary["levels"], 2);
}

TEST(Binary, ExitCodesAndRepeatability) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "xxz_cli_test";
  std::filesystem::create_directories(dir);
  const std::string exe = XXZ_CLI_PATH;
  const auto a = dir / "a.jsonl", b = dir / "b.jsonl";
  const std::string run = exe + " verify --seed 7 --suite ybe --suite weights --out ";
  EXPECT_EQ(std::system((run + a.string()).c_str()), 0);
  EXPECT_EQ(std::system((run + b.string()).c_str()), 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));

  const auto cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"schema": 1, "seed": "x"})";
  const int status = std::system((exe + " verify --config " + cfg.string() + " > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
  const int flag = std::system((exe + " verify --seed -1 > /dev/null 2>&1").c_str());
  EXPECT_EQ(WEXITSTATUS(flag), 2);
  EXPECT_EQ(std::system((exe + " verify --help > /dev/null").c_str()), 0);
}
