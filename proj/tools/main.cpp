#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cli/commands.hpp"

using namespace xxz::cli;

int main(int argc, char** argv) {
  CLI::App app{"Checks and solvers for the open XXZ chain with non-diagonal boundaries"};
  app.require_subcommand(1);
  Overrides o;
  std::string config_path;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  std::string out, format;
  int n = 0;
  double q_re = 0, q_im = 0;
  unsigned threads = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "Seed for sampled parameters and probe points");
    sub->add_option("--out", out, "Output file (default: stdout)");
    sub->add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    sub->add_option("--n", n, "Number of sites (draws the inhomogeneities from the seed)")->check(CLI::Range(1, 8));
    sub->add_option("--q-re", q_re, "Real part of q");
    sub->add_option("--q-im", q_im, "Imaginary part of q");
    sub->add_option("--threads", threads, "Worker threads (0: all cores)");
  };
  CLI::App* verify = app.add_subcommand("verify", "Run identity suites and report residuals");
  add_common(verify);
  verify->add_option("--suite", suites, "Suite to run (repeatable)");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Eigenvalues of t(u0) and of the Hamiltonian");
  add_common(spectrum);
  CLI::App* solve = app.add_subcommand("solve", "Solve the Bethe equations and match them to the spectrum");
  add_common(solve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags count as bad input
  }
  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) o.seed = seed;
  if (!suites.empty()) o.suites = suites;
  if (sub->count("--out")) o.out = out;
  if (sub->count("--format")) o.format = format;
  if (sub->count("--n")) o.n = n;
  if (sub->count("--q-re")) o.q_re = q_re;
  if (sub->count("--q-im")) o.q_im = q_im;
  if (sub->count("--threads")) o.threads = threads;

  RunConfig cfg;
  try {
    const auto doc = config_path.empty() ? default_document() : load_document(config_path);
    cfg = materialize(doc, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  CommandResult result;
  try {
    if (sub == verify)
      result = cmd_verify(cfg);
    else if (sub == spectrum)
      result = cmd_spectrum(cfg);
    else
      result = cmd_solve(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (cfg.out_path.empty()) {
    write_rows(std::cout, result.rows, cfg.format);
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << cfg.out_path << '\n';
      return 2;
    }
    write_rows(f, result.rows, cfg.format);
  }
  return result.status;
}
