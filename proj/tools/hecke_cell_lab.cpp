// Command-line driver: runs one verification suite and prints its report.
//
//   hecke-cell-lab verify <suite> --type <A1|A2|B2|G2|A3>
//       [--q <rational>] [--sqrt-q <rational>] [--max-len <n>]
//       [--points <file>] [--seed <n>] [--cache-dir <path>]
//       [--format json|tsv]
//
// Exit codes: 0 all checks pass, 1 at least one FAIL record, 2 usage error.
// The cache directory can also come from HECKE_CELL_LAB_CACHE_DIR; the flag
// wins when both are set.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "heckelab/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "hecke-cell-lab: exact verification suites for the extended affine "
      "Weyl group, the affine Hecke algebra, and its central-character "
      "quotients"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run one verification suite");
  std::string suite;
  std::string type = "A1";
  std::string q_str, sqrtq_str, points, cache_dir;
  std::string format = "json";
  int max_len = -1;
  std::uint64_t seed = 1;
  verify->add_option("suite", suite,
                     "prop12|lemma22|formulas|thm34|thm35|thm41|lie-check|cells")
      ->required();
  verify->add_option("--type", type, "root-system type: A1|A2|B2|G2|A3");
  verify->add_option("--q", q_str, "rational value of q0 (default 4)");
  verify->add_option("--sqrt-q", sqrtq_str,
                     "rational r specializing v = r (sets q0 = r^2)");
  verify->add_option("--max-len", max_len,
                     "length bound (prop12/lemma22/cells) or coordinate box "
                     "radius (formulas)");
  verify->add_option("--points", points,
                     "file of torus points, one 'q0 c1 ... cn' per line "
                     "(thm34/thm41)");
  verify->add_option("--seed", seed, "seed for sampled grids and cross-checks");
  verify->add_option("--cache-dir", cache_dir,
                     "directory for persistent Kazhdan-Lusztig tables");
  verify->add_option("--format", format, "json|tsv")
      ->check(CLI::IsMember({"json", "tsv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  heckelab::RunConfig cfg;
  cfg.type = type;
  try {
    if (!sqrtq_str.empty()) {
      cfg.sqrt_q = heckelab::rat_parse(sqrtq_str);
      cfg.q0 = *cfg.sqrt_q * *cfg.sqrt_q;
    }
    if (!q_str.empty()) cfg.q0 = heckelab::rat_parse(q_str);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  cfg.max_len = max_len;
  cfg.points_file = points;
  cfg.seed = seed;
  cfg.cache_dir = cache_dir;
  if (cfg.cache_dir.empty()) {
    if (const char* env = std::getenv("HECKE_CELL_LAB_CACHE_DIR"))
      cfg.cache_dir = env;
  }

  try {
    auto t0 = std::chrono::steady_clock::now();
    heckelab::SuiteReport rep = heckelab::run_suite(suite, cfg);
    auto t1 = std::chrono::steady_clock::now();
    rep.set_timing_ms(
        std::chrono::duration<double, std::milli>(t1 - t0).count());
    if (format == "tsv")
      std::cout << rep.tsv();
    else
      std::cout << rep.full().dump(2) << "\n";
    return rep.all_pass() ? 0 : 1;
  } catch (const heckelab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
