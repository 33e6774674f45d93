// fpl: sweep driver and acceptance checker for the driven Ising chain.
#include "fpl/errors.hpp"
#include "fpl/harness/analyze.hpp"
#include "fpl/harness/config.hpp"
#include "fpl/harness/emit.hpp"
#include "fpl/harness/recipes.hpp"
#include "fpl/harness/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

namespace {

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("FPL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw fpl::ConfigError(std::string("FPL_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int do_sweep(const std::string& config, const std::string& recipe, const std::string& out,
             int threads_flag, bool resume) {
  using namespace fpl::harness;
  const auto user = read_config_file(config);
  const auto tree = effective_tree(recipe, user, out);
  SweepOptions opt;
  opt.threads = resolve_threads(threads_flag);
  opt.resume = resume;
  opt.recipe = recipe;
  opt.log = [](const std::string& s) { std::cerr << s << '\n'; };
  const SweepResult result = run_sweep(tree, opt);
  const std::string dir = tree.at("output").at("directory").get<std::string>();
  emit(result, dir);
  const int failed = result.failed_cells();
  const auto series_failed = result.series_failures.size();
  std::cerr << "wrote " << dir << ": " << result.cells.size() << " cell(s), " << failed
            << " failed, " << result.cached_cells << " from cache\n";
  for (const auto& c : result.cells) {
    for (const auto& f : c.failures) std::cerr << "  " << cell_label(c.index) << " " << f << '\n';
  }
  for (const auto& f : result.series_failures) std::cerr << "  series " << f << '\n';
  return failed > 0 || series_failed > 0 ? 2 : 0;
}

int do_analyze(const std::string& dir) {
  using namespace fpl::harness;
  bool any_fail = false;
  for (const auto& c : check_directory(dir)) {
    std::cout << status_word(c.status) << "  [" << c.criterion << "] " << c.name << ": " << c.detail
              << '\n';
    any_fail = any_fail || c.status == CheckStatus::Fail;
  }
  return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven disordered Ising chain: Floquet sweeps and acceptance checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", FPL_VERSION);

  std::string config, recipe, out, in, check;
  int threads = 0;
  bool resume = false;

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write its artifacts");
  sweep->add_option("--config", config, "Config file (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--recipe", recipe, "Built-in figure recipe")
      ->check(CLI::IsMember(fpl::harness::recipe_names()));
  sweep->add_option("--out", out, "Output directory (overrides output.directory)");
  sweep->add_option("--threads", threads, "Worker threads (default: FPL_THREADS, else all cores)")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--resume", resume, "Reuse cached cells from an earlier run");

  auto* analyze = app.add_subcommand("analyze", "Check emitted artifacts");
  analyze->add_option("--in", in, "Sweep output directory")->required()->check(CLI::ExistingDirectory);
  analyze->add_option("--check", check, "Check suite")->required()->check(CLI::IsMember({"acceptance"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sweep) return do_sweep(config, recipe, out, threads, resume);
    return do_analyze(in);
  } catch (const fpl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
  } catch (const fpl::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
