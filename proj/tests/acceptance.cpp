// Acceptance runner: one PASS/FAIL line per criterion 1-12.
//
// Usage: acceptance [--work <dir>] [--threads N] [--known-red 4,...]
// Criteria listed in --known-red are still evaluated and printed; they only
// stop counting towards the exit code.

#include "fpl/circuits.hpp"
#include "fpl/entanglement.hpp"
#include "fpl/harness/analyze.hpp"
#include "fpl/harness/config.hpp"
#include "fpl/harness/emit.hpp"
#include "fpl/harness/recipes.hpp"
#include "fpl/harness/sweep.hpp"
#include "fpl/magnus.hpp"
#include "magnus_oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace fpl;
using namespace fpl::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Line> results;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  results.push_back({id, name, pass, detail});
  std::printf("%s  [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

void report(const CheckResult& c) {
  if (c.status == CheckStatus::Skip) {
    report(c.criterion, c.name, false, "not evaluated: " + c.detail);
  } else {
    report(c.criterion, c.name, c.status == CheckStatus::Pass, c.detail);
  }
}

CheckResult pick(const std::vector<CheckResult>& checks, int id) {
  for (const auto& c : checks) {
    if (c.criterion == id) return c;
  }
  return {id, "criterion " + std::to_string(id), CheckStatus::Skip, "no check produced"};
}

std::string g(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", x);
  return b;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

void log_line(const std::string& s) { std::fprintf(stderr, "  %s\n", s.c_str()); }

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  std::string seconds() const {
    return g(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()) + " s";
  }
};

fs::path run(const fs::path& dir, const std::string& recipe, const json& user, int threads) {
  fs::remove_all(dir);
  Timer t;
  std::fprintf(stderr, "sweep %s -> %s\n", recipe.empty() ? "(custom)" : recipe.c_str(),
               dir.string().c_str());
  const json tree = effective_tree(recipe, user, dir.string());
  const auto res = run_sweep(tree, {.threads = threads, .recipe = recipe, .log = log_line});
  emit(res, dir.string());
  std::fprintf(stderr, "  done in %s\n", t.seconds().c_str());
  return dir;
}

// Criterion 8: Magnus structure, quadrature oracles, frequency ordering.
void magnus_suite() {
  using namespace oracle::magnus;
  SpinChainSpec s;
  s.sites = 3;
  s.disorder_width = 3.0;
  s.drive_frequency = 7.0;
  s.seed = 5;
  const auto d = draw_disorder(s, 1);
  const double h1_zero = max_abs(magnus_h1(s, d, 0.0).matrix());
  double e1 = 0.0;
  for (double t0 : {0.05, 0.2, 0.61}) {
    e1 = std::max(e1, max_abs(magnus_h1(s, d, t0).matrix() - h1_quadrature(ham(s, d), t0, s.period())));
  }
  double e2 = 0.0;
  for (double omega : {6.0, 9.0}) {
    s.drive_frequency = omega;
    const auto dd = draw_disorder(s, 2);
    e2 = std::max(e2, max_abs(magnus_h2(s, dd).matrix() - h2_quadrature(ham(s, dd), s.period())));
  }
  SpinChainSpec f;
  f.sites = 5;
  f.disorder_width = 4.0;
  f.seed = 5;
  double d8 = 0.0, d40 = 0.0;
  for (std::uint64_t k = 0; k < 20; ++k) {
    f.drive_frequency = 8.0;
    const auto dis = draw_disorder(f, k);
    d8 += magnus_defect(f, dis, 0) / 20;
    f.drive_frequency = 40.0;
    d40 += magnus_defect(f, dis, 0) / 20;
  }
  report(8, "Magnus suite", h1_zero == 0.0 && e1 < 1e-5 && e2 < 1e-5 && d40 < d8,
         "|H1(t0=0)|=" + g(h1_zero) + ", H1 oracle err " + g(e1) + ", H2 oracle err " + g(e2) +
             ", defect0 w=8: " + g(d8) + " w=40: " + g(d40));
}

// Criterion 10: kernels against dense Kronecker products, exhaustively for L <= 4.
void oracle_suite() {
  const Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
  double worst = 0.0;
  long strings = 0, kernels = 0, traces = 0;
  for (int L = 1; L <= 4; ++L) {
    const oracle::V psi = oracle::random_state(L, 100u + L);
    const StateVector state(psi);
    int total = 1;
    for (int i = 0; i < L; ++i) total *= 4;
    for (int code = 0; code < total; ++code) {
      std::vector<PauliFactor> f;
      std::vector<oracle::M> ops(L, oracle::eye2());
      int c = code;
      for (int i = 0; i < L; ++i, c /= 4) {
        if (c % 4 == 0) continue;  // identity
        const Axis a = axes[c % 4 - 1];
        f.push_back({i, a});
        ops[i] = a == Axis::X ? oracle::sx() : a == Axis::Y ? oracle::sy() : oracle::sz();
      }
      const oracle::M want = oracle::chain(ops);
      worst = std::max(worst, max_abs(pauli_string_matrix(f, L) - want));
      worst = std::max(worst, (apply_pauli_string(f, state).amplitudes() - want * psi).cwiseAbs().maxCoeff());
      ++strings;
    }
    for (Gate gt : {Gate::SqrtX, Gate::SqrtY, Gate::T, Gate::H}) {
      const Gate2 k = gate_matrix(gt);
      oracle::M m(2, 2);
      m << k[0], k[1], k[2], k[3];
      for (int q = 0; q < L; ++q) {
        CVector a = psi;
        apply_gate(a, q, k);
        worst = std::max(worst, (a - oracle::site(m, q, L) * psi).cwiseAbs().maxCoeff());
        ++kernels;
      }
    }
    const oracle::M p1 = (oracle::eye2() - oracle::sz()) / 2.0;
    for (int a = 0; a < L; ++a) {
      for (int b = 0; b < L; ++b) {
        if (a == b) continue;
        CVector v = psi;
        apply_cz(v, a, b);
        const oracle::M cz = oracle::M::Identity(1 << L, 1 << L) -
                             2.0 * oracle::site(p1, a, L) * oracle::site(p1, b, L);
        worst = std::max(worst, (v - cz * psi).cwiseAbs().maxCoeff());
        ++kernels;
      }
    }
    for (int mask = 1; mask + 1 < (1 << L); ++mask) {
      std::vector<int> sub;
      for (int i = 0; i < L; ++i) {
        if (mask >> i & 1) sub.push_back(i);
      }
      const auto rho = reduced_density_matrix(state, SubsystemChoice(sub, L));
      worst = std::max(worst, max_abs(rho.matrix() - oracle::partial_trace(psi, sub, L)));
      ++traces;
    }
  }
  report(10, "oracle equivalence", worst < 1e-13,
         std::to_string(strings) + " Pauli strings, " + std::to_string(kernels) + " gate/CZ kernels, " +
             std::to_string(traces) + " partial traces; max deviation " + g(worst));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Names and bytes of every CSV in the directory.
std::map<std::string, std::string> csv_files(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".csv") out[e.path().filename().string()] = slurp(e.path());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance runner"};
  std::string work = (fs::temp_directory_path() / "fpl_acceptance").string();
  int threads = 1;
  std::string known_red;
  app.add_option("--work", work, "scratch directory for sweep outputs");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--known-red", known_red, "comma-separated criteria excluded from the exit code");
  CLI11_PARSE(app, argc, argv);

  std::set<int> red;
  {
    std::stringstream ss(known_red);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) red.insert(std::stoi(item));
    }
  }
  const fs::path root(work);
  Timer total;

  try {
    report(check_reference_means());

    // Level statistics and entropy at the three labelled points, L = 9, D = 100.
    const fs::path level = run(root / "level", "",
                               json{{"grid", {{"points", {{4.0, 4.2}, {30.0, 8.0}, {4.0, 20.1}}}}},
                                    {"observables", {{"level_stats", true}, {"entropy", true}}}},
                               threads);
    const auto lc = check_directory(level.string());
    report(pick(lc, 2));
    report(pick(lc, 3));
    report(pick(lc, 4));

    // Output distributions at m = 10 for the three KLD points, D = 100.
    const fs::path dist = run(root / "dist", "",
                              json{{"grid", {{"points", {{3.0, 8.0}, {30.0, 8.0}, {4.0, 20.0}}}}},
                                   {"observables", {{"kld_pt", true}, {"anti_concentration", true}}}},
                              threads);
    const auto dc = check_directory(dist.string());
    report(pick(dc, 5));
    report(pick(dc, 6));
    report(pick(lc, 7));

    magnus_suite();

    // Full fig4 heatmap at reduced size: every cell certified.
    const fs::path fig4 = run(root / "fig4", "fig4",
                              json{{"model", {{"L", 6}}}, {"protocol", {{"realizations", 2}}}}, threads);
    report(pick(check_directory(fig4.string()), 9));

    oracle_suite();

    const fs::path fig6 = run(root / "fig6", "fig6-digital", json::object(), threads);
    report(pick(check_directory(fig6.string()), 11));

    // Same recipe and config, different thread counts.
    bool same = true;
    std::string detail;
    int compared = 0;
    for (const auto& [recipe, patch] :
         std::vector<std::pair<std::string, json>>{
             {"fig3", json{{"model", {{"L", 6}}}, {"protocol", {{"realizations", 6}, {"max_cycles", 12}}}}},
             {"fig5-entropy", json{{"model", {{"L", 5}}},
                                   {"grid", {{"W_over_J", {1.0, 30.0}}, {"omega_over_J", {4.2, 20.1}}}},
                                   {"protocol", {{"realizations", 4}}},
                                   {"estimator", {{"subsystems", {{"count", 3}, {"size", 2}}}}}}},
             {"fig6-digital", json{{"model", {{"L", 6}}},
                                   {"protocol", {{"realizations", 4}}},
                                   {"estimator", {{"digital_seeds", 8}, {"digital_layers", 12}}}}}}) {
      const auto a = csv_files(run(root / ("det_" + recipe + "_1"), recipe, patch, 1));
      const auto b = csv_files(run(root / ("det_" + recipe + "_3"), recipe, patch, 3));
      if (a.size() != b.size()) same = false;
      for (const auto& [name, bytes] : a) {
        ++compared;
        const auto it = b.find(name);
        if (it == b.end() || it->second != bytes) {
          same = false;
          detail += " " + recipe + "/" + name;
        }
      }
    }
    report(12, "determinism across thread counts", same && compared > 0,
           std::to_string(compared) + " CSV files compared, threads 1 vs 3" +
               (detail.empty() ? std::string(", all byte-identical") : ", differing:" + detail));
  } catch (const std::exception& e) {
    std::printf("FAIL  runner aborted: %s\n", e.what());
    return 1;
  }

  int unexpected = 0;
  for (const auto& r : results) {
    if (r.pass) continue;
    if (red.count(r.id)) {
      std::printf("note  [%d] is a known red criterion; excluded from the exit code\n", r.id);
    } else {
      ++unexpected;
    }
  }
  std::printf("%zu criteria, %d unexpected failure(s), %s\n", results.size(), unexpected,
              total.seconds().c_str());
  return unexpected == 0 ? 0 : 1;
}
