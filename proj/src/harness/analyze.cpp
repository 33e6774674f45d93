#include "fpl/harness/analyze.hpp"

#include "fpl/errors.hpp"
#include "fpl/harness/emit.hpp"
#include "fpl/spectra.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace fpl::harness {

namespace fs = std::filesystem;
using namespace limits;

const char* status_word(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Skip:
      return "SKIP";
  }
  return "?";
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

CheckResult make(int id, std::string name, bool ok, std::string detail) {
  return {id, std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

CheckResult skip(int id, std::string name, std::string why) {
  return {id, std::move(name), CheckStatus::Skip, std::move(why)};
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

Table read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + " is empty");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != t.header.size()) throw IoError(path + ": ragged row '" + line + "'");
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < f.size(); ++k) row[t.header[k]] = f[k];
    t.rows.push_back(std::move(row));
  }
  return t;
}

double field(const std::map<std::string, std::string>& row, const std::string& column) {
  const auto it = row.find(column);
  if (it == row.end()) throw IoError("missing column " + column);
  if (it->second.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(it->second);
}

const std::map<std::string, std::string>* find_cell(const Table& t, double w, double omega) {
  for (const auto& r : t.rows) {
    if (near(field(r, "W_over_J"), w, 1e-9) && near(field(r, "omega_over_J"), omega, 1e-9)) return &r;
  }
  return nullptr;
}

std::vector<double> moving_average(const std::vector<double>& v, int window) {
  std::vector<double> out;
  for (std::size_t k = static_cast<std::size_t>(window) - 1; k < v.size(); ++k) {
    double s = 0.0;
    for (int j = 0; j < window; ++j) s += v[k - static_cast<std::size_t>(j)];
    out.push_back(s / window);
  }
  return out;
}

double kld_bias_floor(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "run.json");
  if (!in) return 0.0;
  try {
    const auto cfg = nlohmann::json::parse(in).at("config");
    const double seeds = cfg.at("estimator").at("digital_seeds").get<double>();
    const double dim = std::ldexp(1.0, cfg.at("model").at("L").get<int>());
    const double slots = cfg.at("estimator").at("np_edges").at("bins").get<double>() + 2.0;
    return (slots - 1.0) / (2.0 * seeds * dim);
  } catch (const std::exception&) {
    return 0.0;
  }
}

CheckResult check_reference_means() {
  const double coe = reference_mean(Ensemble::COE);
  const double poi = reference_mean(Ensemble::POI);
  const double goe = reference_mean(Ensemble::GOE);
  const bool ok = near(coe, kMeanCOE, kMeanTol) && near(poi, kMeanPOI, kMeanTol) &&
                  near(goe, kMeanGOE, kMeanTol);
  char buf[160];
  std::snprintf(buf, sizeof buf, "COE %.6f POI %.6f GOE %.6f (tol %.3f)", coe, poi, goe, kMeanTol);
  return make(1, "reference ensemble means", ok, buf);
}

std::vector<CheckResult> check_directory(const std::string& dir_s) {
  const fs::path dir(dir_s);
  std::vector<CheckResult> out;

  // Artifact shape first; nothing else is trusted if it fails.
  const fs::path grid_path = dir / "grid.csv";
  if (!fs::exists(grid_path)) throw IoError("no grid.csv in " + dir_s);
  {
    std::ifstream in(grid_path);
    std::string header;
    std::getline(in, header);
    const Table g = read_csv(grid_path.string());
    bool ordered = true;
    for (std::size_t k = 1; k < g.rows.size(); ++k) {
      const double o0 = field(g.rows[k - 1], "omega_over_J"), o1 = field(g.rows[k], "omega_over_J");
      const double w0 = field(g.rows[k - 1], "W_over_J"), w1 = field(g.rows[k], "W_over_J");
      if (o1 < o0 || (o1 == o0 && w1 <= w0)) ordered = false;
    }
    out.push_back(make(0, "grid.csv layout", header == kGridHeader && ordered,
                       header == kGridHeader ? (ordered ? "header and row order ok" : "rows out of order")
                                             : "unexpected header"));
  }

  out.push_back(check_reference_means());

  const fs::path cells_path = dir / "cells.csv";
  const bool have_cells = fs::exists(cells_path);
  const Table cells = have_cells ? read_csv(cells_path.string()) : Table{};
  const Table grid = read_csv(grid_path.string());

  auto level_point = [&](int id, const char* name, double w, double om, auto judge) {
    const auto* row = have_cells ? find_cell(cells, w, om) : nullptr;
    if (!row || std::isnan(field(*row, "mean_r"))) {
      out.push_back(skip(id, name, "no level statistics at W=" + num(w) + " omega=" + num(om)));
      return;
    }
    out.push_back(judge(*row));
  };

  level_point(2, "driven-thermal level statistics", 4.0, 4.2, [](const auto& r) {
    const double m = field(r, "mean_r"), k = field(r, "kld_r_coe");
    return make(2, "driven-thermal level statistics", near(m, kMeanCOE, kThermalRTol) && k < kRHistKld,
                "<r>=" + num(m) + " KLD(COE)=" + num(k));
  });
  level_point(3, "driven-MBL level statistics", 30.0, 8.0, [](const auto& r) {
    const double m = field(r, "mean_r"), k = field(r, "kld_r_poi");
    return make(3, "driven-MBL level statistics", near(m, kMeanPOI, kMblRTol) && k < kRHistKld,
                "<r>=" + num(m) + " KLD(POI)=" + num(k));
  });
  level_point(4, "prethermal level statistics", 4.0, 20.1, [](const auto& r) {
    const double m = field(r, "mean_r"), m0 = field(r, "mean_r_u0");
    return make(4, "prethermal level statistics",
                near(m, kMeanGOE, kPrethermalRTol) && std::abs(m - m0) < kPrethermalUU0,
                "<r>_U=" + num(m) + " <r>_U0=" + num(m0));
  });

  // KLD ordering: prefer the m-series, fall back to grid cells.
  {
    const char* name = "KLD-to-PT ordering at m=10";
    double th = NAN, pre = NAN, mbl = NAN;
    std::string src;
    if (fs::exists(dir / "kld_vs_m.csv")) {
      const Table s = read_csv((dir / "kld_vs_m.csv").string());
      for (const auto& r : s.rows) {
        if (field(r, "m") == 10.0 && r.count("kld_thermal") && r.count("kld_mbl") &&
            r.count("kld_prethermal")) {
          th = field(r, "kld_thermal");
          mbl = field(r, "kld_mbl");
          pre = field(r, "kld_prethermal");
          src = "kld_vs_m.csv";
        }
      }
    }
    if (src.empty()) {
      const auto* a = find_cell(grid, 3.0, 8.0);
      const auto* b = find_cell(grid, 4.0, 20.0);
      const auto* c = find_cell(grid, 30.0, 8.0);
      if (a && b && c) {
        th = field(*a, "kld_pt");
        pre = field(*b, "kld_pt");
        mbl = field(*c, "kld_pt");
        src = "grid.csv";
      }
    }
    if (src.empty() || std::isnan(th) || std::isnan(pre) || std::isnan(mbl)) {
      out.push_back(skip(5, name, "thermal/prethermal/MBL KLD values not present"));
    } else {
      out.push_back(make(5, name, th < pre && pre < mbl && th < kThermalKldPt,
                         src + ": thermal " + num(th) + " < prethermal " + num(pre) + " < MBL " +
                             num(mbl)));
    }
  }

  {
    const char* name = "anti-concentration fraction";
    const auto* th = find_cell(grid, 3.0, 8.0);
    const auto* mbl = find_cell(grid, 30.0, 8.0);
    if (!th || !mbl || std::isnan(field(*th, "anticonc_mean")) || std::isnan(field(*mbl, "anticonc_mean"))) {
      out.push_back(skip(6, name, "needs anticonc at W=3,omega=8 and W=30,omega=8"));
    } else {
      const double a = field(*th, "anticonc_mean"), b = field(*mbl, "anticonc_mean");
      out.push_back(make(6, name, near(a, kAntiConc, kAntiConcTol) && b < kMblAntiConc,
                         "thermal " + num(a) + " MBL " + num(b)));
    }
  }

  {
    const char* name = "entropy panel";
    const auto* th = find_cell(grid, 4.0, 4.2);
    const auto* mbl = find_cell(grid, 30.0, 8.0);
    if (!th || !mbl || std::isnan(field(*th, "entropy_mean")) || std::isnan(field(*mbl, "entropy_mean"))) {
      out.push_back(skip(7, name, "needs entropy at W=4,omega=4.2 and W=30,omega=8"));
    } else {
      const double m = field(*th, "entropy_mean"), s = field(*th, "entropy_std");
      const double mb = field(*mbl, "entropy_mean");
      out.push_back(make(7, name,
                         near(m, kEntropyMax, kEntropyTol) && s < kEntropyStd && mb < kMblEntropy,
                         "thermal " + num(m) + " +- " + num(s) + " MBL " + num(mb)));
    }
  }

  {
    const char* name = "propagator certification";
    if (!have_cells) {
      out.push_back(skip(9, name, "no cells.csv"));
    } else {
      double worst_u = NAN, worst_s = 0.0;
      int checked = 0, failed = 0;
      for (const auto& r : cells.rows) {
        if (field(r, "failed") != 0.0) {
          ++failed;
          continue;
        }
        const double u = field(r, "max_unitarity_defect");
        const double s = field(r, "max_slice_defect");
        if (std::isnan(s)) continue;
        ++checked;
        if (!std::isnan(u)) worst_u = std::isnan(worst_u) ? u : std::max(worst_u, u);
        worst_s = std::max(worst_s, s);
      }
      if (checked == 0 && failed == 0) {
        out.push_back(skip(9, name, "no propagated cells"));
      } else {
        const bool unitary_ok = std::isnan(worst_u) || worst_u < kUnitarity;
        out.push_back(make(9, name, failed == 0 && unitary_ok && worst_s < kSliceDefect,
                           std::to_string(checked) + " cells, " + std::to_string(failed) +
                               " failed, max unitarity " +
                               (std::isnan(worst_u) ? std::string("n/a (no unitary built)") : num(worst_u)) +
                               ", max slice defect " + num(worst_s)));
      }
    }
  }

  {
    const char* name = "digital baseline";
    if (!fs::exists(dir / "digital_vs_analog.csv")) {
      out.push_back(skip(11, name, "no digital_vs_analog.csv"));
    } else {
      const Table d = read_csv((dir / "digital_vs_analog.csv").string());
      std::vector<double> dig;
      double d10 = NAN, a10 = NAN, d40 = NAN;
      for (const auto& r : d.rows) {
        dig.push_back(field(r, "kld_digital"));
        const int m = static_cast<int>(field(r, "m"));
        if (m == 10) {
          d10 = field(r, "kld_digital");
          a10 = field(r, "kld_analog");
        }
        if (m == 40) d40 = field(r, "kld_digital");
      }
      // Rises smaller than the estimator's finite-sample bias are not resolvable.
      const double floor = kld_bias_floor(dir.string());
      const auto ma = moving_average(dig, kMovingWindow);
      bool mono = !ma.empty();
      for (std::size_t k = 1; k < ma.size(); ++k) mono = mono && ma[k] <= ma[k - 1] + floor;
      out.push_back(make(11, name, mono && d10 > a10 && d40 < kDigitalFinal,
                         std::string("moving average ") + (mono ? "non-increasing" : "NOT monotone") +
                             " (resolution " + num(floor) + "), m=10 digital " + num(d10) +
                             " vs analog " + num(a10) + ", m=40 digital " + num(d40)));
    }
  }
  return out;
}

}  // namespace fpl::harness
