#include "fpl/harness/emit.hpp"

#include "fpl/errors.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fpl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string cell_label(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "c%04d", index);
  return buf;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

std::string grid_csv(const SweepResult& r) {
  std::ostringstream o;
  o << kGridHeader << '\n';
  for (const auto& c : r.cells) {
    o << fmt(c.point.w_over_j) << ',' << fmt(c.point.omega_over_j) << ',' << fmt(c.mean_r) << ','
      << fmt(c.std_r) << ',' << fmt(c.kld_pt) << ',' << fmt(c.kld_pt_std) << ','
      << fmt(c.entropy_mean) << ',' << fmt(c.entropy_std) << ',' << fmt(c.support_mean) << ','
      << fmt(c.anticonc_mean) << ',' << fmt(c.magnus_defect0) << ',' << c.n_realizations << '\n';
  }
  return o.str();
}

std::string cells_csv(const SweepResult& r) {
  std::ostringstream o;
  o << "cell,W_over_J,omega_over_J,failed,n_realizations,mean_r,mean_r_u0,std_r_u0,kld_r_coe,"
       "kld_r_poi,kld_r_goe,magnus_defect2,max_unitarity_defect,max_slice_defect,"
       "max_norm_defect,max_slices\n";
  for (const auto& c : r.cells) {
    o << cell_label(c.index) << ',' << fmt(c.point.w_over_j) << ',' << fmt(c.point.omega_over_j)
      << ',' << (c.failed ? 1 : 0) << ',' << c.n_realizations << ',' << fmt(c.mean_r) << ','
      << fmt(c.mean_r_u0) << ',' << fmt(c.std_r_u0) << ',' << fmt(c.kld_r_coe) << ','
      << fmt(c.kld_r_poi) << ',' << fmt(c.kld_r_goe) << ',' << fmt(c.magnus_defect2) << ','
      << fmt(c.max_unitarity_defect) << ',' << fmt(c.max_slice_defect) << ','
      << fmt(c.max_norm_defect) << ',' << c.max_slices << '\n';
  }
  return o.str();
}

std::string hist_csv(const Histogram& h) {
  std::ostringstream o;
  o << "bin_lo,bin_hi,mass\n";
  const auto m = h.masses();
  for (int b = 0; b < h.bins(); ++b) {
    o << fmt(h.bin_lo(b)) << ',' << fmt(h.bin_hi(b)) << ',' << fmt(m[static_cast<std::size_t>(b)]) << '\n';
  }
  return o.str();
}

std::string np_csv(const ProbabilityHistogram& h) {
  std::ostringstream o;
  o << "bin_lo,bin_hi,mass\n";
  const auto m = h.masses();
  for (int k = 0; k < static_cast<int>(m.size()); ++k) {
    o << fmt(h.slot_lo(k)) << ',' << fmt(h.slot_hi(k)) << ',' << fmt(m[static_cast<std::size_t>(k)]) << '\n';
  }
  return o.str();
}

std::string kld_vs_m_csv(const SweepResult& r) {
  std::ostringstream o;
  o << 'm';
  for (const auto& n : r.series_names) o << ",kld_" << n;
  o << '\n';
  for (const auto& row : r.kld_vs_m) {
    o << row.m;
    for (double v : row.values) o << ',' << fmt(v);
    o << '\n';
  }
  return o.str();
}

std::string digital_csv(const SweepResult& r) {
  std::ostringstream o;
  o << "m,matched_layers,kld_digital,kld_analog\n";
  for (const auto& row : r.digital) {
    o << row.m << ',' << static_cast<int>(row.values[0]) << ',' << fmt(row.values[1]) << ','
      << fmt(row.values[2]) << '\n';
  }
  return o.str();
}

json run_json(const SweepResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    json realizations = json::array();
    for (std::size_t k = 0; k < c.slices.size(); ++k) {
      realizations.push_back({{"disorder_key", {c.cell_seed, k}},
                              {"slices", c.slices[k]},
                              {"slice_defect", c.slice_defects[k]}});
    }
    cells.push_back({{"cell", cell_label(c.index)},
                     {"W_over_J", c.point.w_over_j},
                     {"omega_over_J", c.point.omega_over_j},
                     {"cell_seed", c.cell_seed},
                     {"failed", c.failed},
                     {"failures", c.failures},
                     {"subsystems", c.subsystems},
                     {"max_slices", c.max_slices},
                     {"max_slice_defect", std::isnan(c.max_slice_defect) ? json(nullptr) : json(c.max_slice_defect)},
                     {"max_unitarity_defect",
                      std::isnan(c.max_unitarity_defect) ? json(nullptr) : json(c.max_unitarity_defect)},
                     {"realizations", realizations}});
  }
  json series = json::object();
  for (std::size_t p = 0; p < r.series_names.size(); ++p) {
    series[r.series_names[p]] = {{"max_slices", r.series_slices[p]}};
  }
  return {{"config", r.tree},
          {"provenance",
           {{"code_version", FPL_VERSION},
            {"config_hash", hex64(r.hash)},
            {"recipe", r.recipe},
            {"rng", "seed_seq(tag, key...) -> mt19937_64"},
            {"disorder_key", "realization k of cell c draws from (cell_seed(master_seed, c), k)"},
            {"subsystems_fixed_per", "cell"},
            {"failed_cells", r.failed_cells()},
            {"series_failures", r.series_failures},
            {"series", series},
            {"cells", cells}}}};
}

}  // namespace

std::string refcurves_csv() {
  std::ostringstream o;
  o << "kind,x,density\n";
  constexpr int n = 200;
  for (Ensemble e : {Ensemble::COE, Ensemble::POI, Ensemble::GOE}) {
    for (int k = 0; k <= n; ++k) {
      const double r = static_cast<double>(k) / n;
      o << ensemble_name(e) << ',' << fmt(r) << ',' << fmt(reference_density(e, r)) << '\n';
    }
  }
  // PT in the scaled variable x = N p: density exp(-x).
  for (int k = 0; k <= n; ++k) {
    const double x = 1e-6 * std::pow(50.0 / 1e-6, static_cast<double>(k) / n);
    o << "PT," << fmt(x) << ',' << fmt(std::exp(-x)) << '\n';
  }
  return o.str();
}

void emit(const SweepResult& r, const std::string& directory) {
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());
  const ExperimentConfig cfg = parse_config(r.tree);
  if (cfg.wants("csv")) {
    write_file(dir / "grid.csv", grid_csv(r));
    write_file(dir / "cells.csv", cells_csv(r));
    write_file(dir / "refcurves.csv", refcurves_csv());
    if (cfg.histograms) {
      for (const auto& c : r.cells) {
        if (c.failed) continue;
        const std::string id = cell_label(c.index);
        if (cfg.level_stats) {
          write_file(dir / ("hist_r_" + id + ".csv"), hist_csv(c.r_hist));
          write_file(dir / ("hist_r0_" + id + ".csv"), hist_csv(c.r0_hist));
        }
        if (cfg.kld_pt) write_file(dir / ("hist_np_" + id + ".csv"), np_csv(c.np_hist));
      }
    }
    if (!r.kld_vs_m.empty()) write_file(dir / "kld_vs_m.csv", kld_vs_m_csv(r));
    if (!r.digital.empty()) write_file(dir / "digital_vs_analog.csv", digital_csv(r));
  }
  if (cfg.wants("json")) write_file(dir / "run.json", run_json(r).dump(2) + "\n");
}

}  // namespace fpl::harness
