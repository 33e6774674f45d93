#pragma once

#include "fpl/harness/config.hpp"
#include "fpl/sampling.hpp"
#include "fpl/spectra.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace fpl::harness {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// Observables of one disorder realization at one cell.
struct RealizationRecord {
  bool ok = true;
  std::string error;
  std::uint64_t realization = 0;
  int slices = 0;
  double slice_defect = kMissing;
  double unitarity_defect = kMissing;
  double norm_defect = kMissing;
  double mean_r = kMissing;
  double mean_r_u0 = kMissing;
  Histogram r_hist;
  Histogram r0_hist;
  ProbabilityHistogram np_hist;
  double kld_pt = kMissing;
  double entropy_mean = kMissing;
  double entropy_std = kMissing;
  double support = kMissing;
  double anticonc = kMissing;
  double magnus0 = kMissing;
  double magnus2 = kMissing;
};

/// Ensemble-reduced observables of one (W, omega) cell.
struct CellResult {
  int index = 0;
  GridPoint point;
  std::uint64_t cell_seed = 0;
  bool failed = false;
  std::vector<std::string> failures;
  int n_realizations = 0;

  double mean_r = kMissing, std_r = kMissing;
  double mean_r_u0 = kMissing, std_r_u0 = kMissing;
  double kld_r_coe = kMissing, kld_r_poi = kMissing, kld_r_goe = kMissing;
  double kld_pt = kMissing, kld_pt_std = kMissing;
  double entropy_mean = kMissing, entropy_std = kMissing;
  double support_mean = kMissing, anticonc_mean = kMissing;
  double magnus_defect0 = kMissing, magnus_defect2 = kMissing;
  double max_unitarity_defect = kMissing, max_slice_defect = kMissing;
  double max_norm_defect = kMissing;
  int max_slices = 0;

  Histogram r_hist;
  Histogram r0_hist;
  ProbabilityHistogram np_hist;
  std::vector<int> slices;
  std::vector<double> slice_defects;
  std::vector<std::vector<int>> subsystems;
};

nlohmann::json to_json(const CellResult& c);
CellResult cell_from_json(const nlohmann::json& j);

struct SeriesRow {
  int m = 0;
  std::vector<double> values;
};

struct SweepResult {
  nlohmann::json tree;  // effective config
  std::uint64_t hash = 0;
  std::string recipe;
  std::vector<CellResult> cells;
  int cached_cells = 0;
  // kld_vs_m.csv: columns kld_<name> per series point
  std::vector<std::string> series_names;
  std::vector<SeriesRow> kld_vs_m;
  std::vector<int> series_slices;
  // digital_vs_analog.csv: kld_digital, kld_analog
  std::vector<SeriesRow> digital;  // values: matched_layers, kld_digital, kld_analog
  std::vector<std::string> series_failures;

  int failed_cells() const;
};

struct SweepOptions {
  int threads = 1;
  bool resume = false;
  std::string recipe;
  std::function<void(const std::string&)> log;  // progress lines, optional
};

/// Cell index k uses disorder stream (cell_seed(master, k), realization).
std::uint64_t cell_seed(std::uint64_t master_seed, int cell_index);

/// One realization at one cell; exceptions are caught into the record.
RealizationRecord run_realization(const ExperimentConfig& cfg, const CellResult& cell,
                                  std::uint64_t realization);

/// Deterministic fold in realization order.
void reduce_cell(const ExperimentConfig& cfg, CellResult& cell,
                 const std::vector<RealizationRecord>& records);

/// Runs every cell (and the enabled series) with a fixed-order reduction, so
/// output does not depend on thread count or scheduling. Cells cached under
/// <directory>/.cache are reused when options.resume is set.
SweepResult run_sweep(const nlohmann::json& tree, const SweepOptions& options);

/// Calls fn(i) for i in [0, n) on `threads` workers. The first exception is
/// rethrown after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace fpl::harness
