#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fpl::harness {

struct GridPoint {
  double w_over_j = 0.0;
  double omega_over_j = 0.0;
};

struct SeriesPoint {
  std::string name;
  GridPoint point;
};

/// One sweep, as read from the config tree. Key names in the tree match the
/// field groups below; see README for the full schema.
struct ExperimentConfig {
  // model
  int sites = 9;
  double b0_over_j = 1.25;
  double delta_b_over_j = -1.25;
  // grid: explicit points when given, else the product of the two axes
  std::vector<double> w_axis;
  std::vector<double> omega_axis;
  std::vector<GridPoint> points;
  // protocol
  int cycles = 10;
  int realizations = 100;
  std::uint64_t master_seed = 1;
  int max_cycles = 40;
  int initial_slices = 64;
  int max_slices = 1 << 16;
  double slice_defect = 1e-8;
  // observables
  bool level_stats = false;
  bool kld_pt = false;
  bool entropy = false;
  bool support = false;
  bool anti_concentration = false;
  bool magnus_defect = false;
  bool digital_baseline = false;
  bool kld_vs_m = false;
  // estimator
  int r_bins = 50;
  double np_lo = 1e-6;
  double np_hi = 50.0;
  int np_bins = 60;
  double anticoncentration_delta = 1.0;
  int subsystem_count = 6;
  int subsystem_size = 3;
  bool subsystem_contiguous = false;
  std::string cz_schedule = "brickwork";
  int digital_seeds = 100;
  int digital_layers = 40;
  GridPoint digital_analog_point{3.0, 8.0};
  std::vector<SeriesPoint> series_points;
  // output
  std::string directory = "out";
  std::vector<std::string> formats{"csv", "json"};
  bool histograms = true;

  /// Cells in emission order: omega ascending outer, W ascending inner.
  std::vector<GridPoint> cells() const;
  bool needs_unitary() const { return level_stats || magnus_defect; }
  bool needs_state() const { return kld_pt || entropy || support || anti_concentration; }
  bool wants(const std::string& format) const;
};

/// Built-in defaults as a config tree.
nlohmann::json default_tree();

/// Overlay `patch` on `base` (RFC 7386 merge patch), rejecting unknown keys.
nlohmann::json overlay(nlohmann::json base, const nlohmann::json& patch);

/// Validates and converts; throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& tree);

/// Reads JSON from disk; throws ConfigError on parse failure or missing file.
nlohmann::json read_config_file(const std::string& path);

/// FNV-1a of the canonical dump of everything except the output block.
std::uint64_t config_hash(const nlohmann::json& tree);
std::string hex64(std::uint64_t v);

}  // namespace fpl::harness
