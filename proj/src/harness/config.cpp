#include "fpl/harness/config.hpp"

#include "fpl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace fpl::harness {

using nlohmann::json;

json default_tree() {
  return json{
      {"model", {{"L", 9}, {"B0_over_J", 1.25}, {"deltaB_over_J", -1.25}}},
      {"grid", {{"W_over_J", json::array({3.0})}, {"omega_over_J", json::array({8.0})},
                {"points", json::array()}}},
      {"protocol",
       {{"m_cycles", 10},
        {"realizations", 100},
        {"master_seed", 1},
        {"max_cycles", 40},
        {"initial_slices", 64},
        {"max_slices", 1 << 16},
        {"slice_defect", 1e-8}}},
      {"observables",
       {{"level_stats", false},
        {"kld_pt", false},
        {"entropy", false},
        {"support", false},
        {"anti_concentration", false},
        {"magnus_defect", false},
        {"digital_baseline", false},
        {"kld_vs_m", false}}},
      {"estimator",
       {{"r_bins", 50},
        {"np_edges", {{"lo", 1e-6}, {"hi", 50.0}, {"bins", 60}}},
        {"anticoncentration_delta", 1.0},
        {"subsystems", {{"count", 6}, {"size", 3}, {"contiguous", false}}},
        {"cz_schedule", "brickwork"},
        {"digital_seeds", 100},
        {"digital_layers", 40},
        {"digital_analog_point", json::array({3.0, 8.0})},
        {"series_points",
         json::array({{{"name", "thermal"}, {"point", {3.0, 8.0}}},
                      {{"name", "mbl"}, {"point", {30.0, 8.0}}},
                      {{"name", "prethermal"}, {"point", {4.0, 20.0}}}})}}},
      {"output",
       {{"directory", "out"}, {"formats", json::array({"csv", "json"})}, {"histograms", true}}},
  };
}

namespace {

void check_keys(const json& base, const json& patch, const std::string& path) {
  if (!patch.is_object() || !base.is_object()) return;
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path + "/" + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown config key " + key);
    check_keys(base.at(it.key()), it.value(), key);
  }
}

template <class T>
T get(const json& tree, const json::json_pointer& ptr) {
  try {
    return tree.at(ptr).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad config value at " + ptr.to_string() + ": " + e.what());
  }
}

template <class T>
T get(const json& tree, const char* ptr) {
  return get<T>(tree, json::json_pointer(ptr));
}

GridPoint as_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ConfigError(where + " must be a [W_over_J, omega_over_J] pair");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

json overlay(json base, const json& patch) {
  check_keys(base, patch, "");
  base.merge_patch(patch);
  return base;
}

ExperimentConfig parse_config(const json& t) {
  ExperimentConfig c;
  c.sites = get<int>(t, "/model/L");
  c.b0_over_j = get<double>(t, "/model/B0_over_J");
  c.delta_b_over_j = get<double>(t, "/model/deltaB_over_J");
  c.w_axis = sorted_unique(get<std::vector<double>>(t, "/grid/W_over_J"));
  c.omega_axis = sorted_unique(get<std::vector<double>>(t, "/grid/omega_over_J"));
  if (t.at("/grid"_json_pointer).contains("points")) {
    for (const auto& p : t.at("/grid/points"_json_pointer)) c.points.push_back(as_point(p, "/grid/points"));
  }
  c.cycles = get<int>(t, "/protocol/m_cycles");
  c.realizations = get<int>(t, "/protocol/realizations");
  c.master_seed = get<std::uint64_t>(t, "/protocol/master_seed");
  c.max_cycles = get<int>(t, "/protocol/max_cycles");
  c.initial_slices = get<int>(t, "/protocol/initial_slices");
  c.max_slices = get<int>(t, "/protocol/max_slices");
  c.slice_defect = get<double>(t, "/protocol/slice_defect");

  c.level_stats = get<bool>(t, "/observables/level_stats");
  c.kld_pt = get<bool>(t, "/observables/kld_pt");
  c.entropy = get<bool>(t, "/observables/entropy");
  c.support = get<bool>(t, "/observables/support");
  c.anti_concentration = get<bool>(t, "/observables/anti_concentration");
  c.magnus_defect = get<bool>(t, "/observables/magnus_defect");
  c.digital_baseline = get<bool>(t, "/observables/digital_baseline");
  c.kld_vs_m = get<bool>(t, "/observables/kld_vs_m");

  c.r_bins = get<int>(t, "/estimator/r_bins");
  c.np_lo = get<double>(t, "/estimator/np_edges/lo");
  c.np_hi = get<double>(t, "/estimator/np_edges/hi");
  c.np_bins = get<int>(t, "/estimator/np_edges/bins");
  c.anticoncentration_delta = get<double>(t, "/estimator/anticoncentration_delta");
  c.subsystem_count = get<int>(t, "/estimator/subsystems/count");
  c.subsystem_size = get<int>(t, "/estimator/subsystems/size");
  c.subsystem_contiguous = get<bool>(t, "/estimator/subsystems/contiguous");
  c.cz_schedule = get<std::string>(t, "/estimator/cz_schedule");
  c.digital_seeds = get<int>(t, "/estimator/digital_seeds");
  c.digital_layers = get<int>(t, "/estimator/digital_layers");
  c.digital_analog_point =
      as_point(t.at("/estimator/digital_analog_point"_json_pointer), "/estimator/digital_analog_point");
  for (const auto& e : t.at("/estimator/series_points"_json_pointer)) {
    if (!e.is_object() || !e.contains("name") || !e.contains("point") || !e.at("name").is_string()) {
      throw ConfigError("/estimator/series_points entries need a name and a point");
    }
    const auto name = e.at("name").get<std::string>();
    c.series_points.push_back({name, as_point(e.at("point"), "/estimator/series_points/" + name)});
  }

  c.directory = get<std::string>(t, "/output/directory");
  c.formats = get<std::vector<std::string>>(t, "/output/formats");
  c.histograms = get<bool>(t, "/output/histograms");

  require(c.sites >= 2 && c.sites <= 14, "/model/L must be in [2, 14]");
  require(std::isfinite(c.b0_over_j) && std::isfinite(c.delta_b_over_j), "model fields must be finite");
  require(!c.points.empty() || (!c.w_axis.empty() && !c.omega_axis.empty()),
          "grid needs points or non-empty W_over_J and omega_over_J");
  for (const auto& p : c.cells()) {
    require(p.w_over_j >= 0.0 && std::isfinite(p.w_over_j), "grid W_over_J must be >= 0");
    require(p.omega_over_j > 0.0 && std::isfinite(p.omega_over_j), "grid omega_over_J must be > 0");
  }
  require(c.realizations >= 1, "/protocol/realizations must be >= 1");
  require(c.cycles >= 0, "/protocol/m_cycles must be >= 0");
  require(c.max_cycles >= 1, "/protocol/max_cycles must be >= 1");
  require(c.initial_slices >= 2 && c.initial_slices % 2 == 0, "/protocol/initial_slices must be even");
  require(c.max_slices >= c.initial_slices, "/protocol/max_slices below initial_slices");
  require(c.slice_defect > 0.0, "/protocol/slice_defect must be positive");
  require(c.r_bins >= 1, "/estimator/r_bins must be >= 1");
  require(c.np_lo > 0.0 && c.np_hi > c.np_lo && c.np_bins >= 1, "bad /estimator/np_edges");
  require(c.anticoncentration_delta >= 0.0, "/estimator/anticoncentration_delta must be >= 0");
  if (c.entropy) {
    require(c.subsystem_size >= 1 && c.subsystem_size < c.sites,
            "/estimator/subsystems/size must be in [1, L-1]");
    require(c.subsystem_count >= 1, "/estimator/subsystems/count must be >= 1");
  }
  require(c.cz_schedule == "brickwork" || c.cz_schedule == "fixed",
          "/estimator/cz_schedule must be brickwork or fixed");
  if (c.digital_baseline) {
    require(c.digital_seeds >= 1 && c.digital_layers >= 1, "digital baseline needs seeds and layers >= 1");
  }
  if (c.kld_vs_m) require(!c.series_points.empty(), "kld_vs_m needs /estimator/series_points");
  for (const auto& f : c.formats) require(f == "csv" || f == "json", "unknown output format " + f);
  return c;
}

std::vector<GridPoint> ExperimentConfig::cells() const {
  std::vector<GridPoint> out;
  if (!points.empty()) {
    out = points;
    std::sort(out.begin(), out.end(), [](const GridPoint& a, const GridPoint& b) {
      return a.omega_over_j != b.omega_over_j ? a.omega_over_j < b.omega_over_j
                                              : a.w_over_j < b.w_over_j;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const GridPoint& a, const GridPoint& b) {
                            return a.omega_over_j == b.omega_over_j && a.w_over_j == b.w_over_j;
                          }),
              out.end());
    return out;
  }
  for (double om : omega_axis) {
    for (double w : w_axis) out.push_back({w, om});
  }
  return out;
}

bool ExperimentConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  try {
    return json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
}

std::uint64_t config_hash(const json& tree) {
  json t = tree;
  t.erase("output");
  const std::string s = t.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace fpl::harness
