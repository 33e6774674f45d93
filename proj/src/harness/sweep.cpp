#include "fpl/harness/sweep.hpp"

#include "fpl/circuits.hpp"
#include "fpl/entanglement.hpp"
#include "fpl/errors.hpp"
#include "fpl/magnus.hpp"
#include "fpl/propagator.hpp"
#include "fpl/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>

namespace fpl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  if (workers == 1 || n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t cell_seed(std::uint64_t master_seed, int cell_index) {
  KeyedStream s(StreamTag::Disorder, {master_seed, static_cast<std::uint64_t>(cell_index)});
  return s.next_u64();
}

int SweepResult::failed_cells() const {
  return static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                        [](const CellResult& c) { return c.failed; }));
}

namespace {

// Series streams live apart from every cell index.
constexpr std::uint64_t kSeriesKey = 0x5e71e5;
constexpr std::uint64_t kDigitalKey = 0xd161;

SpinChainSpec chain_spec(const ExperimentConfig& cfg, const GridPoint& p, std::uint64_t seed) {
  SpinChainSpec s;
  s.sites = cfg.sites;
  s.coupling = 1.0;
  s.static_field = cfg.b0_over_j;
  s.drive_amplitude = cfg.delta_b_over_j;
  s.drive_frequency = p.omega_over_j;
  s.disorder_width = p.w_over_j;
  s.seed = seed;
  return s;
}

PropagatorOptions prop_options(const ExperimentConfig& cfg) {
  return {cfg.initial_slices, cfg.max_slices, cfg.slice_defect};
}

ProbabilityHistogram np_histogram(const ExperimentConfig& cfg) {
  return ProbabilityHistogram(cfg.np_lo, cfg.np_hi, cfg.np_bins);
}

std::vector<std::vector<int>> pick_subsystems(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::vector<std::vector<int>> out;
  if (!cfg.entropy) return out;
  if (!cfg.subsystem_contiguous) {
    for (const auto& s : random_subsystems(cfg.sites, cfg.subsystem_count, cfg.subsystem_size, seed)) {
      out.push_back(s.sites());
    }
    return out;
  }
  const int starts = cfg.sites - cfg.subsystem_size + 1;
  if (cfg.subsystem_count > starts) throw ConfigError("more contiguous subsystems than windows");
  KeyedStream rng(StreamTag::Subsystems, {seed, 1});
  std::vector<int> pool(static_cast<std::size_t>(starts));
  for (int i = 0; i < starts; ++i) pool[i] = i;
  for (int k = 0; k < cfg.subsystem_count; ++k) {
    std::swap(pool[k], pool[k + static_cast<int>(rng.below(static_cast<std::uint64_t>(starts - k)))]);
    std::vector<int> w;
    for (int j = 0; j < cfg.subsystem_size; ++j) w.push_back(pool[k] + j);
    out.push_back(w);
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample standard deviation; zero for a single value.
double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

template <class F>
std::vector<double> collect(const std::vector<RealizationRecord>& recs, F field) {
  std::vector<double> v;
  for (const auto& r : recs) v.push_back(field(r));
  return v;
}

json num(double x) { return std::isnan(x) ? json(nullptr) : json(x); }
double num_from(const json& j) { return j.is_null() ? kMissing : j.get<double>(); }

json hist_json(const Histogram& h) {
  return {{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}};
}

Histogram hist_from(const json& j) {
  Histogram h;
  h.lo = j.at("lo").get<double>();
  h.hi = j.at("hi").get<double>();
  h.counts = j.at("counts").get<std::vector<double>>();
  return h;
}

ProbabilityHistogram np_from(const json& j) {
  const auto edges = j.at("edges").get<std::vector<double>>();
  ProbabilityHistogram h(edges.front(), edges.back(), static_cast<int>(edges.size()) - 1);
  if (h.edges() != edges) throw IoError("cached histogram edges do not match");
  const auto w = j.at("weights").get<std::vector<double>>();
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = k == 0 ? 0.0 : edges[k - 1];
    if (w[k] != 0.0) h.add_scaled(x, w[k]);
  }
  return h;
}

std::string cache_name(const CellResult& c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "cell_%04d_%.17g_%.17g.json", c.index, c.point.w_over_j,
                c.point.omega_over_j);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void preflight(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".fpl_write_probe";
  {
    std::ofstream out(probe);
    out << "ok";
    if (!out) throw IoError("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

}  // namespace

json to_json(const CellResult& c) {
  return {
      {"index", c.index},
      {"W_over_J", c.point.w_over_j},
      {"omega_over_J", c.point.omega_over_j},
      {"cell_seed", c.cell_seed},
      {"failed", c.failed},
      {"failures", c.failures},
      {"n_realizations", c.n_realizations},
      {"mean_r", num(c.mean_r)},
      {"std_r", num(c.std_r)},
      {"mean_r_u0", num(c.mean_r_u0)},
      {"std_r_u0", num(c.std_r_u0)},
      {"kld_r_coe", num(c.kld_r_coe)},
      {"kld_r_poi", num(c.kld_r_poi)},
      {"kld_r_goe", num(c.kld_r_goe)},
      {"kld_pt", num(c.kld_pt)},
      {"kld_pt_std", num(c.kld_pt_std)},
      {"entropy_mean", num(c.entropy_mean)},
      {"entropy_std", num(c.entropy_std)},
      {"support_mean", num(c.support_mean)},
      {"anticonc_mean", num(c.anticonc_mean)},
      {"magnus_defect0", num(c.magnus_defect0)},
      {"magnus_defect2", num(c.magnus_defect2)},
      {"max_unitarity_defect", num(c.max_unitarity_defect)},
      {"max_slice_defect", num(c.max_slice_defect)},
      {"max_norm_defect", num(c.max_norm_defect)},
      {"max_slices", c.max_slices},
      {"r_hist", hist_json(c.r_hist)},
      {"r0_hist", hist_json(c.r0_hist)},
      {"np_hist", {{"edges", c.np_hist.edges()}, {"weights", c.np_hist.weights()}}},
      {"slices", c.slices},
      {"slice_defects", c.slice_defects},
      {"subsystems", c.subsystems},
  };
}

CellResult cell_from_json(const json& j) {
  CellResult c;
  c.index = j.at("index").get<int>();
  c.point = {j.at("W_over_J").get<double>(), j.at("omega_over_J").get<double>()};
  c.cell_seed = j.at("cell_seed").get<std::uint64_t>();
  c.failed = j.at("failed").get<bool>();
  c.failures = j.at("failures").get<std::vector<std::string>>();
  c.n_realizations = j.at("n_realizations").get<int>();
  c.mean_r = num_from(j.at("mean_r"));
  c.std_r = num_from(j.at("std_r"));
  c.mean_r_u0 = num_from(j.at("mean_r_u0"));
  c.std_r_u0 = num_from(j.at("std_r_u0"));
  c.kld_r_coe = num_from(j.at("kld_r_coe"));
  c.kld_r_poi = num_from(j.at("kld_r_poi"));
  c.kld_r_goe = num_from(j.at("kld_r_goe"));
  c.kld_pt = num_from(j.at("kld_pt"));
  c.kld_pt_std = num_from(j.at("kld_pt_std"));
  c.entropy_mean = num_from(j.at("entropy_mean"));
  c.entropy_std = num_from(j.at("entropy_std"));
  c.support_mean = num_from(j.at("support_mean"));
  c.anticonc_mean = num_from(j.at("anticonc_mean"));
  c.magnus_defect0 = num_from(j.at("magnus_defect0"));
  c.magnus_defect2 = num_from(j.at("magnus_defect2"));
  c.max_unitarity_defect = num_from(j.at("max_unitarity_defect"));
  c.max_slice_defect = num_from(j.at("max_slice_defect"));
  c.max_norm_defect = num_from(j.at("max_norm_defect"));
  c.max_slices = j.at("max_slices").get<int>();
  c.r_hist = hist_from(j.at("r_hist"));
  c.r0_hist = hist_from(j.at("r0_hist"));
  c.np_hist = np_from(j.at("np_hist"));
  c.slices = j.at("slices").get<std::vector<int>>();
  c.slice_defects = j.at("slice_defects").get<std::vector<double>>();
  c.subsystems = j.at("subsystems").get<std::vector<std::vector<int>>>();
  return c;
}

RealizationRecord run_realization(const ExperimentConfig& cfg, const CellResult& cell,
                                  std::uint64_t realization) {
  RealizationRecord rec;
  rec.realization = realization;
  rec.r_hist = Histogram(0.0, 1.0, cfg.r_bins);
  rec.r0_hist = Histogram(0.0, 1.0, cfg.r_bins);
  rec.np_hist = np_histogram(cfg);
  try {
    const SpinChainSpec spec = chain_spec(cfg, cell.point, cell.cell_seed);
    spec.validate();
    const DisorderRealization dis = draw_disorder(spec, realization);
    StateVector psi;
    bool have_state = false;
    if (cfg.needs_unitary()) {
      const FloquetOperators ops = floquet_unitary(spec, dis, prop_options(cfg));
      rec.slices = ops.slices_used;
      rec.slice_defect = ops.convergence_defect;
      rec.unitarity_defect = unitarity_defect(ops.full.matrix());
      if (cfg.level_stats) {
        const auto rs = r_statistics(EigenphaseSet::from_unitary(ops.full, PhaseSource::FullUnitary),
                                     cfg.r_bins);
        rec.mean_r = rs.mean_r;
        rec.r_hist = rs.histogram;
        const auto r0 = r_statistics(
            EigenphaseSet::from_energies(hermitian_eigenvalues(build_h0(spec, dis)), spec.period()),
            cfg.r_bins);
        rec.mean_r_u0 = r0.mean_r;
        rec.r0_hist = r0.histogram;
      }
      if (cfg.magnus_defect) {
        rec.magnus0 = magnus_defect(spec, dis, 0, ops.full);
        rec.magnus2 = magnus_defect(spec, dis, 2, ops.full);
      }
      if (cfg.needs_state()) {
        psi = evolve(initial_state(cfg.sites), ops.full, cfg.cycles);
        have_state = true;
      }
    } else if (cfg.needs_state()) {
      auto st = evolve_stroboscopic(spec, dis, initial_state(cfg.sites), cfg.cycles, prop_options(cfg));
      rec.slices = st.slices_used;
      rec.slice_defect = st.convergence_defect;
      psi = std::move(st.state);
      have_state = true;
    }
    if (have_state) {
      rec.norm_defect = std::abs(psi.norm() - 1.0);
      const auto dist = output_distribution(psi, cfg.cycles);
      if (cfg.kld_pt) {
        rec.np_hist.add(dist);
        rec.kld_pt = kld_to_pt(rec.np_hist);
      }
      if (cfg.support) rec.support = static_cast<double>(support_size(dist));
      if (cfg.anti_concentration) {
        rec.anticonc = anti_concentration_fraction(dist, cfg.anticoncentration_delta);
      }
      if (cfg.entropy) {
        std::vector<SubsystemChoice> subs;
        for (const auto& s : cell.subsystems) subs.emplace_back(s, cfg.sites);
        const auto panel = entropy_panel(psi, subs);
        rec.entropy_mean = panel.mean;
        rec.entropy_std = panel.std;
      }
    }
  } catch (const ConvergenceError& e) {
    rec.ok = false;
    rec.error = e.what();
    if (!e.history().empty()) rec.slices = e.history().back().slices;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

void reduce_cell(const ExperimentConfig& cfg, CellResult& cell,
                 const std::vector<RealizationRecord>& recs) {
  cell.r_hist = Histogram(0.0, 1.0, cfg.r_bins);
  cell.r0_hist = Histogram(0.0, 1.0, cfg.r_bins);
  cell.np_hist = np_histogram(cfg);
  cell.slices.clear();
  cell.slice_defects.clear();
  cell.failures.clear();
  for (const auto& r : recs) {
    cell.slices.push_back(r.slices);
    cell.slice_defects.push_back(std::isnan(r.slice_defect) ? 0.0 : r.slice_defect);
    if (!r.ok) cell.failures.push_back("realization " + std::to_string(r.realization) + ": " + r.error);
  }
  cell.failed = !cell.failures.empty();
  cell.max_slices = cell.slices.empty() ? 0 : *std::max_element(cell.slices.begin(), cell.slices.end());
  if (cell.failed) {
    cell.n_realizations = 0;
    return;
  }
  cell.n_realizations = static_cast<int>(recs.size());
  if (recs.empty()) return;

  auto max_of = [&](auto field) {
    double m = kMissing;
    for (const auto& r : recs) {
      const double v = field(r);
      if (!std::isnan(v)) m = std::isnan(m) ? v : std::max(m, v);
    }
    return m;
  };
  cell.max_unitarity_defect = max_of([](const auto& r) { return r.unitarity_defect; });
  cell.max_slice_defect = max_of([](const auto& r) { return r.slice_defect; });
  cell.max_norm_defect = max_of([](const auto& r) { return r.norm_defect; });

  if (cfg.level_stats) {
    const auto r = collect(recs, [](const auto& x) { return x.mean_r; });
    const auto r0 = collect(recs, [](const auto& x) { return x.mean_r_u0; });
    cell.mean_r = mean_of(r);
    cell.std_r = std_of(r);
    cell.mean_r_u0 = mean_of(r0);
    cell.std_r_u0 = std_of(r0);
    for (const auto& x : recs) {
      cell.r_hist.merge(x.r_hist);
      cell.r0_hist.merge(x.r0_hist);
    }
    cell.kld_r_coe = histogram_kld(cell.r_hist, Ensemble::COE);
    cell.kld_r_poi = histogram_kld(cell.r_hist, Ensemble::POI);
    cell.kld_r_goe = histogram_kld(cell.r_hist, Ensemble::GOE);
  }
  if (cfg.kld_pt) {
    for (const auto& x : recs) cell.np_hist.merge(x.np_hist);
    cell.kld_pt = kld_to_pt(cell.np_hist);
    cell.kld_pt_std = std_of(collect(recs, [](const auto& x) { return x.kld_pt; }));
  }
  if (cfg.entropy) {
    cell.entropy_mean = mean_of(collect(recs, [](const auto& x) { return x.entropy_mean; }));
    cell.entropy_std = mean_of(collect(recs, [](const auto& x) { return x.entropy_std; }));
  }
  if (cfg.support) cell.support_mean = mean_of(collect(recs, [](const auto& x) { return x.support; }));
  if (cfg.anti_concentration) {
    cell.anticonc_mean = mean_of(collect(recs, [](const auto& x) { return x.anticonc; }));
  }
  if (cfg.magnus_defect) {
    cell.magnus_defect0 = mean_of(collect(recs, [](const auto& x) { return x.magnus0; }));
    cell.magnus_defect2 = mean_of(collect(recs, [](const auto& x) { return x.magnus2; }));
  }
}

namespace {

void run_cells(const ExperimentConfig& cfg, SweepResult& res, const fs::path& cache_dir,
               const SweepOptions& opt) {
  if (!cfg.needs_unitary() && !cfg.needs_state()) return;
  const auto points = cfg.cells();
  res.cells.resize(points.size());
  std::vector<int> todo;
  for (std::size_t i = 0; i < points.size(); ++i) {
    CellResult& c = res.cells[i];
    c.index = static_cast<int>(i);
    c.point = points[i];
    c.cell_seed = cell_seed(cfg.master_seed, c.index);
    c.subsystems = pick_subsystems(cfg, c.cell_seed);
    const fs::path file = cache_dir / cache_name(c);
    if (opt.resume && fs::exists(file)) {
      try {
        std::ifstream in(file);
        CellResult cached = cell_from_json(json::parse(in));
        if (cached.index == c.index && cached.point.w_over_j == c.point.w_over_j &&
            cached.point.omega_over_j == c.point.omega_over_j && cached.cell_seed == c.cell_seed) {
          c = std::move(cached);
          ++res.cached_cells;
          continue;
        }
      } catch (const std::exception&) {
        // Unreadable entry: recompute.
      }
    }
    todo.push_back(static_cast<int>(i));
  }
  if (opt.log && res.cached_cells > 0) {
    opt.log("resume: " + std::to_string(res.cached_cells) + " cell(s) from cache");
  }

  const auto d = static_cast<std::size_t>(cfg.realizations);
  std::vector<std::vector<RealizationRecord>> records(todo.size());
  for (auto& r : records) r.resize(d);
  auto remaining = std::make_unique<std::atomic<std::size_t>[]>(todo.size());
  for (std::size_t t = 0; t < todo.size(); ++t) remaining[t].store(d);
  std::atomic<std::size_t> done{0};
  std::mutex log_mu;

  parallel_for(todo.size() * d, opt.threads, [&](std::size_t task) {
    const std::size_t t = task / d;
    const std::size_t k = task % d;
    CellResult& cell = res.cells[static_cast<std::size_t>(todo[t])];
    records[t][k] = run_realization(cfg, cell, k);
    if (remaining[t].fetch_sub(1, std::memory_order_acq_rel) == 1) {
      reduce_cell(cfg, cell, records[t]);
      std::vector<RealizationRecord>().swap(records[t]);
      write_atomic(cache_dir / cache_name(cell), to_json(cell).dump());
      const std::size_t n = done.fetch_add(1) + 1;
      if (opt.log) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "cell %zu/%zu  W=%g omega=%g%s", n, todo.size(),
                      cell.point.w_over_j, cell.point.omega_over_j, cell.failed ? "  FAILED" : "");
        std::lock_guard lock(log_mu);
        opt.log(buf);
      }
    }
  });
}

// Pooled N p histograms per cycle count for one parameter point.
struct SeriesOutcome {
  std::vector<double> kld;
  int max_slices = 0;
  std::vector<std::string> failures;
};

SeriesOutcome analog_series(const ExperimentConfig& cfg, const GridPoint& p, std::uint64_t seed,
                            int cycles, int threads) {
  const auto d = static_cast<std::size_t>(cfg.realizations);
  std::vector<std::vector<ProbabilityHistogram>> per(d);
  std::vector<int> slices(d, 0);
  std::vector<std::string> errors(d);
  const SpinChainSpec spec = chain_spec(cfg, p, seed);
  parallel_for(d, threads, [&](std::size_t k) {
    try {
      const auto dis = draw_disorder(spec, k);
      const auto s = evolve_stroboscopic_series(spec, dis, initial_state(cfg.sites), cycles,
                                                prop_options(cfg));
      slices[k] = s.slices_used;
      for (const auto& psi : s.states) {
        auto h = np_histogram(cfg);
        h.add(output_distribution(psi, 0));
        per[k].push_back(std::move(h));
      }
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  });
  SeriesOutcome out;
  std::vector<ProbabilityHistogram> pooled(static_cast<std::size_t>(cycles), np_histogram(cfg));
  for (std::size_t k = 0; k < d; ++k) {
    if (!errors[k].empty()) {
      out.failures.push_back("realization " + std::to_string(k) + ": " + errors[k]);
      continue;
    }
    out.max_slices = std::max(out.max_slices, slices[k]);
    for (int m = 0; m < cycles; ++m) pooled[m].merge(per[k][m]);
  }
  for (const auto& h : pooled) out.kld.push_back(out.failures.empty() ? kld_to_pt(h) : kMissing);
  return out;
}

std::vector<double> digital_series(const ExperimentConfig& cfg, int threads) {
  const int layers = cfg.digital_layers;
  const auto seeds = static_cast<std::size_t>(cfg.digital_seeds);
  const CzSchedule sched = cfg.cz_schedule == "fixed" ? CzSchedule::Fixed : CzSchedule::Brickwork;
  std::vector<std::vector<ProbabilityHistogram>> per(seeds);
  parallel_for(seeds, threads, [&](std::size_t s) {
    KeyedStream key(StreamTag::Circuit, {cfg.master_seed, kDigitalKey, s});
    CircuitSpec spec;
    spec.sites = cfg.sites;
    spec.seed = key.next_u64();
    spec.schedule = sched;
    for (int m = 1; m <= layers; ++m) {
      spec.layers = m;
      auto h = np_histogram(cfg);
      h.add(output_distribution(run_circuit(spec, initial_state(cfg.sites)), m));
      per[s].push_back(std::move(h));
    }
  });
  std::vector<double> out;
  for (int m = 0; m < layers; ++m) {
    auto h = np_histogram(cfg);
    for (std::size_t s = 0; s < seeds; ++s) h.merge(per[s][m]);
    out.push_back(kld_to_pt(h));
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const json& tree, const SweepOptions& opt) {
  const ExperimentConfig cfg = parse_config(tree);
  SweepResult res;
  res.tree = tree;
  res.hash = config_hash(tree);
  res.recipe = opt.recipe;

  const fs::path dir(cfg.directory);
  preflight(dir);
  const fs::path cache_dir = dir / ".cache" / hex64(res.hash);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (ec) throw IoError("cannot create cache directory " + cache_dir.string());

  run_cells(cfg, res, cache_dir, opt);

  if (cfg.kld_vs_m) {
    std::vector<SeriesOutcome> outs;
    for (std::size_t p = 0; p < cfg.series_points.size(); ++p) {
      if (opt.log) opt.log("kld_vs_m: " + cfg.series_points[p].name);
      KeyedStream key(StreamTag::Disorder, {cfg.master_seed, kSeriesKey, p});
      outs.push_back(analog_series(cfg, cfg.series_points[p].point, key.next_u64(), cfg.max_cycles,
                                   opt.threads));
      res.series_names.push_back(cfg.series_points[p].name);
      res.series_slices.push_back(outs.back().max_slices);
    }
    for (int m = 1; m <= cfg.max_cycles; ++m) {
      SeriesRow row{m, {}};
      for (const auto& o : outs) row.values.push_back(o.kld[static_cast<std::size_t>(m - 1)]);
      res.kld_vs_m.push_back(row);
    }
    for (std::size_t p = 0; p < outs.size(); ++p) {
      for (const auto& f : outs[p].failures) {
        res.series_failures.push_back(res.series_names[p] + " " + f);
      }
    }
  }
  if (cfg.digital_baseline) {
    if (opt.log) opt.log("digital baseline");
    const auto dig = digital_series(cfg, opt.threads);
    KeyedStream key(StreamTag::Disorder, {cfg.master_seed, kDigitalKey});
    const auto ana = analog_series(cfg, cfg.digital_analog_point, key.next_u64(),
                                   cfg.digital_layers, opt.threads);
    for (const auto& f : ana.failures) res.series_failures.push_back("analog " + f);
    for (int m = 1; m <= cfg.digital_layers; ++m) {
      res.digital.push_back({m,
                             {static_cast<double>(matched_time_axis(cfg.digital_analog_point.omega_over_j, m)),
                              dig[static_cast<std::size_t>(m - 1)], ana.kld[static_cast<std::size_t>(m - 1)]}});
    }
  }
  return res;
}

}  // namespace fpl::harness
