// Python bindings: physics kernels on numpy arrays, plus the sweep harness.
#include "fpl/circuits.hpp"
#include "fpl/entanglement.hpp"
#include "fpl/errors.hpp"
#include "fpl/harness/analyze.hpp"
#include "fpl/harness/config.hpp"
#include "fpl/harness/emit.hpp"
#include "fpl/harness/recipes.hpp"
#include "fpl/harness/sweep.hpp"
#include "fpl/magnus.hpp"
#include "fpl/model.hpp"
#include "fpl/propagator.hpp"
#include "fpl/sampling.hpp"
#include "fpl/spectra.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fpl;
using nlohmann::json;

namespace {

// dict/list trees cross the boundary as JSON text.
json to_tree(const py::object& obj) {
  const auto dumps = py::module_::import("json").attr("dumps");
  return json::parse(py::cast<std::string>(dumps(obj)));
}

py::object from_tree(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

DisorderRealization disorder_of(const std::vector<double>& fields) { return {fields}; }

py::dict floquet_dict(const FloquetOperators& ops) {
  py::dict d;
  d["full"] = ops.full.matrix();
  d["undriven"] = ops.undriven.matrix();
  d["slices"] = ops.slices_used;
  d["defect"] = ops.convergence_defect;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven disordered Ising chain: Floquet numerics and sweep harness";
  m.attr("__version__") = FPL_VERSION;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<SpinChainSpec>(m, "SpinChainSpec")
      .def(py::init([](int sites, double coupling, double static_field, double drive_amplitude,
                       double drive_frequency, double disorder_width, std::uint64_t seed) {
             SpinChainSpec s{sites, coupling, static_field, drive_amplitude, drive_frequency,
                             disorder_width, seed};
             s.validate();
             return s;
           }),
           py::kw_only(), py::arg("sites") = 9, py::arg("coupling") = 1.0,
           py::arg("static_field") = 1.25, py::arg("drive_amplitude") = -1.25,
           py::arg("drive_frequency") = 8.0, py::arg("disorder_width") = 3.0, py::arg("seed") = 0)
      .def_readwrite("sites", &SpinChainSpec::sites)
      .def_readwrite("coupling", &SpinChainSpec::coupling)
      .def_readwrite("static_field", &SpinChainSpec::static_field)
      .def_readwrite("drive_amplitude", &SpinChainSpec::drive_amplitude)
      .def_readwrite("drive_frequency", &SpinChainSpec::drive_frequency)
      .def_readwrite("disorder_width", &SpinChainSpec::disorder_width)
      .def_readwrite("seed", &SpinChainSpec::seed)
      .def_property_readonly("period", &SpinChainSpec::period)
      .def("__repr__", [](const SpinChainSpec& s) {
        return "SpinChainSpec(sites=" + std::to_string(s.sites) + ", W=" + std::to_string(s.disorder_width) +
               ", omega=" + std::to_string(s.drive_frequency) + ")";
      });

  m.def("draw_disorder",
        [](const SpinChainSpec& s, std::uint64_t k) { return draw_disorder(s, k).fields; },
        py::arg("spec"), py::arg("realization"), "On-site fields h_i for one realization.");
  m.def("build_h0",
        [](const SpinChainSpec& s, const std::vector<double>& h) {
          return build_h0(s, disorder_of(h)).matrix();
        },
        py::arg("spec"), py::arg("fields"));
  m.def("build_hamiltonian",
        [](const SpinChainSpec& s, const std::vector<double>& h, double t) {
          return build_hamiltonian(s, disorder_of(h), t).matrix();
        },
        py::arg("spec"), py::arg("fields"), py::arg("t"));
  m.def("floquet_unitary",
        [](const SpinChainSpec& s, const std::vector<double>& h, int initial, int max, double defect) {
          py::gil_scoped_release release;
          auto ops = floquet_unitary(s, disorder_of(h), {initial, max, defect});
          py::gil_scoped_acquire acquire;
          return floquet_dict(ops);
        },
        py::arg("spec"), py::arg("fields"), py::arg("initial_slices") = 64,
        py::arg("max_slices") = 1 << 16, py::arg("slice_defect") = 1e-8,
        "Certified Floquet unitary; dict with full, undriven, slices, defect.");
  m.def("evolve",
        [](const CVector& psi, const CMatrix& u, int cycles) {
          return evolve(StateVector(psi), DenseUnitary(u), cycles).amplitudes();
        },
        py::arg("state"), py::arg("unitary"), py::arg("cycles"));
  m.def("initial_state", [](int L) { return initial_state(L).amplitudes(); }, py::arg("sites"));

  m.def("eigenphases", [](const CMatrix& u) { return EigenphaseSet::from_unitary(DenseUnitary(u), PhaseSource::FullUnitary).phases(); },
        py::arg("unitary"), "Sorted eigenphases in [0, 2pi).");
  m.def("r_statistics",
        [](const std::vector<double>& phases, int bins) {
          const auto rs = r_statistics(EigenphaseSet(phases, PhaseSource::FullUnitary), bins);
          py::dict d;
          d["mean_r"] = rs.mean_r;
          d["r_values"] = rs.r_values;
          d["masses"] = rs.histogram.masses();
          d["kld_coe"] = histogram_kld(rs.histogram, Ensemble::COE);
          d["kld_poi"] = histogram_kld(rs.histogram, Ensemble::POI);
          d["kld_goe"] = histogram_kld(rs.histogram, Ensemble::GOE);
          return d;
        },
        py::arg("phases"), py::arg("bins") = kDefaultRBins);
  py::enum_<Ensemble>(m, "Ensemble")
      .value("COE", Ensemble::COE)
      .value("POI", Ensemble::POI)
      .value("GOE", Ensemble::GOE);
  m.def("reference_density", &reference_density, py::arg("ensemble"), py::arg("r"));
  m.def("reference_mean", &reference_mean, py::arg("ensemble"));

  m.def("output_probabilities",
        [](const CVector& psi) { return output_distribution(StateVector(psi), 0).probabilities; },
        py::arg("state"));
  m.def("kld_to_pt",
        [](const std::vector<double>& p, double lo, double hi, int bins) {
          ProbabilityHistogram h(lo, hi, bins);
          h.add(OutputDistribution{p, 0});
          return kld_to_pt(h);
        },
        py::arg("probabilities"), py::arg("lo") = 1e-6, py::arg("hi") = 50.0, py::arg("bins") = 60);
  m.def("anti_concentration_fraction",
        [](const std::vector<double>& p, double delta) {
          return anti_concentration_fraction(OutputDistribution{p, 0}, delta);
        },
        py::arg("probabilities"), py::arg("delta") = 1.0);
  m.def("support_size",
        [](const std::vector<double>& p, double threshold) {
          return support_size(OutputDistribution{p, 0}, threshold);
        },
        py::arg("probabilities"), py::arg("threshold") = -1.0);

  m.def("reduced_density_matrix",
        [](const CVector& psi, const std::vector<int>& sites) {
          const StateVector s(psi);
          return reduced_density_matrix(s, SubsystemChoice(sites, s.sites())).matrix();
        },
        py::arg("state"), py::arg("sites"));
  m.def("entanglement_entropy",
        [](const CVector& psi, const std::vector<int>& sites) {
          const StateVector s(psi);
          return von_neumann_entropy(reduced_density_matrix(s, SubsystemChoice(sites, s.sites())));
        },
        py::arg("state"), py::arg("sites"), "Von Neumann entropy in bits.");

  m.def("magnus_h1",
        [](const SpinChainSpec& s, const std::vector<double>& h, double t0) {
          return magnus_h1(s, disorder_of(h), t0).matrix();
        },
        py::arg("spec"), py::arg("fields"), py::arg("t0"));
  m.def("magnus_h2",
        [](const SpinChainSpec& s, const std::vector<double>& h) {
          return magnus_h2(s, disorder_of(h)).matrix();
        },
        py::arg("spec"), py::arg("fields"));
  m.def("magnus_defect",
        [](const SpinChainSpec& s, const std::vector<double>& h, int order) {
          py::gil_scoped_release release;
          return magnus_defect(s, disorder_of(h), order);
        },
        py::arg("spec"), py::arg("fields"), py::arg("order"));

  m.def("run_circuit",
        [](int sites, int layers, std::uint64_t seed, const std::string& schedule) {
          if (schedule != "brickwork" && schedule != "fixed") {
            throw ArgumentError("schedule must be 'brickwork' or 'fixed'");
          }
          CircuitSpec c{sites, layers, seed,
                        schedule == "fixed" ? CzSchedule::Fixed : CzSchedule::Brickwork};
          return run_circuit(c, initial_state(sites)).amplitudes();
        },
        py::arg("sites"), py::arg("layers"), py::arg("seed"), py::arg("schedule") = "brickwork");
  m.def("matched_time_axis", &matched_time_axis, py::arg("omega"), py::arg("cycles"));

  m.def("default_config", [] { return from_tree(harness::default_tree()); });
  m.def("recipe_names", &harness::recipe_names);
  m.def("effective_config",
        [](const std::string& recipe, const py::object& user, const std::string& out) {
          return from_tree(harness::effective_tree(recipe, to_tree(user), out));
        },
        py::arg("recipe"), py::arg("config"), py::arg("out"));
  m.def("sweep",
        [](const py::object& config, const std::string& recipe, const std::string& out, int threads,
           bool resume) {
          const json tree = harness::effective_tree(recipe, to_tree(config), out);
          harness::SweepResult res;
          {
            py::gil_scoped_release release;
            res = harness::run_sweep(tree, {.threads = threads, .resume = resume, .recipe = recipe});
            harness::emit(res, out);
          }
          py::dict d;
          d["cells"] = res.cells.size();
          d["failed_cells"] = res.failed_cells();
          d["cached_cells"] = res.cached_cells;
          d["series_failures"] = res.series_failures;
          d["config_hash"] = harness::hex64(res.hash);
          return d;
        },
        py::arg("config"), py::arg("recipe") = "", py::arg("out") = "out", py::arg("threads") = 1,
        py::arg("resume") = false, "Run a sweep and write its artifacts to `out`.");
  m.def("analyze",
        [](const std::string& dir) {
          py::list out;
          for (const auto& c : harness::check_directory(dir)) {
            py::dict d;
            d["criterion"] = c.criterion;
            d["name"] = c.name;
            d["status"] = std::string(harness::status_word(c.status));
            d["detail"] = c.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("directory"));
}
