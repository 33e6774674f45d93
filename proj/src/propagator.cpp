#include "fpl/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace fpl {

namespace {

// Columns advanced together; one row of a block is kBlock complex numbers.
constexpr int kBlock = 8;
// A series term below this magnitude ends a step once past the norm bound.
constexpr double kTermTol = 1e-16;
constexpr int kMaxOrder = 200;
constexpr int kMaxFieldOrder = 30;

// H(t) = diag + B(t) * sum_i sigma^x_i with B(t) = b0 + db cos(omega t).
struct Generator {
  RVector diag;
  int sites;
  double b0;
  double db;
  double omega;
  double norm_bound;

  Generator(const SpinChainSpec& spec, const DisorderRealization& disorder)
      : diag(ising_diagonal(spec, disorder)),
        sites(spec.sites),
        b0(spec.static_field),
        db(spec.drive_amplitude),
        omega(spec.drive_frequency) {
    norm_bound = diag.cwiseAbs().maxCoeff() + (std::abs(b0) + std::abs(db)) * sites;
  }
};

// Rows of W complex values: W real parts followed by W imaginary parts.
template <int W>
class Block {
 public:
  static constexpr int kDoubles = 2 * W;
  explicit Block(std::size_t rows) : data_(rows * kDoubles, 0.0) {}
  double* row(std::size_t z) { return data_.data() + z * kDoubles; }
  const double* row(std::size_t z) const { return data_.data() + z * kDoubles; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

 private:
  std::vector<double> data_;
};

template <int W>
class TaylorStepper {
  static constexpr int kD = 2 * W;
  using Row = Eigen::Array<double, kD, 1>;
  using RowMap = Eigen::Map<Row>;
  using RowC = Eigen::Map<const Row>;

 public:
  explicit TaylorStepper(const Generator& g)
      : g_(g), rows_(static_cast<std::size_t>(g.diag.size())), mix_(rows_), next_(rows_),
        sum_(rows_) {
    terms_.reserve(kMaxFieldOrder + 1);
    for (int j = 0; j <= kMaxFieldOrder; ++j) terms_.emplace_back(rows_);
  }

  // Advances `state` across [t_begin, t_begin + steps*dt].
  void run(Block<W>& state, double t_begin, double dt, int steps) {
    const int field_order = field_order_for(dt, steps);
    for (int k = 0; k < steps; ++k) step(state, t_begin + k * dt, dt, field_order);
  }

 private:
  // Truncation order of the Taylor series of B(t) within one step.
  int field_order_for(double dt, int steps) const {
    if (g_.db == 0.0) return 0;
    const double x = g_.omega * dt;
    const double scale = std::abs(g_.db) * g_.sites * dt * steps;
    double c = 1.0;
    for (int j = 1; j <= kMaxFieldOrder; ++j) {
      c *= x / j;
      if (scale * c < kTermTol) return j - 1;
    }
    return kMaxFieldOrder;
  }

  static double peak_of(const Block<W>& b) {
    std::array<double, kD> m{};
    const double* p = b.data();
    for (std::size_t i = 0; i < b.size(); i += kD) {
      for (int k = 0; k < kD; ++k) m[k] = std::max(m[k], std::abs(p[i + k]));
    }
    return *std::max_element(m.begin(), m.end());
  }

  void step(Block<W>& state, double t, double dt, int field_order) {
    // beta_j = b_j dt^j, b_j the j-th Taylor coefficient of B around t.
    std::array<double, kMaxFieldOrder + 1> beta{};
    const double phase = g_.omega * t;
    beta[0] = g_.b0 + g_.db * std::cos(phase);
    double c = 1.0;
    for (int j = 1; j <= field_order; ++j) {
      c *= g_.omega * dt / j;
      beta[j] = g_.db * c * std::cos(phase + j * 0.5 * std::numbers::pi);
    }

    const int ring = field_order + 1;
    std::array<double, kMaxFieldOrder + 1> peaks{};
    std::copy(state.data(), state.data() + state.size(), terms_[0].data());
    std::copy(state.data(), state.data() + state.size(), sum_.data());
    peaks[0] = peak_of(state);

    // Mixed-in history terms whose contribution to the next term is below this are skipped.
    const double mix_cut = kTermTol / (dt * g_.sites + 1e-300);
    const double min_orders = g_.norm_bound * dt;
    for (int m = 0; m < kMaxOrder; ++m) {
      const Block<W>& cur = terms_[m % ring];
      // mix = sum_j beta_j term_{m-j}
      const int jmax = std::min(m, field_order);
      {
        std::array<const double*, kMaxFieldOrder + 1> src{};
        std::array<double, kMaxFieldOrder + 1> coef{};
        int active = 0;
        for (int j = 1; j <= jmax; ++j) {
          if (std::abs(beta[j]) * peaks[(m - j) % ring] < mix_cut) continue;
          src[active] = terms_[(m - j) % ring].data();
          coef[active] = beta[j];
          ++active;
        }
        const double b0 = beta[0];
        for (std::size_t z = 0; z < rows_; ++z) {
          const std::size_t off = z * kD;
          Row acc = b0 * RowC(cur.data() + off);
          for (int a = 0; a < active; ++a) acc += coef[a] * RowC(src[a] + off);
          RowMap(mix_.data() + off) = acc;
        }
      }
      // next = (-i dt / (m+1)) (diag * term_m + X mix)
      const double s = dt / (m + 1);
      Block<W>& nxt = next_;
      for (std::size_t z = 0; z < rows_; ++z) {
        const double d = g_.diag[static_cast<Eigen::Index>(z)];
        Row acc = d * RowC(cur.row(z));
        for (int b = 0; b < g_.sites; ++b) acc += RowC(mix_.row(z ^ (std::size_t{1} << b)));
        RowMap out(nxt.row(z));
        // times -i s: (re, im) -> (s im, -s re)
        out.template head<W>() = s * acc.template tail<W>();
        out.template tail<W>() = -s * acc.template head<W>();
        RowMap(sum_.row(z)) += out;
      }
      const double peak = peak_of(nxt);
      std::swap(terms_[(m + 1) % ring], next_);
      peaks[(m + 1) % ring] = peak;
      if (m + 1 >= min_orders && peak < kTermTol) break;
    }
    std::copy(sum_.data(), sum_.data() + sum_.size(), state.data());
  }

  const Generator& g_;
  std::size_t rows_;
  std::vector<Block<W>> terms_;
  Block<W> mix_;
  Block<W> next_;
  Block<W> sum_;
};

void check_slices(double t_begin, double t_end, int slices) {
  if (slices < 1) throw ArgumentError("slice count must be positive");
  if (!(t_end >= t_begin)) throw ArgumentError("interval end precedes its start");
}

}  // namespace

CMatrix propagate_interval(const SpinChainSpec& spec, const DisorderRealization& disorder,
                           double t_begin, double t_end, int slices) {
  spec.validate();
  check_slices(t_begin, t_end, slices);
  const Generator g(spec, disorder);
  const auto n = static_cast<Eigen::Index>(g.diag.size());
  const double dt = (t_end - t_begin) / slices;
  CMatrix out(n, n);
  TaylorStepper<kBlock> stepper(g);
  Block<kBlock> block(static_cast<std::size_t>(n));
  for (Eigen::Index c0 = 0; c0 < n; c0 += kBlock) {
    const int width = static_cast<int>(std::min<Eigen::Index>(kBlock, n - c0));
    std::fill(block.data(), block.data() + block.size(), 0.0);
    for (int c = 0; c < width; ++c) block.row(static_cast<std::size_t>(c0 + c))[c] = 1.0;
    stepper.run(block, t_begin, dt, slices);
    for (Eigen::Index z = 0; z < n; ++z) {
      const double* r = block.row(static_cast<std::size_t>(z));
      for (int c = 0; c < width; ++c) out(z, c0 + c) = cplx(r[c], r[kBlock + c]);
    }
  }
  return out;
}

CVector propagate_state_interval(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                 const CVector& state, double t_begin, double t_end, int slices) {
  spec.validate();
  check_slices(t_begin, t_end, slices);
  const Generator g(spec, disorder);
  const auto n = g.diag.size();
  if (state.size() != n) throw ArgumentError("state dimension does not match the chain");
  Block<1> block(static_cast<std::size_t>(n));
  for (Eigen::Index z = 0; z < n; ++z) {
    block.row(static_cast<std::size_t>(z))[0] = state[z].real();
    block.row(static_cast<std::size_t>(z))[1] = state[z].imag();
  }
  TaylorStepper<1> stepper(g);
  stepper.run(block, t_begin, (t_end - t_begin) / slices, slices);
  CVector out(n);
  for (Eigen::Index z = 0; z < n; ++z) {
    const double* r = block.row(static_cast<std::size_t>(z));
    out[z] = cplx(r[0], r[1]);
  }
  return out;
}

namespace {

// H(T - t) = H(t) and H(t) is real symmetric, so the second half-period
// propagator is the transpose of the first and U = U_half^T U_half.
CMatrix one_period(const SpinChainSpec& spec, const DisorderRealization& disorder, int slices) {
  const CMatrix half = propagate_interval(spec, disorder, 0.0, 0.5 * spec.period(), slices / 2);
  return half.transpose() * half;
}

void check_options(const PropagatorOptions& options) {
  if (options.initial_slices < 2 || options.initial_slices % 2 != 0) {
    throw ArgumentError("initial slice count must be even and >= 2");
  }
  if (options.max_slices < options.initial_slices) {
    throw ArgumentError("max slice count is below the initial count");
  }
}

}  // namespace

FloquetOperators floquet_unitary(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                 const PropagatorOptions& options) {
  spec.validate();
  check_options(options);
  std::vector<ConvergenceError::Step> history;
  int slices = options.initial_slices;
  CMatrix prev = one_period(spec, disorder, slices);
  while (true) {
    const int finer = 2 * slices;
    if (finer > options.max_slices) {
      throw ConvergenceError("Floquet unitary did not converge by " +
                                 std::to_string(options.max_slices) + " slices",
                             std::move(history));
    }
    CMatrix cur = one_period(spec, disorder, finer);
    const double defect = (cur - prev).cwiseAbs().maxCoeff();
    history.push_back({finer, defect});
    if (defect < options.target_defect) {
      return FloquetOperators{DenseUnitary(std::move(cur)), undriven_unitary(spec, disorder),
                              finer, defect, std::move(history)};
    }
    prev = std::move(cur);
    slices = finer;
  }
}

DenseUnitary undriven_unitary(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  const auto eig = eig_hermitian(build_h0(spec, disorder));
  const double t = spec.period();
  const CVector phases = (eig.values * (-t)).unaryExpr([](double a) { return std::polar(1.0, a); });
  return DenseUnitary(eig.vectors * phases.asDiagonal() * eig.vectors.adjoint());
}

StateVector evolve(const StateVector& state, const DenseUnitary& u, int cycles) {
  if (cycles < 0) throw ArgumentError("cycle count must be non-negative");
  if (u.dim() != static_cast<Eigen::Index>(state.dim())) {
    throw ArgumentError("unitary and state dimensions differ");
  }
  CVector v = state.amplitudes();
  for (int k = 0; k < cycles; ++k) v = u.matrix() * v;
  return StateVector(std::move(v));
}

StateVector initial_state(int sites) { return StateVector::basis_state(sites, 0); }

StroboscopicState evolve_stroboscopic(const SpinChainSpec& spec,
                                      const DisorderRealization& disorder,
                                      const StateVector& state, int cycles,
                                      const PropagatorOptions& options) {
  spec.validate();
  check_options(options);
  if (cycles < 0) throw ArgumentError("cycle count must be non-negative");
  if (cycles == 0) return StroboscopicState{state, 0, 0.0, {}};
  const double t = spec.period();
  auto run = [&](int slices) {
    CVector v = state.amplitudes();
    for (int k = 0; k < cycles; ++k) v = propagate_state_interval(spec, disorder, v, 0.0, t, slices);
    return v;
  };
  std::vector<ConvergenceError::Step> history;
  int slices = options.initial_slices;
  CVector prev = run(slices);
  while (true) {
    const int finer = 2 * slices;
    if (finer > options.max_slices) {
      throw ConvergenceError("stroboscopic evolution did not converge by " +
                                 std::to_string(options.max_slices) + " slices",
                             std::move(history));
    }
    CVector cur = run(finer);
    const double defect = (cur - prev).cwiseAbs().maxCoeff();
    history.push_back({finer, defect});
    if (defect < options.target_defect) {
      return StroboscopicState{StateVector(std::move(cur)), finer, defect, std::move(history)};
    }
    prev = std::move(cur);
    slices = finer;
  }
}

StroboscopicSeries evolve_stroboscopic_series(const SpinChainSpec& spec,
                                              const DisorderRealization& disorder,
                                              const StateVector& state, int cycles,
                                              const PropagatorOptions& options) {
  spec.validate();
  check_options(options);
  if (cycles < 1) throw ArgumentError("series needs at least one cycle");
  const double t = spec.period();
  auto run = [&](int slices) {
    std::vector<CVector> out;
    CVector v = state.amplitudes();
    for (int k = 0; k < cycles; ++k) {
      v = propagate_state_interval(spec, disorder, v, 0.0, t, slices);
      out.push_back(v);
    }
    return out;
  };
  std::vector<ConvergenceError::Step> history;
  int slices = options.initial_slices;
  auto prev = run(slices);
  while (true) {
    const int finer = 2 * slices;
    if (finer > options.max_slices) {
      throw ConvergenceError("stroboscopic series did not converge by " +
                                 std::to_string(options.max_slices) + " slices",
                             std::move(history));
    }
    auto cur = run(finer);
    double defect = 0.0;
    for (int k = 0; k < cycles; ++k) {
      defect = std::max(defect, (cur[k] - prev[k]).cwiseAbs().maxCoeff());
    }
    history.push_back({finer, defect});
    if (defect < options.target_defect) {
      StroboscopicSeries s{{}, finer, defect, std::move(history)};
      for (auto& v : cur) s.states.emplace_back(std::move(v));
      return s;
    }
    prev = std::move(cur);
    slices = finer;
  }
}

}  // namespace fpl
