#include "fpl/circuits.hpp"

#include "fpl/errors.hpp"
#include "fpl/rng.hpp"

#include <cmath>
#include <numbers>

namespace fpl {

Gate2 gate_matrix(Gate g) {
  const double s = std::numbers::sqrt2 / 2.0;
  const cplx i{0.0, 1.0};
  switch (g) {
    case Gate::SqrtX:
      return {s, -i * s, -i * s, s};
    case Gate::SqrtY:
      return {s, -s, s, s};
    case Gate::T:
      return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
    case Gate::H:
      return {s, s, s, -s};
  }
  throw ArgumentError("unknown gate");
}

void CircuitSpec::validate() const {
  if (sites < 2 || sites > kMaxSites) throw ArgumentError("circuit needs 2 <= L <= 30");
  if (layers < 0) throw ArgumentError("layer count must be >= 0");
}

void apply_gate(CVector& amps, int qubit, const Gate2& g) {
  const auto n = static_cast<Basis>(amps.size());
  const Basis bit = Basis{1} << qubit;
  if (qubit < 0 || bit >= n) throw ArgumentError("qubit out of range");
  for (Basis z = 0; z < n; ++z) {
    if (z & bit) continue;
    const auto lo = static_cast<Eigen::Index>(z);
    const auto hi = static_cast<Eigen::Index>(z | bit);
    const cplx a0 = amps[lo];
    const cplx a1 = amps[hi];
    amps[lo] = g[0] * a0 + g[1] * a1;
    amps[hi] = g[2] * a0 + g[3] * a1;
  }
}

void apply_cz(CVector& amps, int a, int b) {
  const auto n = static_cast<Basis>(amps.size());
  const Basis mask = (Basis{1} << a) | (Basis{1} << b);
  if (a == b || a < 0 || b < 0 || (Basis{1} << a) >= n || (Basis{1} << b) >= n) {
    throw ArgumentError("bad CZ qubits");
  }
  for (Basis z = 0; z < n; ++z) {
    if ((z & mask) == mask) amps[static_cast<Eigen::Index>(z)] = -amps[static_cast<Eigen::Index>(z)];
  }
}

std::vector<int> cz_bonds(int sites, int layer, CzSchedule schedule) {
  std::vector<int> out;
  const int start = schedule == CzSchedule::Fixed ? 0 : layer % 2;
  const int step = schedule == CzSchedule::Fixed ? 1 : 2;
  for (int i = start; i + 1 < sites; i += step) out.push_back(i);
  return out;
}

Gate random_gate(std::uint64_t seed, int layer, int qubit) {
  KeyedStream rng(StreamTag::Circuit, {seed, static_cast<std::uint64_t>(layer),
                                       static_cast<std::uint64_t>(qubit)});
  switch (rng.below(3)) {
    case 0:
      return Gate::SqrtX;
    case 1:
      return Gate::SqrtY;
    default:
      return Gate::T;
  }
}

StateVector run_circuit_with_gates(const std::vector<std::vector<Gate>>& gates,
                                   CzSchedule schedule, const StateVector& initial) {
  const int L = initial.sites();
  CVector a = initial.amplitudes();
  const Gate2 h = gate_matrix(Gate::H);
  for (int q = 0; q < L; ++q) apply_gate(a, q, h);
  for (std::size_t layer = 0; layer < gates.size(); ++layer) {
    if (gates[layer].size() != static_cast<std::size_t>(L)) {
      throw ArgumentError("each layer needs one gate per qubit");
    }
    for (int q = 0; q < L; ++q) apply_gate(a, q, gate_matrix(gates[layer][q]));
    for (int i : cz_bonds(L, static_cast<int>(layer), schedule)) apply_cz(a, i, i + 1);
  }
  return StateVector(std::move(a));
}

StateVector run_circuit(const CircuitSpec& spec, const StateVector& initial) {
  spec.validate();
  if (initial.sites() != spec.sites) throw ArgumentError("initial state has the wrong size");
  std::vector<std::vector<Gate>> gates(static_cast<std::size_t>(spec.layers));
  for (int layer = 0; layer < spec.layers; ++layer) {
    for (int q = 0; q < spec.sites; ++q) gates[layer].push_back(random_gate(spec.seed, layer, q));
  }
  return run_circuit_with_gates(gates, spec.schedule, initial);
}

int matched_time_axis(double omega, int cycles) {
  if (!(omega > 0.0)) throw ArgumentError("omega must be positive");
  if (cycles < 0) throw ArgumentError("cycle count must be >= 0");
  return static_cast<int>(std::lround(cycles * 8.0 / omega));
}

}  // namespace fpl
