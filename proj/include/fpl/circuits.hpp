#pragma once

#include "fpl/operator_core.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace fpl {

enum class Gate { SqrtX, SqrtY, T, H };
enum class CzSchedule { Brickwork, Fixed };

using Gate2 = std::array<cplx, 4>;  // row-major 2x2

/// sqrt(X) = exp(-i pi sx / 4), sqrt(Y) = exp(-i pi sy / 4), T = diag(1, e^{i pi/4}).
Gate2 gate_matrix(Gate g);

struct CircuitSpec {
  int sites = 9;
  int layers = 0;
  std::uint64_t seed = 0;
  /// Brickwork: CZ on even bonds (0,1),(2,3).. for even layers, odd bonds for
  /// odd layers. Fixed: every bond on every layer (the CZs commute).
  CzSchedule schedule = CzSchedule::Brickwork;

  void validate() const;
};

/// In-place single-qubit gate on `qubit` by a bit-paired 2x2 kernel.
void apply_gate(CVector& amps, int qubit, const Gate2& g);
/// In-place controlled-Z between two qubits (phase -1 when both bits are set).
void apply_cz(CVector& amps, int a, int b);

/// Bonds (i, i+1) touched by layer `layer`.
std::vector<int> cz_bonds(int sites, int layer, CzSchedule schedule);

/// Gate for (seed, layer, qubit), uniform over {sqrt X, sqrt Y, T}.
Gate random_gate(std::uint64_t seed, int layer, int qubit);

/// Hadamard layer, then per layer one random gate per qubit followed by the CZ layer.
StateVector run_circuit(const CircuitSpec& spec, const StateVector& initial);

/// As run_circuit but with explicit gates: gates[layer][qubit].
StateVector run_circuit_with_gates(const std::vector<std::vector<Gate>>& gates,
                                   CzSchedule schedule, const StateVector& initial);

/// Digital layers matching m analog cycles at drive frequency omega; one layer
/// per cycle at omega = 8J, scaled by total duration m T otherwise.
int matched_time_axis(double omega, int cycles);

}  // namespace fpl
