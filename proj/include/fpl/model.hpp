#pragma once

// Driven disordered Ising chain, open boundary:
//   H0     = sum_i h_i sz_i + B0 sum_i sx_i + J sum_{i<L-1} sz_i sz_{i+1}
//   Hd(t)  = dB cos(w t) sum_i sx_i
// Energies are in units of J; hbar = 1.

#include "fpl/operator_core.hpp"

#include <cstdint>
#include <vector>

namespace fpl {

struct SpinChainSpec {
  int sites = 9;
  double coupling = 1.0;        // J
  double static_field = 1.25;   // B0
  double drive_amplitude = -1.25;  // dB
  double drive_frequency = 8.0;    // omega
  double disorder_width = 3.0;     // W
  std::uint64_t seed = 0;

  double period() const;
  /// B(t) = B0 + dB cos(omega t).
  double transverse_field(double t) const;
  /// Throws ArgumentError unless L >= 2, omega > 0, W >= 0 and T is finite.
  void validate() const;
};

struct DisorderRealization {
  std::vector<double> fields;  // h_i, each in [-W/2, W/2]
};

/// i.i.d. uniform fields from the stream keyed on (spec.seed, realization_index).
DisorderRealization draw_disorder(const SpinChainSpec& spec, std::uint64_t realization_index);

/// Diagonal of the sigma^z part of H0: sum_i h_i s_i(z) + J sum_i s_i(z) s_{i+1}(z).
RVector ising_diagonal(const SpinChainSpec& spec, const DisorderRealization& disorder);

/// sum_i sigma^x_i as a dense matrix.
CMatrix transverse_sum(int sites);

DenseOperator build_h0(const SpinChainSpec& spec, const DisorderRealization& disorder);
DenseOperator build_drive(const SpinChainSpec& spec, double t);
/// H(t) = H0 + Hd(t).
DenseOperator build_hamiltonian(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                double t);

/// <z|H0|z> for the all-up state, sum_i h_i + J (L - 1).
double all_up_energy(const SpinChainSpec& spec, const DisorderRealization& disorder);

}  // namespace fpl
