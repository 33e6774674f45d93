#pragma once

#include "fpl/operator_core.hpp"

#include <cstdint>
#include <vector>

namespace fpl {

/// p(z) = |<z|psi_m>|^2 of a stroboscopic state.
struct OutputDistribution {
  std::vector<double> probabilities;
  int cycles = 0;

  std::size_t dim() const noexcept { return probabilities.size(); }
  /// N p(z), the variable the histograms and Porter-Thomas law use.
  std::vector<double> scaled() const;
};

OutputDistribution output_distribution(const StateVector& state, int cycles);

/// Porter-Thomas density N exp(-N p).
double pt_density(double p, std::size_t n);

/// Log-spaced bins over x = N p, plus an underflow bin [0, lo) and an
/// overflow bin [hi, inf). Masses are probability weighted counts of basis
/// states, so several distributions can be pooled by merge().
class ProbabilityHistogram {
 public:
  ProbabilityHistogram(double lo = 1e-6, double hi = 50.0, int bins = 60);

  void add(const OutputDistribution& dist);
  void add_scaled(double x, double weight = 1.0);
  void merge(const ProbabilityHistogram& other);

  int bins() const noexcept { return static_cast<int>(edges_.size()) - 1; }
  const std::vector<double>& edges() const noexcept { return edges_; }
  /// Raw accumulated weight: [underflow, bins..., overflow].
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total() const;
  /// Normalized masses in the same layout as weights().
  std::vector<double> masses() const;
  /// Lower and upper x edge of slot k of masses(); overflow ends at +inf.
  double slot_lo(int k) const;
  double slot_hi(int k) const;

 private:
  std::vector<double> edges_;
  std::vector<double> weights_;
};

/// sum_b q_b ln(q_b / pi_b) with pi_b = exp(-x_lo) - exp(-x_hi), the exact PT
/// mass of the bin in x = N p. Empty bins contribute 0. Returns +infinity when
/// mass sits in a bin with pi_b = 0.
double kld_to_pt(const ProbabilityHistogram& hist);

/// Fraction of basis states with p > delta / N (strict).
double anti_concentration_fraction(const OutputDistribution& dist, double delta = 1.0);

/// Basis states with p > threshold; a negative threshold means 1/N^2.
std::size_t support_size(const OutputDistribution& dist, double threshold = -1.0);

struct BitstringSamples {
  std::vector<Basis> samples;
  double tv_distance = 0.0;  // 1/2 sum_z |p(z) - empirical(z)|
};

/// i.i.d. draws by inverse CDF from the stream keyed on seed.
BitstringSamples sample_bitstrings(const OutputDistribution& dist, std::size_t count,
                                   std::uint64_t seed);

}  // namespace fpl
