#pragma once

#include "fpl/operator_core.hpp"

#include <string_view>
#include <vector>

namespace fpl {

enum class PhaseSource { FullUnitary, UndrivenUnitary, HamiltonianSpectrum };

/// Sorted phases on the unit circle, theta_n in [0, 2pi).
class EigenphaseSet {
 public:
  /// Wraps into [0, 2pi) and sorts.
  EigenphaseSet(std::vector<double> phases, PhaseSource source);
  static EigenphaseSet from_unitary(const DenseUnitary& u, PhaseSource source);
  /// theta_n = -E_n T (mod 2pi), the phases of exp(-i H T).
  static EigenphaseSet from_energies(const RVector& energies, double period);

  const std::vector<double>& phases() const noexcept { return phases_; }
  PhaseSource source() const noexcept { return source_; }
  std::size_t size() const noexcept { return phases_.size(); }

 private:
  std::vector<double> phases_;
  PhaseSource source_;
};

/// Equal-width histogram on [lo, hi]; values equal to hi land in the last bin.
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> counts;

  Histogram() = default;
  Histogram(double lo, double hi, int bins);

  int bins() const noexcept { return static_cast<int>(counts.size()); }
  double width() const noexcept { return (hi - lo) / bins(); }
  double bin_lo(int b) const noexcept { return lo + b * width(); }
  double bin_hi(int b) const noexcept { return b + 1 == bins() ? hi : lo + (b + 1) * width(); }
  void add(double x, double weight = 1.0);
  /// Bin-wise sum; throws ArgumentError on mismatched binning.
  void merge(const Histogram& other);
  double total() const;
  /// Probability mass per bin.
  std::vector<double> masses() const;
  /// Normalized density per bin (integrates to 1).
  std::vector<double> density() const;
};

inline constexpr int kDefaultRBins = 50;
inline constexpr double kDegenerateGap = 1e-12;

struct RStatistics {
  std::vector<double> r_values;
  double mean_r = 0.0;
  Histogram histogram;
  int degenerate_pairs = 0;  // gap pairs both below kDegenerateGap, counted as r = 0
};

/// Circular gap convention: N phases give N gaps including the wrap-around
/// gap theta_0 + 2pi - theta_{N-1}, and N ratios (indices mod N).
RStatistics r_statistics(const EigenphaseSet& phases, int bins = kDefaultRBins);

enum class Ensemble { COE, POI, GOE };

std::string_view ensemble_name(Ensemble e);

/// Closed-form ratio densities on [0, 1]; throws ArgumentError outside.
double reference_density(Ensemble e, double r);
/// int_0^1 r Pr(r) dr by adaptive quadrature (1e-10 absolute).
double reference_mean(Ensemble e);
/// int_a^b Pr(r) dr.
double reference_mass(Ensemble e, double a, double b);

/// sum_b q_b log(q_b / pi_b) between the histogram's bin masses q_b and the
/// reference bin masses pi_b. Zero-mass bins contribute nothing.
double histogram_kld(const Histogram& h, Ensemble e);

}  // namespace fpl
