#pragma once

#include "fpl/operator_core.hpp"

#include <cstdint>
#include <vector>

namespace fpl {

/// Sorted distinct sites of a subsystem S; the bath is the complement.
class SubsystemChoice {
 public:
  /// Sorts; throws ArgumentError unless the sites are distinct, < L, and 1 <= n_S <= L-1.
  SubsystemChoice(std::vector<int> sites, int total_sites);

  const std::vector<int>& sites() const noexcept { return sites_; }
  int size() const noexcept { return static_cast<int>(sites_.size()); }
  int total_sites() const noexcept { return total_; }
  std::vector<int> complement() const;

 private:
  std::vector<int> sites_;
  int total_;
};

/// rho_S[i][j] = sum_k c_{ik} c*_{jk}, where i indexes the subsystem bits
/// (site order of sites(), lowest first) and k the bath bits.
DenseOperator reduced_density_matrix(const StateVector& state, const SubsystemChoice& sub);

/// -sum lambda log2 lambda. Eigenvalues are clamped at zero below -1e-12;
/// throws ValidationError when |Tr rho - 1| > 1e-8.
double von_neumann_entropy(const DenseOperator& rho);

struct EntropyPanel {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over subsystems
  std::vector<double> entropies;
  std::vector<SubsystemChoice> subsystems;
};

/// n distinct subsets of `size` sites drawn uniformly (not necessarily
/// contiguous) from the stream keyed on seed.
std::vector<SubsystemChoice> random_subsystems(int total_sites, int count, int size,
                                               std::uint64_t seed);

EntropyPanel entropy_panel(const StateVector& state, const std::vector<SubsystemChoice>& subs);
EntropyPanel entropy_panel(const StateVector& state, int count, int size, std::uint64_t seed);

}  // namespace fpl
