#include "fpl/entanglement.hpp"

#include "fpl/errors.hpp"
#include "fpl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fpl {

SubsystemChoice::SubsystemChoice(std::vector<int> sites, int total_sites)
    : sites_(std::move(sites)), total_(total_sites) {
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
    throw ArgumentError("subsystem sites must be distinct");
  }
  if (sites_.empty() || size() > total_ - 1) {
    throw ArgumentError("subsystem size must be in [1, L-1]");
  }
  if (sites_.front() < 0 || sites_.back() >= total_) {
    throw ArgumentError("subsystem site out of range");
  }
}

std::vector<int> SubsystemChoice::complement() const {
  std::vector<int> out;
  for (int i = 0; i < total_; ++i) {
    if (!std::binary_search(sites_.begin(), sites_.end(), i)) out.push_back(i);
  }
  return out;
}

namespace {

// Scatter the low bits of `packed` onto the given site positions.
Basis deposit(Basis packed, const std::vector<int>& sites) {
  Basis z = 0;
  for (std::size_t b = 0; b < sites.size(); ++b) z |= ((packed >> b) & 1) << sites[b];
  return z;
}

}  // namespace

DenseOperator reduced_density_matrix(const StateVector& state, const SubsystemChoice& sub) {
  if (state.sites() != sub.total_sites()) {
    throw ArgumentError("subsystem built for a different chain length");
  }
  const auto bath = sub.complement();
  const auto ns = static_cast<Eigen::Index>(hilbert_dim(sub.size()));
  const auto nb = static_cast<Eigen::Index>(hilbert_dim(static_cast<int>(bath.size())));
  std::vector<Basis> s_off(static_cast<std::size_t>(ns));
  std::vector<Basis> b_off(static_cast<std::size_t>(nb));
  for (Eigen::Index i = 0; i < ns; ++i) s_off[i] = deposit(static_cast<Basis>(i), sub.sites());
  for (Eigen::Index k = 0; k < nb; ++k) b_off[k] = deposit(static_cast<Basis>(k), bath);

  // c(i, k) = <i_S k_B|psi>, then rho = c c^dagger.
  const auto& a = state.amplitudes();
  CMatrix c(ns, nb);
  for (Eigen::Index k = 0; k < nb; ++k) {
    for (Eigen::Index i = 0; i < ns; ++i) c(i, k) = a[static_cast<Eigen::Index>(s_off[i] | b_off[k])];
  }
  CMatrix rho = c * c.adjoint();
  // Exact hermiticity; the product is Hermitian only up to rounding.
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DenseOperator::hermitian(std::move(rho));
}

double von_neumann_entropy(const DenseOperator& rho) {
  const double tr = rho.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-8) throw ValidationError("density matrix trace is not 1", tr - 1.0);
  const RVector lam = hermitian_eigenvalues(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    const double l = lam[k] < -1e-12 ? 0.0 : lam[k];
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s < 0.0 ? 0.0 : s;
}

std::vector<SubsystemChoice> random_subsystems(int total_sites, int count, int size,
                                               std::uint64_t seed) {
  if (size < 1 || total_sites <= size) throw ArgumentError("need L > subsystem size >= 1");
  if (count < 1) throw ArgumentError("need at least one subsystem");
  // Number of size-subsets; cap the request so distinct draws can exist.
  double combos = 1.0;
  for (int k = 0; k < size; ++k) combos = combos * (total_sites - k) / (k + 1);
  if (count > combos + 0.5) throw ArgumentError("more subsystems requested than subsets exist");

  KeyedStream rng(StreamTag::Subsystems, {seed, static_cast<std::uint64_t>(total_sites),
                                          static_cast<std::uint64_t>(size)});
  std::set<std::vector<int>> seen;
  std::vector<SubsystemChoice> out;
  while (static_cast<int>(out.size()) < count) {
    // Partial Fisher-Yates gives a uniform size-subset.
    std::vector<int> pool(static_cast<std::size_t>(total_sites));
    for (int i = 0; i < total_sites; ++i) pool[i] = i;
    for (int k = 0; k < size; ++k) {
      const auto j = k + static_cast<int>(rng.below(static_cast<std::uint64_t>(total_sites - k)));
      std::swap(pool[k], pool[j]);
    }
    std::vector<int> pick(pool.begin(), pool.begin() + size);
    std::sort(pick.begin(), pick.end());
    if (seen.insert(pick).second) out.emplace_back(std::move(pick), total_sites);
  }
  return out;
}

EntropyPanel entropy_panel(const StateVector& state, const std::vector<SubsystemChoice>& subs) {
  if (subs.empty()) throw ArgumentError("no subsystems given");
  EntropyPanel p;
  p.subsystems = subs;
  for (const auto& s : subs) p.entropies.push_back(von_neumann_entropy(reduced_density_matrix(state, s)));
  const double n = static_cast<double>(p.entropies.size());
  for (double e : p.entropies) p.mean += e;
  p.mean /= n;
  double var = 0.0;
  for (double e : p.entropies) var += (e - p.mean) * (e - p.mean);
  p.std = std::sqrt(var / n);
  return p;
}

EntropyPanel entropy_panel(const StateVector& state, int count, int size, std::uint64_t seed) {
  return entropy_panel(state, random_subsystems(state.sites(), count, size, seed));
}

}  // namespace fpl
