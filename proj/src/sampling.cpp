#include "fpl/sampling.hpp"

#include "fpl/errors.hpp"
#include "fpl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fpl {

std::vector<double> OutputDistribution::scaled() const {
  std::vector<double> out(probabilities);
  const double n = static_cast<double>(probabilities.size());
  for (auto& v : out) v *= n;
  return out;
}

OutputDistribution output_distribution(const StateVector& state, int cycles) {
  OutputDistribution d;
  d.cycles = cycles;
  const auto& a = state.amplitudes();
  d.probabilities.resize(static_cast<std::size_t>(a.size()));
  for (Eigen::Index z = 0; z < a.size(); ++z) d.probabilities[z] = std::norm(a[z]);
  return d;
}

double pt_density(double p, std::size_t n) {
  if (p < 0.0 || n < 2) throw ArgumentError("pt_density needs p >= 0 and N >= 2");
  const double nn = static_cast<double>(n);
  return nn * std::exp(-nn * p);
}

ProbabilityHistogram::ProbabilityHistogram(double lo, double hi, int bins) {
  if (!(lo > 0.0) || !(hi > lo) || bins < 1) {
    throw ArgumentError("histogram needs 0 < lo < hi and bins >= 1");
  }
  edges_.resize(static_cast<std::size_t>(bins) + 1);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int k = 0; k <= bins; ++k) edges_[k] = std::exp(a + (b - a) * k / bins);
  edges_.front() = lo;
  edges_.back() = hi;
  weights_.assign(static_cast<std::size_t>(bins) + 2, 0.0);
}

void ProbabilityHistogram::add_scaled(double x, double weight) {
  if (x < edges_.front()) {
    weights_.front() += weight;
  } else if (x >= edges_.back()) {
    weights_.back() += weight;
  } else {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    weights_[static_cast<std::size_t>(it - edges_.begin())] += weight;
  }
}

void ProbabilityHistogram::add(const OutputDistribution& dist) {
  const double n = static_cast<double>(dist.dim());
  for (double p : dist.probabilities) add_scaled(n * p);
}

void ProbabilityHistogram::merge(const ProbabilityHistogram& other) {
  if (other.edges_ != edges_) throw ArgumentError("cannot merge histograms with different edges");
  for (std::size_t k = 0; k < weights_.size(); ++k) weights_[k] += other.weights_[k];
}

double ProbabilityHistogram::total() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::vector<double> ProbabilityHistogram::masses() const {
  const double t = total();
  std::vector<double> out(weights_.size(), 0.0);
  if (t > 0.0) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = weights_[k] / t;
  }
  return out;
}

double ProbabilityHistogram::slot_lo(int k) const {
  return k == 0 ? 0.0 : edges_[static_cast<std::size_t>(k) - 1];
}

double ProbabilityHistogram::slot_hi(int k) const {
  if (k == bins() + 1) return std::numeric_limits<double>::infinity();
  return edges_[static_cast<std::size_t>(k)];
}

double kld_to_pt(const ProbabilityHistogram& hist) {
  const auto q = hist.masses();
  double kld = 0.0;
  for (int k = 0; k < static_cast<int>(q.size()); ++k) {
    const double qk = q[static_cast<std::size_t>(k)];
    if (qk == 0.0) continue;
    const double lo = hist.slot_lo(k);
    const double hi = hist.slot_hi(k);
    // exp(-lo) - exp(-hi) = exp(-lo) * (1 - exp(lo - hi)), kept accurate for thin bins.
    const double pi = std::isinf(hi) ? std::exp(-lo) : -std::exp(-lo) * std::expm1(lo - hi);
    if (!(pi > 0.0)) return std::numeric_limits<double>::infinity();
    kld += qk * std::log(qk / pi);
  }
  return kld < 0.0 ? 0.0 : kld;
}

double anti_concentration_fraction(const OutputDistribution& dist, double delta) {
  if (dist.dim() == 0) throw ArgumentError("empty distribution");
  const double cut = delta / static_cast<double>(dist.dim());
  const auto above = std::count_if(dist.probabilities.begin(), dist.probabilities.end(),
                                   [cut](double p) { return p > cut; });
  return static_cast<double>(above) / static_cast<double>(dist.dim());
}

std::size_t support_size(const OutputDistribution& dist, double threshold) {
  const double n = static_cast<double>(dist.dim());
  const double cut = threshold < 0.0 ? 1.0 / (n * n) : threshold;
  return static_cast<std::size_t>(std::count_if(dist.probabilities.begin(),
                                                dist.probabilities.end(),
                                                [cut](double p) { return p > cut; }));
}

BitstringSamples sample_bitstrings(const OutputDistribution& dist, std::size_t count,
                                   std::uint64_t seed) {
  if (count < 1) throw ArgumentError("sample count must be >= 1");
  if (dist.dim() == 0) throw ArgumentError("empty distribution");
  std::vector<double> cdf(dist.dim());
  std::partial_sum(dist.probabilities.begin(), dist.probabilities.end(), cdf.begin());
  const double total = cdf.back();

  KeyedStream rng(StreamTag::Sampling, {seed});
  BitstringSamples out;
  out.samples.reserve(count);
  std::vector<double> freq(dist.dim(), 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    // Never land on a zero-probability state at the top end.
    std::size_t z = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    while (z > 0 && dist.probabilities[z] == 0.0) --z;
    out.samples.push_back(z);
    freq[z] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t z = 0; z < freq.size(); ++z) {
    tv += std::abs(dist.probabilities[z] / total - freq[z] / static_cast<double>(count));
  }
  out.tv_distance = 0.5 * tv;
  return out;
}

}  // namespace fpl
