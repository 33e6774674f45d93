#include "fpl/spectra.hpp"

#include "fpl/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace fpl {

EigenphaseSet::EigenphaseSet(std::vector<double> phases, PhaseSource source)
    : phases_(std::move(phases)), source_(source) {
  for (auto& p : phases_) p = wrap_phase(p);
  std::sort(phases_.begin(), phases_.end());
}

EigenphaseSet EigenphaseSet::from_unitary(const DenseUnitary& u, PhaseSource source) {
  const RVector p = unitary_eigenphases(u);
  return EigenphaseSet(std::vector<double>(p.data(), p.data() + p.size()), source);
}

EigenphaseSet EigenphaseSet::from_energies(const RVector& energies, double period) {
  std::vector<double> p(static_cast<std::size_t>(energies.size()));
  for (Eigen::Index k = 0; k < energies.size(); ++k) p[k] = -energies[k] * period;
  return EigenphaseSet(std::move(p), PhaseSource::HamiltonianSpectrum);
}

Histogram::Histogram(double lo_, double hi_, int bins) : lo(lo_), hi(hi_) {
  if (bins < 1 || !(hi > lo)) throw ArgumentError("histogram needs bins >= 1 and hi > lo");
  counts.assign(static_cast<std::size_t>(bins), 0.0);
}

void Histogram::add(double x, double weight) {
  if (x < lo || x > hi) throw ArgumentError("value outside histogram range");
  int b = static_cast<int>((x - lo) / width());
  b = std::clamp(b, 0, bins() - 1);
  counts[static_cast<std::size_t>(b)] += weight;
}

void Histogram::merge(const Histogram& other) {
  if (other.lo != lo || other.hi != hi || other.bins() != bins()) {
    throw ArgumentError("cannot merge histograms with different binning");
  }
  for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += other.counts[b];
}

double Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), 0.0); }

std::vector<double> Histogram::masses() const {
  const double t = total();
  std::vector<double> out(counts.size(), 0.0);
  if (t > 0.0) {
    for (std::size_t b = 0; b < counts.size(); ++b) out[b] = counts[b] / t;
  }
  return out;
}

std::vector<double> Histogram::density() const {
  auto out = masses();
  for (auto& v : out) v /= width();
  return out;
}

RStatistics r_statistics(const EigenphaseSet& set, int bins) {
  const auto& th = set.phases();
  const std::size_t n = th.size();
  if (n < 3) throw ArgumentError("r statistics need at least 3 phases");
  std::vector<double> gaps(n);
  for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] = th[k + 1] - th[k];
  gaps[n - 1] = th[0] + 2.0 * std::numbers::pi - th[n - 1];

  RStatistics out;
  out.histogram = Histogram(0.0, 1.0, bins);
  out.r_values.resize(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = gaps[k];
    const double b = gaps[(k + 1) % n];
    double r;
    if (a < kDegenerateGap && b < kDegenerateGap) {
      r = 0.0;
      ++out.degenerate_pairs;
    } else {
      r = std::min(a, b) / std::max(a, b);
    }
    out.r_values[k] = r;
    out.histogram.add(r);
    sum += r;
  }
  out.mean_r = sum / static_cast<double>(n);
  return out;
}

std::string_view ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::COE:
      return "COE";
    case Ensemble::POI:
      return "POI";
    case Ensemble::GOE:
      return "GOE";
  }
  return "?";
}

namespace {

double coe_density(double r) {
  constexpr double pi = std::numbers::pi;
  if (r < 1e-3) {
    // Series about r = 0; the closed form cancels catastrophically there.
    const double c1 = -4.0 / 3.0 + 8.0 * pi * pi / 9.0;
    const double c2 = 2.0 - 4.0 * pi * pi / 3.0;
    const double c3 = -16.0 * std::pow(pi, 4) / 45.0 - 8.0 / 3.0 + 16.0 * pi * pi / 9.0;
    return r * (c1 + r * (c2 + r * c3));
  }
  const double rp1 = r + 1.0;
  const double a = 2.0 * pi * r / rp1;
  const double b = 2.0 * pi / rp1;
  return (2.0 / 3.0) * (std::sin(a) / (2.0 * pi * r * r) + 1.0 / (rp1 * rp1) +
                        std::sin(b) / (2.0 * pi) - std::cos(b) / rp1 - std::cos(a) / (r * rp1));
}

template <class F>
double integrate(F f, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13, &err);
}

}  // namespace

double reference_density(Ensemble e, double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw ArgumentError("r must lie in [0, 1]");
  switch (e) {
    case Ensemble::COE:
      return coe_density(r);
    case Ensemble::POI:
      return 2.0 / ((1.0 + r) * (1.0 + r));
    case Ensemble::GOE:
      return 6.75 * (r + r * r) / std::pow(1.0 + r + r * r, 2.5);
  }
  return 0.0;
}

double reference_mean(Ensemble e) {
  return integrate([e](double r) { return r * reference_density(e, r); }, 0.0, 1.0);
}

double reference_mass(Ensemble e, double a, double b) {
  if (!(a <= b)) throw ArgumentError("reference_mass needs a <= b");
  return integrate([e](double r) { return reference_density(e, r); }, a, b);
}

double histogram_kld(const Histogram& h, Ensemble e) {
  const auto q = h.masses();
  double kld = 0.0;
  for (int b = 0; b < h.bins(); ++b) {
    const double qb = q[static_cast<std::size_t>(b)];
    if (qb == 0.0) continue;
    const double pb = reference_mass(e, std::max(0.0, h.bin_lo(b)), std::min(1.0, h.bin_hi(b)));
    if (!(pb > 0.0)) return std::numeric_limits<double>::infinity();
    kld += qb * std::log(qb / pb);
  }
  return std::max(kld, 0.0);
}

}  // namespace fpl
