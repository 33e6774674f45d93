#include "fpl/model.hpp"

#include "fpl/errors.hpp"
#include "fpl/rng.hpp"

#include <cmath>
#include <numbers>

namespace fpl {

double SpinChainSpec::period() const { return 2.0 * std::numbers::pi / drive_frequency; }

double SpinChainSpec::transverse_field(double t) const {
  return static_field + drive_amplitude * std::cos(drive_frequency * t);
}

void SpinChainSpec::validate() const {
  if (sites < 2 || sites > kMaxSites) throw ArgumentError("L must be in [2, 30]");
  if (!(drive_frequency > 0.0)) throw ArgumentError("omega must be positive");
  if (!(disorder_width >= 0.0)) throw ArgumentError("W must be non-negative");
  const double t = period();
  if (!std::isfinite(t) || !(t > 0.0)) throw ArgumentError("period is not finite");
  if (!std::isfinite(coupling) || !std::isfinite(static_field) ||
      !std::isfinite(drive_amplitude) || !std::isfinite(disorder_width)) {
    throw ArgumentError("non-finite model parameter");
  }
}

DisorderRealization draw_disorder(const SpinChainSpec& spec, std::uint64_t realization_index) {
  KeyedStream rng(StreamTag::Disorder, {spec.seed, realization_index});
  const double half = 0.5 * spec.disorder_width;
  DisorderRealization out;
  out.fields.resize(static_cast<std::size_t>(spec.sites));
  for (auto& h : out.fields) h = half == 0.0 ? 0.0 : rng.uniform(-half, half);
  return out;
}

namespace {

void check_disorder(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  if (disorder.fields.size() != static_cast<std::size_t>(spec.sites)) {
    throw ArgumentError("disorder has " + std::to_string(disorder.fields.size()) +
                        " fields for L=" + std::to_string(spec.sites));
  }
}

}  // namespace

RVector ising_diagonal(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  check_disorder(spec, disorder);
  const int L = spec.sites;
  const auto n = static_cast<Eigen::Index>(hilbert_dim(L));
  RVector d(n);
  for (Eigen::Index z = 0; z < n; ++z) {
    double e = 0.0;
    for (int i = 0; i < L; ++i) {
      const double si = ((z >> i) & 1) ? -1.0 : 1.0;
      e += disorder.fields[static_cast<std::size_t>(i)] * si;
      if (i + 1 < L) {
        const double sj = ((z >> (i + 1)) & 1) ? -1.0 : 1.0;
        e += spec.coupling * si * sj;
      }
    }
    d[z] = e;
  }
  return d;
}

CMatrix transverse_sum(int sites) {
  const auto n = static_cast<Eigen::Index>(hilbert_dim(sites));
  CMatrix x = CMatrix::Zero(n, n);
  for (Eigen::Index z = 0; z < n; ++z) {
    for (int i = 0; i < sites; ++i) x(z ^ (Eigen::Index{1} << i), z) += 1.0;
  }
  return x;
}

DenseOperator build_h0(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  CMatrix h = spec.static_field * transverse_sum(spec.sites);
  h.diagonal() += ising_diagonal(spec, disorder).cast<cplx>();
  return DenseOperator::hermitian(std::move(h));
}

DenseOperator build_drive(const SpinChainSpec& spec, double t) {
  const double amp = spec.drive_amplitude * std::cos(spec.drive_frequency * t);
  return DenseOperator::hermitian(amp * transverse_sum(spec.sites));
}

DenseOperator build_hamiltonian(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                double t) {
  CMatrix h = spec.transverse_field(t) * transverse_sum(spec.sites);
  h.diagonal() += ising_diagonal(spec, disorder).cast<cplx>();
  return DenseOperator::hermitian(std::move(h));
}

double all_up_energy(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  check_disorder(spec, disorder);
  double e = spec.coupling * (spec.sites - 1);
  for (double h : disorder.fields) e += h;
  return e;
}

}  // namespace fpl
