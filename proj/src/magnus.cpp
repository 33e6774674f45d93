#include "fpl/magnus.hpp"

#include "fpl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace fpl {

namespace {

class PauliSum {
 public:
  explicit PauliSum(int sites)
      : sites_(sites),
        m_(CMatrix::Zero(static_cast<Eigen::Index>(hilbert_dim(sites)),
                         static_cast<Eigen::Index>(hilbert_dim(sites)))) {}

  void add(double c, std::initializer_list<PauliFactor> f) {
    if (c == 0.0) return;
    m_ += c * pauli_string_matrix(std::span<const PauliFactor>(f.begin(), f.size()), sites_);
  }
  CMatrix take() { return std::move(m_); }

 private:
  int sites_;
  CMatrix m_;
};

void check(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  spec.validate();
  if (disorder.fields.size() != static_cast<std::size_t>(spec.sites)) {
    throw ArgumentError("disorder length does not match L");
  }
}

}  // namespace

DenseOperator magnus_h1(const SpinChainSpec& spec, const DisorderRealization& disorder,
                        double t0) {
  check(spec, disorder);
  const int L = spec.sites;
  const double s = std::sin(spec.drive_frequency * t0);
  PauliSum h(L);
  if (s == 0.0) return DenseOperator::hermitian(h.take());
  const double pre = -2.0 * spec.drive_amplitude * s / spec.drive_frequency;
  const double J = spec.coupling;
  for (int j = 0; j < L; ++j) h.add(pre * disorder.fields[j], {{j, Axis::Y}});
  for (int j = 0; j + 1 < L; ++j) {
    h.add(pre * J, {{j, Axis::Y}, {j + 1, Axis::Z}});
    h.add(pre * J, {{j, Axis::Z}, {j + 1, Axis::Y}});
  }
  return DenseOperator::hermitian(h.take());
}

DenseOperator magnus_h2(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  check(spec, disorder);
  const int L = spec.sites;
  const double J = spec.coupling;
  const double w2 = spec.drive_frequency * spec.drive_frequency;
  const double db = spec.drive_amplitude;
  const double a = -4.0 * db / w2;
  const double b = (4.0 * spec.static_field * db - db * db) / w2;
  const auto& h = disorder.fields;

  PauliSum out(L);
  for (int j = 0; j < L; ++j) {
    out.add(a * h[j] * h[j], {{j, Axis::X}});
    out.add(b * h[j], {{j, Axis::Z}});
  }
  for (int j = 0; j + 1 < L; ++j) {
    out.add(a * 2.0 * J * h[j], {{j, Axis::X}, {j + 1, Axis::Z}});
    out.add(a * 2.0 * J * h[j + 1], {{j, Axis::Z}, {j + 1, Axis::X}});
    out.add(a * J * J, {{j, Axis::X}});
    out.add(a * J * J, {{j + 1, Axis::X}});
    out.add(b * 2.0 * J, {{j, Axis::Z}, {j + 1, Axis::Z}});
    out.add(-b * 2.0 * J, {{j, Axis::Y}, {j + 1, Axis::Y}});
  }
  for (int j = 1; j + 1 < L; ++j) {
    out.add(a * 2.0 * J * J, {{j - 1, Axis::Z}, {j, Axis::X}, {j + 1, Axis::Z}});
  }
  return DenseOperator::hermitian(out.take());
}

MagnusTerms magnus_terms(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  return {build_h0(spec, disorder), magnus_h1(spec, disorder, 0.0), magnus_h2(spec, disorder),
          0.0};
}

CMatrix hermitian_propagator(const DenseOperator& h, double time) {
  const auto es = eig_hermitian(h);
  CVector ph(es.values.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k) ph[k] = std::polar(1.0, -es.values[k] * time);
  return es.vectors * ph.asDiagonal() * es.vectors.adjoint();
}

double magnus_defect(const SpinChainSpec& spec, const DisorderRealization& disorder, int order,
                     const DenseUnitary& u) {
  if (order != 0 && order != 2) throw ArgumentError("Magnus order must be 0 or 2");
  CMatrix hf = build_h0(spec, disorder).matrix();
  if (order == 2) hf += magnus_h2(spec, disorder).matrix();
  // Both summands are Hermitian; symmetrize away rounding in the sum.
  hf = (0.5 * (hf + hf.adjoint())).eval();
  const CMatrix approx = hermitian_propagator(DenseOperator::hermitian(hf), spec.period());
  return (u.matrix() - approx).cwiseAbs().maxCoeff();
}

double magnus_defect(const SpinChainSpec& spec, const DisorderRealization& disorder, int order,
                     const PropagatorOptions& options) {
  if (order != 0 && order != 2) throw ArgumentError("Magnus order must be 0 or 2");
  return magnus_defect(spec, disorder, order, floquet_unitary(spec, disorder, options).full);
}

double characteristic_energy(const SpinChainSpec& spec, const DisorderRealization& disorder) {
  const RVector e = hermitian_eigenvalues(build_h0(spec, disorder));
  const double local = 0.5 * spec.disorder_width + 2.0 * std::abs(spec.coupling) +
                       std::abs(spec.static_field) + std::abs(spec.drive_amplitude);
  return std::max(local, 0.5 * (e[e.size() - 1] - e[0]));
}

}  // namespace fpl
