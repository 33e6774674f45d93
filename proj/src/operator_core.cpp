#include "fpl/operator_core.hpp"

#include "fpl/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace fpl {

int sites_for_dim(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw ArgumentError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  return std::countr_zero(dim);
}

StateVector::StateVector(CVector amplitudes) : amps_(std::move(amplitudes)) {
  sites_ = sites_for_dim(static_cast<std::size_t>(amps_.size()));
}

StateVector StateVector::basis_state(int sites, Basis z) {
  if (sites < 1 || sites > kMaxSites) throw ArgumentError("site count out of range");
  if (z >= hilbert_dim(sites)) throw ArgumentError("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(hilbert_dim(sites)));
  v[static_cast<Eigen::Index>(z)] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::uniform_superposition(int sites) {
  if (sites < 1 || sites > kMaxSites) throw ArgumentError("site count out of range");
  const auto n = static_cast<Eigen::Index>(hilbert_dim(sites));
  return StateVector(CVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
}

StateVector StateVector::normalized(CVector amplitudes) {
  const double nrm = amplitudes.norm();
  if (!(nrm > 0.0)) throw ArgumentError("cannot normalize the zero vector");
  amplitudes /= nrm;
  return StateVector(std::move(amplitudes));
}

namespace {

void check_factors(std::span<const PauliFactor> factors, int sites) {
  Basis seen = 0;
  for (const auto& f : factors) {
    if (f.site < 0 || f.site >= sites) {
      throw ArgumentError("Pauli site " + std::to_string(f.site) + " out of range for L=" +
                          std::to_string(sites));
    }
    const Basis bit = Basis{1} << f.site;
    if (seen & bit) throw ArgumentError("Pauli string repeats site " + std::to_string(f.site));
    seen |= bit;
  }
}

// Image index and phase of one basis state under a Pauli string.
std::pair<Basis, cplx> pauli_action(std::span<const PauliFactor> factors, Basis z) {
  Basis out = z;
  cplx phase = 1.0;
  for (const auto& f : factors) {
    const Basis bit = Basis{1} << f.site;
    const bool down = (z & bit) != 0;
    switch (f.axis) {
      case Axis::X:
        out ^= bit;
        break;
      case Axis::Y:
        out ^= bit;
        phase *= down ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        break;
      case Axis::Z:
        if (down) phase = -phase;
        break;
    }
  }
  return {out, phase};
}

}  // namespace

StateVector apply_pauli_string(std::span<const PauliFactor> factors, const StateVector& state) {
  check_factors(factors, state.sites());
  CVector out(static_cast<Eigen::Index>(state.dim()));
  for (Basis z = 0; z < state.dim(); ++z) {
    const auto [img, phase] = pauli_action(factors, z);
    out[static_cast<Eigen::Index>(img)] = phase * state[z];
  }
  return StateVector(std::move(out));
}

CMatrix pauli_string_matrix(std::span<const PauliFactor> factors, int sites) {
  check_factors(factors, sites);
  const auto n = static_cast<Eigen::Index>(hilbert_dim(sites));
  CMatrix m = CMatrix::Zero(n, n);
  for (Basis z = 0; z < static_cast<Basis>(n); ++z) {
    const auto [img, phase] = pauli_action(factors, z);
    m(static_cast<Eigen::Index>(img), static_cast<Eigen::Index>(z)) = phase;
  }
  return m;
}

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("operator is not square");
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
  if (u.rows() != u.cols()) throw ArgumentError("operator is not square");
  CMatrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

DenseOperator DenseOperator::hermitian(CMatrix entries) {
  const double defect = hermiticity_defect(entries);
  if (!(defect < kHermitianTol)) throw ValidationError("operator is not Hermitian", defect);
  return DenseOperator(std::move(entries), true);
}

DenseOperator DenseOperator::general(CMatrix entries) {
  if (entries.rows() != entries.cols()) throw ArgumentError("operator is not square");
  return DenseOperator(std::move(entries), false);
}

DenseUnitary::DenseUnitary(CMatrix entries, double tol) : entries_(std::move(entries)) {
  const double defect = unitarity_defect(entries_);
  if (!(defect < tol)) throw ValidationError("matrix is not unitary", defect);
}

StateVector apply(const DenseUnitary& u, const StateVector& state) {
  if (u.dim() != static_cast<Eigen::Index>(state.dim())) {
    throw ArgumentError("unitary and state dimensions differ");
  }
  return StateVector(CVector(u.matrix() * state.amplitudes()));
}

double wrap_phase(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

namespace {

// In-place symmetric/Hermitian eigensolve; `a` is overwritten by eigenvectors.
void syevd(RMatrix& a, RVector& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
  if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
}

void syevd(CMatrix& a, RVector& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                         w.data());
  if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
}

bool is_real(const CMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

// Eigenvalues of A closer than this are treated as one cluster and split by B.
constexpr double kClusterGap = 1e-5;

// A unitary is the normal matrix A + iB with commuting Hermitian A = (U + U^dag)/2 and
// B = (U - U^dag)/2i. Diagonalize A, then resolve near-degenerate clusters of A with B.
// A symmetric U has real A and B, so the whole solve stays in real arithmetic.
template <class Mat>
UnitaryEigensystem commuting_pair_eig(Mat a, const Mat& b) {
  const Eigen::Index n = a.rows();
  const Mat a_orig = a;
  RVector avals;
  syevd(a, avals);
  Mat& vecs = a;
  const Mat bv = b * vecs;
  RVector cosv(n), sinv(n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && avals[stop] - avals[stop - 1] < kClusterGap) ++stop;
    const Eigen::Index width = stop - start;
    if (width == 1) {
      cosv[start] = avals[start];
      sinv[start] = std::real(vecs.col(start).dot(bv.col(start)));
    } else {
      Mat q = vecs.middleCols(start, width);
      Mat bc = q.adjoint() * bv.middleCols(start, width);
      bc = (0.5 * (bc + bc.adjoint())).eval();
      RVector bvals;
      syevd(bc, bvals);
      Mat rotated = q * bc;
      vecs.middleCols(start, width) = rotated;
      for (Eigen::Index k = 0; k < width; ++k) {
        const auto col = start + k;
        sinv[col] = bvals[k];
        cosv[col] = std::real(rotated.col(k).dot(a_orig * rotated.col(k)));
      }
    }
    start = stop;
  }

  std::vector<double> phases(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) phases[k] = wrap_phase(std::atan2(sinv[k], cosv[k]));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return phases[x] < phases[y]; });

  UnitaryEigensystem out;
  out.phases.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.phases[k] = phases[order[k]];
    out.vectors.col(k) = vecs.col(order[k]).template cast<cplx>();
  }
  return out;
}

}  // namespace

UnitaryEigensystem eig_unitary(const DenseUnitary& u) {
  const CMatrix& m = u.matrix();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym < 1e-12) {
    RMatrix re = 0.5 * (m.real() + m.real().transpose());
    RMatrix im = 0.5 * (m.imag() + m.imag().transpose());
    return commuting_pair_eig<RMatrix>(std::move(re), im);
  }
  CMatrix herm = 0.5 * (m + m.adjoint());
  CMatrix skew = cplx(0.0, -0.5) * (m - m.adjoint());
  return commuting_pair_eig<CMatrix>(std::move(herm), skew);
}

RVector unitary_eigenphases(const DenseUnitary& u) { return eig_unitary(u).phases; }

namespace {

void require_hermitian(const DenseOperator& a) {
  if (!a.is_hermitian()) {
    throw ValidationError("eig_hermitian needs an operator constructed as Hermitian",
                          hermiticity_defect(a.matrix()));
  }
}

}  // namespace

HermitianEigensystem eig_hermitian(const DenseOperator& a) {
  require_hermitian(a);
  HermitianEigensystem out;
  if (is_real(a.matrix())) {
    RMatrix m = a.matrix().real();
    syevd(m, out.values);
    out.vectors = m.cast<cplx>();
  } else {
    out.vectors = a.matrix();
    syevd(out.vectors, out.values);
  }
  return out;
}

RVector hermitian_eigenvalues(const DenseOperator& a) { return eig_hermitian(a).values; }

}  // namespace fpl
