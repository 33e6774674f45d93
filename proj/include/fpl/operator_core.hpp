#pragma once

// Spin-1/2 Hilbert-space primitives.
//
// Basis convention: index z encodes the bitstring z_{L-1}...z_0, site i is
// bit i, and a clear bit is spin-up (the +1 eigenstate of sigma^z).

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace fpl {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Basis = std::uint64_t;

inline constexpr int kMaxSites = 30;

inline std::size_t hilbert_dim(int sites) { return std::size_t{1} << sites; }

/// Number of sites for a power-of-two dimension; throws ArgumentError otherwise.
int sites_for_dim(std::size_t dim);

class StateVector {
 public:
  StateVector() = default;
  /// Takes the amplitudes as given. Length must be a power of two >= 2.
  explicit StateVector(CVector amplitudes);

  static StateVector basis_state(int sites, Basis z);
  static StateVector uniform_superposition(int sites);
  /// Rescales to unit norm; throws ArgumentError on the zero vector.
  static StateVector normalized(CVector amplitudes);

  int sites() const noexcept { return sites_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t z) const { return amps_[static_cast<Eigen::Index>(z)]; }
  double norm() const { return amps_.norm(); }

 private:
  CVector amps_;
  int sites_ = 0;
};

enum class Axis { X, Y, Z };

struct PauliFactor {
  int site;
  Axis axis;
};

/// Applies the Pauli string with bit operations; no matrix is formed.
/// sigma^y acts as sigma^y|up> = i|down>, sigma^y|down> = -i|up>.
StateVector apply_pauli_string(std::span<const PauliFactor> factors, const StateVector& state);

/// Dense matrix of a Pauli string on `sites` spins, built from the same bit rules.
CMatrix pauli_string_matrix(std::span<const PauliFactor> factors, int sites);

class DenseOperator {
 public:
  DenseOperator() = default;
  /// Claims hermiticity; throws ValidationError when max|A - A^dagger| >= 1e-12.
  static DenseOperator hermitian(CMatrix entries);
  static DenseOperator general(CMatrix entries);

  const CMatrix& matrix() const noexcept { return entries_; }
  bool is_hermitian() const noexcept { return hermitian_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  DenseOperator(CMatrix entries, bool hermitian)
      : entries_(std::move(entries)), hermitian_(hermitian) {}
  CMatrix entries_;
  bool hermitian_ = false;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-9;

/// max |A - A^dagger| elementwise.
double hermiticity_defect(const CMatrix& a);
/// max |U^dagger U - I| elementwise.
double unitarity_defect(const CMatrix& u);

class DenseUnitary {
 public:
  DenseUnitary() = default;
  /// Throws ValidationError carrying the defect when unitarity_defect >= tol.
  explicit DenseUnitary(CMatrix entries, double tol = kUnitaryTol);

  const CMatrix& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

 private:
  CMatrix entries_;
};

StateVector apply(const DenseUnitary& u, const StateVector& state);

struct UnitaryEigensystem {
  RVector phases;  // ascending, in [0, 2pi)
  CMatrix vectors;  // column n belongs to phases[n]
};

struct HermitianEigensystem {
  RVector values;  // ascending
  CMatrix vectors;
};

/// U = sum_n exp(i theta_n) |phi_n><phi_n|. Degenerate phases are returned as-is.
UnitaryEigensystem eig_unitary(const DenseUnitary& u);
/// Eigenphases only, ascending in [0, 2pi).
RVector unitary_eigenphases(const DenseUnitary& u);

/// Throws ValidationError if the operator was not constructed as Hermitian.
HermitianEigensystem eig_hermitian(const DenseOperator& a);
RVector hermitian_eigenvalues(const DenseOperator& a);

/// Wraps an angle into [0, 2pi).
double wrap_phase(double theta);

}  // namespace fpl
