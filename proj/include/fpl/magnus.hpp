#pragma once

#include "fpl/model.hpp"
#include "fpl/operator_core.hpp"
#include "fpl/propagator.hpp"

namespace fpl {

/// First-order term for a period starting at t0:
///   H1 = -(2 dB sin(w t0) / w) [sum_j h_j sy_j + J sum_j (sy_j sz_{j+1} + sz_j sy_{j+1})].
/// Exactly zero at t0 = 0.
DenseOperator magnus_h1(const SpinChainSpec& spec, const DisorderRealization& disorder,
                        double t0);

/// Second-order term for t0 = 0:
///   H2 = -(4 dB / w^2) G1 + ((4 B0 dB - dB^2) / w^2) G2
///   G1 = sum h_j^2 sx_j + 2J sum (h_j sx_j sz_{j+1} + h_{j+1} sz_j sx_{j+1})
///        + J^2 sum (sx_j + sx_{j+1}) + 2J^2 sum sz_{j-1} sx_j sz_{j+1}
///   G2 = sum h_j sz_j + 2J sum (sz_j sz_{j+1} - sy_j sy_{j+1})
DenseOperator magnus_h2(const SpinChainSpec& spec, const DisorderRealization& disorder);

struct MagnusTerms {
  DenseOperator h0;
  DenseOperator h1;
  DenseOperator h2;
  double t0 = 0.0;
};

MagnusTerms magnus_terms(const SpinChainSpec& spec, const DisorderRealization& disorder);

/// exp(-i H T) of a Hermitian operator via its eigendecomposition.
CMatrix hermitian_propagator(const DenseOperator& h, double time);

/// max|U - exp(-i (H0 [+ H2]) T)| for order 0 or 2, U the exact Floquet unitary.
double magnus_defect(const SpinChainSpec& spec, const DisorderRealization& disorder, int order,
                     const PropagatorOptions& options = {});
/// Same, reusing an already computed U.
double magnus_defect(const SpinChainSpec& spec, const DisorderRealization& disorder, int order,
                     const DenseUnitary& u);

/// Plot label for the characteristic energy: max(W/2 + 2J + |B0| + |dB|, width(H0)/2).
double characteristic_energy(const SpinChainSpec& spec, const DisorderRealization& disorder);

}  // namespace fpl
