#pragma once

#include "fpl/errors.hpp"
#include "fpl/model.hpp"
#include "fpl/operator_core.hpp"

#include <vector>

namespace fpl {

struct PropagatorOptions {
  int initial_slices = 64;
  int max_slices = 1 << 16;
  double target_defect = 1e-8;
};

/// One-period propagators. The drive phase starts at t0 = 0 (cos(omega t) = 1).
struct FloquetOperators {
  DenseUnitary full;      // time-ordered exp(-i int_0^T H(t) dt)
  DenseUnitary undriven;  // exp(-i H0 T)
  int slices_used = 0;
  double convergence_defect = 0.0;  // max|U(n/2) - U(n)| at the accepted n
  std::vector<ConvergenceError::Step> history;
};

/// Time-ordered propagator over [t_begin, t_end] with `slices` equal steps.
///
/// Each step is integrated with a Taylor series of the time-dependent generator
/// H(t) = D + B(t) X, where the scalar field B(t) is itself expanded exactly
/// around the step start; the series is truncated adaptively at double
/// precision, so a slice is exact up to rounding.
CMatrix propagate_interval(const SpinChainSpec& spec, const DisorderRealization& disorder,
                           double t_begin, double t_end, int slices);

/// Same integrator applied to a state instead of the identity.
CVector propagate_state_interval(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                 const CVector& state, double t_begin, double t_end, int slices);

/// Slice count is doubled from options.initial_slices until successive results
/// agree to options.target_defect; throws ConvergenceError past max_slices.
FloquetOperators floquet_unitary(const SpinChainSpec& spec, const DisorderRealization& disorder,
                                 const PropagatorOptions& options = {});

/// exp(-i H0 T).
DenseUnitary undriven_unitary(const SpinChainSpec& spec, const DisorderRealization& disorder);

/// U^m |psi>, by m matrix-vector products.
StateVector evolve(const StateVector& state, const DenseUnitary& u, int cycles);

/// All spins up: basis index 0.
StateVector initial_state(int sites);

struct StroboscopicState {
  StateVector state;
  int slices_used = 0;
  double convergence_defect = 0.0;
  std::vector<ConvergenceError::Step> history;
};

/// |psi_m> integrated directly, without materializing U. Certified by the same
/// slice doubling applied to the final state.
StroboscopicState evolve_stroboscopic(const SpinChainSpec& spec,
                                      const DisorderRealization& disorder,
                                      const StateVector& state, int cycles,
                                      const PropagatorOptions& options = {});

struct StroboscopicSeries {
  std::vector<StateVector> states;  // states[k] is |psi_{k+1}>
  int slices_used = 0;
  double convergence_defect = 0.0;  // worst snapshot
  std::vector<ConvergenceError::Step> history;
};

/// |psi_1> .. |psi_cycles>, certified jointly: every snapshot must settle.
StroboscopicSeries evolve_stroboscopic_series(const SpinChainSpec& spec,
                                              const DisorderRealization& disorder,
                                              const StateVector& state, int cycles,
                                              const PropagatorOptions& options = {});

}  // namespace fpl
