#include "fpl/errors.hpp"
#include "fpl/propagator.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fpl;

namespace {

SpinChainSpec spec_of(int L, double w, double omega, double db = -1.25) {
  SpinChainSpec s;
  s.sites = L;
  s.disorder_width = w;
  s.drive_frequency = omega;
  s.drive_amplitude = db;
  s.seed = 17;
  return s;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("no drive: U equals U0") {
  const auto s = spec_of(4, 3.0, 8.0, 0.0);
  const auto d = draw_disorder(s, 0);
  const auto ops = floquet_unitary(s, d);
  CHECK(max_abs(ops.full.matrix() - ops.undriven.matrix()) < 1e-10);
  CHECK(max_abs(ops.undriven.matrix() - oracle::expmi(oracle::h0(d.fields, 1.25, 1.0), s.period())) <
        1e-12);
}

TEST_CASE("free spins under B(t) = B0 (1 - cos wt) rotate by B0 T about x") {
  // Two decoupled clean spins (J = 0, W = 0): a product of single-spin rotations.
  auto s = spec_of(2, 0.0, 3.0, -1.25);
  s.coupling = 0.0;
  const auto ops = floquet_unitary(s, draw_disorder(s, 0));
  const double phi = s.static_field * s.period();
  const oracle::M r = std::cos(phi) * oracle::eye2() - oracle::cplx(0, 1) * std::sin(phi) * oracle::sx();
  CHECK(max_abs(ops.full.matrix() - oracle::kron(r, r)) < 1e-8);
}

TEST_CASE("self-convergence and certification at L = 5") {
  const auto s = spec_of(5, 3.0, 8.0);
  const auto d = draw_disorder(s, 1);
  const CMatrix a = propagate_interval(s, d, 0.0, s.period(), 64);
  const CMatrix b = propagate_interval(s, d, 0.0, s.period(), 256);
  CHECK(max_abs(a - b) < 1e-8);

  const auto ops = floquet_unitary(s, d);
  CHECK(ops.convergence_defect < 1e-8);
  CHECK(ops.slices_used >= 128);
  CHECK(unitarity_defect(ops.full.matrix()) < 1e-9);
  CHECK_FALSE(ops.history.empty());
}

TEST_CASE("independent check against a fine midpoint product at L = 3") {
  const auto s = spec_of(3, 2.0, 5.0);
  const auto d = draw_disorder(s, 2);
  const oracle::M h0 = oracle::h0(d.fields, s.static_field, 1.0);
  const oracle::M x = oracle::xsum(3);
  const int n = 4000;
  const double dt = s.period() / n;
  oracle::M u = oracle::M::Identity(8, 8);
  for (int k = 0; k < n; ++k) {
    const double t = (k + 0.5) * dt;
    u = oracle::expmi(h0 + s.drive_amplitude * std::cos(s.drive_frequency * t) * x, dt) * u;
  }
  // Midpoint error is O(dt^2); 4000 slices reach ~1e-7.
  CHECK(max_abs(floquet_unitary(s, d).full.matrix() - u) < 1e-6);
}

TEST_CASE("half-period products compose to the full period") {
  const auto s = spec_of(4, 2.0, 6.0);
  const auto d = draw_disorder(s, 3);
  const CMatrix first = propagate_interval(s, d, 0.0, s.period() / 2, 128);
  const CMatrix second = propagate_interval(s, d, s.period() / 2, s.period(), 128);
  CHECK(max_abs(second * first - floquet_unitary(s, d).full.matrix()) < 1e-9);
}

TEST_CASE("U approaches U0 as the drive frequency grows") {
  double prev = 1e9;
  for (double omega : {8.0, 16.0, 24.0, 40.0}) {
    const auto s = spec_of(5, 3.0, omega);
    const auto ops = floquet_unitary(s, draw_disorder(s, 0));
    const double gap = max_abs(ops.full.matrix() - ops.undriven.matrix());
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("convergence failure reports the history") {
  const auto s = spec_of(3, 2.0, 8.0);
  PropagatorOptions o;
  o.initial_slices = 2;
  o.max_slices = 8;
  o.target_defect = 1e-300;
  try {
    floquet_unitary(s, draw_disorder(s, 0), o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.history().size() == 2);
    CHECK(e.history().back().slices == 8);
  }
  o.initial_slices = 3;
  CHECK_THROWS_AS(floquet_unitary(s, draw_disorder(s, 0), o), ArgumentError);
}

TEST_CASE("stroboscopic evolution") {
  const auto s = spec_of(5, 3.0, 8.0);
  const auto d = draw_disorder(s, 4);
  const auto ops = floquet_unitary(s, d);
  const auto psi0 = initial_state(5);

  CHECK(evolve(psi0, ops.full, 0).amplitudes() == psi0.amplitudes());
  const auto two = evolve(psi0, ops.full, 2);
  const CVector manual = ops.full.matrix() * (ops.full.matrix() * psi0.amplitudes());
  CHECK((two.amplitudes() - manual).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(evolve(psi0, ops.full, 50).norm() - 1.0) < 1e-9);

  const auto direct = evolve_stroboscopic(s, d, psi0, 10);
  CHECK((direct.state.amplitudes() - evolve(psi0, ops.full, 10).amplitudes()).cwiseAbs().maxCoeff() <
        1e-8);
  CHECK(direct.convergence_defect < 1e-8);

  const auto series = evolve_stroboscopic_series(s, d, psi0, 4);
  REQUIRE(series.states.size() == 4);
  for (int m = 1; m <= 4; ++m) {
    CHECK((series.states[m - 1].amplitudes() - evolve(psi0, ops.full, m).amplitudes())
              .cwiseAbs()
              .maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(evolve(psi0, ops.full, -1), ArgumentError);
  CHECK_THROWS_AS(evolve(initial_state(4), ops.full, 1), ArgumentError);
}

TEST_CASE("initial state") {
  const auto psi = initial_state(2);
  CHECK(psi[0] == cplx(1, 0));
  for (std::size_t z = 1; z < 4; ++z) CHECK(std::abs(psi[z]) == 0.0);

  const auto s = spec_of(4, 3.0, 8.0);
  const auto d = draw_disorder(s, 5);
  const auto p4 = initial_state(4);
  for (int i = 0; i < 4; ++i) {
    const oracle::M z = oracle::site(oracle::sz(), i, 4);
    CHECK((p4.amplitudes().adjoint() * z * p4.amplitudes())(0, 0).real() == doctest::Approx(1.0));
  }
  const CMatrix h = build_h0(s, d).matrix();
  const double e = (p4.amplitudes().adjoint() * h * p4.amplitudes())(0, 0).real();
  double want = 3.0;
  for (double x : d.fields) want += x;
  CHECK(e == doctest::Approx(want));
}
