#include "fpl/circuits.hpp"
#include "fpl/errors.hpp"
#include "fpl/sampling.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fpl;
using oracle::M;

namespace {

M as_matrix(const Gate2& g) {
  M m(2, 2);
  m << g[0], g[1], g[2], g[3];
  return m;
}

M cz_oracle(int a, int b, int L) {
  const M p1 = (oracle::eye2() - oracle::sz()) / 2.0;
  const M id = M::Identity(1 << L, 1 << L);
  return id - 2.0 * oracle::site(p1, a, L) * oracle::site(p1, b, L);
}

}  // namespace

TEST_CASE("gate matrices") {
  const oracle::cplx i(0, 1);
  const M sx = oracle::expmi(oracle::sx(), std::numbers::pi / 4);
  const M sy = oracle::expmi(oracle::sy(), std::numbers::pi / 4);
  CHECK((as_matrix(gate_matrix(Gate::SqrtX)) - sx).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((as_matrix(gate_matrix(Gate::SqrtY)) - sy).cwiseAbs().maxCoeff() < 1e-15);
  const M x2 = as_matrix(gate_matrix(Gate::SqrtX)) * as_matrix(gate_matrix(Gate::SqrtX));
  CHECK((x2 + i * oracle::sx()).cwiseAbs().maxCoeff() < 1e-15);
  const M t = as_matrix(gate_matrix(Gate::T));
  CHECK(std::abs(t(1, 1) - std::exp(i * std::numbers::pi / 4.0)) < 1e-15);
  const M h = as_matrix(gate_matrix(Gate::H));
  CHECK((h * h - M::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gate and CZ kernels match Kronecker products for L <= 4") {
  for (int L = 1; L <= 4; ++L) {
    const auto psi = oracle::random_state(L, 9u + L);
    for (Gate g : {Gate::SqrtX, Gate::SqrtY, Gate::T, Gate::H}) {
      for (int q = 0; q < L; ++q) {
        CVector got = psi;
        apply_gate(got, q, gate_matrix(g));
        const oracle::V want = oracle::site(as_matrix(gate_matrix(g)), q, L) * psi;
        CHECK((got - want).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
    for (int a = 0; a < L; ++a) {
      for (int b = 0; b < L; ++b) {
        if (a == b) continue;
        CVector got = psi;
        apply_cz(got, a, b);
        CHECK((got - cz_oracle(a, b, L) * psi).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
}

TEST_CASE("two-qubit circuit with forced gates") {
  const std::vector<std::vector<Gate>> gates = {{Gate::SqrtX, Gate::T}};
  const auto out = run_circuit_with_gates(gates, CzSchedule::Fixed, StateVector::basis_state(2, 0));
  const M h = as_matrix(gate_matrix(Gate::H));
  const oracle::V start = oracle::V::Unit(4, 0);
  const M layer = oracle::kron(as_matrix(gate_matrix(Gate::T)), as_matrix(gate_matrix(Gate::SqrtX)));
  const oracle::V want = cz_oracle(0, 1, 2) * layer * oracle::kron(h, h) * start;
  CHECK((out.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("zero layers give the uniform superposition") {
  CircuitSpec spec;
  spec.sites = 5;
  const auto out = run_circuit(spec, StateVector::basis_state(5, 0));
  CHECK((out.amplitudes().cwiseAbs2().array() - 1.0 / 32).abs().maxCoeff() < 1e-15);
}

TEST_CASE("CZ schedules") {
  CHECK(cz_bonds(5, 0, CzSchedule::Brickwork) == std::vector<int>{0, 2});
  CHECK(cz_bonds(5, 1, CzSchedule::Brickwork) == std::vector<int>{1, 3});
  CHECK(cz_bonds(5, 7, CzSchedule::Fixed) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("random gates are reproducible and roughly uniform") {
  int counts[3] = {0, 0, 0};
  for (int layer = 0; layer < 300; ++layer) {
    for (int q = 0; q < 10; ++q) {
      const Gate g = random_gate(17, layer, q);
      CHECK(g == random_gate(17, layer, q));
      REQUIRE(g != Gate::H);
      ++counts[static_cast<int>(g)];
    }
  }
  for (int c : counts) CHECK(std::abs(c - 1000) < 150);
}

TEST_CASE("deep random circuits approach Porter-Thomas and stay normalized") {
  CircuitSpec spec;
  spec.sites = 9;
  spec.layers = 30;
  spec.seed = 4;
  const auto out = run_circuit(spec, StateVector::basis_state(9, 0));
  CHECK(std::abs(out.amplitudes().squaredNorm() - 1.0) < 1e-12);
  // N sum p^2 -> 2 under Porter-Thomas.
  const double ipr = 512.0 * out.amplitudes().cwiseAbs2().squaredNorm();
  CHECK(ipr > 1.6);
  CHECK(ipr < 2.6);
}

TEST_CASE("matched time axis and validation") {
  CHECK(matched_time_axis(8.0, 10) == 10);
  CHECK(matched_time_axis(4.0, 10) == 20);
  CHECK(matched_time_axis(16.0, 3) == 2);
  CHECK(matched_time_axis(16.0, 10) == 5);
  CircuitSpec bad;
  bad.sites = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad.sites = 3;
  bad.layers = -1;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("digital circuits converge to Porter-Thomas by 40 layers (500 seeds)") {
  ProbabilityHistogram pooled;
  CircuitSpec spec;
  spec.sites = 9;
  spec.layers = 40;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    spec.seed = seed;
    pooled.add(output_distribution(run_circuit(spec, StateVector::basis_state(9, 0)), 40));
  }
  CHECK(kld_to_pt(pooled) < 0.05);
}
