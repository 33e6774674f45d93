#include "fpl/entanglement.hpp"
#include "fpl/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fpl;

namespace {

std::vector<std::vector<int>> all_subsets(int L) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << L) - 1; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < L; ++i) {
      if (mask >> i & 1) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("subsystem validation") {
  CHECK_THROWS_AS(SubsystemChoice({0, 0}, 4), ArgumentError);
  CHECK_THROWS_AS(SubsystemChoice({4}, 4), ArgumentError);
  CHECK_THROWS_AS(SubsystemChoice({0, 1, 2, 3}, 4), ArgumentError);
  CHECK_THROWS_AS(SubsystemChoice({}, 4), ArgumentError);
  const SubsystemChoice s({2, 0}, 4);
  CHECK(s.sites() == std::vector<int>{0, 2});
  CHECK(s.complement() == std::vector<int>{1, 3});
}

TEST_CASE("reduced density matrices of simple states") {
  const auto prod = StateVector::basis_state(4, 0b0110);
  const auto rho = reduced_density_matrix(prod, SubsystemChoice({1, 3}, 4));
  CHECK(std::abs(rho.matrix()(1, 1) - 1.0) < 1e-15);
  CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0));

  CVector bell = CVector::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  const auto r1 = reduced_density_matrix(StateVector(bell), SubsystemChoice({0}, 2));
  CHECK((r1.matrix() - 0.5 * CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(von_neumann_entropy(r1) == doctest::Approx(1.0));
}

TEST_CASE("partial trace matches the dense Kronecker-index oracle for every subsystem, L <= 4") {
  for (int L = 2; L <= 4; ++L) {
    const auto psi = oracle::random_state(L, 31u + L);
    for (const auto& sub : all_subsets(L)) {
      const auto got = reduced_density_matrix(StateVector(psi), SubsystemChoice(sub, L));
      CHECK((got.matrix() - oracle::partial_trace(psi, sub, L)).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(std::abs(got.matrix().trace() - 1.0) < 1e-10);
      CHECK(hermitian_eigenvalues(got).minCoeff() > -1e-12);
    }
  }
}

TEST_CASE("von Neumann entropy values and errors") {
  CHECK(von_neumann_entropy(DenseOperator::hermitian(CMatrix::Identity(8, 8) / 8.0)) ==
        doctest::Approx(3.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 0.75;
  d(1, 1) = 0.25;
  CHECK(von_neumann_entropy(DenseOperator::hermitian(d)) ==
        doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-12));
  CHECK(von_neumann_entropy(DenseOperator::hermitian(d)) == doctest::Approx(0.8113).epsilon(1e-4));
  d(0, 0) = 0.8;
  CHECK_THROWS_AS(von_neumann_entropy(DenseOperator::hermitian(d)), ValidationError);
}

TEST_CASE("entropy of a subsystem equals that of its complement") {
  for (int L = 2; L <= 6; ++L) {
    const StateVector psi(oracle::random_state(L, 77u + L));
    for (const auto& sub : all_subsets(L)) {
      const SubsystemChoice s(sub, L);
      const SubsystemChoice c(s.complement(), L);
      const double a = von_neumann_entropy(reduced_density_matrix(psi, s));
      const double b = von_neumann_entropy(reduced_density_matrix(psi, c));
      CHECK(std::abs(a - b) < 1e-8);
      CHECK(a >= 0.0);
      CHECK(a <= std::min(s.size(), L - s.size()) + 1e-12);
    }
  }
}

TEST_CASE("Porter-Thomas states look infinite-temperature on small subsystems") {
  const StateVector psi(oracle::random_state(10, 5));
  const auto rho = reduced_density_matrix(psi, SubsystemChoice({3, 7}, 10)).matrix();
  CMatrix off = rho;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() < 0.05);
  CHECK((rho.diagonal().real().array() - 0.25).abs().maxCoeff() < 0.05);
}

TEST_CASE("entropy panels") {
  const auto subs = random_subsystems(9, 6, 3, 11);
  REQUIRE(subs.size() == 6);
  for (std::size_t a = 0; a < subs.size(); ++a) {
    CHECK(subs[a].size() == 3);
    for (std::size_t b = a + 1; b < subs.size(); ++b) CHECK(subs[a].sites() != subs[b].sites());
  }
  const auto again = random_subsystems(9, 6, 3, 11);
  for (std::size_t a = 0; a < subs.size(); ++a) CHECK(subs[a].sites() == again[a].sites());

  const auto prod = entropy_panel(StateVector::basis_state(9, 0), 6, 3, 1);
  CHECK(prod.mean == doctest::Approx(0.0));
  CHECK(prod.std == doctest::Approx(0.0));

  const auto rnd = entropy_panel(StateVector(oracle::random_state(9, 3)), 6, 3, 1);
  CHECK(rnd.mean > 2.5);

  CHECK_THROWS_AS(random_subsystems(3, 1, 3, 0), ArgumentError);
  CHECK_THROWS_AS(random_subsystems(4, 5, 3, 0), ArgumentError);
}
