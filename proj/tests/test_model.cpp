#include "fpl/errors.hpp"
#include "fpl/model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fpl;

namespace {

SpinChainSpec spec_of(int L, double w, double b0 = 1.25, double db = -1.25, double omega = 8.0) {
  SpinChainSpec s;
  s.sites = L;
  s.disorder_width = w;
  s.static_field = b0;
  s.drive_amplitude = db;
  s.drive_frequency = omega;
  return s;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spec validation") {
  CHECK_NOTHROW(spec_of(2, 0.0).validate());
  CHECK_THROWS_AS(spec_of(1, 0.0).validate(), ArgumentError);
  CHECK_THROWS_AS(spec_of(3, -1.0).validate(), ArgumentError);
  CHECK_THROWS_AS(spec_of(3, 1.0, 1.25, -1.25, 0.0).validate(), ArgumentError);
}

TEST_CASE("disorder draws") {
  const auto zero = draw_disorder(spec_of(5, 0.0), 3);
  for (double h : zero.fields) CHECK(h == 0.0);

  auto s = spec_of(6, 4.0);
  s.seed = 99;
  CHECK(draw_disorder(s, 7).fields == draw_disorder(s, 7).fields);
  CHECK(draw_disorder(s, 7).fields != draw_disorder(s, 8).fields);

  // 1e5 draws: mean within 3 sigma of 0, variance within 5% of W^2/12.
  auto big = spec_of(10, 4.0);
  double sum = 0.0, sq = 0.0;
  int n = 0;
  for (std::uint64_t k = 0; k < 10000; ++k) {
    for (double h : draw_disorder(big, k).fields) {
      CHECK(std::abs(h) <= 2.0);
      sum += h;
      sq += h * h;
      ++n;
    }
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  const double sigma = std::sqrt(16.0 / 12.0 / n);
  CHECK(std::abs(mean) < 3 * sigma);
  CHECK(std::abs(var - 16.0 / 12.0) < 0.05 * 16.0 / 12.0);
}

TEST_CASE("H0 examples") {
  DisorderRealization zero{{0.0, 0.0}};
  const auto pair = build_h0(spec_of(2, 0.0, 0.0), zero);
  const auto ev = hermitian_eigenvalues(pair);
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(-1.0));
  CHECK(ev[2] == doctest::Approx(1.0));
  CHECK(ev[3] == doctest::Approx(1.0));

  auto s = spec_of(2, 2.0, 0.0);
  s.coupling = 0.0;
  const auto diag = build_h0(s, DisorderRealization{{1.0, -1.0}}).matrix();
  CHECK(std::abs(diag(0, 0)) < 1e-15);
  CHECK(diag(1, 1).real() == doctest::Approx(-2.0));
  CHECK(diag(2, 2).real() == doctest::Approx(2.0));
  CHECK(std::abs(diag(3, 3)) < 1e-15);

  const std::vector<double> h{0.5, -0.3, 0.1};
  const auto got = build_h0(spec_of(3, 1.0), DisorderRealization{h}).matrix();
  CHECK(max_abs(got - oracle::h0(h, 1.25, 1.0)) < 1e-14);

  CHECK_THROWS_AS(build_h0(spec_of(3, 1.0), DisorderRealization{{0.1}}), ArgumentError);
}

TEST_CASE("drive examples") {
  const auto s = spec_of(3, 1.0);
  CHECK(max_abs(build_drive(s, s.period() / 4).matrix()) < 1e-15);

  const auto ev = hermitian_eigenvalues(build_drive(s, 0.0));
  // dB * {-3, -1, -1, -1, 1, 1, 1, 3}
  CHECK(ev[0] == doctest::Approx(-3 * 1.25));
  CHECK(ev[7] == doctest::Approx(3 * 1.25));
  CHECK(ev[1] == doctest::Approx(-1.25));

  CMatrix avg = CMatrix::Zero(8, 8);
  for (int k = 0; k < 1000; ++k) avg += build_drive(s, s.period() * k / 1000.0).matrix();
  CHECK(max_abs(avg / 1000.0) < 1e-3 * 1.25);
}

TEST_CASE("H(t) at different times do not commute when disordered") {
  auto s = spec_of(3, 2.0);
  const auto d = draw_disorder(s, 0);
  const CMatrix a = build_hamiltonian(s, d, 0.0).matrix();
  const CMatrix b = build_hamiltonian(s, d, s.period() / 3).matrix();
  CHECK(max_abs(a * b - b * a) > 1e-3);
  CHECK(max_abs(build_hamiltonian(s, d, 0.1).matrix() -
                (build_h0(s, d).matrix() + build_drive(s, 0.1).matrix())) < 1e-14);
}

TEST_CASE("global spin flip is a symmetry only without disorder") {
  std::vector<oracle::M> xs(4, oracle::sx());
  const oracle::M flip = oracle::chain(xs);
  for (double w : {0.0, 4.0}) {
    const auto s = spec_of(4, w);
    const CMatrix h = build_h0(s, draw_disorder(s, 1)).matrix();
    const double c = max_abs(h * flip - flip * h);
    if (w == 0.0) {
      CHECK(c < 1e-14);
    } else {
      CHECK(c > 1e-2);
    }
  }
}

TEST_CASE("all-up energy") {
  const auto s = spec_of(4, 3.0);
  const auto d = draw_disorder(s, 2);
  CHECK(all_up_energy(s, d) == doctest::Approx(build_h0(s, d).matrix()(0, 0).real()));
}
