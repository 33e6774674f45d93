#pragma once

// Nested Gauss-Legendre quadrature of the first two Magnus orders for
// H(t) = H0 + dB cos(w t) X, with direct dense commutators.

#include "fpl/model.hpp"
#include "oracles.hpp"

namespace oracle::magnus {

inline M comm(const M& a, const M& b) { return a * b - b * a; }

// H(t) built from Kronecker products.
struct Ham {
  M h0, x;
  double db, w;
  M at(double t) const { return h0 + db * std::cos(w * t) * x; }
};

inline Ham ham(const fpl::SpinChainSpec& s, const fpl::DisorderRealization& d) {
  return {h0(d.fields, s.static_field, s.coupling), xsum(s.sites), s.drive_amplitude,
          s.drive_frequency};
}

// (1 / 2iT) int_{t0}^{t0+T} dt1 int_{t0}^{t1} dt2 [H(t1), H(t2)], by nested Gauss-Legendre.
inline M h1_quadrature(const Ham& h, double t0, double period) {
  const int n = 40;
  M acc = M::Zero(h.h0.rows(), h.h0.cols());
  const auto outer = gauss_legendre(n, t0, t0 + period);
  for (int a = 0; a < n; ++a) {
    const auto inner = gauss_legendre(n, t0, outer.x[a]);
    const M h1 = h.at(outer.x[a]);
    for (int b = 0; b < n; ++b) acc += outer.w[a] * inner.w[b] * comm(h1, h.at(inner.x[b]));
  }
  return acc / (cplx(0, 2) * period);
}

// -(1/6T) int int int_{t1>t2>t3} ([H1,[H2,H3]] + [H3,[H2,H1]]), t0 = 0.
inline M h2_quadrature(const Ham& h, double period) {
  const int n = 24;
  M acc = M::Zero(h.h0.rows(), h.h0.cols());
  const auto r1 = gauss_legendre(n, 0.0, period);
  for (int a = 0; a < n; ++a) {
    const M h1 = h.at(r1.x[a]);
    const auto r2 = gauss_legendre(n, 0.0, r1.x[a]);
    for (int b = 0; b < n; ++b) {
      const M h2 = h.at(r2.x[b]);
      const auto r3 = gauss_legendre(n, 0.0, r2.x[b]);
      for (int c = 0; c < n; ++c) {
        const M h3 = h.at(r3.x[c]);
        acc += r1.w[a] * r2.w[b] * r3.w[c] * (comm(h1, comm(h2, h3)) + comm(h3, comm(h2, h1)));
      }
    }
  }
  return -acc / (6.0 * period);
}

}  // namespace oracle::magnus
