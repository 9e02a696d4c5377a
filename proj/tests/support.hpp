#pragma once

// Shared helpers for the test programs: seeded random rationals and
// polynomials, and exact SL(2,Q) matrices whose traces give points on the
// Fricke cubic without consulting the cubic itself.

#include "fricke/charvariety.hpp"
#include "fricke/connection.hpp"
#include "fricke/polynomial.hpp"

#include <array>
#include <random>
#include <string>
#include <vector>

namespace fricke::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, int num_bound = 9, int den_bound = 4) {
  std::uniform_int_distribution<int> num(-num_bound, num_bound);
  std::uniform_int_distribution<int> den(1, den_bound);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero_rational(Rng& rng, int num_bound = 9, int den_bound = 4) {
  for (;;) {
    Rational r = random_rational(rng, num_bound, den_bound);
    if (r != 0) return r;
  }
}

/// Random polynomial with up to `terms` terms of total degree <= max_degree.
inline Polynomial random_polynomial(Rng& rng, const RingPtr& ring, int terms = 4,
                                    unsigned max_degree = 3) {
  std::uniform_int_distribution<int> count(0, terms);
  std::uniform_int_distribution<unsigned> exp(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, ring->size() - 1);
  Polynomial p(ring);
  int n = count(rng);
  for (int k = 0; k < n; ++k) {
    Monomial m;
    unsigned budget = exp(rng);
    for (unsigned d = 0; d < budget; ++d) m = m * Monomial::variable(var(rng));
    p.add_term(m, random_rational(rng));
  }
  return p;
}

/// Exact 2x2 rational matrix.
struct QMatrix {
  Rational a, b, c, d;

  Rational trace() const { return a + d; }
  Rational det() const { return a * d - b * c; }
  QMatrix inverse() const {
    Rational dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  friend QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
};

/// Random element of SL(2,Q): [[p, q], [r, (1 + q r)/p]].
inline QMatrix random_sl2q(Rng& rng) {
  Rational p = random_nonzero_rational(rng, 5, 3);
  Rational q = random_rational(rng, 5, 3);
  Rational r = random_rational(rng, 5, 3);
  return {p, q, r, (1 + q * r) / p};
}

/// Trace coordinates of (A1, A2, A3, (A1 A2 A3)^{-1}).
inline TracePoint trace_point_of(const QMatrix& a1, const QMatrix& a2, const QMatrix& a3) {
  QMatrix a4 = (a1 * a2 * a3).inverse();
  return {{a1.trace(), a2.trace(), a3.trace(), a4.trace()},
          {(a1 * a2).trace(), (a2 * a3).trace(), (a1 * a3).trace()}};
}

/// A rational point on the variety built from random SL(2,Q) matrices.
inline TracePoint random_trace_point(Rng& rng) {
  return trace_point_of(random_sl2q(rng), random_sl2q(rng), random_sl2q(rng));
}

inline Complex random_complex(Rng& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// Random traceless matrix with |entries| <= scale.
inline Matrix2 random_traceless(Rng& rng, double scale) {
  Complex a = random_complex(rng, scale);
  return {a, random_complex(rng, scale), random_complex(rng, scale), -a};
}

/// Random well-conditioned invertible matrix.
inline Matrix2 random_invertible(Rng& rng) {
  for (;;) {
    Matrix2 m{Complex(1) + random_complex(rng, 0.5), random_complex(rng, 0.5),
              random_complex(rng, 0.5), Complex(1) + random_complex(rng, 0.5)};
    if (std::abs(m.det()) > 0.3) return m;
  }
}

/// True if no exponent of the tuple lies within `margin` of a nonzero integer.
inline bool non_resonant(const ResidueTuple& x, double margin = 0.05) {
  for (const auto& th : theta_of(x)) {
    double re = th.real();
    double nearest = std::round(re);
    if (nearest != 0 && std::abs(re - nearest) < margin && std::abs(th.imag()) < margin) return false;
  }
  return true;
}

/// Random residue tuple (X1, X2, X3, -(X1+X2+X3)) with small, non-resonant entries.
inline ResidueTuple random_residues(Rng& rng, double scale = 0.3) {
  for (;;) {
    auto x = ResidueTuple::from_finite(random_traceless(rng, scale), random_traceless(rng, scale),
                                       random_traceless(rng, scale));
    if (non_resonant(x)) return x;
  }
}

}  // namespace fricke::testing
