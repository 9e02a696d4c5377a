#pragma once

// The SL(2,C) character variety of the four-punctured sphere in trace
// coordinates a = (tr A1, ..., tr A4), v = (tr A1A2, tr A2A3, tr A1A3),
// cut out by the Fricke cubic f(a, v) = 0.

#include "fricke/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fricke {

/// Universe a1..a4, v1..v3 shared by every trace-coordinate polynomial.
inline const RingPtr& trace_ring() {
  static const RingPtr ring = make_ring({"a1", "a2", "a3", "a4", "v1", "v2", "v3"});
  return ring;
}

/// The 16-term Fricke cubic
///   v1^2 + v2^2 + v3^2 + v1 v2 v3 - (a1a2 + a3a4) v1 - (a1a4 + a2a3) v2
///   - (a1a3 + a2a4) v3 + a1^2 + a2^2 + a3^2 + a4^2 + a1a2a3a4 - 4.
inline const Polynomial& fricke_poly() {
  static const Polynomial f = parse_polynomial(
      "v1^2 + v2^2 + v3^2 + v1*v2*v3"
      " - (a1*a2 + a3*a4)*v1 - (a1*a4 + a2*a3)*v2 - (a1*a3 + a2*a4)*v3"
      " + a1^2 + a2^2 + a3^2 + a4^2 + a1*a2*a3*a4 - 4",
      trace_ring());
  return f;
}

using BoundaryTraces = std::array<Rational, 4>;
using PairTraces = std::array<Rational, 3>;

struct TracePoint {
  BoundaryTraces a;
  PairTraces v;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

inline std::vector<Rational> dense_values(const TracePoint& pt) {
  return {pt.a[0], pt.a[1], pt.a[2], pt.a[3], pt.v[0], pt.v[1], pt.v[2]};
}

inline Rational fricke_value(const TracePoint& pt) {
  return fricke_poly().evaluate_dense<Rational>(dense_values(pt),
                                                [](const Rational& c) { return c; });
}

inline bool on_variety(const TracePoint& pt) { return fricke_value(pt) == 0; }

inline std::complex<double> fricke_value(const std::array<std::complex<double>, 4>& a,
                                         const std::array<std::complex<double>, 3>& v) {
  std::array<std::complex<double>, 7> vals{a[0], a[1], a[2], a[3], v[0], v[1], v[2]};
  return fricke_poly().evaluate_complex(vals);
}

class OffVarietyError : public std::domain_error {
public:
  OffVarietyError() : std::domain_error("point does not satisfy f(a, v) = 0") {}
};

/// The number center + sign * sqrt(radicand), radicand >= 0.
struct QuadraticSurd {
  Rational center;
  int root_sign;
  Rational radicand;
};

/// Sign of x + y*sqrt(m) for m >= 0, decided with one squaring.
inline int sign_of_surd(const Rational& x, const Rational& y, const Rational& m) {
  int sx = sgn(x), sy = sgn(y);
  if (sy == 0 || sgn(m) == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  int d = sgn(x * x - y * y * m);
  return d > 0 ? sx : (d < 0 ? sy : 0);
}

/// Exact sign of lhs - rhs using rational arithmetic only.
inline int compare(const QuadraticSurd& lhs, const QuadraticSurd& rhs) {
  Rational d = lhs.center - rhs.center;
  // u = e1 sqrt(q1) - e2 sqrt(q2)
  int s1 = sgn(lhs.radicand) == 0 ? 0 : lhs.root_sign;
  int s2 = sgn(rhs.radicand) == 0 ? 0 : rhs.root_sign;
  int su;
  if (s1 != s2) {
    su = s1 > s2 ? 1 : -1;
  } else if (s1 == 0) {
    su = 0;
  } else {
    su = s1 * sgn(lhs.radicand - rhs.radicand);
  }
  int sd = sgn(d);
  if (su == 0) return sd;
  if (sd == 0 || sd == su) return su;
  // |d| against |u|, where u^2 = q1 + q2 - 2 e1 e2 sqrt(q1 q2).
  int cmp = sign_of_surd(d * d - lhs.radicand - rhs.radicand,
                         Rational(2 * s1 * s2), lhs.radicand * rhs.radicand);
  return cmp > 0 ? sd : (cmp < 0 ? su : 0);
}

/// Closed interval [p - sqrt(q), p + sqrt(q)] with rational p and q >= 0.
struct AlgebraicInterval {
  Rational center;
  Rational radicand;

  QuadraticSurd lower() const { return {center, -1, radicand}; }
  QuadraticSurd upper() const { return {center, +1, radicand}; }

  double lower_approx() const { return center.get_d() - std::sqrt(radicand.get_d()); }
  double upper_approx() const { return center.get_d() + std::sqrt(radicand.get_d()); }

  friend bool operator==(const AlgebraicInterval&, const AlgebraicInterval&) = default;
};

inline bool in_trace_box(const Rational& x) { return x >= -2 && x <= 2; }

/// Interval with endpoints (st -+ sqrt((s^2-4)(t^2-4)))/2 for s, t in [-2, 2].
inline AlgebraicInterval su2_interval(const Rational& s, const Rational& t) {
  if (!in_trace_box(s) || !in_trace_box(t))
    throw std::domain_error("su2_interval: traces must lie in [-2, 2]");
  return {s * t / 2, (s * s - 4) * (t * t - 4) / 4};
}

/// Closed intervals, so touching endpoints count as intersecting.
inline bool intervals_intersect(const AlgebraicInterval& i1, const AlgebraicInterval& i2) {
  return compare(i1.lower(), i2.upper()) <= 0 && compare(i2.lower(), i1.upper()) <= 0;
}

enum class ClassKind { su2, sl2r, non_real };

inline std::string to_string(ClassKind k) {
  switch (k) {
    case ClassKind::su2: return "SU2";
    case ClassKind::sl2r: return "SL2R";
    case ClassKind::non_real: return "NonReal";
  }
  return "?";
}

struct ClassLabel {
  ClassKind kind;
  bool real;
  bool box;
  bool overlap;
};

inline ClassLabel label_from_flags(bool real, bool box, bool overlap) {
  if (!real) return {ClassKind::non_real, false, box, overlap};
  if (box && overlap) return {ClassKind::su2, true, true, true};
  return {ClassKind::sl2r, true, box, overlap};
}

/// Exact classification of a rational point on the variety.
inline ClassLabel classify(const TracePoint& pt) {
  if (!on_variety(pt)) throw OffVarietyError();
  bool box = true;
  for (const auto& x : pt.a) box = box && in_trace_box(x);
  bool overlap = box && intervals_intersect(su2_interval(pt.a[0], pt.a[1]),
                                            su2_interval(pt.a[2], pt.a[3]));
  return label_from_flags(true, box, overlap);
}

/// Floating-point classification for approximate complex trace points.
/// Imaginary parts below `tol` count as zero.
inline ClassLabel classify_approximate(const std::array<std::complex<double>, 4>& a,
                                       const std::array<std::complex<double>, 3>& v,
                                       double tol = 1e-8) {
  bool real = true;
  for (const auto& x : a) real = real && std::abs(x.imag()) <= tol;
  for (const auto& x : v) real = real && std::abs(x.imag()) <= tol;
  bool box = true;
  for (const auto& x : a) box = box && x.real() >= -2 - tol && x.real() <= 2 + tol;
  bool overlap = false;
  if (real && box) {
    auto ends = [](double s, double t) {
      double r = std::sqrt(std::max(0.0, (s * s - 4) * (t * t - 4)));
      return std::pair{(s * t - r) / 2, (s * t + r) / 2};
    };
    auto [lo1, hi1] = ends(a[0].real(), a[1].real());
    auto [lo2, hi2] = ends(a[2].real(), a[3].real());
    overlap = lo1 <= hi2 + tol && lo2 <= hi1 + tol;
  }
  return label_from_flags(real, box, overlap);
}

}  // namespace fricke
