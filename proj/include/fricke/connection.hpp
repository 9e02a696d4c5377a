#pragma once

// Logarithmic connections d + sum X_i/(z - c_i) on the sphere punctured at
// (0, 1, t, inf), their numerical monodromy, and the Painleve VI layer:
// parameters r_i(theta), the equation's residual, and deformation ideals
// keeping every r_i fixed.

#include "fricke/charvariety.hpp"
#include "fricke/groebner.hpp"
#include "fricke/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fricke {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix [[a, b], [c, d]].
struct Matrix2 {
  Complex a{0}, b{0}, c{0}, d{0};

  static Matrix2 identity() { return {1, 0, 0, 1}; }
  static Matrix2 diag(Complex x, Complex y) { return {x, 0, 0, y}; }

  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }

  Matrix2 inverse() const {
    Complex dt = det();
    if (std::abs(dt) == 0) throw std::domain_error("singular 2x2 matrix");
    return {d / dt, -b / dt, -c / dt, a / dt};
  }

  double max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  }

  friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Matrix2 operator-(const Matrix2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend Matrix2 operator*(Complex s, const Matrix2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
  friend Matrix2 operator*(double s, const Matrix2& x) { return Complex(s) * x; }
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
};

inline double distance(const Matrix2& x, const Matrix2& y) { return (x - y).max_abs(); }

/// exp(M) for a 2x2 matrix via the Cayley-Hamilton closed form.
inline Matrix2 expm(const Matrix2& m) {
  Complex mu = m.trace() / 2.0;
  Matrix2 n = m - Matrix2::diag(mu, mu);  // traceless part, n^2 = -det(n) I
  Complex delta = std::sqrt(-n.det());
  Complex coshd = std::cosh(delta);
  Complex sinhc = std::abs(delta) < 1e-8 ? Complex(1) + delta * delta / 6.0 : std::sinh(delta) / delta;
  return std::exp(mu) * (coshd * Matrix2::identity() + sinhc * n);
}

using ThetaTuple = std::array<Complex, 4>;

struct ResidueTuple {
  std::array<Matrix2, 4> X;

  /// Throws unless every X_i is traceless and the four sum to zero.
  void validate(double tol = 1e-12) const {
    Matrix2 sum;
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(X[i].trace()) > tol)
        throw std::invalid_argument("residue X" + std::to_string(i + 1) + " is not traceless");
      sum = sum + X[i];
    }
    if (sum.max_abs() > tol) throw std::invalid_argument("residues do not sum to zero");
  }

  /// Builds (X1, X2, X3, -(X1 + X2 + X3)).
  static ResidueTuple from_finite(const Matrix2& x1, const Matrix2& x2, const Matrix2& x3) {
    return {{x1, x2, x3, -(x1 + x2 + x3)}};
  }
};

struct PunctureConfig {
  Complex t;

  std::array<Complex, 3> finite() const { return {Complex(0), Complex(1), t}; }

  void validate() const {
    if (std::abs(t) < 1e-12 || std::abs(t - 1.0) < 1e-12)
      throw std::invalid_argument("puncture t must differ from 0 and 1");
  }
};

struct MonodromyTuple {
  std::array<Matrix2, 4> A;
};

/// a_i = 2 cos(pi theta_i).
inline std::array<Complex, 4> exp_map(const ThetaTuple& theta) {
  std::array<Complex, 4> a;
  for (std::size_t i = 0; i < 4; ++i) a[i] = 2.0 * std::cos(std::numbers::pi * theta[i]);
  return a;
}

/// Exponent of a traceless residue: eigenvalues are +-theta/2, with the
/// branch Re(theta) >= 0 (ties: Im(theta) >= 0).
inline Complex theta_of(const Matrix2& x) {
  Complex theta = 2.0 * std::sqrt(-x.det());
  if (theta.real() < 0 || (theta.real() == 0 && theta.imag() < 0)) theta = -theta;
  return theta;
}

inline ThetaTuple theta_of(const ResidueTuple& x) {
  return {theta_of(x.X[0]), theta_of(x.X[1]), theta_of(x.X[2]), theta_of(x.X[3])};
}

struct HolonomyResult {
  MonodromyTuple monodromy;
  double det_residual = 0;      // max_i |det A_i - 1|
  double product_residual = 0;  // |A1 A2 A3 A4 - I|
  double error_estimate = 0;    // accumulated local error estimates
  std::size_t steps = 0;
  bool reordered = false;       // loop around 1 conjugated by the loop around t
  Complex basepoint;
  double radius = 0;
};

namespace detail {

inline double segment_distance(Complex p, Complex q, Complex x) {
  Complex d = q - p;
  double len2 = std::norm(d);
  double s = len2 == 0 ? 0 : std::clamp(((x - p) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p + s * d - x);
}

// Transport of the flat-section equation Y' = -Omega(z) z'(s) Y along a
// parametrized path z(s), s in [0, 1], starting from the identity.
template <class Path, class Velocity>
Matrix2 transport(const ResidueTuple& x, const std::array<Complex, 3>& c, Path z, Velocity dz,
                  const IntegrationOptions& opt, IntegrationStats& stats) {
  auto rhs = [&](double s, const Matrix2& y) {
    Complex zs = z(s);
    Matrix2 omega = (1.0 / (zs - c[0])) * x.X[0] + (1.0 / (zs - c[1])) * x.X[1] +
                    (1.0 / (zs - c[2])) * x.X[2];
    return -(dz(s) * (omega * y));
  };
  auto norm = [](const Matrix2& m) { return m.max_abs(); };
  return integrate(rhs, Matrix2::identity(), 0.0, 1.0, norm, opt, &stats);
}

}  // namespace detail

/// Monodromy of d + sum_{i<=3} X_i/(z - c_i) with (c_1, c_2, c_3) = (0, 1, t).
///
/// Loops start at p = -2i(1 + |t|): straight out to a circle of radius
/// min pairwise puncture distance / 4, once around counterclockwise, and
/// straight back. A_i is the inverse of the transport, which makes the map
/// from loops to matrices a homomorphism and gives A_1 = exp(2 pi i X_1) for
/// commuting residues. A_4 = (A_1 A_2 A_3)^{-1}. When the punctures seen
/// from p sweep counterclockwise in the cyclic order (0, t, 1) rather than
/// (0, 1, t), the loop around 1 is replaced by its conjugate through the
/// loop around t so that A_1 A_2 A_3 is the loop around all three.
inline HolonomyResult holonomy(const ResidueTuple& x, const PunctureConfig& config,
                               double tol = 1e-10, std::size_t max_steps = 1000000) {
  x.validate(std::max(1e-12, tol));
  config.validate();
  const auto c = config.finite();
  const Complex p(0, -2.0 * (1.0 + std::abs(config.t)));
  double min_gap = std::min({std::abs(c[0] - c[1]), std::abs(c[0] - c[2]), std::abs(c[1] - c[2])});
  const double r = min_gap / 4;

  IntegrationOptions opt;
  opt.tol = tol;
  opt.max_steps = max_steps;
  opt.initial_step = 1e-2;
  IntegrationStats stats;

  std::array<Matrix2, 3> loops;
  std::array<double, 3> angle;
  for (std::size_t i = 0; i < 3; ++i) {
    Complex dir = (p - c[i]) / std::abs(p - c[i]);
    Complex q = c[i] + r * dir;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i && detail::segment_distance(p, q, c[j]) < r / 2)
        throw IntegrationError("puncture " + std::to_string(j + 1) + " too close to the path around puncture " +
                               std::to_string(i + 1));
    angle[i] = std::arg(c[i] - p);
    Matrix2 out = detail::transport(
        x, c, [&](double s) { return p + s * (q - p); }, [&](double) { return q - p; }, opt, stats);
    double phi0 = std::arg(dir);
    const double two_pi = 2 * std::numbers::pi;
    Matrix2 around = detail::transport(
        x, c, [&](double s) { return c[i] + r * std::polar(1.0, phi0 + two_pi * s); },
        [&](double s) { return Complex(0, two_pi * r) * std::polar(1.0, phi0 + two_pi * s); }, opt,
        stats);
    // Full loop transport: out, around, back along the same segment.
    Matrix2 loop_transport = out.inverse() * around * out;
    loops[i] = loop_transport.inverse();
  }

  HolonomyResult res;
  res.basepoint = p;
  res.radius = r;
  // Counterclockwise sweep order as seen from p is increasing angle.
  std::array<std::size_t, 3> sweep{0, 1, 2};
  std::sort(sweep.begin(), sweep.end(), [&](auto i, auto j) { return angle[i] < angle[j]; });
  auto pos = [&](std::size_t k) { return std::find(sweep.begin(), sweep.end(), k) - sweep.begin(); };
  bool standard = (pos(1) - pos(0) + 3) % 3 == 1;
  auto& A = res.monodromy.A;
  A[0] = loops[0];
  A[1] = standard ? loops[1] : loops[2] * loops[1] * loops[2].inverse();
  A[2] = loops[2];
  A[3] = (A[0] * A[1] * A[2]).inverse();
  res.reordered = !standard;
  for (const auto& m : A) res.det_residual = std::max(res.det_residual, std::abs(m.det() - 1.0));
  res.product_residual = distance(A[0] * A[1] * A[2] * A[3], Matrix2::identity());
  res.error_estimate = stats.error_estimate;
  res.steps = stats.accepted + stats.rejected;
  return res;
}

struct TraceCoordinates {
  std::array<Complex, 4> a;
  std::array<Complex, 3> v;
  double residual;  // |f(a, v)|
};

/// a_i = tr A_i, v = (tr A1A2, tr A2A3, tr A1A3).
inline TraceCoordinates traces(const MonodromyTuple& m) {
  const auto& A = m.A;
  TraceCoordinates out;
  for (std::size_t i = 0; i < 4; ++i) out.a[i] = A[i].trace();
  out.v = {(A[0] * A[1]).trace(), (A[1] * A[2]).trace(), (A[0] * A[2]).trace()};
  out.residual = std::abs(fricke_value(out.a, out.v));
  return out;
}

namespace detail {

inline Rational halve(const Rational& x) { return x / 2; }
inline Complex halve(const Complex& x) { return x / 2.0; }
inline Polynomial halve(const Polynomial& x) { return x * Rational(1, 2); }

inline Rational one_minus(const Rational& x) { return 1 - x; }
inline Complex one_minus(const Complex& x) { return 1.0 - x; }
inline Polynomial one_minus(const Polynomial& x) { return Rational(1) - x; }

}  // namespace detail

/// Painleve VI parameters for exponents theta:
///   r1 = (theta4 - 1)^2/2, r2 = -theta1^2/2, r3 = theta3^2/2,
///   r4 = (1 - theta2^2)/2.
/// Works for exact rationals, doubles in C, and polynomials in theta.
template <class T>
std::array<T, 4> pvi_params(const std::array<T, 4>& theta) {
  T shifted = detail::one_minus(theta[3]);
  return {detail::halve(shifted * shifted), -detail::halve(theta[0] * theta[0]),
          detail::halve(theta[2] * theta[2]), detail::halve(detail::one_minus(theta[1] * theta[1]))};
}

class PoleProximityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Right-hand side of Painleve VI: y'' in terms of (t, y, y').
inline Complex pvi_second_derivative(Complex t, Complex y, Complex yp, const ThetaTuple& theta) {
  auto r = pvi_params(theta);
  Complex lhs_rest = -0.5 * (1.0 / y + 1.0 / (y - 1.0) + 1.0 / (y - t)) * yp * yp +
                     (1.0 / t + 1.0 / (t - 1.0) + 1.0 / (y - t)) * yp;
  Complex rhs = y * (y - 1.0) * (y - t) / (t * t * (t - 1.0) * (t - 1.0)) *
                (r[0] + r[1] * t / (y * y) + r[2] * (t - 1.0) / ((y - 1.0) * (y - 1.0)) +
                 r[3] * t * (t - 1.0) / ((y - t) * (y - t)));
  return rhs - lhs_rest;
}

/// Left-hand side minus right-hand side of Painleve VI at the jet (y, y', y'').
inline Complex pvi_residual(Complex t, Complex y, Complex yp, Complex ypp, const ThetaTuple& theta) {
  constexpr double eps = 1e-12;
  if (std::abs(t) < eps || std::abs(t - 1.0) < eps)
    throw PoleProximityError("pvi_residual: t must differ from 0 and 1");
  if (std::abs(y) < eps || std::abs(y - 1.0) < eps || std::abs(y - t) < eps)
    throw PoleProximityError("pvi_residual: y too close to a pole in {0, 1, t}");
  return ypp - pvi_second_derivative(t, y, yp, theta);
}

/// Universe th1..th4 for exponent polynomials.
inline const RingPtr& theta_ring() {
  static const RingPtr ring = make_ring({"th1", "th2", "th3", "th4"});
  return ring;
}

/// Ideal <r_i(theta) - r_i(theta0)> of exponent deformations that keep
/// every Painleve VI parameter constant.
inline Ideal family_constraints(const std::array<Rational, 4>& theta0) {
  const auto& R = theta_ring();
  std::array<Polynomial, 4> th{Polynomial::variable(R, "th1"), Polynomial::variable(R, "th2"),
                               Polynomial::variable(R, "th3"), Polynomial::variable(R, "th4")};
  auto symbolic = pvi_params(th);
  auto values = pvi_params(theta0);
  Ideal ideal(R);
  for (std::size_t i = 0; i < 4; ++i) ideal.add(symbolic[i] - values[i]);
  return ideal;
}

}  // namespace fricke
