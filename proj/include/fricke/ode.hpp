#pragma once

// Adaptive Dormand-Prince 5(4) integration for states that form a vector
// space over the reals (operator+, scalar operator*, and a max-norm).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace fricke {

class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct IntegrationOptions {
  double tol = 1e-10;
  std::size_t max_steps = 1000000;
  double initial_step = 1e-3;
  double min_step = 1e-14;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  double error_estimate = 0;  // sum of accepted local error estimates
};

/// Integrates y' = rhs(s, y) from s0 to s1 and returns y(s1). `norm` must
/// return a max-type norm of a state. Steps land exactly on s1.
template <class State, class Rhs, class Norm>
State integrate(Rhs&& rhs, State y, double s0, double s1, Norm&& norm,
                const IntegrationOptions& opt, IntegrationStats* stats = nullptr) {
  // Dormand-Prince tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double span = s1 - s0;
  if (span == 0) return y;
  const double dir = span > 0 ? 1.0 : -1.0;
  double h = dir * std::min(std::abs(span), opt.initial_step);
  double s = s0;
  IntegrationStats local;
  State k1 = rhs(s, y);
  std::size_t steps = 0;
  while (dir * (s1 - s) > 0) {
    if (++steps > opt.max_steps)
      throw IntegrationError("step budget of " + std::to_string(opt.max_steps) + " exhausted");
    if (dir * (s + h - s1) > 0) h = s1 - s;
    State k2 = rhs(s + c2 * h, y + (h * a21) * k1);
    State k3 = rhs(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    State k4 = rhs(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    State k5 = rhs(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    State k6 = rhs(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = rhs(s + h, y_new);
    State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double scale = opt.tol * (1.0 + std::max(norm(y), norm(y_new)));
    double ratio = norm(err) / scale;
    if (!std::isfinite(ratio))
      throw IntegrationError("non-finite state during integration");
    if (ratio <= 1.0) {
      s += h;
      y = y_new;
      k1 = k7;
      ++local.accepted;
      local.error_estimate += norm(err);
    } else {
      ++local.rejected;
    }
    double factor = ratio == 0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < opt.min_step && dir * (s1 - s) > opt.min_step)
      throw IntegrationError("step size collapsed near s = " + std::to_string(s));
  }
  if (stats) {
    stats->accepted += local.accepted;
    stats->rejected += local.rejected;
    stats->error_estimate += local.error_estimate;
  }
  return y;
}

}  // namespace fricke
