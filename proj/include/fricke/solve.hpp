#pragma once

// Rational solutions of zero-dimensional systems: lexicographic Groebner
// basis, rational roots of the univariate eliminant, back-substitution.
// Irrational parts are reported as square-free residual factors.

#include "fricke/groebner.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace fricke {

/// Dense univariate polynomial over Q, coefficient i multiplies x^i.
class Univariate {
public:
  Univariate() = default;
  explicit Univariate(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Univariate from_polynomial(const Polynomial& p, std::size_t var) {
    std::vector<Rational> c;
    for (const auto& [m, coeff] : p.terms()) {
      if (m.degree() != m[var]) throw std::invalid_argument("polynomial is not univariate");
      if (c.size() <= m[var]) c.resize(m[var] + 1);
      c[m[var]] = coeff;
    }
    return Univariate(std::move(c));
  }

  Polynomial to_polynomial(const RingPtr& ring, std::size_t var) const {
    Polynomial p(ring);
    for (std::size_t i = 0; i < c_.size(); ++i) p.add_term(Monomial::variable(var, unsigned(i)), c_[i]);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Univariate derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(unsigned(i)));
    return Univariate(std::move(d));
  }

  Univariate monic() const {
    if (c_.empty()) return *this;
    auto out = c_;
    for (auto& x : out) x /= c_.back();
    return Univariate(std::move(out));
  }

  /// Quotient and remainder.
  std::pair<Univariate, Univariate> divmod(const Univariate& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    std::vector<Rational> r = c_;
    std::vector<Rational> q(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational factor = r[k + d.c_.size() - 1] / d.leading();
      q[k] = factor;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= factor * d.c_[j];
    }
    return {Univariate(std::move(q)), Univariate(std::move(r))};
  }

  friend Univariate gcd(Univariate a, Univariate b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Univariate square_free() const {
    if (degree() <= 0) return monic();
    return divmod(gcd(*this, derivative())).first.monic();
  }

  friend bool operator==(const Univariate&, const Univariate&) = default;

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n, unsigned long trial_limit = 10000000ul) {
  if (n < 0) n = -n;
  if (n == 0) throw std::invalid_argument("divisors of zero");
  std::vector<std::pair<Integer, unsigned>> factors;
  for (unsigned long p = 2; Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    if (p > trial_limit) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
        throw ResourceCapExceeded("cannot factor coefficient " + n.get_str() +
                                  " for rational-root search");
      break;
    }
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e) factors.push_back({Integer(p), e});
  }
  if (n > 1) factors.push_back({n, 1});
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factors) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

struct RationalRoots {
  std::vector<Rational> roots;  // distinct, increasing
  Univariate residual;          // square-free part with rational roots removed (monic)
};

/// Distinct rational roots via the rational root theorem on the primitive
/// integer form of the square-free part.
inline RationalRoots rational_roots(const Univariate& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  Univariate sf = p.square_free();
  RationalRoots out;
  if (sf.degree() <= 0) {
    out.residual = sf;
    return out;
  }
  Univariate rest = sf;
  if (rest.coefficients()[0] == 0) {
    out.roots.push_back(0);
    rest = rest.divmod(Univariate({0, 1})).first;
  }
  if (rest.degree() > 0) {
    Integer lcm_den = 1;
    for (const auto& c : rest.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                                                      c.get_den_mpz_t());
    std::vector<Integer> ints;
    for (const auto& c : rest.coefficients()) ints.push_back(Integer(c * lcm_den));
    Rational bound = 0;
    for (const auto& c : rest.coefficients()) bound = std::max(bound, Rational(abs(c / rest.leading())));
    bound += 1;
    auto ps = detail::positive_divisors(ints.front());
    auto qs = detail::positive_divisors(ints.back());
    for (const auto& q : qs)
      for (const auto& pnum : ps) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), pnum.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        Rational cand(pnum, q);
        if (cand > bound) continue;
        for (int s : {1, -1}) {
          Rational x = s * cand;
          if (rest(x) == 0) out.roots.push_back(x);
        }
      }
  }
  std::sort(out.roots.begin(), out.roots.end());
  Univariate residual = sf;
  for (const auto& r : out.roots) residual = residual.divmod(Univariate({-r, 1})).first;
  out.residual = residual.monic();
  return out;
}

/// A univariate factor with no rational roots, left unsolved, together with
/// the partial assignment under which it arose.
struct ResidualFactor {
  std::map<std::string, Rational> assignment;
  std::string variable;
  Polynomial factor;
};

struct RationalSolveResult {
  bool zero_dimensional = true;
  bool inconsistent = false;
  std::vector<std::vector<Rational>> points;  // values in `variables` order
  std::vector<ResidualFactor> residual;
  std::vector<Polynomial> basis;               // lex basis of the input ideal
  std::vector<std::string> variables;
};

namespace detail {

inline bool has_pure_power_lead(const std::vector<Polynomial>& basis, std::size_t var,
                                const MonomialOrder& order) {
  for (const auto& g : basis) {
    Monomial lm = leading_monomial(g, order);
    if (lm[var] != 0 && lm.degree() == lm[var]) return true;
  }
  return false;
}

inline void solve_recursive(const Ideal& ideal, const std::vector<std::size_t>& vars,
                            std::map<std::size_t, Rational> assigned,
                            const MonomialOrder& order, const GroebnerLimits& limits,
                            RationalSolveResult& out) {
  const RingPtr& ring = ideal.ring();
  auto gb = buchberger(ideal, order, limits);
  if (gb.is_unit()) return;
  // Lowest remaining variable: the last of `vars` not yet assigned.
  std::vector<std::size_t> remaining;
  for (auto v : vars)
    if (!assigned.count(v)) remaining.push_back(v);
  if (remaining.empty()) {
    std::vector<Rational> point;
    for (auto v : vars) point.push_back(assigned.at(v));
    out.points.push_back(std::move(point));
    return;
  }
  std::size_t last = remaining.back();
  const Polynomial* eliminant = nullptr;
  for (const auto& g : gb.basis()) {
    bool only_last = true;
    for (auto v : remaining)
      if (v != last && g.uses_variable(v)) only_last = false;
    if (only_last && g.uses_variable(last)) {
      eliminant = &g;
      break;
    }
  }
  if (!eliminant) throw std::logic_error("zero-dimensional lex basis without an eliminant");
  auto roots = rational_roots(Univariate::from_polynomial(*eliminant, last));
  if (roots.residual.degree() > 0) {
    ResidualFactor rf{{}, ring->name(last), roots.residual.to_polynomial(ring, last)};
    for (const auto& [v, x] : assigned) rf.assignment.emplace(ring->name(v), x);
    out.residual.push_back(std::move(rf));
  }
  for (const auto& r : roots.roots) {
    std::map<std::string, Rational> value{{ring->name(last), r}};
    Ideal next(ring);
    for (const auto& g : gb.basis()) next.add(g.specialize(value));
    auto next_assigned = assigned;
    next_assigned[last] = r;
    solve_recursive(next, vars, std::move(next_assigned), order, limits, out);
  }
}

}  // namespace detail

/// All rational points of a zero-dimensional ideal in the given variables
/// (every other variable of the ring must be absent from the generators).
inline RationalSolveResult solve_rational(const Ideal& ideal, const std::vector<std::string>& variables,
                                          const GroebnerLimits& limits = {}) {
  const Ring& ring = *ideal.ring();
  RationalSolveResult out;
  out.variables = variables;
  std::vector<std::size_t> vars;
  for (const auto& n : variables) {
    auto idx = ring.index_of(n);
    if (!idx) throw std::invalid_argument("unknown variable '" + n + "'");
    vars.push_back(*idx);
  }
  for (const auto& g : ideal.generators())
    for (std::size_t i = 0; i < ring.size(); ++i)
      if (g.uses_variable(i) && std::find(vars.begin(), vars.end(), i) == vars.end())
        throw std::invalid_argument("generator uses variable '" + ring.name(i) +
                                    "' outside the solve set");
  std::vector<std::string> priority = variables;
  for (const auto& n : ring.names())
    if (std::find(variables.begin(), variables.end(), n) == variables.end()) priority.push_back(n);
  auto order = MonomialOrder::lex(ring, priority);
  auto gb = buchberger(ideal, order, limits);
  out.basis = gb.basis();
  if (gb.is_unit()) {
    out.inconsistent = true;
    return out;
  }
  for (auto v : vars)
    if (!detail::has_pure_power_lead(gb.basis(), v, order)) {
      out.zero_dimensional = false;
      return out;
    }
  detail::solve_recursive(gb.ideal(), vars, {}, order, limits, out);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

}  // namespace fricke
