#pragma once

// Sparse multivariate polynomials with exact rational coefficients over a
// declared, ordered variable universe.

#include "fricke/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fricke {

inline constexpr std::size_t kMaxVariables = 16;

/// Ordered list of variable names. Polynomials only combine when their
/// universes are identical.
class Ring {
public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > kMaxVariables)
      throw std::invalid_argument("variable universe larger than " +
                                  std::to_string(kMaxVariables));
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      bool ok = !n.empty() && n[0] >= 'a' && n[0] <= 'z';
      for (char c : n)
        ok = ok && ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'));
      if (!ok) throw std::invalid_argument("invalid variable name '" + n + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == n)
          throw std::invalid_argument("duplicate variable name '" + n + "'");
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_;
  }

private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// Exponent vector indexed by the ring's variable positions. Unused slots
/// stay zero, so a variable absent from the monomial simply has exponent 0.
class Monomial {
public:
  using Exponent = std::uint16_t;

  Monomial() { exps_.fill(0); }

  static Monomial variable(std::size_t index, unsigned power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  Exponent operator[](std::size_t i) const { return exps_[i]; }

  void set(std::size_t i, unsigned e) {
    if (i >= kMaxVariables) throw std::out_of_range("monomial index");
    if (e > 0xFFFFu) throw std::overflow_error("monomial exponent overflow");
    exps_[i] = static_cast<Exponent>(e);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  bool is_one() const { return degree() == 0; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      r.set(i, unsigned(a.exps_[i]) + b.exps_[i]);
    return r;
  }

  /// Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      r.exps_[i] = static_cast<Exponent>(exps_[i] - divisor.exps_[i]);
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i)
      r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exps_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

private:
  std::array<Exponent, kMaxVariables> exps_;
};

class Polynomial;
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

class MissingAssignment : public std::invalid_argument {
public:
  explicit MissingAssignment(const std::string& var)
      : std::invalid_argument("no value assigned to variable '" + var + "'"),
        variable_(var) {}
  const std::string& variable() const noexcept { return variable_; }

private:
  std::string variable_;
};

/// Canonical sparse polynomial: a map from monomial to nonzero coefficient.
class Polynomial {
public:
  using Terms = std::map<Monomial, Rational>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("polynomial without a ring");
  }

  Polynomial(RingPtr ring, const Rational& c) : Polynomial(std::move(ring)) {
    if (c != 0) terms_.emplace(Monomial{}, c);
  }

  Polynomial(RingPtr ring, const Monomial& m, const Rational& c)
      : Polynomial(std::move(ring)) {
    if (c != 0) terms_.emplace(m, c);
  }

  static Polynomial variable(const RingPtr& ring, std::string_view name) {
    auto idx = ring->index_of(name);
    if (!idx)
      throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
    return Polynomial(ring, Monomial::variable(*idx), Rational(1));
  }

  static Polynomial parse(std::string_view text, const RingPtr& ring) {
    return parse_polynomial(text, ring);
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const& noexcept { return terms_; }
  Terms terms() && { return std::move(terms_); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.is_one());
  }

  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  bool uses_variable(std::size_t index) const {
    for (const auto& [m, c] : terms_)
      if (m[index] != 0) return true;
    return false;
  }

  /// Adds c*m in place, dropping the term if it cancels.
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& q) {
    check_ring(q);
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& q) {
    check_ring(q);
    for (const auto& [m, c] : q.terms_) add_term(m, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(Polynomial p) { return p *= Rational(-1); }
  friend Polynomial operator*(Polynomial p, const Rational& s) { return p *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial p) { return p *= s; }

  friend Polynomial operator+(Polynomial p, const Rational& s) {
    p.add_term(Monomial{}, s);
    return p;
  }
  friend Polynomial operator-(Polynomial p, const Rational& s) {
    p.add_term(Monomial{}, -s);
    return p;
  }
  friend Polynomial operator+(const Rational& s, Polynomial p) { return std::move(p) + s; }
  friend Polynomial operator-(const Rational& s, const Polynomial& p) { return -p + s; }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    p.check_ring(q);
    Polynomial r(p.ring_);
    for (const auto& [mp, cp] : p.terms_)
      for (const auto& [mq, cq] : q.terms_) r.add_term(mp * mq, cp * cq);
    return r;
  }

  Polynomial& operator*=(const Polynomial& q) { return *this = *this * q; }

  Polynomial pow(unsigned e) const {
    Polynomial result(ring_, Rational(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Exact value at a point given by name.
  Rational evaluate(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> values(ring_->size());
    std::vector<bool> needed(ring_->size(), false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < ring_->size(); ++i)
        if (m[i]) needed[i] = true;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (!needed[i]) continue;
      auto it = point.find(ring_->name(i));
      if (it == point.end()) throw MissingAssignment(ring_->name(i));
      values[i] = it->second;
    }
    return evaluate_dense<Rational>(values, [](const Rational& c) { return c; });
  }

  /// Evaluation with values indexed by ring position, in any scalar type
  /// constructible from a coefficient through `convert`.
  template <class T, class Convert>
  T evaluate_dense(std::span<const T> values, Convert convert) const {
    if (values.size() < ring_->size())
      throw std::invalid_argument("evaluate: too few values");
    T sum = convert(Rational(0));
    for (const auto& [m, c] : terms_) {
      T term = convert(c);
      for (std::size_t i = 0; i < ring_->size(); ++i)
        for (unsigned k = 0; k < m[i]; ++k) term = term * values[i];
      sum = sum + term;
    }
    return sum;
  }

  template <class T, class Convert>
  T evaluate_dense(const std::vector<T>& values, Convert convert) const {
    return evaluate_dense<T>(std::span<const T>(values), convert);
  }

  std::complex<double> evaluate_complex(
      std::span<const std::complex<double>> values) const {
    return evaluate_dense<std::complex<double>>(
        values, [](const Rational& c) { return std::complex<double>(c.get_d()); });
  }

  /// Simultaneous substitution. Variables named in `images` are replaced by
  /// their image; every other variable is carried over by name into `target`.
  Polynomial substitute(const std::map<std::string, Polynomial>& images,
                        const RingPtr& target) const {
    std::vector<std::optional<Polynomial>> image_of(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      auto it = images.find(ring_->name(i));
      if (it != images.end()) {
        if (!same_ring(it->second.ring(), target))
          throw std::invalid_argument("substitution image outside target ring");
        image_of[i] = it->second;
      } else if (uses_variable(i)) {
        auto idx = target->index_of(ring_->name(i));
        if (!idx)
          throw std::invalid_argument("variable '" + ring_->name(i) +
                                      "' has no image in target ring");
        image_of[i] = Polynomial(target, Monomial::variable(*idx), Rational(1));
      }
    }
    std::vector<std::vector<Polynomial>> powers(ring_->size());
    auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
      auto& cache = powers[i];
      if (cache.empty()) cache.emplace_back(target, Rational(1));
      while (cache.size() <= e) cache.push_back(cache.back() * *image_of[i]);
      return cache[e];
    };
    Polynomial result(target);
    for (const auto& [m, c] : terms_) {
      Polynomial term(target, c);
      for (std::size_t i = 0; i < ring_->size(); ++i)
        if (m[i]) term = term * power(i, m[i]);
      result += term;
    }
    return result;
  }

  Polynomial substitute(const std::map<std::string, Polynomial>& images) const {
    return substitute(images, ring_);
  }

  /// Substitutes rational values for some variables, staying in this ring.
  Polynomial specialize(const std::map<std::string, Rational>& values) const {
    std::map<std::string, Polynomial> images;
    for (const auto& [name, value] : values) images.emplace(name, Polynomial(ring_, value));
    return substitute(images);
  }

  /// Re-expresses the polynomial in another universe containing every
  /// variable it actually uses.
  Polynomial in_ring(const RingPtr& target) const { return substitute({}, target); }

  std::string to_string() const;

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return same_ring(p.ring_, q.ring_) && p.terms_ == q.terms_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    return os << p.to_string();
  }

private:
  void check_ring(const Polynomial& q) const {
    if (!same_ring(ring_, q.ring_))
      throw std::invalid_argument("polynomials over different variable universes");
  }

  RingPtr ring_;
  Terms terms_;
};

namespace detail {

// Printing order: higher total degree first, then lexicographically larger.
inline bool print_before(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a > b;
}

inline std::string monomial_string(const Monomial& m, const Ring& ring) {
  std::string out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

}  // namespace detail

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return detail::print_before(x.first, y.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [m, c] : sorted) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.is_one()) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + '*';
      out += detail::monomial_string(m, *ring_);
    }
  }
  return out;
}

namespace detail {

// Recursive-descent parser for
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := ('+'|'-') unary | power
//   power  := primary ('^' integer)?
//   primary:= integer ('/' integer)? | name | '(' expr ')'
class PolyParser {
public:
  PolyParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    skip();
    if (pos_ == text_.size()) throw ParseError("empty polynomial expression", pos_);
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size())
      throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        p += term();
      } else if (peek('-')) {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (peek('*')) {
      ++pos_;
      p *= unary();
    }
    return p;
  }

  Polynomial unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      Integer e = digits();
      if (e > 0xFFFF) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  void forbid_juxtaposition() {
    if (pos_ < text_.size() && (is_lower(text_[pos_]) || is_digit(text_[pos_]) || text_[pos_] == '('))
      throw ParseError("implicit multiplication is not allowed", pos_);
    skip();
    if (pos_ < text_.size() && (is_lower(text_[pos_]) || is_digit(text_[pos_]) || text_[pos_] == '('))
      throw ParseError("implicit multiplication is not allowed", pos_);
  }

  Polynomial primary() {
    skip();
    if (pos_ == text_.size()) throw ParseError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (is_digit(c)) {
      Integer num = digits();
      Rational value(num);
      if (pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t slash = pos_++;
        Integer den = digits();
        if (den == 0) throw ParseError("zero denominator", slash + 1);
        value = Rational(num, den);
        value.canonicalize();
      }
      forbid_juxtaposition();
      return Polynomial(ring_, value);
    }
    if (is_lower(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (is_lower(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      forbid_juxtaposition();
      return Polynomial(ring_, Monomial::variable(*idx), Rational(1));
    }
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      forbid_juxtaposition();
      return p;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::PolyParser(text, ring).parse();
}

}  // namespace fricke
