#pragma once

// Multivariate division and Buchberger's algorithm (normal selection
// strategy with the Gebauer-Moeller installation of Buchberger's criteria).

#include "fricke/polynomial.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fricke {

enum class OrderKind { lex, grevlex, block };

inline std::string to_string(OrderKind k) {
  switch (k) {
    case OrderKind::lex: return "lex";
    case OrderKind::grevlex: return "grevlex";
    case OrderKind::block: return "block";
  }
  return "?";
}

/// A term order over one ring. `priority` lists ring indices from the most
/// significant variable to the least. A block order compares the first
/// `block_size` variables by grevlex, breaking ties by grevlex on the rest.
class MonomialOrder {
public:
  static MonomialOrder lex(const Ring& ring, const std::vector<std::string>& priority = {}) {
    return MonomialOrder(OrderKind::lex, resolve(ring, priority), 0);
  }

  static MonomialOrder grevlex(const Ring& ring, const std::vector<std::string>& priority = {}) {
    return MonomialOrder(OrderKind::grevlex, resolve(ring, priority), 0);
  }

  /// Eliminates `dropped`: any monomial involving a dropped variable is larger
  /// than every monomial in the kept variables alone.
  static MonomialOrder elimination(const Ring& ring, const std::vector<std::string>& dropped) {
    std::vector<std::string> priority = dropped;
    for (const auto& n : ring.names())
      if (std::find(dropped.begin(), dropped.end(), n) == dropped.end()) priority.push_back(n);
    return MonomialOrder(OrderKind::block, resolve(ring, priority), dropped.size());
  }

  OrderKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& priority() const noexcept { return priority_; }
  std::size_t block_size() const noexcept { return block_size_; }

  std::vector<std::string> priority_names(const Ring& ring) const {
    std::vector<std::string> out;
    for (auto i : priority_) out.push_back(ring.name(i));
    return out;
  }

  /// Negative, zero or positive as a <, =, > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case OrderKind::lex:
        for (auto i : priority_)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case OrderKind::grevlex:
        return grevlex_range(a, b, 0, priority_.size());
      case OrderKind::block: {
        int c = grevlex_range(a, b, 0, block_size_);
        return c != 0 ? c : grevlex_range(a, b, block_size_, priority_.size());
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// True when every monomial using a variable of `dropped` outranks all
  /// monomials free of them.
  bool eliminates(const Ring& ring, const std::vector<std::string>& dropped) const {
    std::set<std::size_t> want;
    for (const auto& n : dropped) {
      auto idx = ring.index_of(n);
      if (!idx) throw std::invalid_argument("unknown variable '" + n + "'");
      want.insert(*idx);
    }
    if (want.empty()) return true;
    std::set<std::size_t> leading(priority_.begin(), priority_.begin() +
                                  static_cast<std::ptrdiff_t>(want.size()));
    if (leading != want) return false;
    if (kind_ == OrderKind::lex) return true;
    if (kind_ == OrderKind::block) return block_size_ == want.size();
    return want.size() == priority_.size();
  }

private:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> priority, std::size_t block)
      : kind_(kind), priority_(std::move(priority)), block_size_(block) {}

  static std::vector<std::size_t> resolve(const Ring& ring, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    if (names.empty()) {
      for (std::size_t i = 0; i < ring.size(); ++i) out.push_back(i);
      return out;
    }
    for (const auto& n : names) {
      auto idx = ring.index_of(n);
      if (!idx) throw std::invalid_argument("unknown variable '" + n + "' in order");
      if (std::find(out.begin(), out.end(), *idx) != out.end())
        throw std::invalid_argument("variable '" + n + "' repeated in order");
      out.push_back(*idx);
    }
    if (out.size() != ring.size())
      throw std::invalid_argument("monomial order must rank every variable");
    return out;
  }

  int grevlex_range(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) const {
    unsigned da = 0, db = 0;
    for (std::size_t k = from; k < to; ++k) {
      da += a[priority_[k]];
      db += b[priority_[k]];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t k = to; k-- > from;) {
      auto i = priority_[k];
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  OrderKind kind_;
  std::vector<std::size_t> priority_;
  std::size_t block_size_;
};

class ResourceCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GroebnerLimits {
  std::size_t max_pairs = 100000;
  unsigned max_degree = 30;
};

class Ideal {
public:
  explicit Ideal(RingPtr ring) : ring_(std::move(ring)) {}

  Ideal(RingPtr ring, const std::vector<Polynomial>& gens) : ring_(std::move(ring)) {
    for (const auto& g : gens) add(g);
  }

  void add(const Polynomial& g) {
    if (!same_ring(g.ring(), ring_))
      throw std::invalid_argument("generator outside the ideal's ring");
    if (!g.is_zero()) gens_.push_back(g);
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const& noexcept { return gens_; }
  std::vector<Polynomial> generators() && { return std::move(gens_); }

private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis: monic elements sorted by increasing leading
/// monomial.
class GroebnerBasis {
public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<Polynomial> basis,
                GroebnerStats stats = {})
      : ring_(std::move(ring)), order_(std::move(order)), basis_(std::move(basis)), stats_(stats) {}

  const RingPtr& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return order_; }
  const std::vector<Polynomial>& basis() const& noexcept { return basis_; }
  std::vector<Polynomial> basis() && { return std::move(basis_); }
  const GroebnerStats& stats() const noexcept { return stats_; }
  Ideal ideal() const { return Ideal(ring_, basis_); }

  bool is_unit() const { return basis_.size() == 1 && basis_[0].is_constant(); }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return a.basis_ == b.basis_;
  }

private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<Polynomial> basis_;
  GroebnerStats stats_;
};

namespace detail {

struct Term {
  Monomial m;
  Rational c;
};

// Terms sorted by increasing monomial, so the leading term is back().
using TermList = std::vector<Term>;

inline TermList to_terms(const Polynomial& p, const MonomialOrder& order) {
  TermList t;
  t.reserve(p.size());
  for (const auto& [m, c] : p.terms()) t.push_back({m, c});
  std::sort(t.begin(), t.end(), [&](const Term& x, const Term& y) { return order.less(x.m, y.m); });
  return t;
}

inline Polynomial from_terms(const TermList& t, const RingPtr& ring) {
  Polynomial p(ring);
  for (const auto& term : t) p.add_term(term.m, term.c);
  return p;
}

// p - coeff * mono * g, with `g` sorted like `p`.
inline TermList sub_scaled(const TermList& p, const Rational& coeff, const Monomial& mono,
                           const TermList& g, const MonomialOrder& order) {
  TermList out;
  out.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].m * mono;
    if (i == p.size()) {
      out.push_back({gm, -coeff * g[j].c});
      ++j;
      continue;
    }
    int c = order.compare(p[i].m, gm);
    if (c < 0) {
      out.push_back(p[i++]);
    } else if (c > 0) {
      out.push_back({gm, -coeff * g[j].c});
      ++j;
    } else {
      Rational v = p[i].c - coeff * g[j].c;
      if (v != 0) out.push_back({p[i].m, v});
      ++i;
      ++j;
    }
  }
  return out;
}

inline void make_monic(TermList& t) {
  if (t.empty()) return;
  Rational lc = t.back().c;
  if (lc == 1) return;
  for (auto& term : t) term.c /= lc;
}

// Full reduction (every term, not only the head) of p by the given divisors.
inline TermList reduce_full(TermList p, const std::vector<const TermList*>& divisors,
                            const MonomialOrder& order) {
  TermList remainder;  // collected in decreasing order, reversed at the end
  while (!p.empty()) {
    const Term& lead = p.back();
    const TermList* hit = nullptr;
    for (const auto* g : divisors)
      if (g->back().m.divides(lead.m)) {
        hit = g;
        break;
      }
    if (!hit) {
      remainder.push_back(lead);
      p.pop_back();
      continue;
    }
    Rational coeff = lead.c / hit->back().c;
    Monomial mono = lead.m.quotient(hit->back().m);
    p = sub_scaled(p, coeff, mono, *hit, order);
  }
  std::reverse(remainder.begin(), remainder.end());
  return remainder;
}

inline TermList s_polynomial(const TermList& f, const TermList& g, const MonomialOrder& order) {
  Monomial l = Monomial::lcm(f.back().m, g.back().m);
  Monomial uf = l.quotient(f.back().m);
  Monomial ug = l.quotient(g.back().m);
  TermList scaled_f;
  scaled_f.reserve(f.size());
  Rational inv = 1 / f.back().c;
  for (const auto& t : f) scaled_f.push_back({t.m * uf, t.c * inv});
  return sub_scaled(scaled_f, 1 / g.back().c, ug, g, order);
}

inline unsigned degree_of(const TermList& t) {
  unsigned d = 0;
  for (const auto& term : t) d = std::max(d, term.m.degree());
  return d;
}

}  // namespace detail

/// Remainder of p on division by `basis`: no term of the result is divisible
/// by any leading monomial of the basis.
inline Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& basis,
                         const MonomialOrder& order) {
  std::vector<detail::TermList> lists;
  lists.reserve(basis.size());
  for (const auto& g : basis) {
    if (!same_ring(g.ring(), p.ring()))
      throw std::invalid_argument("reduce: divisor outside the polynomial's ring");
    if (!g.is_zero()) lists.push_back(detail::to_terms(g, order));
  }
  std::vector<const detail::TermList*> divisors;
  for (const auto& l : lists) divisors.push_back(&l);
  return detail::from_terms(detail::reduce_full(detail::to_terms(p, order), divisors, order),
                            p.ring());
}

inline Polynomial reduce(const Polynomial& p, const GroebnerBasis& gb) {
  return reduce(p, gb.basis(), gb.order());
}

inline Polynomial leading_monomial_poly(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) return p;
  auto t = detail::to_terms(p, order);
  return Polynomial(p.ring(), t.back().m, Rational(1));
}

inline Monomial leading_monomial(const Polynomial& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::invalid_argument("leading monomial of zero");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || order.less(*best, m)) best = &m;
  return *best;
}

namespace detail {

class BuchbergerRun {
public:
  BuchbergerRun(const MonomialOrder& order, const GroebnerLimits& limits)
      : order_(order), limits_(limits) {}

  void insert(TermList h) {
    if (degree_of(h) > limits_.max_degree)
      throw ResourceCapExceeded("intermediate degree " + std::to_string(degree_of(h)) +
                                " exceeds cap " + std::to_string(limits_.max_degree));
    make_monic(h);
    std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(true);
    update(hi);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = pairs_.begin();
      for (auto it = pairs_.begin(); it != pairs_.end(); ++it)
        if (pair_before(*it, *best)) best = it;
      auto [i, j] = *best;
      pairs_.erase(best);
      if (++stats_.pairs_considered > limits_.max_pairs)
        throw ResourceCapExceeded("S-pair budget of " + std::to_string(limits_.max_pairs) +
                                  " exhausted");
      TermList s = s_polynomial(polys_[i], polys_[j], order_);
      ++stats_.pairs_reduced;
      TermList r = reduce_full(std::move(s), active_divisors(), order_);
      if (r.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      insert(std::move(r));
    }
  }

  std::vector<TermList> reduced_basis() const {
    std::vector<const TermList*> minimal;
    for (std::size_t i = 0; i < polys_.size(); ++i) {
      if (!active_[i]) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < polys_.size() && !redundant; ++j) {
        if (j == i || !active_[j]) continue;
        const auto& lj = polys_[j].back().m;
        const auto& li = polys_[i].back().m;
        if (lj.divides(li) && (lj != li || j < i)) redundant = true;
      }
      if (!redundant) minimal.push_back(&polys_[i]);
    }
    std::vector<TermList> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<const TermList*> others;
      for (std::size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      TermList lead{minimal[i]->back()};
      TermList tail(minimal[i]->begin(), minimal[i]->end() - 1);
      TermList r = reduce_full(std::move(tail), others, order_);
      r.push_back(lead.back());
      make_monic(r);
      out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [&](const TermList& a, const TermList& b) {
      return order_.less(a.back().m, b.back().m);
    });
    return out;
  }

  const GroebnerStats& stats() const { return stats_; }

private:
  using Pair = std::pair<std::size_t, std::size_t>;

  const Monomial& lead(std::size_t i) const { return polys_[i].back().m; }
  Monomial pair_lcm(const Pair& p) const { return Monomial::lcm(lead(p.first), lead(p.second)); }

  bool pair_before(const Pair& a, const Pair& b) const {
    Monomial la = pair_lcm(a), lb = pair_lcm(b);
    unsigned da = la.degree(), db = lb.degree();
    if (da != db) return da < db;
    int c = order_.compare(la, lb);
    if (c != 0) return c < 0;
    return a < b;
  }

  std::vector<const TermList*> active_divisors() const {
    std::vector<const TermList*> out;
    for (std::size_t i = 0; i < polys_.size(); ++i)
      if (active_[i]) out.push_back(&polys_[i]);
    return out;
  }

  // Gebauer-Moeller update for the newly inserted element h.
  void update(std::size_t h) {
    const Monomial& lh = lead(h);
    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < h; ++g)
      if (active_[g]) candidates.push_back(g);

    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      std::size_t g1 = candidates[k];
      Monomial l1 = Monomial::lcm(lh, lead(g1));
      bool keep = lh.coprime(lead(g1));
      if (!keep) {
        keep = true;
        auto dominated = [&](std::size_t g2) {
          return Monomial::lcm(lh, lead(g2)).divides(l1);
        };
        for (std::size_t m = k + 1; m < candidates.size() && keep; ++m)
          if (dominated(candidates[m])) keep = false;
        for (std::size_t g2 : kept)
          if (keep && dominated(g2)) keep = false;
      }
      if (keep) kept.push_back(g1);
    }

    std::vector<Pair> fresh;
    for (std::size_t g : kept)
      if (!lh.coprime(lead(g))) fresh.push_back({g, h});

    std::vector<Pair> survivors;
    for (const auto& p : pairs_) {
      Monomial l = pair_lcm(p);
      bool drop = lh.divides(l) && Monomial::lcm(lead(p.first), lh) != l &&
                  Monomial::lcm(lh, lead(p.second)) != l;
      if (!drop) survivors.push_back(p);
    }
    survivors.insert(survivors.end(), fresh.begin(), fresh.end());
    pairs_ = std::move(survivors);

    for (std::size_t g = 0; g < h; ++g)
      if (active_[g] && lh.divides(lead(g))) active_[g] = false;
  }

  const MonomialOrder& order_;
  GroebnerLimits limits_;
  std::vector<TermList> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
};

}  // namespace detail

/// Reduced Groebner basis of `ideal`. Deterministic for a fixed input and
/// order; throws ResourceCapExceeded when a limit is hit.
inline GroebnerBasis buchberger(const Ideal& ideal, const MonomialOrder& order,
                                const GroebnerLimits& limits = {}) {
  detail::BuchbergerRun run(order, limits);
  // Inter-reduce inputs in a canonical order so the run does not depend on
  // how the generators were listed.
  std::vector<detail::TermList> inputs;
  for (const auto& g : ideal.generators()) inputs.push_back(detail::to_terms(g, order));
  std::sort(inputs.begin(), inputs.end(), [&](const detail::TermList& a, const detail::TermList& b) {
    int c = order.compare(a.back().m, b.back().m);
    if (c != 0) return c < 0;
    return a.size() < b.size();
  });
  std::vector<detail::TermList> accepted;
  for (auto& g : inputs) {
    std::vector<const detail::TermList*> divisors;
    for (const auto& a : accepted) divisors.push_back(&a);
    auto r = detail::reduce_full(std::move(g), divisors, order);
    if (r.empty()) continue;
    detail::make_monic(r);
    accepted.push_back(r);
    run.insert(std::move(r));
  }
  run.run();
  std::vector<Polynomial> basis;
  for (const auto& t : run.reduced_basis()) basis.push_back(detail::from_terms(t, ideal.ring()));
  return GroebnerBasis(ideal.ring(), order, std::move(basis), run.stats());
}

inline GroebnerBasis buchberger(const Ideal& ideal, const GroebnerLimits& limits = {}) {
  return buchberger(ideal, MonomialOrder::grevlex(*ideal.ring()), limits);
}

/// Independent check: every S-polynomial of the basis reduces to zero.
inline bool s_pairs_reduce_to_zero(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  std::vector<detail::TermList> lists;
  for (const auto& g : basis)
    if (!g.is_zero()) lists.push_back(detail::to_terms(g, order));
  std::vector<const detail::TermList*> divisors;
  for (const auto& l : lists) divisors.push_back(&l);
  for (std::size_t i = 0; i < lists.size(); ++i)
    for (std::size_t j = i + 1; j < lists.size(); ++j)
      if (!detail::reduce_full(detail::s_polynomial(lists[i], lists[j], order), divisors, order).empty())
        return false;
  return true;
}

/// Structural check of the reduced property: monic, and no term of any
/// element divisible by another element's leading monomial.
inline bool is_reduced(const std::vector<Polynomial>& basis, const MonomialOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto ti = detail::to_terms(basis[i], order);
    if (ti.empty() || ti.back().c != 1) return false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      Monomial lj = leading_monomial(basis[j], order);
      for (const auto& t : ti)
        if (lj.divides(t.m)) return false;
    }
  }
  return true;
}

inline bool ideal_member(const Polynomial& p, const GroebnerBasis& gb) {
  return reduce(p, gb).is_zero();
}

inline bool ideal_member(const Polynomial& p, const Ideal& ideal, const MonomialOrder& order,
                         const GroebnerLimits& limits = {}) {
  return ideal_member(p, buchberger(ideal, order, limits));
}

/// Outcome of testing I ⊆ J and J ⊆ I; lists the generators that failed.
struct IdealComparison {
  bool first_in_second = true;
  bool second_in_first = true;
  std::vector<Polynomial> first_not_in_second;
  std::vector<Polynomial> second_not_in_first;

  bool equal() const { return first_in_second && second_in_first; }
};

inline IdealComparison compare_ideals(const Ideal& first, const Ideal& second,
                                      const MonomialOrder& order,
                                      const GroebnerLimits& limits = {}) {
  if (!same_ring(first.ring(), second.ring()))
    throw std::invalid_argument("compare_ideals: different ambient variables");
  IdealComparison out;
  auto gb_second = buchberger(second, order, limits);
  for (const auto& g : first.generators())
    if (!ideal_member(g, gb_second)) {
      out.first_in_second = false;
      out.first_not_in_second.push_back(g);
    }
  auto gb_first = buchberger(first, order, limits);
  for (const auto& g : second.generators())
    if (!ideal_member(g, gb_first)) {
      out.second_in_first = false;
      out.second_not_in_first.push_back(g);
    }
  return out;
}

inline bool ideal_equal(const Ideal& first, const Ideal& second, const MonomialOrder& order,
                        const GroebnerLimits& limits = {}) {
  return compare_ideals(first, second, order, limits).equal();
}

/// Generators of I ∩ k[kept variables]. `order` must rank the dropped
/// variables above all others.
inline Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop,
                       const MonomialOrder& order, const GroebnerLimits& limits = {}) {
  const Ring& ring = *ideal.ring();
  if (!order.eliminates(ring, drop))
    throw std::invalid_argument("eliminate: order does not rank dropped variables first");
  std::vector<std::size_t> dropped;
  for (const auto& n : drop) dropped.push_back(*ring.index_of(n));
  auto gb = buchberger(ideal, order, limits);
  Ideal out(ideal.ring());
  for (const auto& g : gb.basis()) {
    bool free = std::none_of(dropped.begin(), dropped.end(),
                             [&](std::size_t i) { return g.uses_variable(i); });
    if (free) out.add(g);
  }
  return out;
}

inline Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop,
                       const GroebnerLimits& limits = {}) {
  return eliminate(ideal, drop, MonomialOrder::elimination(*ideal.ring(), drop), limits);
}

}  // namespace fricke
