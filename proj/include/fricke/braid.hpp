#pragma once

// Pure braid group action on trace coordinates. Each generator is a
// composition of two Vieta involutions of the Fricke cubic:
//   s1: v1 -> (a1a2 + a3a4) - v2 v3 - v1
//   s2: v2 -> (a1a4 + a2a3) - v1 v3 - v2
//   s3: v3 -> (a1a3 + a2a4) - v1 v2 - v3
// with tau1 = s3 then s2, tau2 = s1 then s3, tau3 = s2 then s1 (applied
// left to right). Inverses apply the same two involutions in reverse.

#include "fricke/charvariety.hpp"
#include "fricke/groebner.hpp"
#include "fricke/solve.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fricke {

struct BraidLetter {
  int generator;  // 1, 2 or 3
  int sign;       // +1 or -1

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

class BraidWord {
public:
  BraidWord() = default;
  explicit BraidWord(std::vector<BraidLetter> letters) : letters_(std::move(letters)) {
    for (const auto& l : letters_)
      if (l.generator < 1 || l.generator > 3 || (l.sign != 1 && l.sign != -1))
        throw std::invalid_argument("invalid braid letter");
  }

  static BraidWord generator(int index, int sign = 1) { return BraidWord({{index, sign}}); }

  /// Tokens t1 t2 t3 (generators) and T1 T2 T3 (inverses), no separators.
  static BraidWord parse(std::string_view text) {
    std::vector<BraidLetter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if ((c != 't' && c != 'T') || i + 1 >= text.size() || text[i + 1] < '1' || text[i + 1] > '3')
        throw ParseError("invalid braid word '" + std::string(text) + "'", i);
      letters.push_back({text[i + 1] - '0', c == 't' ? 1 : -1});
      i += 2;
    }
    return BraidWord(std::move(letters));
  }

  const std::vector<BraidLetter>& letters() const noexcept { return letters_; }
  bool empty() const noexcept { return letters_.empty(); }
  std::size_t size() const noexcept { return letters_.size(); }

  BraidWord inverse() const {
    std::vector<BraidLetter> out(letters_.rbegin(), letters_.rend());
    for (auto& l : out) l.sign = -l.sign;
    return BraidWord(std::move(out));
  }

  /// Concatenation: `*this` acts first.
  friend BraidWord operator*(const BraidWord& first, const BraidWord& second) {
    auto out = first.letters_;
    out.insert(out.end(), second.letters_.begin(), second.letters_.end());
    return BraidWord(std::move(out));
  }

  std::string to_string() const {
    std::string s;
    for (const auto& l : letters_) {
      s += l.sign > 0 ? 't' : 'T';
      s += char('0' + l.generator);
    }
    return s;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

private:
  std::vector<BraidLetter> letters_;
};

/// Generators of a subgroup, e.g. "t2;t1t1;t3t3".
struct SubgroupSpec {
  std::vector<BraidWord> generators;

  static SubgroupSpec parse(std::string_view text, char separator = ';') {
    SubgroupSpec spec;
    std::size_t start = 0;
    for (;;) {
      auto end = text.find(separator, start);
      auto token = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      spec.generators.push_back(BraidWord::parse(token));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    return spec;
  }

  std::string to_string(char separator = ';') const {
    std::string s;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (i) s += separator;
      s += generators[i].to_string();
    }
    return s;
  }
};

namespace detail {

// Pairs (j, k) of the two involutions making up each generator, in
// application order for the forward map.
inline constexpr std::array<std::array<int, 2>, 3> kGeneratorSteps{{{3, 2}, {1, 3}, {2, 1}}};

inline std::array<int, 2> steps_for(const BraidLetter& l) {
  auto s = kGeneratorSteps[l.generator - 1];
  if (l.sign < 0) std::swap(s[0], s[1]);
  return s;
}

// Exact Vieta involution s_j on a rational point.
inline void vieta_step(const BoundaryTraces& a, PairTraces& v, int j) {
  switch (j) {
    case 1: v[0] = a[0] * a[1] + a[2] * a[3] - v[1] * v[2] - v[0]; break;
    case 2: v[1] = a[0] * a[3] + a[1] * a[2] - v[0] * v[2] - v[1]; break;
    case 3: v[2] = a[0] * a[2] + a[1] * a[3] - v[0] * v[1] - v[2]; break;
  }
}

}  // namespace detail

using SymbolicMap = std::array<Polynomial, 3>;

inline SymbolicMap identity_map() {
  const auto& R = trace_ring();
  return {Polynomial::variable(R, "v1"), Polynomial::variable(R, "v2"), Polynomial::variable(R, "v3")};
}

/// Vieta involution s_j as a polynomial map of (a, v).
inline SymbolicMap vieta_map(int j) {
  const auto& R = trace_ring();
  SymbolicMap m = identity_map();
  static const char* images[3] = {"a1*a2 + a3*a4 - v2*v3 - v1", "a1*a4 + a2*a3 - v1*v3 - v2",
                                  "a1*a3 + a2*a4 - v1*v2 - v3"};
  m[j - 1] = parse_polynomial(images[j - 1], R);
  return m;
}

/// The map "first, then second" as polynomials: second evaluated at first.
inline SymbolicMap compose(const SymbolicMap& first, const SymbolicMap& second) {
  std::map<std::string, Polynomial> images{{"v1", first[0]}, {"v2", first[1]}, {"v3", first[2]}};
  return {second[0].substitute(images), second[1].substitute(images), second[2].substitute(images)};
}

inline SymbolicMap generator_map_symbolic(int index, int sign) {
  if (index < 1 || index > 3 || (sign != 1 && sign != -1))
    throw std::invalid_argument("generator index must be 1..3 and sign +-1");
  auto steps = detail::steps_for({index, sign});
  return compose(vieta_map(steps[0]), vieta_map(steps[1]));
}

inline SymbolicMap word_map_symbolic(const BraidWord& w) {
  SymbolicMap m = identity_map();
  for (const auto& l : w.letters()) m = compose(m, generator_map_symbolic(l.generator, l.sign));
  return m;
}

/// Pull a polynomial back along a symbolic map: p(a, map(a, v)).
inline Polynomial pull_back(const Polynomial& p, const SymbolicMap& map) {
  return p.substitute({{"v1", map[0]}, {"v2", map[1]}, {"v3", map[2]}});
}

inline PairTraces apply_word_unchecked(const BraidWord& w, const BoundaryTraces& a, PairTraces v) {
  for (const auto& l : w.letters())
    for (int j : detail::steps_for(l)) detail::vieta_step(a, v, j);
  return v;
}

/// Exact image of an on-variety point; letters act left to right.
inline TracePoint apply_word(const BraidWord& w, const TracePoint& pt) {
  if (!on_variety(pt)) throw OffVarietyError();
  return {pt.a, apply_word_unchecked(w, pt.a, pt.v)};
}

enum class OrbitStatus { complete, cap_exceeded };

inline std::string to_string(OrbitStatus s) {
  return s == OrbitStatus::complete ? "complete" : "cap-exceeded";
}

struct Orbit {
  TracePoint basepoint;
  std::vector<PairTraces> points;         // discovery order, basepoint first
  OrbitStatus status = OrbitStatus::complete;
  std::vector<std::size_t> level_sizes;   // new points found per BFS level

  bool contains(const PairTraces& v) const {
    return std::find(points.begin(), points.end(), v) != points.end();
  }
};

inline const std::array<BraidLetter, 6>& signed_generators() {
  static const std::array<BraidLetter, 6> gens{{{1, 1}, {1, -1}, {2, 1}, {2, -1}, {3, 1}, {3, -1}}};
  return gens;
}

/// Breadth-first closure of the basepoint's v under the six signed
/// generators. Each frontier is processed in lexicographic order.
inline Orbit enumerate_orbit(const TracePoint& pt, std::size_t cap = 10000) {
  if (!on_variety(pt)) throw OffVarietyError();
  if (cap == 0) throw std::invalid_argument("orbit cap must be positive");
  Orbit orbit{pt, {pt.v}, OrbitStatus::complete, {1}};
  std::set<PairTraces> seen{pt.v};
  std::vector<PairTraces> frontier{pt.v};
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    std::vector<PairTraces> next;
    for (const auto& v : frontier)
      for (const auto& g : signed_generators()) {
        auto image = apply_word_unchecked(BraidWord({g}), pt.a, v);
        if (seen.count(image)) continue;
        if (seen.size() == cap) {
          orbit.status = OrbitStatus::cap_exceeded;
          orbit.level_sizes.push_back(next.size());
          return orbit;
        }
        seen.insert(image);
        orbit.points.push_back(image);
        next.push_back(image);
      }
    if (!next.empty()) orbit.level_sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return orbit;
}

/// Generators of the fixed locus: f together with w(v) - v for each
/// subgroup generator w.
inline Ideal fixed_ideal_generators(const SubgroupSpec& sub) {
  Ideal ideal(trace_ring(), {fricke_poly()});
  auto id = identity_map();
  for (const auto& w : sub.generators) {
    auto m = word_map_symbolic(w);
    for (int i = 0; i < 3; ++i) ideal.add(m[i] - id[i]);
  }
  return ideal;
}

/// Reduced Groebner basis (grevlex, a1 > ... > v3) of the fixed ideal.
inline GroebnerBasis fixed_ideal(const SubgroupSpec& sub, const GroebnerLimits& limits = {}) {
  return buchberger(fixed_ideal_generators(sub), MonomialOrder::grevlex(*trace_ring()), limits);
}

inline const RingPtr& pair_trace_ring() {
  static const RingPtr ring = make_ring({"v1", "v2", "v3"});
  return ring;
}

struct FixedPoints {
  bool zero_dimensional = true;
  std::vector<PairTraces> points;
  std::vector<ResidualFactor> residual;
  std::vector<Polynomial> basis;  // lex basis in v1 > v2 > v3 of the specialized ideal
};

/// Rational points of the fixed locus over a given boundary-trace tuple.
inline FixedPoints fixed_points_at(const BoundaryTraces& a, const Ideal& fixed,
                                   const GroebnerLimits& limits = {}) {
  std::map<std::string, Polynomial> images;
  const auto& V = pair_trace_ring();
  for (int i = 0; i < 4; ++i) images.emplace("a" + std::to_string(i + 1), Polynomial(V, a[i]));
  Ideal specialized(V);
  for (const auto& g : fixed.generators()) specialized.add(g.substitute(images, V));
  auto solved = solve_rational(specialized, {"v1", "v2", "v3"}, limits);
  FixedPoints out;
  out.zero_dimensional = solved.zero_dimensional;
  out.basis = solved.basis;
  out.residual = solved.residual;
  for (const auto& p : solved.points) out.points.push_back({p[0], p[1], p[2]});
  return out;
}

inline FixedPoints fixed_points_at(const BoundaryTraces& a, const SubgroupSpec& sub,
                                   const GroebnerLimits& limits = {}) {
  return fixed_points_at(a, fixed_ideal_generators(sub), limits);
}

}  // namespace fricke
