#include "fricke/charvariety.hpp"
#include "fricke/polynomial.hpp"
#include "fricke/rational.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace fricke;
using fricke::testing::Rng;

namespace {

const RingPtr& xyz() {
  static const RingPtr ring = make_ring({"x", "y", "z"});
  return ring;
}

Polynomial P(const std::string& s, const RingPtr& ring = trace_ring()) { return parse_polynomial(s, ring); }

}  // namespace

TEST(Rational, ParsesCanonicalForms) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("0/7"), Rational(0));
  EXPECT_EQ(parse_rational("42"), Rational(42));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  Rational r = parse_rational("-12/18");
  EXPECT_EQ(r.get_num(), -2);
  EXPECT_EQ(r.get_den(), 3);
}

TEST(Rational, RejectsMalformedLiterals) {
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/"), ParseError);
  EXPECT_THROW(parse_rational("a"), ParseError);
  EXPECT_THROW(parse_rational("0.5"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
}

TEST(Rational, DenominatorStaysPositiveAndReduced) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational x = fricke::testing::random_rational(rng), y = fricke::testing::random_nonzero_rational(rng);
    for (const Rational& r : std::vector<Rational>{x + y, x - y, x * y, x / y}) {
      EXPECT_GT(r.get_den(), 0);
      Integer g;
      mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
      EXPECT_EQ(g, 1);
    }
  }
}

TEST(Ring, ValidatesNames) {
  EXPECT_THROW(make_ring({"x", "x"}), std::invalid_argument);
  EXPECT_THROW(make_ring({"X"}), std::invalid_argument);
  EXPECT_THROW(make_ring({"1x"}), std::invalid_argument);
  std::vector<std::string> many;
  for (int i = 0; i < 17; ++i) many.push_back("x" + std::to_string(i));
  EXPECT_THROW(make_ring(many), std::invalid_argument);
}

TEST(PolyParse, SimpleExpression) {
  auto p = P("v1^2 - 2");
  ASSERT_EQ(p.size(), 2u);
  auto R = trace_ring();
  EXPECT_EQ(p.terms().at(Monomial::variable(*R->index_of("v1"), 2)), 1);
  EXPECT_EQ(p.terms().at(Monomial{}), -2);
}

TEST(PolyParse, ZeroIsEmpty) {
  EXPECT_TRUE(P("0").is_zero());
  EXPECT_TRUE(P("v1 - v1").is_zero());
  EXPECT_EQ(P("0").to_string(), "0");
}

TEST(PolyParse, RationalCoefficientsAndParentheses) {
  EXPECT_EQ(P("1/2*v1 + 1/2*v1"), P("v1"));
  EXPECT_EQ(P("(v1 + 1)^2"), P("v1^2 + 2*v1 + 1"));
  EXPECT_EQ(P("-(v1 - v2)"), P("v2 - v1"));
  EXPECT_EQ(P("2^3*v1"), P("8*v1"));
  EXPECT_EQ(P("6/4"), Polynomial(trace_ring(), Rational(3, 2)));
}

TEST(PolyParse, FrickeExpressionHasSixteenMonomials) {
  // Written out independently of fricke_poly(): the expanded relation.
  const char* text =
      "v1^2 + v2^2 + v3^2 + v1*v2*v3 - a1*a2*v1 - a3*a4*v1 - a1*a4*v2 - a2*a3*v2"
      " - a1*a3*v3 - a2*a4*v3 + a1^2 + a2^2 + a3^2 + a4^2 + a1*a2*a3*a4 - 4";
  auto f = P(text);
  EXPECT_EQ(f.size(), 16u);
  EXPECT_EQ(f, fricke_poly());
}

TEST(PolyParse, ErrorsCarryPositionAndName) {
  try {
    P("v1 + w7");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
    EXPECT_NE(std::string(e.what()).find("w7"), std::string::npos);
  }
  try {
    P("v1 + * v2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  EXPECT_THROW(P("2v1"), ParseError);
  EXPECT_THROW(P("v1 v2"), ParseError);
  EXPECT_THROW(P("(v1)(v2)"), ParseError);
  EXPECT_THROW(P("v1^"), ParseError);
  EXPECT_THROW(P("(v1 + 1"), ParseError);
  EXPECT_THROW(P("1/0*v1"), ParseError);
  EXPECT_THROW(P(""), ParseError);
}

TEST(PolyAdd, Examples) {
  auto p = P("a1*v2 - 3/7*v3^2 + 1");
  EXPECT_TRUE((p + (-p)).is_zero());
  EXPECT_EQ(P("v1 + 1") + P("v1 - 1"), P("2*v1"));
  EXPECT_EQ(fricke_poly() + Polynomial(trace_ring()), fricke_poly());
}

TEST(PolyAdd, DifferentUniversesRejected) {
  EXPECT_THROW(P("x", xyz()) + P("v1"), std::invalid_argument);
}

TEST(PolyMul, Examples) {
  EXPECT_EQ(P("v1 - v2") * P("v1 + v2"), P("v1^2 - v2^2"));
  EXPECT_EQ(Polynomial(trace_ring(), Rational(1)) * fricke_poly(), fricke_poly());
  EXPECT_EQ(P("v2 - 2") * P("v2 + 2") * P("v3"), P("-4*v3 + v2^2*v3"));
}

TEST(PolySubstitute, IdentityMapFixesF) {
  const auto& f = fricke_poly();
  std::map<std::string, Polynomial> id;
  for (const auto& n : trace_ring()->names()) id.emplace(n, Polynomial::variable(trace_ring(), n));
  EXPECT_EQ(f.substitute(id), f);
  EXPECT_EQ(f.substitute({}), f);
}

TEST(PolySubstitute, VietaInvolutionInV3FixesF) {
  const auto& f = fricke_poly();
  EXPECT_EQ(f.substitute({{"v3", P("a1*a3 + a2*a4 - v1*v2 - v3")}}), f);
}

TEST(PolySubstitute, VanishingPairTracesLeavesConstantBlock) {
  auto zero = Polynomial(trace_ring());
  EXPECT_EQ(fricke_poly().substitute({{"v1", zero}, {"v2", zero}, {"v3", zero}}),
            P("a1^2 + a2^2 + a3^2 + a4^2 + a1*a2*a3*a4 - 4"));
}

TEST(PolySubstitute, IsSimultaneous) {
  // Swapping x and y must not chain.
  auto R = xyz();
  EXPECT_EQ(P("x^2*y", R).substitute({{"x", P("y", R)}, {"y", P("x", R)}}), P("y^2*x", R));
}

TEST(PolySubstitute, IntoAnotherRing) {
  auto R = xyz();
  auto V = make_ring({"v1", "v2", "v3"});
  auto p = P("x*y + z", R);
  auto q = p.substitute({{"x", P("v1", V)}, {"y", P("v1 + v2", V)}, {"z", Polynomial(V, Rational(5))}}, V);
  EXPECT_EQ(q, P("v1^2 + v1*v2 + 5", V));
  EXPECT_THROW(p.substitute({{"x", P("v1", V)}}, V), std::invalid_argument);
}

TEST(PolyEvaluate, Examples) {
  auto at = [](std::array<int, 4> a, std::array<int, 3> v) {
    std::map<std::string, Rational> pt;
    for (int i = 0; i < 4; ++i) pt["a" + std::to_string(i + 1)] = a[i];
    for (int i = 0; i < 3; ++i) pt["v" + std::to_string(i + 1)] = v[i];
    return pt;
  };
  EXPECT_EQ(fricke_poly().evaluate(at({1, -1, -1, -1}, {0, 1, 0})), 0);
  EXPECT_EQ(fricke_poly().evaluate(at({2, 2, 2, 2}, {2, 2, 2})), 0);
  EXPECT_EQ(P("v1").evaluate({{"v1", 5}}), 5);
}

TEST(PolyEvaluate, MissingAssignmentNamesVariable) {
  try {
    P("v1 + v2").evaluate({{"v1", 1}});
    FAIL() << "expected MissingAssignment";
  } catch (const MissingAssignment& e) {
    EXPECT_EQ(e.variable(), "v2");
  }
  // Variables that do not occur need no value.
  EXPECT_EQ(P("v1 + 1").evaluate({{"v1", 1}}), 2);
}

TEST(PolyPrint, Format) {
  EXPECT_EQ(P("v2*v3 - 2 + v1^2").to_string(), "v1^2 + v2*v3 - 2");
  EXPECT_EQ(P("v1*1/2").to_string(), "1/2*v1");
  EXPECT_EQ(P("-v1 - 1").to_string(), "-v1 - 1");
}

TEST(PolyProperties, RingAxioms) {
  Rng rng(2024);
  auto R = xyz();
  for (int i = 0; i < 300; ++i) {
    auto p = fricke::testing::random_polynomial(rng, R);
    auto q = fricke::testing::random_polynomial(rng, R);
    auto r = fricke::testing::random_polynomial(rng, R);
    ASSERT_EQ((p + q) + r, p + (q + r));
    ASSERT_EQ(p + q, q + p);
    ASSERT_EQ((p * q) * r, p * (q * r));
    ASSERT_EQ(p * q, q * p);
    ASSERT_EQ(p * (q + r), p * q + p * r);
    ASSERT_TRUE((p - p).is_zero());
    for (const auto& [m, c] : (p * q + r).terms()) ASSERT_NE(c, 0);
  }
}

TEST(PolyProperties, ParsePrintRoundTrip) {
  Rng rng(7);
  auto R = xyz();
  for (int i = 0; i < 300; ++i) {
    auto p = fricke::testing::random_polynomial(rng, R, 6, 5);
    auto text = p.to_string();
    auto back = P(text, R);
    ASSERT_EQ(back, p) << text;
    ASSERT_EQ(back.to_string(), text);
  }
  EXPECT_EQ(P(fricke_poly().to_string()), fricke_poly());
}

TEST(PolyProperties, CanonicalizationIsIdempotent) {
  Rng rng(8);
  auto R = xyz();
  for (int i = 0; i < 100; ++i) {
    auto p = fricke::testing::random_polynomial(rng, R, 6, 4);
    // Re-adding each term one by one rebuilds the same canonical form.
    Polynomial rebuilt(R);
    for (const auto& [m, c] : p.terms()) rebuilt.add_term(m, c);
    ASSERT_EQ(rebuilt, p);
    ASSERT_EQ(rebuilt.in_ring(R), p);
  }
}

TEST(PolyProperties, SubstituteThenEvaluateEqualsComposedEvaluation) {
  Rng rng(9);
  auto R = xyz();
  for (int i = 0; i < 150; ++i) {
    auto p = fricke::testing::random_polynomial(rng, R, 5, 3);
    std::map<std::string, Polynomial> m;
    for (const auto& n : R->names()) m.emplace(n, fricke::testing::random_polynomial(rng, R, 3, 2));
    std::map<std::string, Rational> pt;
    for (const auto& n : R->names()) pt[n] = fricke::testing::random_rational(rng);
    std::map<std::string, Rational> image;
    for (const auto& n : R->names()) image[n] = m.at(n).evaluate(pt);
    ASSERT_EQ(p.substitute(m).evaluate(pt), p.evaluate(image));
  }
}

TEST(PolyProperties, ComplexEvaluationMatchesExact) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    auto pt = fricke::testing::random_trace_point(rng);
    std::array<std::complex<double>, 4> a;
    std::array<std::complex<double>, 3> v;
    for (int k = 0; k < 4; ++k) a[k] = pt.a[k].get_d();
    for (int k = 0; k < 3; ++k) v[k] = pt.v[k].get_d();
    double scale = 1;
    for (const auto& x : dense_values(pt)) scale = std::max(scale, std::abs(x.get_d()));
    EXPECT_LE(std::abs(fricke_value(a, v)), 1e-12 * std::pow(scale, 4));
  }
}

TEST(Rational, MakeRationalIsCanonical) {
  EXPECT_EQ(to_string(make_rational(4, 2)), "2");
  EXPECT_EQ(to_string(make_rational(3, -6)), "-1/2");
  EXPECT_EQ(make_rational(-4, 2), Rational(-2));
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}
