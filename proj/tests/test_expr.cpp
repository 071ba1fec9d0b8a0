#include "generators.hpp"
#include "lieheat/errors.hpp"
#include "lieheat/parse.hpp"

#include <gtest/gtest.h>

using namespace lieheat;
using lieheat::testing::Gen;

namespace {

Expr P(const char* s) { return parse_expr(s); }

}  // namespace

TEST(Parse, TwoTermLiteral) {
  const Expr e = P("T_t - alpha*T_xx");
  EXPECT_EQ(e.size(), 2u);
  EXPECT_EQ(e, sym(Symbol::T_t) - sym(Symbol::alpha) * sym(Symbol::T_xx));
}

TEST(Parse, Cancellation) {
  EXPECT_TRUE(is_zero(P("x*x - x^2")));
  EXPECT_TRUE(is_zero(P("2*t + 3*t - 5*t")));
}

TEST(Parse, RationalsAndUnitDivision) {
  EXPECT_EQ(P("3/6*x"), Expr(Rational(1, 2)) * sym(Symbol::x));
  EXPECT_EQ(P("x/alpha"), sym(Symbol::x) * sym(Symbol::alpha_inv));
  EXPECT_TRUE(is_zero(P("(x + 1)^2 - x^2 - 2*x - 1")));
  EXPECT_EQ(P("-(-x)"), sym(Symbol::x));
  EXPECT_EQ(P("x^0"), Expr(1));
}

TEST(Parse, Errors) {
  EXPECT_THROW(P(""), ParseError);
  EXPECT_THROW(P("2 x"), ParseError);
  EXPECT_THROW(P("x^-1"), ParseError);
  EXPECT_THROW(P("x^1.5"), ParseError);
  EXPECT_THROW(P("x^y"), ParseError);
  EXPECT_THROW(P("1.5*x"), ParseError);
  EXPECT_THROW(P("(x + 1"), ParseError);
  EXPECT_THROW(P("x + $"), ParseError);
  EXPECT_THROW(P("x/t"), Error);
  EXPECT_THROW(P("x/0"), Error);
  EXPECT_THROW(P("y + 1"), UnknownSymbol);
}

TEST(Parse, ErrorPosition) {
  try {
    P("x + 2 y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Differentiate, Examples) {
  EXPECT_EQ(differentiate(P("x^2*t"), Symbol::x), P("2*x*t"));
  EXPECT_EQ(differentiate(P("alpha_inv*x*T"), Symbol::T), P("alpha_inv*x"));
  EXPECT_TRUE(is_zero(differentiate(P("x^2"), Symbol::t)));
}

TEST(Differentiate, ReciprocalConstants) {
  // d/dalpha (1/alpha) = -1/alpha^2, and the product rule still sees alpha*alpha_inv = 1.
  EXPECT_EQ(differentiate(P("alpha_inv"), Symbol::alpha), -P("alpha_inv^2"));
  EXPECT_TRUE(is_zero(differentiate(P("alpha*alpha_inv"), Symbol::alpha)));
  EXPECT_EQ(differentiate(P("kcond_inv^2"), Symbol::kcond), P("-2*kcond_inv^3"));
}

TEST(TotalDerivative, Examples) {
  EXPECT_EQ(total_derivative(P("T"), Direction::x), P("T_x"));
  EXPECT_EQ(total_derivative(P("x*T_x"), Direction::x), P("T_x + x*T_xx"));
  EXPECT_EQ(total_derivative(P("T_x"), Direction::t), P("T_xt"));
  EXPECT_EQ(total_derivative(P("T_xx"), Direction::x), P("T_xxx"));
  EXPECT_EQ(total_derivative(P("t^2*T_t"), Direction::t), P("2*t*T_t + t^2*T_tt"));
}

TEST(TotalDerivative, JetOverflow) {
  EXPECT_THROW(total_derivative(P("T_xx"), Direction::t), JetOverflow);
  EXPECT_THROW(total_derivative(P("T_xxx"), Direction::x), JetOverflow);
  EXPECT_THROW(total_derivative(P("T_xt"), Direction::x), JetOverflow);
  EXPECT_THROW(total_derivative(P("T_tt"), Direction::t), JetOverflow);
  // Constants never overflow.
  EXPECT_TRUE(is_zero(total_derivative(P("alpha*k3 + q0pp"), Direction::x)));
}

TEST(Substitute, Examples) {
  EXPECT_TRUE(is_zero(substitute(P("T_t - alpha*T_xx"), {{Symbol::T_t, P("alpha*T_xx")}})));
  EXPECT_TRUE(is_zero(substitute(P("x^2"), {{Symbol::x, Expr(0)}})));
  EXPECT_EQ(substitute(P("k2 + 2*k4*t"), {{Symbol::t, Expr(0)}}), P("k2"));
}

TEST(Substitute, Simultaneous) {
  EXPECT_EQ(substitute(P("x + 2*t"), {{Symbol::x, P("t")}, {Symbol::t, P("x")}}), P("t + 2*x"));
  EXPECT_THROW(substitute(P("x"), {{Symbol::x, P("t")}, {Symbol::x, P("1")}}), Error);
}

TEST(IsZero, Examples) {
  EXPECT_TRUE(is_zero(P("x - x")));
  EXPECT_TRUE(is_zero(P("alpha*alpha_inv - 1")));
  EXPECT_FALSE(is_zero(P("T_x")));
  EXPECT_TRUE(is_zero(P("kcond*kcond_inv - 1")));
}

TEST(ExprQueries, UnitsAndDegrees) {
  EXPECT_TRUE(P("3*alpha^2").is_unit());
  EXPECT_FALSE(P("x").is_unit());
  EXPECT_FALSE(P("alpha + 1").is_unit());
  EXPECT_EQ(P("2*alpha").unit_inverse(), P("1/2*alpha_inv"));
  EXPECT_EQ(P("x^3*t + x").degree_in(Symbol::x), 3);
  EXPECT_TRUE(P("x*T_x").depends_on(Symbol::T_x));
  EXPECT_EQ(P("7/3").as_rational(), Rational(7, 3));
  EXPECT_FALSE(P("x").as_rational().has_value());
}

TEST(Collect, SplitsBySelectedSymbols) {
  const auto parts = collect(P("t*k2 + 2*t*k4 + k1 + 3*k1*T"), [](Symbol s) { return is_coordinate(s); });
  ASSERT_EQ(parts.size(), 3u);
  Expr total;
  for (const auto& [m, c] : parts) total += Expr::term(1, m) * c;
  EXPECT_EQ(total, P("t*k2 + 2*t*k4 + k1 + 3*k1*T"));
}

TEST(Printer, Deterministic) {
  EXPECT_EQ(to_string(Expr()), "0");
  EXPECT_EQ(to_string(P("T_t - alpha*T_xx")), to_string(P("-alpha*T_xx + T_t")));
}

TEST(Properties, RingAxioms) {
  Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Expr a = g.jet_expr(), b = g.jet_expr(), c = g.jet_expr();
    EXPECT_TRUE(is_zero((a + b) + c - (a + (b + c))));
    EXPECT_TRUE(is_zero(a * (b + c) - (a * b + a * c)));
    EXPECT_TRUE(is_zero(a * b - b * a));
    EXPECT_TRUE(is_zero((a * b) * c - a * (b * c)));
    EXPECT_TRUE(is_zero(a - a));
  }
}

TEST(Properties, Linearity) {
  Gen g(12);
  const Symbol vars[] = {Symbol::x, Symbol::t, Symbol::T, Symbol::T_x, Symbol::alpha};
  for (int i = 0; i < 200; ++i) {
    const Expr a = g.low_jet_expr(), b = g.low_jet_expr();
    const Expr lam = g.rational();
    for (Symbol v : vars)
      EXPECT_TRUE(is_zero(differentiate(a + lam * b, v) - differentiate(a, v) - lam * differentiate(b, v)));
    for (Direction d : {Direction::x, Direction::t})
      EXPECT_TRUE(is_zero(total_derivative(a + lam * b, d) - total_derivative(a, d) -
                          lam * total_derivative(b, d)));
  }
}

TEST(Properties, TotalDerivativesCommute) {
  // Only zeroth-order jet symbols: mixed derivatives of T_x or T_t leave the jet.
  Gen g(13);
  for (int i = 0; i < 200; ++i) {
    const Expr e = g.poly({Symbol::x, Symbol::t, Symbol::T, Symbol::alpha}, 5, 3);
    const Expr xt = total_derivative(total_derivative(e, Direction::t), Direction::x);
    const Expr tx = total_derivative(total_derivative(e, Direction::x), Direction::t);
    EXPECT_TRUE(is_zero(xt - tx)) << to_string(e);
  }
}

TEST(Properties, PrintParseRoundTrip) {
  Gen g(14);
  for (int i = 0; i < 300; ++i) {
    Expr e = g.jet_expr();
    e += g.poly({Symbol::T_i, Symbol::T_s, Symbol::q0pp, Symbol::kcond, Symbol::kcond_inv, Symbol::k1,
                 Symbol::k6, Symbol::T_xt, Symbol::T_tt, Symbol::T_xxx},
                3, 3);
    EXPECT_EQ(parse_expr(to_string(e)), e) << to_string(e);
  }
}
