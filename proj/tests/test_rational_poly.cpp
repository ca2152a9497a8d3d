#include "flagein/poly.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace flagein;

TEST(Rational, CanonicalText) {
    EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
    EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
    EXPECT_EQ(to_string(Rational(1, 3) + Rational(1, 6)), "1/2");
    EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, ParseRoundTrip) {
    EXPECT_EQ(parse_rational("1/12"), Rational(1, 12));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
    EXPECT_THROW(parse_rational("1/0"), ConfigError);
    EXPECT_THROW(parse_rational("abc"), ConfigError);
    EXPECT_THROW(parse_rational(""), ConfigError);
}

TEST(Rational, BitSize) {
    EXPECT_EQ(bit_size(Rational(1, 255)), 8u);
    EXPECT_EQ(bit_size(Rational(1024)), 11u);
}

TEST(Poly, ParseAndPrintCanonical) {
    auto ring = make_ring({"x2", "x3", "x6"});
    auto f = parse_poly("24*x2*x3^2 - 3*x2^2*x3*x6 + 1/2", ring);
    EXPECT_EQ(to_string(f), "-3*x2^2*x3*x6 + 24*x2*x3^2 + 1/2");
    EXPECT_EQ(parse_poly(to_string(f), ring), f);
    EXPECT_EQ(to_string(parse_poly("(x2 - 1)^2", ring)), "x2^2 - 2*x2 + 1");
    EXPECT_EQ(to_string(MultiPoly(ring)), "0");
}

TEST(Poly, ParseErrors) {
    auto ring = make_ring({"x", "y"});
    EXPECT_THROW(parse_poly("x + z", ring), ConfigError);
    EXPECT_THROW(parse_poly("x +* y", ring), ConfigError);
    EXPECT_THROW(parse_poly("(x + y", ring), ConfigError);
    EXPECT_THROW(parse_poly("x/0", ring), ConfigError);
}

TEST(Poly, TermOrders) {
    auto lex = make_ring({"x", "y", "z"});
    auto grevlex = make_ring({"x", "y", "z"}, TermOrder{OrderKind::GrevLex, 0});
    EXPECT_EQ(to_string(parse_poly("y^3 + x*z", lex)), "x*z + y^3");
    EXPECT_EQ(to_string(parse_poly("y^3 + x*z", grevlex)), "y^3 + x*z");
    // grevlex: equal degree, the smaller power of the last variable wins.
    EXPECT_EQ(to_string(parse_poly("x*z^2 + y^2*z", grevlex)), "y^2*z + x*z^2");
    EXPECT_EQ(parse_term_order("grevlex").kind, OrderKind::GrevLex);
    EXPECT_THROW(parse_term_order("deglex"), ConfigError);
}

TEST(Poly, ArithmeticAndEvaluation) {
    auto ring = make_ring({"x", "y"});
    auto x = MultiPoly::variable(ring, "x");
    auto y = MultiPoly::variable(ring, "y");
    auto f = (x + y) * (x - y);
    EXPECT_EQ(f, x * x - y * y);
    EXPECT_EQ(f.evaluate({Rational(3), Rational(2)}), Rational(5));
    EXPECT_DOUBLE_EQ(f.evaluate(std::vector<double>{0.5, 0.25}), 0.1875);
    EXPECT_EQ(f.derivative(0), Rational(2) * x);
    EXPECT_EQ(f.substitute(1, Rational(1)), x * x - MultiPoly(ring, Rational(1)));
    EXPECT_EQ(f.pow(2).total_degree(), 4u);
    EXPECT_TRUE((f - f).is_zero());
}

TEST(Poly, ContentAndPrimitive) {
    auto ring = make_ring({"x"});
    auto f = parse_poly("-4/3*x^2 + 2/9", ring);
    EXPECT_EQ(f.content(), Rational(2, 9));
    EXPECT_EQ(to_string(f.primitive()), "6*x^2 - 1");
    EXPECT_EQ(to_string(f.monic()), "x^2 - 1/6");
}

TEST(Poly, MixedRingsRejected) {
    auto a = make_ring({"x"});
    auto b = make_ring({"y"});
    EXPECT_THROW(MultiPoly::variable(a, 0) + MultiPoly::variable(b, 0), DomainError);
    EXPECT_THROW(MultiPoly::variable(a, "y"), DomainError);
}

TEST(Poly, DivisionIdentity) {
    auto ring = make_ring({"x", "y"});
    auto f = parse_poly("x^2*y + x*y^2 + y^2", ring);
    std::vector<MultiPoly> g{parse_poly("x*y - 1", ring), parse_poly("y^2 - 1", ring)};
    auto d = divrem(f, g);
    EXPECT_EQ(to_string(d.remainder), "x + y + 1");
    EXPECT_EQ(d.quotients[0] * g[0] + d.quotients[1] * g[1] + d.remainder, f);
}

TEST(Poly, ToRingByName) {
    auto small = make_ring({"y"});
    auto big = make_ring({"x", "y"});
    auto f = parse_poly("y^2 + 1", small);
    EXPECT_EQ(f.to_ring(big), parse_poly("y^2 + 1", big));
    EXPECT_THROW(parse_poly("x", big).to_ring(small), DomainError);
}

// Commutative ring axioms on random sparse polynomials.
TEST(PolyProperty, RingAxioms) {
    std::mt19937_64 rng(7);
    auto ring = make_ring({"a", "b", "c"}, TermOrder{OrderKind::GrevLex, 0});
    for (int trial = 0; trial < 200; ++trial) {
        auto f = fixture::random_poly(rng, ring, 4, 2, 9);
        auto g = fixture::random_poly(rng, ring, 3, 2, 9);
        auto h = fixture::random_poly(rng, ring, 3, 1, 9);
        ASSERT_EQ(f * g, g * f);
        ASSERT_EQ((f * g) * h, f * (g * h));
        ASSERT_EQ(f * (g + h), f * g + f * h);
        ASSERT_EQ(f + g - g, f);
        ASSERT_EQ(parse_poly(to_string(f), ring), f);
        std::vector<Rational> pt{fixture::random_rational(rng, 5, 3), fixture::random_rational(rng, 5, 3),
                                 fixture::random_rational(rng, 5, 3)};
        ASSERT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
    }
}
