#include "flagein/solver.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

using namespace flagein;

namespace {

RootSystem make(const char* label) { return RootSystem(RootSystemSpec::from_label(label)); }

std::string read_line(const std::string& name) {
    std::ifstream in(std::string(FLAGEIN_TEST_DATA) + "/" + name);
    std::string line;
    std::getline(in, line);
    return line;
}

bool same_up_to_scale(const MultiPoly& a, const MultiPoly& b) {
    return !a.is_zero() && !b.is_zero() && a.primitive() == b.primitive();
}

// Cleared general-case equations with x1 = 1, as printed.
const char* kGeneral[] = {
    "-3*x2^2*x3*x6 - 6*x2^2*x4*x5*x6 - 4*x2^2*x5*x6 - 3*x2*x3*x4*x5^2 + 24*x2*x3*x4*x5*x6 - 3*x2*x3*x4*x6^2 "
    "+ 3*x2*x3*x4 + 4*x3^2*x5*x6 + 3*x3*x4^2*x6 - 24*x3*x4*x5*x6 + 3*x3*x5^2*x6 + 4*x4^2*x5*x6 + 6*x4*x5*x6",
    "3*x2^2*x3*x6 + 6*x2^2*x4*x5*x6 + 8*x2^2*x5*x6 - 3*x2*x3^2*x5 + 3*x2*x4^2*x5 - 24*x2*x4*x5*x6 "
    "+ 3*x2*x5*x6^2 - 6*x3^2*x4*x5*x6 - 8*x3^2*x5*x6 - 3*x3*x4^2*x6 + 24*x3*x4*x5*x6 - 3*x3*x5^2*x6",
    "3*x2^2*x3*x6 - 3*x2^2*x4*x5*x6 + 6*x2*x3^2*x5 - 24*x2*x3*x5*x6 - 6*x2*x4^2*x5 + 24*x2*x4*x5*x6 "
    "+ 3*x3^2*x4*x5*x6 + 8*x3^2*x5*x6 - 3*x3*x4^2*x6 + 3*x3*x5^2*x6 - 8*x4^2*x5*x6 - 3*x4*x5*x6",
    "-4*x2^2*x5*x6 - 3*x2*x3^2*x5 - 3*x2*x3*x4*x5^2 + 3*x2*x3*x4*x6^2 - 24*x2*x3*x4*x6 + 3*x2*x3*x4 "
    "+ 24*x2*x3*x5*x6 + 3*x2*x4^2*x5 - 3*x2*x5*x6^2 - 4*x3^2*x5*x6 + 6*x3*x4^2*x6 - 6*x3*x5^2*x6 + 4*x4^2*x5*x6",
    "-x2^2*x4*x5*x6 + x2*x3^2*x5 + 8*x2*x3*x4*x5*x6 - 8*x2*x3*x4*x5 - 2*x2*x3*x4*x6^2 + 2*x2*x3*x4 "
    "+ x2*x4^2*x5 - x2*x5*x6^2 - x3^2*x4*x5*x6 + x4*x5*x6",
};

const char* kAnsatz[] = {
    "-9*x2^2*x3 - 4*x2^2 - 3*x2*x3^2*x6 + 24*x2*x3^2 + 3*x3^3 - 16*x3^2 + 9*x3",
    "9*x2^2*x3 + 8*x2^2 - 24*x2*x3 + 3*x2*x6 - 9*x3^3 + 16*x3^2 - 3*x3",
    "-3*x2^2*x3*x6 - 4*x2^2*x6 - 3*x2*x3^2*x6^2 - 12*x2*x3^2 + 24*x2*x3*x6 - 6*x2*x6^2 + 3*x3^3*x6 - 3*x3*x6",
};

LaurentPoly difference(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<std::vector<int>, Rational> m;
    for (const auto& t : a) m[t.exps] += t.coeff;
    for (const auto& t : b) m[t.exps] -= t.coeff;
    LaurentPoly out;
    for (const auto& [e, c] : m)
        if (sgn(c) != 0) out.push_back({c, e});
    return out;
}

}  // namespace

TEST(Normalization, ParseAndLabel) {
    auto n = Normalization::parse("x1=1, x5=1,x4=x3");
    EXPECT_EQ(n.fixed.size(), 2u);
    ASSERT_EQ(n.equal.size(), 1u);
    EXPECT_EQ(n.equal[0], (std::pair<std::size_t, std::size_t>{3, 2}));
    EXPECT_EQ(n.label(), "x1=1,x5=1,x4=x3");
    EXPECT_THROW(Normalization::parse("y1=1"), ConfigError);
    EXPECT_THROW(Normalization::parse("x1"), ConfigError);
    EXPECT_THROW(Normalization::parse("x0=1"), ConfigError);
}

TEST(BuildSystem, AnsatzMatchesPrintedEquations) {
    auto sys = build_system(make("G2"), Normalization::parse("x1=1,x5=1,x4=x3"));
    ASSERT_EQ(sys.polynomials.size(), 3u);
    EXPECT_EQ(sys.ring->vars, (std::vector<std::string>{"x2", "x3", "x6"}));
    for (int i = 0; i < 3; ++i)
        EXPECT_TRUE(same_up_to_scale(sys.polynomials[i], parse_poly(kAnsatz[i], sys.ring))) << i;
}

TEST(BuildSystem, GeneralCaseMatchesPrintedEquations) {
    auto rs = make("G2");
    auto sys = build_system(rs, Normalization::parse("x1=1"));
    ASSERT_EQ(sys.polynomials.size(), 5u);
    for (int i = 0; i < 4; ++i)
        EXPECT_TRUE(same_up_to_scale(sys.polynomials[i], parse_poly(kGeneral[i], sys.ring))) << i;
    // The fifth printed polynomial is the cleared r1 - r6; r1 - r6 telescopes from the differences.
    auto r = ricci_expressions(triple_tensor(rs));
    auto fifth = parse_poly(kGeneral[4], sys.ring);
    EXPECT_TRUE(same_up_to_scale(clear_denominators(difference(r[0], r[5]), sys), fifth));
    EXPECT_TRUE(same_up_to_scale(clear_denominators(difference(r[4], r[5]), sys), sys.polynomials[4]));
}

// Each cleared polynomial is a constant times (r_a - r_b) times the least monomial clearing its denominators.
TEST(BuildSystem, PolynomialsReexpandToRicciDifferences) {
    auto rs = make("G2");
    auto sys = build_system(rs, Normalization::parse("x1=1"));
    auto r = ricci_expressions(triple_tensor(rs));
    const std::vector<std::vector<Rational>> points{{Rational(2, 3), Rational(5, 4), Rational(7, 2), Rational(3), Rational(1, 5)},
                                                    {Rational(1, 7), Rational(2), Rational(9, 5), Rational(4, 3), Rational(6)},
                                                    {Rational(3), Rational(1, 2), Rational(1, 3), Rational(5, 2), Rational(7, 4)}};
    for (std::size_t i = 0; i < sys.polynomials.size(); ++i) {
        auto [a, b] = sys.equations[i];
        auto d = difference(r[a], r[b]);
        std::vector<int> low(6, 0);
        for (const auto& t : d)
            for (std::size_t v = 1; v < 6; ++v) low[v] = std::min(low[v], t.exps[v]);
        std::optional<Rational> scale;
        for (const auto& free : points) {
            auto x = sys.full_metric(free);
            Rational m = 1;
            for (std::size_t v = 1; v < 6; ++v)
                for (int e = 0; e < -low[v]; ++e) m *= x[v];
            Rational ratio = sys.polynomials[i].evaluate(free) / (m * evaluate(d, x));
            if (!scale) scale = ratio;
            EXPECT_EQ(ratio, *scale) << "equation " << i;
        }
        EXPECT_NE(*scale, 0);
    }
}

TEST(BuildSystem, DegenerateInputs) {
    auto a1 = build_system(make("A1"), Normalization::parse("x1=1"));
    EXPECT_TRUE(a1.polynomials.empty());
    EXPECT_EQ(a1.dimension(), 0u);
    EXPECT_THROW(build_system(make("G2"), Normalization::parse("x1=1,x1=2")), DomainError);
    EXPECT_THROW(build_system(make("G2"), Normalization::parse("x2=x3")), DomainError);
    EXPECT_THROW(build_system(make("G2"), Normalization::parse("x1=-1")), DomainError);
    EXPECT_THROW(build_system(make("A2"), Normalization::parse("x7=1")), DomainError);
}

TEST(SymmetricAnsatz, ReproducesCaseTree) {
    auto set = solve_symmetric_ansatz(make("G2"));
    ASSERT_EQ(set.cases.size(), 3u);
    const auto& flat = set.cases[0];
    EXPECT_EQ(flat.elimination_degree, 2);
    EXPECT_EQ(flat.real_roots, 0u);
    EXPECT_EQ(flat.elimination_polynomial, "15*x2^2 - 20*x2 + 9");

    const auto& main = set.cases[1];
    EXPECT_EQ(main.elimination_degree, 14);
    EXPECT_EQ(main.elimination_polynomial, read_line("eliminant_x6.txt"));
    EXPECT_EQ(main.real_roots, 2u);
    EXPECT_EQ(main.positive_roots, 2u);
    EXPECT_EQ(set.cases[2].status, "complete");

    ASSERT_EQ(set.solutions.size(), 2u);
    std::vector<std::vector<double>> expected{{1, 0.2173, 1.0234, 1.0234, 1, 0.7440}, {1, 0.2762, 1.0347, 1.0347, 1, 1.7896}};
    std::vector<double> ks{0.4269, 0.3560};
    auto sols = set.solutions;
    std::sort(sols.begin(), sols.end(), [](auto& a, auto& b) { return a.x[5] < b.x[5]; });
    for (int s = 0; s < 2; ++s) {
        for (int i = 0; i < 6; ++i) EXPECT_NEAR(sols[s].x[i], expected[s][i], 1e-4);
        EXPECT_NEAR(sols[s].k, ks[s], 1e-4);
        EXPECT_LT(sols[s].residual, 1e-10);
        EXPECT_EQ(sols[s].provenance, Provenance::Algebraic);
    }
}

TEST(SymmetricAnsatz, RejectsOtherGroups) { EXPECT_THROW(solve_symmetric_ansatz(make("A2")), ConfigError); }

TEST(GeneralCase, BudgetExhaustionIsReported) {
    SolveOptions options;
    options.general_budget = GroebnerBudget{40, 0, 0, 0};
    auto set = solve_general_case(make("G2"), options);
    ASSERT_EQ(set.cases.size(), 1u);
    EXPECT_EQ(set.cases[0].status, "budget-exceeded");
    EXPECT_TRUE(set.solutions.empty());
}

TEST(Newton, KaehlerPointIsFixed) {
    auto sys = build_system(make("G2"), Normalization::parse("x1=1"));
    std::vector<double> start{1.0 / 3, 4.0 / 3, 5.0 / 3, 2.0, 3.0};
    OracleOptions o;
    o.tol = 1e-12;
    auto r = newton_solve(sys, start, o);
    ASSERT_TRUE(r);
    EXPECT_LE(r->iterations, 2u);
    for (std::size_t i = 0; i < start.size(); ++i) EXPECT_NEAR(r->point[i], start[i], 1e-12);
}

TEST(Oracle, A2FindsNormalAndKaehlerClasses) {
    auto rs = make("A2");
    OracleOptions o;
    o.starts = 300;
    auto set = newton_oracle(rs, build_system(rs, Normalization::parse("x1=1")), o);
    ASSERT_EQ(set.classes.size(), 2u);
    int kaehler = 0;
    for (const auto& s : set.solutions) kaehler += s.kaehler;
    EXPECT_EQ(kaehler, 1);
    bool normal = std::any_of(set.classes.begin(), set.classes.end(), [](const std::vector<double>& c) {
        return std::all_of(c.begin(), c.end(), [](double v) { return std::abs(v - 1) < 1e-9; });
    });
    EXPECT_TRUE(normal);
}

TEST(Oracle, DeterministicForSeed) {
    auto rs = make("G2");
    auto sys = build_system(rs, Normalization::parse("x1=1"));
    OracleOptions o;
    o.starts = 400;
    o.seed = 42;
    o.threads = 3;
    auto a = newton_oracle(rs, sys, o);
    o.threads = 1;
    auto b = newton_oracle(rs, sys, o);
    EXPECT_EQ(a.classes, b.classes);
    EXPECT_EQ(a.cases[0].notes, b.cases[0].notes);
}

TEST(Oracle, A1IsTriviallyEinstein) {
    auto rs = make("A1");
    auto set = newton_oracle(rs, build_system(rs, Normalization::parse("x1=1")), {});
    ASSERT_EQ(set.classes.size(), 1u);
    EXPECT_TRUE(set.solutions[0].kaehler);
}

TEST(Classify, SixKaehlerSolutionsFormOneClass) {
    auto rs = make("G2");
    const auto listed = oracle::g2_kaehler_solutions();
    SolutionSet set;
    for (const auto& x : listed) {
        EinsteinSolution s;
        for (const auto& v : x) s.x.push_back(v.get_d());
        s.exact = x;
        set.solutions.push_back(s);
    }
    classify(set, rs, 1e-6);
    ASSERT_EQ(set.classes.size(), 1u);
    ASSERT_EQ(set.solutions.size(), 1u);
    EXPECT_TRUE(set.solutions[0].kaehler);
    EXPECT_EQ(set.solutions[0].members, 6u);
}

TEST(Classify, RejectsNonEinsteinInput) {
    SolutionSet set;
    EinsteinSolution s;
    s.x = {1, 1, 1, 1, 1, 1};
    set.solutions.push_back(s);
    EXPECT_THROW(classify(set, make("G2"), 1e-6), std::logic_error);
}

TEST(Classify, TheoremMetricsStayDistinctUnderPermutation) {
    auto rs = make("G2");
    auto ansatz = solve_symmetric_ansatz(rs);
    SolutionSet set;
    for (const auto& s : ansatz.solutions)
        for (const auto& p : rs.weyl_permutations()) {
            EinsteinSolution t = s;
            t.x = permute_metric(s.x, p);
            for (auto& v : t.x) v *= 2.5;
            set.solutions.push_back(t);
        }
    classify(set, rs, 1e-6);
    EXPECT_EQ(set.classes.size(), 2u);
    for (const auto& s : set.solutions) EXPECT_FALSE(s.kaehler);
}

// Weyl-permuted and rescaled Einstein solutions stay Einstein and land in the same class.
TEST(SolverProperty, WeylEquivarianceOfSolutions) {
    auto rs = make("G2");
    auto triples = triple_tensor(rs);
    std::vector<std::vector<double>> seeds;
    for (const auto& s : solve_symmetric_ansatz(rs).solutions) seeds.push_back(s.x);
    for (const auto& x : oracle::g2_kaehler_solutions()) {
        std::vector<double> d;
        for (const auto& v : x) d.push_back(v.get_d());
        seeds.push_back(d);
    }
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> scale(0.05, 20.0);
    for (int trial = 0; trial < 240; ++trial) {
        const auto& x = seeds[rng() % seeds.size()];
        const auto& p = rs.weyl_permutations()[rng() % rs.weyl_permutations().size()];
        double c = scale(rng);
        auto y = permute_metric(x, p);
        for (auto& v : y) v *= c;
        auto er = einstein_residual(y, triples);
        ASSERT_LT(er.residual * c, 1e-10);
        ASSERT_LT(orbit_distance(y, x, rs), 1e-9);
        auto cx = canonical_metric(x, rs, 1e-9), cy = canonical_metric(y, rs, 1e-9);
        for (std::size_t i = 0; i < cx.size(); ++i) ASSERT_NEAR(cx[i], cy[i], 1e-9);
    }
}
