// Acceptance run: one PASS/FAIL line per criterion. Criterion 10 is a stretch goal and does not gate.
#include "flagein/cli.hpp"

#include "../oracles.hpp"
#include "../support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace flagein;
using nlohmann::json;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json cli_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (code != 0) throw std::runtime_error("cli exit " + std::to_string(code) + ": " + err.str());
    return json::parse(out.str());
}

RootSystem make(const char* label) { return RootSystem(RootSystemSpec::from_label(label)); }

std::string golden(const char* name) {
    std::ifstream in(std::string(FLAGEIN_TEST_DATA) + "/" + name);
    std::string line;
    std::getline(in, line);
    return line;
}

Verdict criterion1() {
    auto t0 = Clock::now();
    auto j = cli_json({"triples", "G2"});
    std::map<std::string, std::string> got;
    for (const auto& e : j["entries"]) got[e["label"]] = e["value"];
    std::map<std::string, std::string> expected{
        {"[3;12]", "1/4"}, {"[5;24]", "1/4"}, {"[6;34]", "1/4"}, {"[6;15]", "1/4"}, {"[4;23]", "1/3"}};
    double s = seconds_since(t0);
    return {got == expected && s < 1, std::to_string(got.size()) + " exact triples, " + std::to_string(s) + " s"};
}

Verdict criterion2() {
    auto t0 = Clock::now();
    auto ke = cli_json({"kaehler", "G2"});
    auto r = cli_json({"ricci", "G2", "--metric", "3,1,4,5,6,9"});
    bool all = r["r"].size() == 6;
    for (const auto& v : r["r"]) all = all && v == "1/12";
    double s = seconds_since(t0);
    bool ok = ke["metric"] == json({3, 1, 4, 5, 6, 9}) && all && r["residual"] == "0" && s < 1;
    return {ok, "metric " + ke["metric"].dump() + ", r_i = 1/12, residual " + r["residual"].get<std::string>()};
}

Verdict criterion3() {
    auto t0 = Clock::now();
    auto exprs = ricci_expressions(triple_tensor(make("G2")));
    auto printed = oracle::g2_ricci();
    auto ring = make_ring({"x1", "x2", "x3", "x4", "x5", "x6"});
    std::size_t match = 0;
    for (std::size_t a = 0; a < 6; ++a)
        match += oracle::cleared(oracle::as_map(exprs[a]), ring) == oracle::cleared(printed[a], ring);
    double s = seconds_since(t0);
    return {match == 6 && s < 10, std::to_string(match) + "/6 cleared polynomial identities"};
}

Verdict criterion4_6(const SolutionSet& ansatz, double secs, bool degenerate) {
    if (degenerate) {
        const auto& c = ansatz.cases.at(0);
        // Discriminant 20^2 - 4 * 15 * 9 < 0 confirms the certified count independently.
        bool ok = c.elimination_polynomial == "15*x2^2 - 20*x2 + 9" && c.real_roots == 0 && 20 * 20 - 4 * 15 * 9 < 0;
        return {ok, c.elimination_polynomial + ", certified real roots " + std::to_string(c.real_roots)};
    }
    const auto& c = ansatz.cases.at(1);
    bool ok = c.elimination_degree == 14 && c.elimination_polynomial == golden("eliminant_x6.txt") && secs < 60;
    return {ok, "degree " + std::to_string(c.elimination_degree) + ", coefficients " +
                    (c.elimination_polynomial == golden("eliminant_x6.txt") ? "match" : "differ") + ", " +
                    std::to_string(secs) + " s"};
}

Verdict criterion5(const SolutionSet& ansatz) {
    struct Expect {
        double x6, x2, x3, k;
    };
    const std::vector<Expect> expected{{0.7440, 0.2173, 1.0234, 0.4269}, {1.7896, 0.2762, 1.0347, 0.3560}};
    std::size_t hit = 0;
    double worst = 0;
    for (const auto& e : expected)
        for (const auto& s : ansatz.solutions) {
            if (std::abs(s.x[5] - e.x6) > 1e-4) continue;
            worst = std::max(worst, s.residual);
            hit += std::abs(s.x[1] - e.x2) < 1e-4 && std::abs(s.x[2] - e.x3) < 1e-4 && std::abs(s.x[3] - e.x3) < 1e-4 &&
                   std::abs(s.k - e.k) < 1e-4 && s.residual < 1e-10;
        }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu/2 metrics within 1e-4, worst residual %.1e", hit, worst);
    return {hit == 2 && ansatz.solutions.size() == 2, buf};
}

Verdict criterion7(const SolutionSet& all, double secs, std::size_t starts) {
    std::size_t kaehler = 0;
    for (const auto& s : all.solutions) kaehler += s.kaehler;
    bool agree = false;
    for (const auto& c : all.cases)
        for (const auto& n : c.notes) agree |= n.find("oracle classes agree") != std::string::npos;
    bool ok = all.classes.size() == 3 && kaehler == 1 && all.solutions.size() == 3 && agree && secs < 600;
    return {ok, std::to_string(all.classes.size()) + " classes (" + std::to_string(kaehler) + " Kaehler), " +
                    std::to_string(starts) + " starts, oracle " + (agree ? "agrees" : "disagrees") + ", " +
                    std::to_string(secs) + " s"};
}

Verdict criterion8() {
    auto a2 = make("A2");
    auto g2 = make("G2");
    Rational a2_res = einstein_residual(std::vector<Rational>(3, Rational(1)), triple_tensor(a2)).residual;
    Rational g2_res = einstein_residual(std::vector<Rational>(6, Rational(1)), triple_tensor(g2)).residual;
    bool ok = a2_res == 0 && kaehler_einstein_metric(a2) == std::vector<Integer>{1, 1, 2} && g2_res == Rational(1, 12);
    return {ok, "A2 normal residual " + to_string(a2_res) + ", A2 KE (1,1,2), G2 normal residual " + to_string(g2_res)};
}

// Each suite runs at least 200 randomized cases.
Verdict criterion9() {
    const int cases = 200;
    std::mt19937_64 rng(2024);
    std::vector<std::string> failed;
    std::vector<RootSystem> systems;
    for (const char* l : {"A2", "A3", "B2", "B3", "C3", "G2"}) systems.push_back(make(l));
    std::vector<TripleTensor> tensors;
    for (const auto& rs : systems) tensors.push_back(triple_tensor(rs));
    auto pick = [&] { return rng() % systems.size(); };

    bool ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        const auto& rs = systems[pick()];
        const auto& a = rs.positive()[rng() % rs.size()];
        Rational sum = 0;
        for (const auto& b : rs.positive()) sum += 2 * rs.form()(a, b) * rs.form()(a, b);
        ok = sum == rs.form().length_squared(a);
    }
    if (!ok) failed.push_back("killing");

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        std::size_t g = pick();
        const auto& rs = systems[g];
        const auto& t = tensors[g];
        std::size_t x = rng() % rs.size(), y = rng() % rs.size(), z = rng() % rs.size();
        Rational v = t(x, y, z);
        ok = t(y, x, z) == v && t(z, y, x) == v && t(x, z, y) == v;
        for (const auto& p : rs.weyl_permutations()) ok = ok && t(p[x], p[y], p[z]) == v;
    }
    if (!ok) failed.push_back("triples");

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        std::size_t g = pick();
        auto x = fixture::random_metric(rng, systems[g].size());
        Rational c = fixture::random_positive(rng, 20, 9);
        auto y = x;
        for (auto& v : y) v *= c;
        auto rx = ricci(x, tensors[g]).r, ry = ricci(y, tensors[g]).r;
        for (std::size_t a = 0; a < rx.size(); ++a) ok = ok && ry[a] * c == rx[a];
    }
    if (!ok) failed.push_back("homogeneity");

    ok = true;
    {
        auto g2 = make("G2");
        auto t = triple_tensor(g2);
        const auto solutions = oracle::g2_kaehler_solutions();
        for (int i = 0; i < cases && ok; ++i) {
            const auto& p = g2.weyl_permutations()[rng() % g2.weyl_permutations().size()];
            auto x = fixture::random_metric(rng, 6);
            ok = ricci(permute_metric(x, p), t).r == permute_metric(ricci(x, t).r, p);
            auto s = permute_metric(solutions[rng() % solutions.size()], p);
            ok = ok && einstein_residual(s, t).residual == 0;
        }
    }
    if (!ok) failed.push_back("weyl");

    ok = true;
    {
        auto ring = make_ring({"x", "y", "z"}, TermOrder{OrderKind::GrevLex, 0});
        int done = 0;
        for (int i = 0; done < cases && ok && i < 4 * cases; ++i) {
            std::vector<MultiPoly> gens;
            for (int k = 0; k < 3; ++k) gens.push_back(fixture::random_poly(rng, ring, 3, 2, 5));
            GroebnerBudget budget;
            budget.max_coeff_bits = 4000;
            auto gb = buchberger(gens, budget);
            if (!gb.complete()) continue;
            ++done;
            const auto& G = gb.generators;
            for (std::size_t a = 0; a < G.size() && ok; ++a) {
                ok = normal_form(G[a], G).is_zero();
                for (std::size_t b = a + 1; b < G.size() && ok; ++b) ok = normal_form(s_polynomial(G[a], G[b]), G).is_zero();
            }
            for (const auto& f : gens) ok = ok && reduces_to_zero(f, G);
        }
        ok = ok && done >= cases;
    }
    if (!ok) failed.push_back("groebner");

    ok = true;
    for (int i = 0; i < cases && ok; ++i) {
        std::set<Rational> roots;
        UniPoly p({Rational(1)});
        for (std::size_t k = 0, n = 1 + rng() % 6; k < n; ++k) {
            Rational r = fixture::random_rational(rng, 40, 7);
            roots.insert(r);
            std::vector<Rational> c(p.coeffs().size() + 1);
            for (std::size_t j = 0; j < p.coeffs().size(); ++j) {
                c[j + 1] += p.coeffs()[j];
                c[j] -= r * p.coeffs()[j];
            }
            p = UniPoly(c);
        }
        auto iso = sturm_isolate(p);
        ok = iso.size() == roots.size() && count_real_roots(p) == roots.size();
        auto it = roots.begin();
        for (std::size_t k = 0; ok && k < iso.size(); ++k, ++it) {
            ok = iso[k].lo <= *it && *it <= iso[k].hi && (k == 0 || iso[k - 1].hi < iso[k].lo);
        }
    }
    if (!ok) failed.push_back("sturm");

    std::string detail = "6 suites x " + std::to_string(cases) + " cases";
    for (const auto& f : failed) detail += ", failed " + f;
    return {failed.empty(), detail};
}

Verdict criterion10(const SolutionSet& all, bool oracle_passed) {
    const CaseRecord* general = nullptr;
    for (const auto& c : all.cases)
        if (c.name.rfind("(x1-x5)", 0) == 0) general = &c;
    if (!general) return {false, "general case missing"};
    if (general->status != "complete") {
        std::string reason = general->notes.empty() ? "" : general->notes.front();
        return {false, "budget-exceeded (" + reason + "); oracle classification " +
                           (oracle_passed ? "passed" : "failed") + " for this region"};
    }
    // Only reached when the exact elimination finishes.
    const auto expected = oracle::g2_degree84_positive_roots();
    bool ok = general->positive_roots == expected.size() + 6;
    return {ok, "degree " + std::to_string(general->elimination_degree) + ", positive roots " +
                    std::to_string(general->positive_roots)};
}

}  // namespace

int main() {
    std::vector<std::pair<int, Verdict>> results;
    auto guard = [](const std::function<Verdict()>& f) {
        try {
            return f();
        } catch (const std::exception& e) {
            return Verdict{false, std::string("exception: ") + e.what()};
        }
    };

    const auto rs = make("G2");
    results.emplace_back(1, guard(criterion1));
    results.emplace_back(2, guard(criterion2));
    results.emplace_back(3, guard(criterion3));

    SolutionSet ansatz;
    double ansatz_secs = 0;
    Verdict ansatz_error;
    try {
        auto t0 = Clock::now();
        ansatz = solve_symmetric_ansatz(rs);
        classify(ansatz, rs, 1e-6);
        ansatz_secs = seconds_since(t0);
    } catch (const std::exception& e) {
        ansatz_error = {false, std::string("exception: ") + e.what()};
    }
    bool have_ansatz = ansatz.cases.size() >= 2;
    results.emplace_back(4, have_ansatz ? guard([&] { return criterion4_6(ansatz, ansatz_secs, false); }) : ansatz_error);
    results.emplace_back(5, have_ansatz ? guard([&] { return criterion5(ansatz); }) : ansatz_error);
    results.emplace_back(6, have_ansatz ? guard([&] { return criterion4_6(ansatz, ansatz_secs, true); }) : ansatz_error);

    OracleOptions oracle_opts;
    oracle_opts.starts = 100000;
    oracle_opts.seed = 1;
    SolutionSet all;
    Verdict c7;
    {
        auto t0 = Clock::now();
        try {
            all = classify_g2(rs, SolveOptions{}, oracle_opts);
            c7 = criterion7(all, seconds_since(t0), oracle_opts.starts);
        } catch (const std::exception& e) {
            c7 = {false, std::string("exception: ") + e.what()};
        }
    }
    results.emplace_back(7, c7);
    results.emplace_back(8, guard(criterion8));
    results.emplace_back(9, guard(criterion9));
    results.emplace_back(10, guard([&] { return criterion10(all, c7.pass); }));

    bool gating_ok = true;
    for (const auto& [n, v] : results) {
        bool stretch = n == 10;
        if (!stretch) gating_ok = gating_ok && v.pass;
        std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << (stretch ? " (stretch, not gating)" : "")
                  << " - " << v.detail << "\n";
    }
    return gating_ok ? 0 : 1;
}
