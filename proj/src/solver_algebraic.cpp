#include "flagein/solver.hpp"

#include <algorithm>

namespace flagein {

namespace {

// The ring variable order used for the G2 eliminations: x6 is the last (eliminated-to) variable.
RingPtr elimination_ring(const EinsteinSystem& sys, const std::vector<std::string>& order) {
    for (const auto& v : order)
        if (!sys.ring->has_var(v)) throw DomainError("system has no variable " + v);
    return make_ring(order, TermOrder{OrderKind::Lex, 0});
}

std::vector<MultiPoly> in_ring(const std::vector<MultiPoly>& polys, const RingPtr& ring) {
    std::vector<MultiPoly> out;
    for (const auto& p : polys) out.push_back(p.to_ring(ring));
    return out;
}

std::vector<std::string> names_of(const std::vector<MultiPoly>& polys) {
    std::vector<std::string> out;
    for (const auto& p : polys) out.push_back(to_string(p));
    return out;
}

MultiPoly univariate_generator(const GroebnerBasis& gb, std::size_t var) {
    const auto elim = gb.eliminate_before(var);
    if (elim.size() != 1) throw DomainError("expected exactly one eliminant in the last variable");
    return elim.front();
}

// In a shape basis every other variable v has a generator c*v + h(last) with c constant.
struct ShapeBasis {
    std::size_t last = 0;
    UniPoly eliminant;
    std::vector<std::optional<UniPoly>> expression;  // per ring variable: v = expression(last)
};

ShapeBasis shape_basis(const GroebnerBasis& gb) {
    const std::size_t n = gb.ring->nvars();
    ShapeBasis sb;
    sb.last = n - 1;
    sb.eliminant = UniPoly::from_multipoly(univariate_generator(gb, sb.last), sb.last);
    sb.expression.resize(n);
    for (const auto& g : gb.generators) {
        const Monomial& lm = g.leading_monomial();
        if (lm.degree() != 1 || lm[sb.last] != 0) continue;
        std::size_t v = 0;
        while (lm[v] == 0) ++v;
        MultiPoly rest = g - MultiPoly(gb.ring, std::vector<Term>{g.leading_term()});
        rest *= Rational(-1) / g.leading_coeff();
        try {
            sb.expression[v] = UniPoly::from_multipoly(rest, sb.last);
        } catch (const DomainError&) {
            continue;
        }
    }
    for (std::size_t v = 0; v + 1 < n; ++v)
        if (!sb.expression[v]) throw DomainError("Gröbner basis is not in shape position for " + gb.ring->vars[v]);
    return sb;
}

struct CertifiedPoint {
    std::vector<RationalInterval> values;  // per ring variable
    bool exact = false;
};

CertifiedPoint certify(const ShapeBasis& sb, IsolatingInterval root, const Rational& precision) {
    if (auto q = rational_root(root)) root.lo = root.hi = *q;
    Rational width = precision;
    for (int attempt = 0; attempt < 64; ++attempt) {
        root = refine_root(root, width);
        RationalInterval x{root.lo, root.hi};
        CertifiedPoint pt;
        pt.exact = root.exact();
        bool tight = x.width() < precision;
        for (std::size_t v = 0; v < sb.expression.size(); ++v) {
            pt.values.push_back(v == sb.last ? x : evaluate(*sb.expression[v], x));
            tight = tight && pt.values.back().width() < precision;
        }
        bool sign_known = std::all_of(pt.values.begin(), pt.values.end(),
                                      [](const RationalInterval& r) { return !r.contains_zero() || r.width() == 0; });
        if (tight && sign_known) return pt;
        width /= 1024;
    }
    throw DomainError("could not certify back-substituted coordinates");
}

}  // namespace

SolutionSet solve_symmetric_ansatz(const RootSystem& rs, const SolveOptions& options) {
    if (rs.spec().label() != "G2") throw ConfigError("the symmetric ansatz is specific to G2");
    const Normalization norm = Normalization::parse("x1=1,x5=1,x4=x3");
    const EinsteinSystem sys = build_system(rs, norm);
    const RingPtr ring = elimination_ring(sys, {"x3", "x2", "x6"});
    const auto polys = in_ring(sys.polynomials, ring);
    const auto x2 = MultiPoly::variable(ring, "x2");
    const auto x3 = MultiPoly::variable(ring, "x3");
    const auto x6 = MultiPoly::variable(ring, "x6");
    const MultiPoly one(ring, Rational(1));
    const TripleTensor triples = triple_tensor(rs);

    SolutionSet out;
    out.group = rs.spec().label();
    out.normalization = norm.label();

    {
        CaseRecord rec;
        rec.name = "x6=1";
        rec.assignments = norm.label() + ",x6=1";
        std::vector<MultiPoly> nonzero{x2, x3};
        rec.saturations = names_of(nonzero);
        auto gens = polys;
        gens.push_back(x6 - one);
        GroebnerBasis gb = saturate(gens, nonzero, options.budget);
        if (!gb.complete()) throw DomainError("x6=1 branch exceeded the Gröbner budget: " + gb.budget_reason);
        // x6 is fixed, so the eliminant lives in the next variable, x2.
        std::vector<MultiPoly> in_x2;
        for (const auto& g : gb.generators)
            if (g.sole_variable() == 1) in_x2.push_back(g);
        if (in_x2.size() != 1) throw DomainError("x6=1 branch: expected one univariate polynomial in x2");
        const UniPoly u = UniPoly::from_multipoly(in_x2.front(), 1);
        rec.elimination_degree = u.degree();
        rec.elimination_polynomial = to_string(in_x2.front());
        rec.real_roots = count_real_roots(u);
        rec.positive_roots = count_real_roots(u, RealRange::positive());
        for (const auto& g : gb.generators)
            if (g.involves(0)) rec.notes.push_back(to_string(g) + " = 0");
        if (rec.real_roots != 0) throw DomainError("x6=1 branch unexpectedly has real roots");
        out.cases.push_back(std::move(rec));
    }

    {
        CaseRecord rec;
        rec.name = "x6!=1";
        rec.assignments = norm.label();
        std::vector<MultiPoly> nonzero{x2, x3, x6, x6 - one};
        rec.saturations = names_of(nonzero);
        GroebnerBasis gb = saturate(polys, nonzero, options.budget);
        if (!gb.complete()) throw DomainError("x6!=1 branch exceeded the Gröbner budget: " + gb.budget_reason);
        ShapeBasis sb = shape_basis(gb);
        rec.elimination_degree = sb.eliminant.degree();
        rec.elimination_polynomial = to_string(sb.eliminant.to_multipoly(ring, sb.last));
        rec.real_roots = count_real_roots(sb.eliminant);
        auto roots = sturm_isolate(sb.eliminant, RealRange::positive());
        rec.positive_roots = roots.size();
        for (const auto& root : roots) {
            CertifiedPoint pt = certify(sb, root, options.precision);
            // ring order is (x3, x2, x6); coordinates of the full metric follow the system gauge
            std::vector<double> free{pt.values[1].midpoint(), pt.values[0].midpoint(), pt.values[2].midpoint()};
            bool positive = std::all_of(pt.values.begin(), pt.values.end(),
                                        [](const RationalInterval& r) { return sgn(r.lo) > 0; });
            if (!positive) {
                rec.notes.push_back("root x6~" + std::to_string(free[2]) + " rejected: nonpositive coordinate");
                continue;
            }
            EinsteinSolution sol;
            sol.x = sys.full_metric(free);
            sol.provenance = Provenance::Algebraic;
            auto er = einstein_residual(sol.x, triples);
            sol.k = er.k;
            sol.residual = er.residual;
            if (pt.exact) {
                std::vector<Rational> exact_free{pt.values[1].lo, pt.values[0].lo, pt.values[2].lo};
                auto xe = sys.full_metric(exact_free);
                if (sgn(einstein_residual(xe, triples).residual) == 0) sol.exact = xe;
            }
            out.solutions.push_back(std::move(sol));
        }
        out.cases.push_back(std::move(rec));
    }

    {
        // Without the x4 = x3 ansatz the x6 != 1 component still forces x3 = x4.
        const Normalization wide = Normalization::parse("x1=1,x5=1");
        const EinsteinSystem full = build_system(rs, wide, TermOrder{OrderKind::GrevLex, 0});
        const auto w6 = MultiPoly::variable(full.ring, "x6");
        auto nonzero = full.nonvanishing;
        nonzero.push_back(w6 - MultiPoly(full.ring, Rational(1)));
        CaseRecord rec;
        rec.name = "x3=x4 check";
        rec.assignments = wide.label();
        rec.saturations = names_of(nonzero);
        GroebnerBasis gb = saturate(full.polynomials, nonzero, options.budget);
        if (!gb.complete()) {
            rec.status = "budget-exceeded";
            rec.notes.push_back(gb.budget_reason);
        } else {
            const auto diff = MultiPoly::variable(full.ring, "x3") - MultiPoly::variable(full.ring, "x4");
            if (!reduces_to_zero(diff, gb.generators)) throw DomainError("x3 - x4 is not in the x6 != 1 ideal");
            rec.notes.push_back("x3 - x4 lies in the saturated ideal (grevlex basis, " +
                                std::to_string(gb.generators.size()) + " generators)");
        }
        out.cases.push_back(std::move(rec));
    }
    return out;
}

SolutionSet solve_general_case(const RootSystem& rs, const SolveOptions& options) {
    if (rs.spec().label() != "G2") throw ConfigError("the general case tree is specific to G2");
    const Normalization norm = Normalization::parse("x1=1");
    const EinsteinSystem sys = build_system(rs, norm);
    const RingPtr ring = sys.ring;  // x2 > x3 > x4 > x5 > x6, lex
    const auto x5 = MultiPoly::variable(ring, "x5");
    const auto x6 = MultiPoly::variable(ring, "x6");
    const MultiPoly one(ring, Rational(1));
    const TripleTensor triples = triple_tensor(rs);

    SolutionSet out;
    out.group = rs.spec().label();
    out.normalization = norm.label();
    CaseRecord rec;
    rec.name = "(x1-x5)(x1-x6)(x5-x6)!=0";
    rec.assignments = norm.label();
    auto nonzero = sys.nonvanishing;
    nonzero.push_back(one - x5);
    nonzero.push_back(one - x6);
    nonzero.push_back(x5 - x6);
    rec.saturations = names_of(nonzero);

    GroebnerBasis gb = saturate(sys.polynomials, nonzero, options.general_budget);
    if (!gb.complete()) {
        rec.status = "budget-exceeded";
        rec.notes.push_back(gb.budget_reason);
        rec.notes.push_back("partial basis with " + std::to_string(gb.generators.size()) + " generators after " +
                            std::to_string(gb.stats.pairs_reduced) + " S-pairs; deferring to the numeric oracle");
        out.cases.push_back(std::move(rec));
        return out;
    }

    ShapeBasis sb = shape_basis(gb);
    rec.elimination_degree = sb.eliminant.degree();
    rec.elimination_polynomial = to_string(sb.eliminant.to_multipoly(ring, sb.last));
    rec.real_roots = count_real_roots(sb.eliminant);
    auto roots = sturm_isolate(sb.eliminant, RealRange::positive());
    rec.positive_roots = roots.size();
    for (const auto& root : roots) {
        CertifiedPoint pt = certify(sb, root, options.precision);
        std::vector<double> free;
        for (const auto& v : pt.values) free.push_back(v.midpoint());
        bool positive = std::all_of(pt.values.begin(), pt.values.end(),
                                    [](const RationalInterval& r) { return sgn(r.lo) > 0; });
        if (!positive) {
            rec.notes.push_back("root x6~" + std::to_string(free.back()) + " rejected: nonpositive coordinate");
            continue;
        }
        EinsteinSolution sol;
        sol.x = sys.full_metric(free);
        sol.provenance = Provenance::Algebraic;
        auto er = einstein_residual(sol.x, triples);
        sol.k = er.k;
        sol.residual = er.residual;
        if (pt.exact) {
            std::vector<Rational> exact_free;
            for (const auto& v : pt.values) exact_free.push_back(v.lo);
            auto xe = sys.full_metric(exact_free);
            if (sgn(einstein_residual(xe, triples).residual) == 0) sol.exact = xe;
        }
        out.solutions.push_back(std::move(sol));
    }
    out.cases.push_back(std::move(rec));
    return out;
}

}  // namespace flagein
