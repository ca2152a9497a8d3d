#include "flagein/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace flagein {

namespace {

std::size_t parse_coordinate(std::string_view name, std::string_view whole) {
    auto bad = [&] { return ConfigError("bad normalization entry '" + std::string(name) + "' in '" + std::string(whole) + "'"); };
    if (name.size() < 2 || name[0] != 'x') throw bad();
    std::size_t v = 0;
    for (char c : name.substr(1)) {
        if (c < '0' || c > '9') throw bad();
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    if (v == 0) throw bad();
    return v - 1;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

}  // namespace

Normalization Normalization::parse(std::string_view text) {
    Normalization n;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view item = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (!item.empty()) {
            std::size_t eq = item.find('=');
            if (eq == std::string_view::npos) throw ConfigError("normalization entry without '=': " + std::string(item));
            std::size_t lhs = parse_coordinate(trim(item.substr(0, eq)), text);
            std::string_view rhs = trim(item.substr(eq + 1));
            if (!rhs.empty() && rhs[0] == 'x') {
                n.equal.emplace_back(lhs, parse_coordinate(rhs, text));
            } else {
                n.fixed.emplace_back(lhs, parse_rational(rhs));
            }
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return n;
}

std::string Normalization::label() const {
    std::vector<std::string> parts;
    for (const auto& [i, c] : fixed) parts.push_back("x" + std::to_string(i + 1) + "=" + to_string(c));
    for (const auto& [i, j] : equal) parts.push_back("x" + std::to_string(i + 1) + "=x" + std::to_string(j + 1));
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + parts[k];
    return out;
}

std::vector<double> EinsteinSystem::full_metric(const std::vector<double>& free_values) const {
    std::vector<double> x;
    for (const auto& c : coordinates) x.push_back(c.evaluate(free_values));
    return x;
}

std::vector<Rational> EinsteinSystem::full_metric(const std::vector<Rational>& free_values) const {
    std::vector<Rational> x;
    for (const auto& c : coordinates) x.push_back(c.evaluate(free_values));
    return x;
}

namespace {

struct Gauge {
    std::vector<std::optional<Rational>> value;  // per original index
    std::vector<std::size_t> var;                // ring variable per original index when free
};

Gauge resolve_gauge(std::size_t s, const Normalization& n) {
    std::vector<std::size_t> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto check = [&](std::size_t a) {
        if (a >= s) throw DomainError("normalization refers to x" + std::to_string(a + 1) + " but there are only " +
                                      std::to_string(s) + " summands");
    };
    for (const auto& [a, b] : n.equal) {
        check(a);
        check(b);
        std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<std::optional<Rational>> root_value(s);
    for (const auto& [a, c] : n.fixed) {
        check(a);
        if (sgn(c) <= 0) throw DomainError("gauge values must be positive");
        auto& slot = root_value[find(a)];
        if (slot && *slot != c) throw DomainError("inconsistent normalization: x" + std::to_string(a + 1) +
                                                  " fixed to two different values");
        slot = c;
    }
    if (n.fixed.empty()) throw DomainError("normalization must fix at least one coordinate (scale gauge)");
    Gauge g;
    g.value.resize(s);
    g.var.assign(s, 0);
    std::map<std::size_t, std::size_t> root_var;
    for (std::size_t a = 0; a < s; ++a) {
        std::size_t r = find(a);
        if (root_value[r]) {
            g.value[a] = root_value[r];
        } else {
            auto [it, inserted] = root_var.emplace(r, root_var.size());
            g.var[a] = it->second;
        }
    }
    return g;
}

using LaurentMap = std::map<std::vector<int>, Rational>;

LaurentMap substitute(const LaurentPoly& p, const Gauge& g, std::size_t nfree) {
    LaurentMap out;
    for (const auto& t : p) {
        Rational c = t.coeff;
        std::vector<int> e(nfree, 0);
        for (std::size_t a = 0; a < t.exps.size(); ++a) {
            if (t.exps[a] == 0) continue;
            if (g.value[a]) {
                mpq_class base = t.exps[a] > 0 ? *g.value[a] : Rational(1) / *g.value[a];
                for (int k = 0; k < std::abs(t.exps[a]); ++k) c *= base;
            } else {
                e[g.var[a]] += t.exps[a];
            }
        }
        out[e] += c;
    }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

MultiPoly cleared(const LaurentMap& p, const RingPtr& ring) {
    const std::size_t n = ring->nvars();
    std::vector<int> low(n, 0);
    for (const auto& [e, c] : p)
        for (std::size_t v = 0; v < n; ++v) low[v] = std::min(low[v], e[v]);
    std::vector<Term> terms;
    for (const auto& [e, c] : p) {
        Monomial m(n);
        for (std::size_t v = 0; v < n; ++v) m.set(v, static_cast<std::uint32_t>(e[v] - low[v]));
        terms.push_back({std::move(m), c});
    }
    MultiPoly f(ring, std::move(terms));
    return f.is_zero() ? f : f.primitive();
}

Gauge gauge_of(const EinsteinSystem& system) {
    Gauge g;
    for (const auto& c : system.coordinates) {
        if (c.is_constant()) {
            g.value.emplace_back(c.is_zero() ? Rational(0) : c.leading_coeff());
            g.var.push_back(0);
        } else {
            g.value.emplace_back(std::nullopt);
            g.var.push_back(c.sole_variable());
        }
    }
    return g;
}

}  // namespace

EinsteinSystem build_system(const RootSystem& rs, const Normalization& normalization, TermOrder order) {
    const std::size_t s = rs.size();
    Gauge g = resolve_gauge(s, normalization);

    std::vector<std::string> names;
    std::vector<std::size_t> rep;
    for (std::size_t a = 0; a < s; ++a) {
        if (!g.value[a] && g.var[a] == names.size()) {
            names.push_back("x" + std::to_string(a + 1));
            rep.push_back(a);
        }
    }
    EinsteinSystem sys;
    sys.ring = make_ring(names, order);
    sys.normalization = normalization;
    for (std::size_t a = 0; a < s; ++a)
        sys.coordinates.push_back(g.value[a] ? MultiPoly(sys.ring, *g.value[a])
                                             : MultiPoly::variable(sys.ring, g.var[a]));
    for (std::size_t v = 0; v < names.size(); ++v) sys.nonvanishing.push_back(MultiPoly::variable(sys.ring, v));

    const auto exprs = ricci_expressions(triple_tensor(rs));
    std::vector<LaurentMap> distinct;
    std::vector<std::size_t> owner;
    for (std::size_t a = 0; a < s; ++a) {
        LaurentMap m = substitute(exprs[a], g, names.size());
        if (std::find(distinct.begin(), distinct.end(), m) == distinct.end()) {
            distinct.push_back(std::move(m));
            owner.push_back(a);
        }
    }
    for (std::size_t k = 1; k < distinct.size(); ++k) {
        LaurentMap diff = distinct[k - 1];
        for (const auto& [e, c] : distinct[k]) diff[e] -= c;
        for (auto it = diff.begin(); it != diff.end();) it = sgn(it->second) == 0 ? diff.erase(it) : std::next(it);
        MultiPoly f = cleared(diff, sys.ring);
        if (f.is_zero()) continue;
        sys.polynomials.push_back(std::move(f));
        sys.equations.emplace_back(owner[k - 1], owner[k]);
    }
    return sys;
}

MultiPoly clear_denominators(const LaurentPoly& p, const EinsteinSystem& system) {
    return cleared(substitute(p, gauge_of(system), system.ring->nvars()), system.ring);
}

}  // namespace flagein
