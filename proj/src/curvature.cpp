#include "flagein/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <type_traits>

namespace flagein {

std::vector<LaurentPoly> ricci_expressions(const TripleTensor& triples) {
    const std::size_t s = triples.summands();
    std::vector<std::map<std::vector<int>, Rational>> acc(s);
    auto add = [&](std::size_t a, const Rational& c, std::size_t up, std::size_t d1, std::size_t d2) {
        std::vector<int> e(s, 0);
        ++e[up];
        --e[d1];
        --e[d2];
        acc[a][e] += c;
    };
    for (std::size_t a = 0; a < s; ++a) {
        std::vector<int> e(s, 0);
        e[a] = -1;
        acc[a][e] += Rational(1, 2);
    }
    for (const auto& [key, v] : triples.entries()) {
        const Rational c = v / 4;
        for (int rot = 0; rot < 3; ++rot) {
            std::size_t a = key[rot], b = key[(rot + 1) % 3], g = key[(rot + 2) % 3];
            add(a, c, a, b, g);
            add(a, -c, b, a, g);
            add(a, -c, g, a, b);
        }
    }
    std::vector<LaurentPoly> out(s);
    for (std::size_t a = 0; a < s; ++a)
        for (auto& [e, c] : acc[a])
            if (sgn(c) != 0) out[a].push_back({c, e});
    return out;
}

namespace {

template <typename Scalar>
Scalar power(const Scalar& x, int e) {
    Scalar base = e < 0 ? Scalar(1) / x : x;
    Scalar out = 1;
    for (int k = 0; k < std::abs(e); ++k) out *= base;
    return out;
}

template <typename Scalar>
Scalar from_rational(const Rational& q) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
        return q;
    } else {
        return q.get_d();
    }
}

template <typename Scalar>
Scalar evaluate_impl(const LaurentPoly& p, const std::vector<Scalar>& x) {
    Scalar sum = 0;
    for (const auto& t : p) {
        Scalar term = from_rational<Scalar>(t.coeff);
        for (std::size_t i = 0; i < t.exps.size(); ++i)
            if (t.exps[i] != 0) term *= power(x[i], t.exps[i]);
        sum += term;
    }
    return sum;
}

template <typename Scalar>
void check_metric(const std::vector<Scalar>& x, const TripleTensor& triples) {
    if (x.size() != triples.summands())
        throw DomainError("metric has " + std::to_string(x.size()) + " entries, expected " +
                          std::to_string(triples.summands()));
    for (const auto& v : x)
        if (!(v > 0)) throw DomainError("metric entries must be strictly positive");
}

template <typename Scalar>
RicciComponents<Scalar> ricci_impl(const std::vector<Scalar>& x, const TripleTensor& triples) {
    check_metric(x, triples);
    RicciComponents<Scalar> out;
    out.scalar_curvature = 0;
    for (const auto& expr : ricci_expressions(triples)) {
        out.r.push_back(evaluate_impl(expr, x));
        out.scalar_curvature += 2 * out.r.back();
    }
    return out;
}

template <typename Scalar>
EinsteinResidual<Scalar> residual_impl(const std::vector<Scalar>& x, const TripleTensor& triples) {
    auto rc = ricci_impl(x, triples);
    EinsteinResidual<Scalar> out;
    out.k = 0;
    for (const auto& r : rc.r) out.k += r;
    out.k /= Scalar(static_cast<long>(rc.r.size()));
    auto [lo, hi] = std::minmax_element(rc.r.begin(), rc.r.end());
    out.residual = *hi - *lo;
    return out;
}

}  // namespace

Rational evaluate(const LaurentPoly& p, const std::vector<Rational>& x) { return evaluate_impl(p, x); }
double evaluate(const LaurentPoly& p, const std::vector<double>& x) { return evaluate_impl(p, x); }

RicciComponents<Rational> ricci(const std::vector<Rational>& x, const TripleTensor& triples) {
    return ricci_impl(x, triples);
}
RicciComponents<double> ricci(const std::vector<double>& x, const TripleTensor& triples) {
    return ricci_impl(x, triples);
}

EinsteinResidual<Rational> einstein_residual(const std::vector<Rational>& x, const TripleTensor& triples) {
    return residual_impl(x, triples);
}
EinsteinResidual<double> einstein_residual(const std::vector<double>& x, const TripleTensor& triples) {
    return residual_impl(x, triples);
}

std::vector<Integer> kaehler_einstein_metric(const RootSystem& rs) {
    const Weight delta = delta_weight(rs.spec());
    std::vector<Rational> x;
    for (const auto& a : rs.positive()) x.push_back(2 * pair_weight_root(delta, a, rs.form()));
    Integer den = 1, num = 0;
    for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> out;
    for (const auto& v : x) {
        out.push_back(v.get_num() * (den / v.get_den()));
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), out.back().get_mpz_t());
    }
    for (auto& v : out) v /= num;
    return out;
}

KaehlerMatch is_kaehler(const std::vector<Rational>& x, const RootSystem& rs) {
    const auto ke = kaehler_einstein_metric(rs);
    if (x.size() != ke.size()) throw DomainError("metric length does not match the root system");
    for (const auto& perm : rs.weyl_permutations()) {
        auto y = permute_metric(x, perm);
        Rational ratio = y[0] / Rational(ke[0]);
        bool match = true;
        for (std::size_t i = 1; i < y.size() && match; ++i) match = y[i] == ratio * Rational(ke[i]);
        if (match) return {true, perm};
    }
    return {};
}

KaehlerMatch is_kaehler(const std::vector<double>& x, const RootSystem& rs, double tol) {
    const auto ke = kaehler_einstein_metric(rs);
    if (x.size() != ke.size()) throw DomainError("metric length does not match the root system");
    for (const auto& perm : rs.weyl_permutations()) {
        auto y = permute_metric(x, perm);
        double ratio = y[0] / ke[0].get_d();
        bool match = true;
        for (std::size_t i = 1; i < y.size() && match; ++i)
            match = std::abs(y[i] / ke[i].get_d() - ratio) <= tol * std::abs(ratio);
        if (match) return {true, perm};
    }
    return {};
}

}  // namespace flagein
