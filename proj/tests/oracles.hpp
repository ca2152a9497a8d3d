#pragma once

#include "flagein/curvature.hpp"
#include "flagein/poly.hpp"

#include <map>
#include <vector>

// Hand-transcribed G2/T reference data, independent of the code under test.
namespace flagein::oracle {

using Laurent = std::map<std::vector<int>, Rational>;

namespace detail {

inline void frac(Laurent& p, const Rational& c, int a, int b, int d) {
    std::vector<int> e(6, 0);
    e[a - 1] += 1, e[b - 1] -= 1, e[d - 1] -= 1;
    p[e] += c;
}

inline void inv(Laurent& p, const Rational& c, int a) {
    std::vector<int> e(6, 0);
    e[a - 1] = -1;
    p[e] += c;
}

// c (x_a/(x_b x_d) - x_b/(x_a x_d) - x_d/(x_a x_b)), 1-based
inline void group(Laurent& p, const Rational& c, int a, int b, int d) {
    frac(p, c, a, b, d);
    frac(p, -c, b, a, d);
    frac(p, -c, d, a, b);
}

}  // namespace detail

/// The six Ricci components of G2/T.
inline std::vector<Laurent> g2_ricci() {
    using namespace detail;
    const Rational h(1, 2), s(1, 16), t(1, 12);
    std::vector<Laurent> r(6);
    inv(r[0], h, 1), group(r[0], s, 1, 2, 3), group(r[0], s, 1, 5, 6);
    inv(r[1], h, 2), group(r[1], s, 2, 1, 3), group(r[1], t, 2, 3, 4), group(r[1], s, 2, 4, 5);
    inv(r[2], h, 3), group(r[2], s, 3, 1, 2), group(r[2], t, 3, 2, 4), group(r[2], s, 3, 4, 6);
    inv(r[3], h, 4), group(r[3], t, 4, 2, 3), group(r[3], s, 4, 2, 5), group(r[3], s, 4, 3, 6);
    inv(r[4], h, 5), group(r[4], s, 5, 1, 6), group(r[4], s, 5, 2, 4);
    inv(r[5], h, 6), group(r[5], s, 6, 1, 5), group(r[5], s, 6, 3, 4);
    for (auto& m : r)
        for (auto it = m.begin(); it != m.end();) it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
    return r;
}

inline Laurent as_map(const LaurentPoly& p) {
    Laurent m;
    for (const auto& t : p) m[t.exps] += t.coeff;
    for (auto it = m.begin(); it != m.end();) it = sgn(it->second) == 0 ? m.erase(it) : std::next(it);
    return m;
}

/// x1 x2 ... x6 times a Laurent polynomial whose exponents are all >= -1, as a polynomial in x1..x6.
inline MultiPoly cleared(const Laurent& p, const RingPtr& ring) {
    std::vector<Term> terms;
    for (const auto& [e, c] : p) {
        Monomial m(e.size());
        for (std::size_t v = 0; v < e.size(); ++v) m.set(v, static_cast<std::uint32_t>(e[v] + 1));
        terms.push_back({m, c});
    }
    return MultiPoly(ring, std::move(terms));
}

/// The six rational Kaehler-Einstein solutions in the gauge x1 = 1.
inline std::vector<std::vector<Rational>> g2_kaehler_solutions() {
    return {{1, Rational(1, 3), Rational(4, 3), Rational(5, 3), 2, 3},
            {1, Rational(4, 3), Rational(1, 3), Rational(5, 3), 3, 2},
            {1, Rational(1, 6), Rational(5, 6), Rational(2, 3), Rational(1, 2), Rational(3, 2)},
            {1, Rational(5, 6), Rational(1, 6), Rational(2, 3), Rational(3, 2), Rational(1, 2)},
            {1, Rational(4, 9), Rational(5, 9), Rational(1, 9), Rational(1, 3), Rational(2, 3)},
            {1, Rational(5, 9), Rational(4, 9), Rational(1, 9), Rational(2, 3), Rational(1, 3)}};
}

/// Positive x6 roots of the degree-84 general-case factor, ascending.
inline std::vector<double> g2_degree84_positive_roots() {
    return {0.1101296649906623,  0.1276467609933986,  0.1654266507070432,  0.2010643285289733, 0.3065328288396123,
            0.5181203151843693,  0.5477334830916693,  1.82570544045531482, 1.93005363946047411, 3.26229332037786929,
            4.97353263662529741, 6.04497519429874693, 7.83411966130276958, 9.08020559296887189};
}

}  // namespace flagein::oracle
