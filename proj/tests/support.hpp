#pragma once

#include "flagein/poly.hpp"

#include <random>
#include <vector>

namespace flagein::fixture {

inline Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
    std::uniform_int_distribution<long> num(-max_num, max_num), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Rational random_positive(std::mt19937_64& rng, long max_num, long max_den) {
    std::uniform_int_distribution<long> num(1, max_num), den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline std::vector<Rational> random_metric(std::mt19937_64& rng, std::size_t n) {
    std::vector<Rational> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(random_positive(rng, 30, 12));
    return x;
}

inline MultiPoly random_poly(std::mt19937_64& rng, const RingPtr& ring, std::size_t terms, unsigned max_degree,
                             long max_coeff) {
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::vector<Term> ts;
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial m(ring->nvars());
        for (std::size_t v = 0; v < ring->nvars(); ++v) m.set(v, deg(rng));
        Rational c = random_rational(rng, max_coeff, 1);
        if (sgn(c) == 0) c = 1;
        ts.push_back({m, c});
    }
    return MultiPoly(ring, std::move(ts));
}

}  // namespace flagein::fixture
