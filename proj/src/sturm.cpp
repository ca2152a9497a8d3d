#include "flagein/sturm.hpp"

#include <algorithm>
#include <utility>

namespace flagein {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

void UniPoly::trim() {
    while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UniPoly UniPoly::from_multipoly(const MultiPoly& f, std::size_t var) {
    std::vector<Rational> c;
    for (const auto& t : f.terms()) {
        for (std::size_t v = 0; v < t.mono.size(); ++v)
            if (v != var && t.mono[v] != 0) throw DomainError("polynomial is not univariate in the requested variable");
        std::size_t e = t.mono.size() == 0 ? 0 : t.mono[var];
        if (c.size() <= e) c.resize(e + 1);
        c[e] += t.coeff;
    }
    return UniPoly(std::move(c));
}

MultiPoly UniPoly::to_multipoly(const RingPtr& ring, std::size_t var) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        Monomial m(ring->nvars());
        m.set(var, static_cast<std::uint32_t>(i));
        terms.push_back({std::move(m), coeffs_[i]});
    }
    return MultiPoly(ring, std::move(terms));
}

Rational UniPoly::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double UniPoly::operator()(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

UniPoly UniPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * static_cast<long>(i));
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    UniPoly out = *this;
    const Rational lc = leading();
    for (auto& c : out.coeffs_) c /= lc;
    return out;
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return *this;
    Integer den = 1;
    for (const auto& c : coeffs_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    Integer num = 0;
    for (const auto& c : coeffs_) {
        Integer v = c.get_num() * (den / c.get_den());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    Rational scale = Rational(den) / Rational(num);
    if (sgn(leading()) < 0) scale = -scale;
    UniPoly out = *this;
    for (auto& c : out.coeffs_) c *= scale;
    return out;
}

UniPoly operator-(const UniPoly& p) {
    UniPoly out = p;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

UniDivision divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    std::vector<Rational> r = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> q(std::max(0, a.degree() - db + 1));
    for (int k = a.degree(); k >= db; --k) {
        if (sgn(r[k]) == 0) continue;
        Rational f = r[k] / b.leading();
        q[k - db] = f;
        for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b.coeffs()[i];
    }
    r.resize(std::max(0, db));
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = divrem(x, y).remainder.primitive();
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UniPoly square_free_part(const UniPoly& p) {
    if (p.degree() <= 0) return p.monic();
    return divrem(p, gcd(p, p.derivative())).quotient.monic();
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    std::vector<UniPoly> seq{p};
    if (p.degree() <= 0) return seq;
    seq.push_back(p.derivative());
    while (seq.back().degree() > 0) {
        // Positive rescaling keeps the sign pattern and bounds coefficient growth.
        UniPoly r = -divrem(seq[seq.size() - 2], seq.back()).remainder;
        if (r.is_zero()) break;
        Rational scale = abs(r.primitive().leading() / r.leading());
        std::vector<Rational> c = r.coeffs();
        for (auto& v : c) v *= scale;
        seq.emplace_back(std::move(c));
    }
    return seq;
}

namespace {

int count_changes(const std::vector<int>& signs) {
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace

int sign_variations(const std::vector<UniPoly>& seq, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq) signs.push_back(p.sign_at(x));
    return count_changes(signs);
}

int sign_variations_at_infinity(const std::vector<UniPoly>& seq, bool negative) {
    std::vector<int> signs;
    for (const auto& p : seq) {
        if (p.is_zero()) continue;
        int s = sgn(p.leading());
        if (negative && p.degree() % 2 == 1) s = -s;
        signs.push_back(s);
    }
    return count_changes(signs);
}

Rational cauchy_bound(const UniPoly& p) {
    if (p.degree() <= 0) return 1;
    Rational m = 0;
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs()[i] / p.leading())));
    return m + 1;
}

namespace {

// For square-free p with p1 = p', V(a) - V(b) counts roots in (a, b] even when a is a root.
struct Counter {
    const UniPoly& p;
    std::vector<UniPoly> seq;

    std::size_t open(const Rational& a, const Rational& b) const {
        int n = sign_variations(seq, a) - sign_variations(seq, b);
        if (p.sign_at(b) == 0) --n;
        return static_cast<std::size_t>(std::max(0, n));
    }
};

std::pair<Rational, Rational> finite_range(const UniPoly& sf, const RealRange& range) {
    Rational bound = cauchy_bound(sf);
    Rational lo = range.lo.value_or(-bound);
    Rational hi = range.hi.value_or(bound);
    // Roots beyond the bound do not exist, so clamping keeps the open range's roots.
    if (lo < -bound) lo = -bound;
    if (hi > bound) hi = bound;
    return {lo, hi};
}

}  // namespace

std::size_t count_real_roots(const UniPoly& p, const RealRange& range) {
    if (p.is_zero()) throw DomainError("the zero polynomial has infinitely many roots");
    UniPoly sf = square_free_part(p);
    if (sf.degree() <= 0) return 0;
    auto [lo, hi] = finite_range(sf, range);
    if (lo >= hi) return 0;
    Counter counter{sf, sturm_sequence(sf)};
    return counter.open(lo, hi);
}

std::vector<IsolatingInterval> sturm_isolate(const UniPoly& p, const RealRange& range) {
    if (p.is_zero()) throw DomainError("cannot isolate the roots of the zero polynomial");
    UniPoly sf = square_free_part(p);
    std::vector<IsolatingInterval> out;
    if (sf.degree() <= 0) return out;
    auto [lo, hi] = finite_range(sf, range);
    if (lo >= hi) return out;
    Counter counter{sf, sturm_sequence(sf)};

    struct Task {
        Rational a, b;
        std::size_t n;
    };
    std::vector<Task> stack{{lo, hi, counter.open(lo, hi)}};
    while (!stack.empty()) {
        Task t = std::move(stack.back());
        stack.pop_back();
        if (t.n == 0) continue;
        if (t.n == 1 && sf.sign_at(t.a) != 0 && sf.sign_at(t.b) != 0) {
            out.push_back({t.a, t.b, sf});
            continue;
        }
        Rational m = (t.a + t.b) / 2;
        if (sf.sign_at(m) == 0) out.push_back({m, m, sf});
        stack.push_back({m, t.b, counter.open(m, t.b)});
        stack.push_back({t.a, m, counter.open(t.a, m)});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    // Neighbours may share a bisection point that is not a root; shrink them apart.
    for (std::size_t k = 1; k < out.size(); ++k) {
        while (out[k - 1].hi >= out[k].lo) {
            out[k - 1] = refine_root(out[k - 1], out[k - 1].width() / 2);
            out[k] = refine_root(out[k], out[k].width() / 2);
        }
    }
    return out;
}

IsolatingInterval refine_root(const IsolatingInterval& interval, const Rational& precision) {
    IsolatingInterval iv = interval;
    if (iv.exact()) return iv;
    int s_lo = iv.poly.sign_at(iv.lo);
    while (iv.width() >= precision) {
        Rational m = (iv.lo + iv.hi) / 2;
        int s = iv.poly.sign_at(m);
        if (s == 0) {
            iv.lo = iv.hi = m;
            break;
        }
        if (s == s_lo) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

Rational simplest_rational(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw DomainError("empty interval");
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
    if (sgn(hi) < 0) return -simplest_rational(-hi, -lo);
    // Continued-fraction descent on 0 < lo <= hi.
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    Rational a = lo - fl, b = hi - fl;  // 0 < a < 1, b < 1
    return Rational(fl) + 1 / simplest_rational(1 / b, 1 / a);
}

std::optional<Rational> rational_root(const IsolatingInterval& interval) {
    if (interval.exact()) return interval.lo;
    Rational q = simplest_rational(interval.lo, interval.hi);
    if (interval.poly.sign_at(q) == 0) return q;
    return std::nullopt;
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    return a * RationalInterval{1 / b.hi, 1 / b.lo};
}

RationalInterval evaluate(const UniPoly& p, const RationalInterval& x) {
    RationalInterval acc = RationalInterval::point(0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RationalInterval::point(*it);
    return acc;
}

}  // namespace flagein
