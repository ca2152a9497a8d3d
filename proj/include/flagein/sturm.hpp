#pragma once

#include "flagein/poly.hpp"

#include <optional>
#include <vector>

namespace flagein {

/// Dense univariate polynomial; coeffs[i] multiplies x^i and the top coefficient is nonzero.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);

    /// Throws DomainError when f involves any variable other than `var`.
    static UniPoly from_multipoly(const MultiPoly& f, std::size_t var);
    MultiPoly to_multipoly(const RingPtr& ring, std::size_t var) const;

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Rational& leading() const { return coeffs_.back(); }

    Rational operator()(const Rational& x) const;
    double operator()(double x) const;
    int sign_at(const Rational& x) const { return sgn((*this)(x)); }

    UniPoly derivative() const;
    UniPoly monic() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    UniPoly primitive() const;

    friend UniPoly operator-(const UniPoly& p);
    friend bool operator==(const UniPoly&, const UniPoly&) = default;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct UniDivision {
    UniPoly quotient;
    UniPoly remainder;
};

/// Throws DomainError on division by zero.
UniDivision divrem(const UniPoly& a, const UniPoly& b);
/// Monic gcd (zero only when both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// p / gcd(p, p'), monic.
UniPoly square_free_part(const UniPoly& p);

/// p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Sign changes of the sequence at x, zeros skipped.
int sign_variations(const std::vector<UniPoly>& seq, const Rational& x);
/// Sign changes at -infinity (negative = true) or +infinity.
int sign_variations_at_infinity(const std::vector<UniPoly>& seq, bool negative);

/// Closed enclosure [lo, hi] of exactly one real root of `poly` (its square-free part).
/// lo == hi means the root is that rational number.
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    UniPoly poly;

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    double midpoint() const { return Rational((lo + hi) / 2).get_d(); }
};

/// Open range (lo, hi); a missing bound means infinity.
struct RealRange {
    std::optional<Rational> lo;
    std::optional<Rational> hi;

    static RealRange all() { return {}; }
    static RealRange positive() { return {Rational(0), std::nullopt}; }
};

/// Upper bound on |root| for every complex root of p.
Rational cauchy_bound(const UniPoly& p);

/// Number of distinct real roots of p in the open range, from Sturm counts.
std::size_t count_real_roots(const UniPoly& p, const RealRange& range = {});

/// Disjoint isolating intervals for all distinct real roots of p in the range, ascending.
/// Interval endpoints are never roots unless the interval is exact. Throws DomainError for p = 0.
std::vector<IsolatingInterval> sturm_isolate(const UniPoly& p, const RealRange& range = {});

/// Bisects until the width is below `precision`; a wide enough interval is returned unchanged.
IsolatingInterval refine_root(const IsolatingInterval& interval, const Rational& precision);

/// The rational with the smallest denominator in [lo, hi] (lo <= hi).
Rational simplest_rational(const Rational& lo, const Rational& hi);

/// The root itself when it is the simplest rational of the interval, e.g. x = 3/2.
std::optional<Rational> rational_root(const IsolatingInterval& interval);

/// Closed interval with exact rational endpoints.
struct RationalInterval {
    Rational lo;
    Rational hi;

    static RationalInterval point(const Rational& x) { return {x, x}; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return contains(Rational(0)); }
    Rational width() const { return hi - lo; }
    double midpoint() const { return Rational((lo + hi) / 2).get_d(); }

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
    /// Throws DomainError when b contains zero.
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
};

/// Horner evaluation in interval arithmetic; the result encloses p over x.
RationalInterval evaluate(const UniPoly& p, const RationalInterval& x);

}  // namespace flagein
