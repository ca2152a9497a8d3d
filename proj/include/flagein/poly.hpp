#pragma once

#include "flagein/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagein {

/// Exponent vector with cached total degree.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::span<const std::uint32_t> exps);

    std::size_t size() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t degree() const { return degree_; }
    std::span<const std::uint32_t> exponents() const { return {exps_.data(), exps_.size()}; }
    bool is_one() const { return degree_ == 0; }

    void set(std::size_t i, std::uint32_t e);

    bool divides(const Monomial& other) const;
    bool coprime(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Exact quotient; requires b | a.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

private:
    boost::container::small_vector<std::uint32_t, 8> exps_;
    std::uint32_t degree_ = 0;
};

enum class OrderKind {
    Lex,
    GrevLex,
    /// Graded reverse lex on the first `block` variables, ties broken by grevlex on the rest.
    BlockGrevLex,
};

/// Monomial order; variable 0 is the largest.
struct TermOrder {
    OrderKind kind = OrderKind::Lex;
    std::size_t block = 0;

    /// Negative, zero or positive as a is smaller, equal or larger than b.
    int compare(const Monomial& a, const Monomial& b) const;
    friend bool operator==(const TermOrder&, const TermOrder&) = default;
};

std::string to_string(const TermOrder& order);
/// "lex" or "grevlex"; throws ConfigError otherwise.
TermOrder parse_term_order(std::string_view name);

/// Variable names plus the active term order.
struct PolyRing {
    std::vector<std::string> vars;
    TermOrder order;

    std::size_t nvars() const { return vars.size(); }
    /// Index of a variable name; throws DomainError if absent.
    std::size_t index_of(std::string_view name) const;
    bool has_var(std::string_view name) const;
    friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> vars, TermOrder order = {});

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept strictly decreasing under the ring's term order with no zero
/// coefficients, so the leading term is terms().front().
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring);
    MultiPoly(RingPtr ring, const Rational& constant);
    /// Arbitrary (unsorted, possibly repeated) terms; they are combined and sorted.
    MultiPoly(RingPtr ring, std::vector<Term> terms);

    static MultiPoly variable(RingPtr ring, std::string_view name);
    static MultiPoly variable(RingPtr ring, std::size_t index);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    const Term& leading_term() const;
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const Rational& leading_coeff() const { return leading_term().coeff; }

    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    bool involves(std::size_t var) const { return degree_in(var) > 0; }
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    /// Index of the only variable in use; npos when constant or multivariate.
    std::size_t sole_variable() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& g);
    MultiPoly& operator-=(const MultiPoly& g);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator+(MultiPoly f, const MultiPoly& g) { return f += g; }
    friend MultiPoly operator-(MultiPoly f, const MultiPoly& g) { return f -= g; }
    friend MultiPoly operator*(const MultiPoly& f, const MultiPoly& g);
    friend MultiPoly operator*(MultiPoly f, const Rational& c) { return f *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly f) { return f *= c; }
    friend bool operator==(const MultiPoly& f, const MultiPoly& g);

    MultiPoly pow(unsigned n) const;
    MultiPoly mul_term(const Monomial& m, const Rational& c) const;

    MultiPoly derivative(std::size_t var) const;
    /// Replaces variable `var` by g (same ring).
    MultiPoly substitute(std::size_t var, const MultiPoly& g) const;
    MultiPoly substitute(std::size_t var, const Rational& value) const;
    /// Evaluates at a full point (one value per variable).
    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate(const std::vector<double>& point) const;

    /// Same polynomial in another ring; variables are matched by name.
    /// Throws DomainError if a used variable is missing from the target.
    MultiPoly to_ring(const RingPtr& target) const;

    /// gcd of numerators over lcm of denominators, as a positive rational (0 for the zero polynomial).
    Rational content() const;
    /// Integer coefficients with gcd 1 and positive leading coefficient.
    MultiPoly primitive() const;
    /// Leading coefficient scaled to 1.
    MultiPoly monic() const;

    std::size_t max_coeff_bits() const;

private:
    void normalize();
    void require_same_ring(const MultiPoly& g) const;

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Quotients and remainder of multivariate division by an ordered divisor list.
struct DivisionResult {
    std::vector<MultiPoly> quotients;
    MultiPoly remainder;
};

/// Classical multivariate division: f = sum q_i g_i + r with no term of r divisible by any LM(g_i).
DivisionResult divrem(const MultiPoly& f, const std::vector<MultiPoly>& divisors);

/// Canonical text: terms in decreasing order, e.g. "-3*x2^2*x3*x6 + 24*x2*x3^2 - 1/2".
std::string to_string(const MultiPoly& f);

/// Parses one polynomial over `ring`. Accepts sums of products of rational constants,
/// variables, powers and parenthesized subexpressions. Throws ConfigError with position on failure.
MultiPoly parse_poly(std::string_view text, const RingPtr& ring);

/// Variable names appearing in a polynomial text, in order of first appearance.
std::vector<std::string> scan_variables(std::string_view text);

}  // namespace flagein
