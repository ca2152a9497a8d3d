#pragma once

#include "flagein/isotropy.hpp"
#include "flagein/rootsys.hpp"

#include <vector>

namespace flagein {

/// coeff * prod_i x_i^exps[i] with possibly negative exponents.
struct LaurentTerm {
    Rational coeff;
    std::vector<int> exps;
    friend bool operator==(const LaurentTerm&, const LaurentTerm&) = default;
};

/// Sum of Laurent terms with distinct exponent vectors, sorted by exponent vector.
using LaurentPoly = std::vector<LaurentTerm>;

/// Symbolic Ricci components r_0 .. r_{s-1} of the metric sum_a x_a Q|m_a.
///
/// The sums over (b, c) run over ordered pairs, so a triple {a, b, c} with value v adds
/// v/4 (x_a/(x_b x_c) - x_b/(x_a x_c) - x_c/(x_a x_b)) to r_a.
std::vector<LaurentPoly> ricci_expressions(const TripleTensor& triples);

Rational evaluate(const LaurentPoly& p, const std::vector<Rational>& x);
double evaluate(const LaurentPoly& p, const std::vector<double>& x);

template <typename Scalar>
struct RicciComponents {
    std::vector<Scalar> r;
    Scalar scalar_curvature{};  // sum_a dim(m_a) r_a with dim = 2
};

/// Throws DomainError if x has the wrong length or a nonpositive entry.
RicciComponents<Rational> ricci(const std::vector<Rational>& x, const TripleTensor& triples);
RicciComponents<double> ricci(const std::vector<double>& x, const TripleTensor& triples);

template <typename Scalar>
struct EinsteinResidual {
    Scalar k{};         // mean of the r_a
    Scalar residual{};  // max_a r_a - min_a r_a
};

EinsteinResidual<Rational> einstein_residual(const std::vector<Rational>& x, const TripleTensor& triples);
EinsteinResidual<double> einstein_residual(const std::vector<double>& x, const TripleTensor& triples);

/// x_a = 2 (delta, a) rescaled to coprime positive integers.
std::vector<Integer> kaehler_einstein_metric(const RootSystem& rs);

/// x with coordinates moved by a root permutation: result[perm[i]] = x[i].
template <typename Scalar>
std::vector<Scalar> permute_metric(const std::vector<Scalar>& x, const RootPermutation& perm) {
    std::vector<Scalar> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[perm[i]] = x[i];
    return out;
}

struct KaehlerMatch {
    bool kaehler = false;
    RootPermutation permutation;  // witness: permute_metric(x, permutation) is proportional to the KE metric
};

/// Exact test: some Weyl-induced permutation of x is proportional to the KE metric.
KaehlerMatch is_kaehler(const std::vector<Rational>& x, const RootSystem& rs);
/// Float test with relative tolerance on the coordinate ratios.
KaehlerMatch is_kaehler(const std::vector<double>& x, const RootSystem& rs, double tol);

}  // namespace flagein
