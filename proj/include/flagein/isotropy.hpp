#pragma once

#include "flagein/rational.hpp"
#include "flagein/rootsys.hpp"

#include <array>
#include <map>
#include <vector>

namespace flagein {

/// The alpha-string through beta: beta + k alpha is a root for -p <= k <= q.
struct RootString {
    int p = 0;
    int q = 0;
    friend bool operator==(const RootString&, const RootString&) = default;
};

/// Throws DomainError when beta = +-alpha or either argument is not a root.
RootString root_string(const Root& alpha, const Root& beta, const RootSystem& rs);

/// N^2_{alpha,beta} = q (p + 1) / 2 * Q(alpha, alpha) from the alpha-string through beta;
/// exactly 0 when alpha + beta is not a root.
Rational n_squared(const Root& alpha, const Root& beta, const RootSystem& rs);

/// Structure constants [k; ij] of K/T with respect to m = sum of m_alpha.
///
/// Keys are sorted index triples; because positive roots are ordered by height, the
/// last index of a key is always the root that is the sum of the other two.
class TripleTensor {
public:
    using Key = std::array<std::size_t, 3>;

    TripleTensor() = default;
    TripleTensor(std::size_t summands, std::map<Key, Rational> entries);

    /// Value for any ordering of (i, j, k); zero when absent.
    Rational operator()(std::size_t i, std::size_t j, std::size_t k) const;

    const std::map<Key, Rational>& entries() const { return entries_; }
    std::size_t summands() const { return dims_.size(); }
    /// Real dimension of each summand (always 2 for K/T).
    const std::vector<int>& dims() const { return dims_; }

    static Key key(std::size_t i, std::size_t j, std::size_t k);

private:
    std::map<Key, Rational> entries_;
    std::vector<int> dims_;
};

/// [a+b; a b] = 2 N^2_{a,b} for every pair of positive roots whose sum is a root.
TripleTensor triple_tensor(const RootSystem& rs);

}  // namespace flagein
