#pragma once

#include "flagein/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flagein {

enum class LieType { A, B, C, D, E, F, G };

/// Cartan data of a compact simple Lie algebra.
///
/// Entries follow A_ij = 2(a_i, a_j) / (a_i, a_i), so the simple reflection
/// s_i sends a_j to a_j - A_ij a_i. For G2 this is [[2, -1], [-3, 2]] with a_1 long.
struct RootSystemSpec {
    LieType type = LieType::A;
    int rank = 1;
    std::vector<std::vector<int>> cartan;

    /// Builds the spec for a label such as "G2", "A3", "B4"; throws ConfigError when unsupported.
    static RootSystemSpec from_label(std::string_view label);

    std::string label() const;

    /// Throws ConfigError if the Cartan matrix is not a valid symmetrizable generalized Cartan matrix.
    void validate() const;
};

/// Integer coordinates in the simple-root basis.
struct Root {
    std::vector<int> coeffs;

    int height() const;
    bool is_zero() const;
    bool is_positive() const;
    bool is_negative() const;

    Root operator-() const;
    friend Root operator+(const Root& a, const Root& b);
    friend Root operator-(const Root& a, const Root& b);
    friend Root operator*(int k, const Root& a);
    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;
};

std::string to_string(const Root& r);

/// Rational coordinates in the fundamental-weight basis.
struct Weight {
    std::vector<Rational> coords;
    friend bool operator==(const Weight&, const Weight&) = default;
};

/// Invariant inner product on roots, normalized so that
/// sum_{b in R} Q(a, b)^2 = Q(a, a) for every root a.
struct KillingForm {
    std::vector<std::vector<Rational>> gram;  // Q(a_i, a_j) on simple roots
    Rational scale;                           // factor applied to the symmetrized Cartan data

    Rational operator()(const Root& a, const Root& b) const;
    Rational length_squared(const Root& a) const { return (*this)(a, a); }
};

/// Permutation of positive-root indices: perm[i] is the image of index i.
using RootPermutation = std::vector<std::size_t>;

/// All positive roots ordered by height, ties broken by descending coefficient vector
/// (a_1 before a_2), which reproduces the conventional G2 labelling m_1..m_6.
std::vector<Root> positive_roots(const RootSystemSpec& spec);

KillingForm killing_form(const RootSystemSpec& spec);

/// s_mirror(v) = v - 2 Q(v, mirror) / Q(mirror, mirror) * mirror.
Root weyl_reflect(const Root& v, const Root& mirror, const KillingForm& form);
Weight weyl_reflect(const Weight& w, const Root& mirror, const RootSystemSpec& spec, const KillingForm& form);

/// delta = half the sum of positive roots, in fundamental-weight coordinates.
Weight delta_weight(const RootSystemSpec& spec);

/// Exact (w, a) using 2 (Lambda_i, a_j) = delta_ij (a_j, a_j).
Rational pair_weight_root(const Weight& w, const Root& a, const KillingForm& form);

/// Fundamental-weight coordinates of a root: <v, a_i^vee> for each simple root.
Weight root_as_weight(const Root& v, const RootSystemSpec& spec);

/// Group of index permutations of the positive roots induced by the Weyl group,
/// a -> +-w(a) folded back to R^+. The identity comes first; the rest are sorted.
std::vector<RootPermutation> weyl_orbit_permutations(const RootSystemSpec& spec);

/// Immutable bundle of the data above for one Lie type.
class RootSystem {
public:
    explicit RootSystem(RootSystemSpec spec);

    const RootSystemSpec& spec() const { return spec_; }
    const std::vector<Root>& positive() const { return positive_; }
    const KillingForm& form() const { return form_; }
    const std::vector<RootPermutation>& weyl_permutations() const { return weyl_perms_; }

    std::size_t size() const { return positive_.size(); }
    int rank() const { return spec_.rank; }

    /// Index of a positive root, or nullopt.
    std::optional<std::size_t> index_of(const Root& r) const;
    /// True if r or -r is a positive root.
    bool contains(const Root& r) const;
    /// Whether the root at index i has the maximal length.
    bool is_long(std::size_t i) const;

private:
    RootSystemSpec spec_;
    std::vector<Root> positive_;
    KillingForm form_;
    std::vector<RootPermutation> weyl_perms_;
    Rational max_length_;
};

}  // namespace flagein
