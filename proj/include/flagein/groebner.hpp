#pragma once

#include "flagein/poly.hpp"

#include <string>
#include <vector>

namespace flagein {

/// Resource limits for a Buchberger run. Zero means unlimited.
struct GroebnerBudget {
    std::size_t max_pairs = 0;       // S-pairs actually reduced
    std::size_t max_coeff_bits = 0;  // largest coefficient seen in any intermediate
    double max_seconds = 0;
    std::size_t max_memory_mb = 0;   // approximate size of the stored polynomials
};

enum class GroebnerStatus { Complete, BudgetExceeded };

struct GroebnerStats {
    std::size_t pairs_created = 0;
    std::size_t pairs_reduced = 0;
    std::size_t zero_reductions = 0;
    std::size_t coprime_skipped = 0;
    std::size_t chain_skipped = 0;
    std::size_t max_coeff_bits = 0;
    std::size_t peak_bytes = 0;
    double seconds = 0;
};

/// Result of a Buchberger run.
///
/// When complete, `generators` is the reduced basis: integer-primitive with positive
/// leading coefficients, sorted by increasing leading monomial. When the budget runs
/// out, `generators` holds the partial (non-reduced) basis built so far.
struct GroebnerBasis {
    RingPtr ring;
    std::vector<MultiPoly> generators;
    GroebnerStatus status = GroebnerStatus::Complete;
    std::string budget_reason;
    GroebnerStats stats;

    bool complete() const { return status == GroebnerStatus::Complete; }
    /// Generators that only involve variables with index >= first_var.
    std::vector<MultiPoly> eliminate_before(std::size_t first_var) const;
};

/// Buchberger's algorithm with the normal selection strategy (least lcm, ties by pair age),
/// the coprime-leading-monomial criterion and the Gebauer-Moeller chain criterion.
/// Throws DomainError on an empty generator list or mixed rings.
GroebnerBasis buchberger(const std::vector<MultiPoly>& generators, const GroebnerBudget& budget = {});

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

/// Fully reduced remainder of f modulo the ordered list G.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G);

/// Fraction-free reduction; true iff f reduces to zero modulo G.
bool reduces_to_zero(const MultiPoly& f, const std::vector<MultiPoly>& G);

/// Every S-polynomial of G reduces to zero.
bool is_groebner_basis(const std::vector<MultiPoly>& G);

/// No term of any element is divisible by the leading monomial of another.
bool is_reduced(const std::vector<MultiPoly>& G);

/// Saturation by the product of `nonvanishing` via t * prod - 1 with a fresh variable t
/// ordered before all others. The returned basis lives in the ring of the generators and
/// describes the ideal with every component on which some constraint vanishes removed.
/// Nonzero constant constraints are dropped; if none remain the Gröbner basis of the
/// generators themselves is returned. A zero constraint throws DomainError.
GroebnerBasis saturate(const std::vector<MultiPoly>& generators, const std::vector<MultiPoly>& nonvanishing,
                       const GroebnerBudget& budget = {});

}  // namespace flagein
