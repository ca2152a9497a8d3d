#pragma once

#include "flagein/curvature.hpp"
#include "flagein/groebner.hpp"
#include "flagein/sturm.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flagein {

/// Gauge and ansatz: fixed values x_i = c and identifications x_i = x_j (0-based indices).
struct Normalization {
    std::vector<std::pair<std::size_t, Rational>> fixed;
    std::vector<std::pair<std::size_t, std::size_t>> equal;

    /// Parses "x1=1,x5=1,x4=x3" (1-based names); throws ConfigError on bad syntax.
    static Normalization parse(std::string_view text);
    std::string label() const;
};

/// Einstein equations r_a = r_b with denominators cleared, in the free variables of a gauge.
struct EinsteinSystem {
    RingPtr ring;
    std::vector<MultiPoly> polynomials;
    /// Value of every original coordinate x_a as a polynomial in the ring (a variable or a constant).
    std::vector<MultiPoly> coordinates;
    /// Pairs (a, b) of original indices whose difference r_a - r_b produced each polynomial.
    std::vector<std::pair<std::size_t, std::size_t>> equations;
    /// The free variables, which must not vanish.
    std::vector<MultiPoly> nonvanishing;
    Normalization normalization;

    std::size_t dimension() const { return ring->nvars(); }
    /// Full metric from values of the free variables.
    std::vector<double> full_metric(const std::vector<double>& free_values) const;
    std::vector<Rational> full_metric(const std::vector<Rational>& free_values) const;
};

/// Substitutes the gauge into the symbolic r_a, drops components that become identical,
/// and clears r_a - r_b for consecutive remaining components by the least monomial denominator.
/// Free variables keep the names x1..xs and index order, under the given term order.
/// Throws DomainError when the gauge is inconsistent or fixes no variable.
EinsteinSystem build_system(const RootSystem& rs, const Normalization& normalization, TermOrder order = {});

/// Cleared numerator of a Laurent polynomial in the coordinates of `system` (primitive form).
MultiPoly clear_denominators(const LaurentPoly& p, const EinsteinSystem& system);

enum class Provenance { Algebraic, Numeric };

struct EinsteinSolution {
    std::vector<double> x;                     // full metric in the gauge it was found in
    std::optional<std::vector<Rational>> exact;  // set when every coordinate is rational and verified exactly
    double k = 0;
    bool kaehler = false;
    int isometry_class = -1;
    Provenance provenance = Provenance::Numeric;
    double residual = 0;
    std::size_t members = 1;  // distinct points merged into this class representative
};

struct CaseRecord {
    std::string name;
    std::string assignments;
    std::vector<std::string> saturations;
    int elimination_degree = -1;
    std::string elimination_polynomial;
    std::size_t real_roots = 0;
    std::size_t positive_roots = 0;
    std::string status = "complete";
    std::vector<std::string> notes;
};

struct SolutionSet {
    std::string group;
    std::string normalization;
    /// "classification" for the G2 case tree, "search" otherwise.
    std::string kind = "search";
    std::vector<CaseRecord> cases;
    std::vector<EinsteinSolution> solutions;
    /// Canonical representative of each isometry class (max coordinate 1, lexicographically least over the Weyl orbit).
    std::vector<std::vector<double>> classes;
};

/// Limits and certified output width for the exact pipelines.
struct SolveOptions {
    GroebnerBudget budget;
    /// The exact general case does not finish at desk scale; this bounds the attempt.
    GroebnerBudget general_budget{0, 0, 60, 1500};
    Rational precision{1, 10000000000L};  // certified width for reported coordinates
};

/// The x1 = x5 = 1, x4 = x3 case tree for G2: the x6 = 1 branch and the saturated x6 != 1 branch.
SolutionSet solve_symmetric_ansatz(const RootSystem& rs, const SolveOptions& options = {});

/// The (x1 - x5)(x1 - x6)(x5 - x6) != 0 case for G2 with gauge x1 = 1. On budget exhaustion the
/// returned case record carries status "budget-exceeded" and no solutions.
SolutionSet solve_general_case(const RootSystem& rs, const SolveOptions& options = {});

struct OracleOptions {
    std::size_t starts = 1000;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    std::size_t threads = 0;  // 0 = hardware concurrency
    std::size_t max_iterations = 100;
    double log_lo = -2;  // starts are 10^U(log_lo, log_hi) per coordinate
    double log_hi = 2;
};

/// Damped Newton from deterministic log-uniform starts. Accepted points have every coordinate
/// above tol and float residual below tol; results are classified and deduplicated.
SolutionSet newton_oracle(const RootSystem& rs, const EinsteinSystem& system, const OracleOptions& options = {});

/// One Newton run from `start` (free-variable values); nullopt if it does not converge.
struct NewtonResult {
    std::vector<double> point;
    std::size_t iterations = 0;
};
std::optional<NewtonResult> newton_solve(const EinsteinSystem& system, std::vector<double> start,
                                         const OracleOptions& options = {});

/// Canonical form: scaled to max coordinate 1, lexicographically least over the Weyl orbit.
std::vector<double> canonical_metric(const std::vector<double>& x, const RootSystem& rs, double tol);
/// Smallest max-norm distance between the scaled orbit of a and scaled b.
double orbit_distance(const std::vector<double>& a, const std::vector<double>& b, const RootSystem& rs);

/// Merges solutions whose scaled Weyl orbits agree within tol into one representative per class
/// (algebraic and exact solutions preferred), sets kaehler flags, snaps Kaehler numeric points to
/// exact rational metrics, and numbers classes by their lexicographically sorted canonical forms.
/// Throws std::logic_error if a solution fails the float residual check at 1e-10.
void classify(SolutionSet& set, const RootSystem& rs, double tol);

/// Full G2 pipeline: symmetric ansatz, general case (budgeted), KE metrics, and the Newton oracle.
SolutionSet classify_g2(const RootSystem& rs, const SolveOptions& solve, const OracleOptions& oracle);

}  // namespace flagein
