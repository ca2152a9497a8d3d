#pragma once

#include "flagein/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace flagein::cli {

enum ExitCode : int { Ok = 0, Usage = 2, BudgetExceeded = 3, Internal = 4 };

/// Command-line entry point. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exact rational from "p", "p/q", a decimal such as "0.25", or scientific "1e-10".
Rational parse_number(std::string_view text);
/// Comma-separated list of numbers.
std::vector<Rational> parse_metric(std::string_view csv);
/// "pairs=N,bits=N,seconds=S,memory=MB"; unspecified fields keep their values in `base`.
GroebnerBudget parse_budget(std::string_view text, GroebnerBudget base = {});

/// Rounds to 15 significant digits so the value prints and re-parses identically.
double round15(double v);

nlohmann::json roots_report(const RootSystem& rs);
nlohmann::json triples_report(const RootSystem& rs);
nlohmann::json ricci_report(const RootSystem& rs, const std::vector<Rational>& x);
nlohmann::json kaehler_report(const RootSystem& rs);
nlohmann::json solution_report(const SolutionSet& set);

struct GroebnerRequest {
    std::string text;                   // polynomial file contents
    std::vector<std::string> vars;      // empty: natural order of the names in the file
    TermOrder order;
    std::vector<std::string> saturate;  // polynomials that must not vanish
    std::string isolate;                // variable to isolate, or empty
    GroebnerBudget budget;
};
/// Throws ConfigError (with a line number) on malformed input.
nlohmann::json groebner_report(const GroebnerRequest& request);

/// Human-readable rendering of any report above; floats at 6 decimals.
std::string render_table(const nlohmann::json& report);
/// Canonical JSON text: sorted keys, two-space indent, trailing newline.
std::string render_json(const nlohmann::json& report);

}  // namespace flagein::cli
