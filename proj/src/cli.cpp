#include "flagein/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace flagein::cli {

using nlohmann::json;

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

json rational_list(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(to_string(q));
    return out;
}

json float_list(const std::vector<double>& v) {
    json out = json::array();
    for (double d : v) out.push_back(round15(d));
    return out;
}

// "x2" < "x10": alphabetic prefix first, then the numeric suffix by value.
bool natural_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t cut = s.find_last_not_of("0123456789") + 1;
        std::string digits = s.substr(cut);
        return std::pair{s.substr(0, cut), digits.empty() ? -1L : std::stol(digits)};
    };
    return split(a) < split(b);
}

std::string index_label(std::size_t k, std::size_t i, std::size_t j) {
    bool wide = std::max({k, i, j}) >= 9;
    std::string sep = wide ? "," : "";
    return "[" + std::to_string(k + 1) + ";" + std::to_string(i + 1) + sep + std::to_string(j + 1) + "]";
}

}  // namespace

double round15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

Rational parse_number(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return ConfigError("not a number: '" + s + "'"); };
    if (s.find('/') != std::string::npos) return parse_rational(s);
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool dot = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        if (s[pos] == '.' && !dot) {
            dot = true;
        } else if (s[pos] >= '0' && s[pos] <= '9') {
            digits += s[pos];
            if (dot) --scale;
        } else {
            throw bad();
        }
    }
    if (digits.empty()) throw bad();
    if (pos < s.size()) {
        std::string exp = s.substr(pos + 1);
        if (exp.empty()) throw bad();
        std::size_t used = 0;
        long e = 0;
        try {
            e = std::stol(exp, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != exp.size() || std::labs(e) > 10000) throw bad();
        scale += e;
    }
    Rational q{Integer(digits, 10)};
    Integer ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
    if (scale >= 0) {
        q *= ten;
    } else {
        q /= ten;
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::vector<Rational> parse_metric(std::string_view csv) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = csv.find(',', start);
        std::string item(csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start));
        item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
        out.push_back(parse_number(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

GroebnerBudget parse_budget(std::string_view text, GroebnerBudget base) {
    std::stringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("budget entry without '=': " + item);
        std::string key = item.substr(0, eq);
        Rational value = parse_number(item.substr(eq + 1));
        if (sgn(value) < 0) throw ConfigError("budget values must be nonnegative: " + item);
        auto whole = [&] {
            if (value.get_den() != 1) throw ConfigError("budget entry needs an integer: " + item);
            return static_cast<std::size_t>(value.get_num().get_ui());
        };
        if (key == "pairs") {
            base.max_pairs = whole();
        } else if (key == "bits") {
            base.max_coeff_bits = whole();
        } else if (key == "seconds") {
            base.max_seconds = value.get_d();
        } else if (key == "memory") {
            base.max_memory_mb = whole();
        } else {
            throw ConfigError("unknown budget key '" + key + "' (pairs, bits, seconds, memory)");
        }
    }
    return base;
}

json roots_report(const RootSystem& rs) {
    json roots = json::array();
    std::size_t longs = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const Root& a = rs.positive()[i];
        bool is_long = rs.is_long(i);
        longs += is_long;
        roots.push_back({{"index", i + 1},
                         {"coeffs", a.coeffs},
                         {"height", a.height()},
                         {"lengthSquared", to_string(rs.form().length_squared(a))},
                         {"long", is_long}});
    }
    json gram = json::array();
    for (const auto& row : rs.form().gram) gram.push_back(rational_list(row));
    return {{"command", "roots"},
            {"group", rs.spec().label()},
            {"rank", rs.rank()},
            {"cartan", rs.spec().cartan},
            {"roots", roots},
            {"gram", gram},
            {"longCount", longs},
            {"shortCount", rs.size() - longs}};
}

json triples_report(const RootSystem& rs) {
    json entries = json::array();
    const TripleTensor triples = triple_tensor(rs);
    for (const auto& [key, value] : triples.entries()) {
        entries.push_back({{"label", index_label(key[2], key[0], key[1])},
                           {"k", key[2] + 1},
                           {"i", key[0] + 1},
                           {"j", key[1] + 1},
                           {"value", to_string(value)}});
    }
    return {{"command", "triples"}, {"group", rs.spec().label()}, {"entries", entries}};
}

json ricci_report(const RootSystem& rs, const std::vector<Rational>& x) {
    const TripleTensor triples = triple_tensor(rs);
    auto rc = ricci(x, triples);
    auto er = einstein_residual(x, triples);
    return {{"command", "ricci"},
            {"group", rs.spec().label()},
            {"metric", rational_list(x)},
            {"r", rational_list(rc.r)},
            {"scalarCurvature", to_string(rc.scalar_curvature)},
            {"k", to_string(er.k)},
            {"residual", to_string(er.residual)},
            {"einstein", sgn(er.residual) == 0}};
}

json kaehler_report(const RootSystem& rs) {
    const auto ke = kaehler_einstein_metric(rs);
    std::vector<Rational> x(ke.begin(), ke.end());
    auto er = einstein_residual(x, triple_tensor(rs));
    if (sgn(er.residual) != 0) throw std::logic_error("the 2 delta metric failed the exact Einstein check");
    json metric = json::array();
    for (const auto& v : ke) metric.push_back(v.get_si());
    return {{"command", "kaehler"},
            {"group", rs.spec().label()},
            {"metric", metric},
            {"k", to_string(er.k)},
            {"residual", to_string(er.residual)}};
}

json solution_report(const SolutionSet& set) {
    json cases = json::array();
    for (const auto& c : set.cases) {
        cases.push_back({{"name", c.name},
                         {"assignments", c.assignments},
                         {"saturations", c.saturations},
                         {"eliminationDegree", c.elimination_degree < 0 ? json(nullptr) : json(c.elimination_degree)},
                         {"eliminationPolynomial", c.elimination_polynomial},
                         {"realRoots", c.real_roots},
                         {"positiveRoots", c.positive_roots},
                         {"status", c.status},
                         {"notes", c.notes}});
    }
    json solutions = json::array();
    std::size_t kaehler = 0;
    for (const auto& s : set.solutions) {
        json sol = {{"x", float_list(s.x)},
                    {"k", round15(s.k)},
                    {"kaehler", s.kaehler},
                    {"class", s.isometry_class},
                    {"provenance", s.provenance == Provenance::Algebraic ? "algebraic" : "numeric"},
                    {"residual", round15(s.residual)},
                    {"members", s.members}};
        if (s.exact) sol["exact"] = rational_list(*s.exact);
        solutions.push_back(std::move(sol));
    }
    json classes = json::array();
    for (std::size_t c = 0; c < set.classes.size(); ++c) {
        bool is_k = std::any_of(set.solutions.begin(), set.solutions.end(), [&](const EinsteinSolution& s) {
            return s.isometry_class == static_cast<int>(c) && s.kaehler;
        });
        kaehler += is_k;
        classes.push_back({{"id", c}, {"canonical", float_list(set.classes[c])}, {"kaehler", is_k}});
    }
    return {{"command", "einstein"},
            {"group", set.group},
            {"normalization", set.normalization},
            {"kind", set.kind},
            {"cases", cases},
            {"solutions", solutions},
            {"classes", classes},
            {"summary", {{"classes", set.classes.size()}, {"kaehler", kaehler}, {"nonKaehler", set.classes.size() - kaehler}}}};
}

json groebner_report(const GroebnerRequest& request) {
    std::vector<std::pair<std::size_t, std::string>> lines;
    {
        std::stringstream in(request.text);
        std::string line;
        for (std::size_t n = 1; std::getline(in, line); ++n) {
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            lines.emplace_back(n, line);
        }
    }
    if (lines.empty()) throw ConfigError("polynomial file contains no polynomials");

    std::vector<std::string> seen;
    auto collect = [&](const std::string& text) {
        for (auto& v : scan_variables(text))
            if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
    };
    for (const auto& [n, line] : lines) collect(line);
    for (const auto& s : request.saturate) collect(s);
    std::vector<std::string> vars = request.vars;
    if (vars.empty()) {
        vars = seen;
        std::sort(vars.begin(), vars.end(), natural_less);
    } else {
        for (const auto& v : seen)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                throw ConfigError("variable '" + v + "' is missing from --vars");
    }
    if (vars.empty()) throw ConfigError("polynomial file has no variables");
    RingPtr ring = make_ring(vars, request.order);

    std::vector<MultiPoly> gens;
    for (const auto& [n, line] : lines) {
        try {
            gens.push_back(parse_poly(line, ring));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(n) + ": " + e.what());
        }
    }
    std::vector<MultiPoly> nonzero;
    for (const auto& s : request.saturate) nonzero.push_back(parse_poly(s, ring));

    GroebnerBasis gb = nonzero.empty() ? buchberger(gens, request.budget) : saturate(gens, nonzero, request.budget);
    json basis = json::array();
    for (const auto& g : gb.generators) basis.push_back(to_string(g));
    json report = {{"command", "groebner"},
                   {"vars", vars},
                   {"order", to_string(request.order)},
                   {"inputs", gens.size()},
                   {"saturations", request.saturate},
                   {"status", gb.complete() ? "complete" : "budget-exceeded"},
                   {"basis", basis},
                   {"stats",
                    {{"pairsReduced", gb.stats.pairs_reduced},
                     {"zeroReductions", gb.stats.zero_reductions},
                     {"maxCoeffBits", gb.stats.max_coeff_bits}}}};
    if (!gb.complete()) report["budgetReason"] = gb.budget_reason;
    if (request.isolate.empty() || !gb.complete()) return report;

    const std::size_t var = ring->index_of(request.isolate);
    const MultiPoly* pick = nullptr;
    for (const auto& g : gb.generators)
        if (g.sole_variable() == var && (!pick || g.degree_in(var) < pick->degree_in(var))) pick = &g;
    json iso = {{"variable", request.isolate}};
    if (!pick) {
        iso["polynomial"] = nullptr;
        iso["note"] = "no univariate basis element; use lex with this variable last";
    } else {
        UniPoly p = UniPoly::from_multipoly(*pick, var);
        iso["polynomial"] = to_string(*pick);
        iso["degree"] = p.degree();
        json roots = json::array();
        std::size_t positive = 0;
        for (const auto& r : sturm_isolate(p)) {
            IsolatingInterval fine = refine_root(r, Rational(1, 1000000000000L));
            positive += sgn(fine.lo) > 0;
            roots.push_back({{"lo", to_string(fine.lo)}, {"hi", to_string(fine.hi)}, {"approx", round15(fine.midpoint())}});
        }
        iso["realRoots"] = roots.size();
        iso["positiveRoots"] = positive;
        iso["roots"] = roots;
    }
    report["isolation"] = iso;
    return report;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string num(const json& v) {
    if (v.is_number_float()) return fixed6(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string joined(const json& arr, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < arr.size(); ++i) out += (i ? sep : "") + num(arr[i]);
    return out;
}

void table_einstein(const json& r, std::ostream& os) {
    os << r["group"].get<std::string>() << " (" << r["kind"].get<std::string>() << ", gauge "
       << r["normalization"].get<std::string>() << ")\n\ncases:\n";
    for (const auto& c : r["cases"]) {
        os << "  " << c["name"].get<std::string>() << " [" << c["status"].get<std::string>() << "]";
        if (!c["eliminationDegree"].is_null())
            os << " degree " << c["eliminationDegree"] << ", real roots " << c["realRoots"] << ", positive "
               << c["positiveRoots"];
        os << "\n";
        for (const auto& n : c["notes"]) os << "    " << n.get<std::string>() << "\n";
    }
    os << "\nsolutions:\n";
    os << std::left << std::setw(8) << "  class" << std::setw(9) << "kaehler" << std::setw(11) << "source"
       << std::setw(10) << "k" << "x\n";
    for (const auto& s : r["solutions"]) {
        os << "  " << std::setw(6) << s["class"].dump() << std::setw(9) << (s["kaehler"].get<bool>() ? "yes" : "no")
           << std::setw(11) << s["provenance"].get<std::string>() << std::setw(10) << num(s["k"]) << "("
           << joined(s["x"]) << ")\n";
        if (s.contains("exact")) os << "         exact (" << joined(s["exact"]) << ")\n";
    }
    const auto& sum = r["summary"];
    os << "\n" << sum["classes"] << " isometry classes: " << sum["kaehler"] << " Kaehler, " << sum["nonKaehler"]
       << " non-Kaehler\n";
}

void table_groebner(const json& r, std::ostream& os) {
    os << "order " << r["order"].get<std::string>() << " on (" << joined(r["vars"]) << "), status "
       << r["status"].get<std::string>() << "\n";
    if (r.contains("budgetReason")) os << r["budgetReason"].get<std::string>() << "\n";
    os << "basis (" << r["basis"].size() << " generators):\n";
    for (const auto& g : r["basis"]) os << "  " << g.get<std::string>() << "\n";
    if (!r.contains("isolation")) return;
    const auto& iso = r["isolation"];
    if (iso["polynomial"].is_null()) {
        os << "isolate " << iso["variable"].get<std::string>() << ": " << iso["note"].get<std::string>() << "\n";
        return;
    }
    os << "univariate in " << iso["variable"].get<std::string>() << " (degree " << iso["degree"] << "):\n  "
       << iso["polynomial"].get<std::string>() << "\n"
       << iso["realRoots"] << " real roots, " << iso["positiveRoots"] << " positive:\n";
    for (const auto& root : iso["roots"]) os << "  " << num(root["approx"]) << "\n";
}

}  // namespace

std::string render_table(const json& r) {
    std::ostringstream os;
    const std::string cmd = r.at("command");
    if (cmd == "roots") {
        os << r["group"].get<std::string>() << ": " << r["roots"].size() << " positive roots, " << r["longCount"]
           << " long, " << r["shortCount"] << " short\n";
        for (const auto& a : r["roots"])
            os << "  " << std::left << std::setw(4) << a["index"].dump() << std::setw(12)
               << ("(" + joined(a["coeffs"], ",") + ")") << "height " << a["height"] << "  |a|^2 "
               << a["lengthSquared"].get<std::string>() << (a["long"].get<bool>() ? "  long" : "  short") << "\n";
        os << "Killing form on simple roots:\n";
        for (const auto& row : r["gram"]) os << "  " << joined(row, "  ") << "\n";
    } else if (cmd == "triples") {
        os << r["group"].get<std::string>() << ": " << r["entries"].size() << " nonzero triples\n";
        for (const auto& e : r["entries"]) os << "  " << e["label"].get<std::string>() << " = " << e["value"].get<std::string>() << "\n";
    } else if (cmd == "ricci") {
        os << r["group"].get<std::string>() << " metric (" << joined(r["metric"]) << ")\n";
        for (std::size_t i = 0; i < r["r"].size(); ++i) os << "  r" << i + 1 << " = " << r["r"][i].get<std::string>() << "\n";
        os << "k = " << r["k"].get<std::string>() << ", residual = " << r["residual"].get<std::string>()
           << (r["einstein"].get<bool>() ? " (Einstein)" : " (not Einstein)") << "\n";
    } else if (cmd == "kaehler") {
        os << r["group"].get<std::string>() << " Kaehler-Einstein metric (" << joined(r["metric"]) << "), k = "
           << r["k"].get<std::string>() << ", residual = " << r["residual"].get<std::string>() << "\n";
    } else if (cmd == "einstein") {
        table_einstein(r, os);
    } else if (cmd == "groebner") {
        table_groebner(r, os);
    } else {
        throw std::logic_error("no table layout for command " + cmd);
    }
    return os.str();
}

namespace {

struct Common {
    std::string format = "table";
    std::string output;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--format", c.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("-o,--output", c.output, "write the report to a file");
}

std::string env(const char* name) {
    const char* v = std::getenv(name);
    return v ? v : "";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RootSystem load_group(const std::string& label) { return RootSystem(RootSystemSpec::from_label(label)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariant Einstein metrics on full flag manifolds K/T"};
    app.require_subcommand(1);
    Common common;
    std::string group, metric, mode = "oracle", normalization = "x1=1", budget, file, order = "lex", vars, isolate;
    std::vector<std::string> saturations;
    std::size_t starts = 1000, threads = 0;
    std::uint64_t seed = 1;
    std::string precision = "1e-10";

    if (auto t = env("FLAGEIN_THREADS"); !t.empty()) {
        if (t.find_first_not_of("0123456789") != std::string::npos) {
            err << "error: FLAGEIN_THREADS must be a nonnegative integer\n";
            return Usage;
        }
        threads = std::stoul(t);
    }
    const std::string env_budget = env("FLAGEIN_BUDGET");

    auto* roots = app.add_subcommand("roots", "positive roots, lengths and Killing form");
    auto* triples = app.add_subcommand("triples", "structure constants [k;ij]");
    auto* ricci_cmd = app.add_subcommand("ricci", "Ricci components of a metric");
    auto* einstein = app.add_subcommand("einstein", "find invariant Einstein metrics");
    auto* kaehler = app.add_subcommand("kaehler", "Kaehler-Einstein metric 2 delta");
    auto* groebner = app.add_subcommand("groebner", "Groebner basis of a polynomial file");
    for (auto* sub : {roots, triples, ricci_cmd, einstein, kaehler}) {
        sub->add_option("group", group, "Lie type, e.g. G2 or A2")->required();
        add_common(sub, common);
    }
    add_common(groebner, common);
    ricci_cmd->add_option("--metric", metric, "comma-separated positive values x_1..x_s")->required();
    einstein->add_option("--mode", mode, "symmetric, general, oracle or classify")
        ->check(CLI::IsMember({"symmetric", "general", "oracle", "classify"}));
    einstein->add_option("--normalization", normalization, "gauge for the oracle, e.g. x1=1");
    einstein->add_option("--starts", starts, "Newton starts")->check(CLI::PositiveNumber);
    einstein->add_option("--seed", seed, "random seed");
    einstein->add_option("--threads", threads, "worker threads, 0 = all cores");
    einstein->add_option("--precision", precision, "certified width of algebraic coordinates");
    einstein->add_option("--budget", budget, "pairs=N,bits=N,seconds=S,memory=MB");
    groebner->add_option("file", file, "one polynomial per line")->required();
    groebner->add_option("--order", order, "lex or grevlex")->check(CLI::IsMember({"lex", "grevlex"}));
    groebner->add_option("--vars", vars, "comma-separated variables, largest first");
    groebner->add_option("--saturate", saturations, "polynomial that must not vanish (repeatable)");
    groebner->add_option("--isolate", isolate, "variable whose univariate element is root-isolated");
    groebner->add_option("--budget", budget, "pairs=N,bits=N,seconds=S,memory=MB");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return Usage;
    }

    json report;
    int code = Ok;
    try {
        if (*roots) {
            report = roots_report(load_group(group));
        } else if (*triples) {
            report = triples_report(load_group(group));
        } else if (*ricci_cmd) {
            RootSystem rs = load_group(group);
            report = ricci_report(rs, parse_metric(metric));
        } else if (*kaehler) {
            report = kaehler_report(load_group(group));
        } else if (*einstein) {
            RootSystem rs = load_group(group);
            SolveOptions solve;
            Rational prec = parse_number(precision);
            if (sgn(prec) <= 0 || prec >= 1) throw ConfigError("--precision must lie in (0, 1)");
            solve.precision = prec;
            GroebnerBudget requested = parse_budget(budget, parse_budget(env_budget, mode == "symmetric" ? GroebnerBudget{} : solve.general_budget));
            if (mode == "symmetric") {
                solve.budget = requested;
            } else {
                solve.general_budget = requested;
            }
            OracleOptions oracle;
            oracle.starts = starts;
            oracle.seed = seed;
            oracle.threads = threads;
            SolutionSet set;
            if (mode == "symmetric" || mode == "general") {
                set = mode == "symmetric" ? solve_symmetric_ansatz(rs, solve) : solve_general_case(rs, solve);
                classify(set, rs, 1e-6);
                for (const auto& c : set.cases)
                    if (c.status == "budget-exceeded") code = BudgetExceeded;
            } else if (mode == "oracle") {
                set = newton_oracle(rs, build_system(rs, Normalization::parse(normalization)), oracle);
            } else {
                set = classify_g2(rs, solve, oracle);
            }
            report = solution_report(set);
            report["mode"] = mode;
        } else {
            GroebnerRequest req;
            req.text = read_file(file);
            req.order = parse_term_order(order);
            if (!vars.empty()) {
                std::stringstream in(vars);
                std::string v;
                while (std::getline(in, v, ','))
                    if (!v.empty()) req.vars.push_back(v);
            }
            req.saturate = saturations;
            req.isolate = isolate;
            req.budget = parse_budget(budget, parse_budget(env_budget));
            report = groebner_report(req);
            if (report["status"] == "budget-exceeded") code = BudgetExceeded;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    }

    const std::string text = common.format == "json" ? render_json(report) : render_table(report);
    if (common.output.empty()) {
        out << text;
    } else {
        std::ofstream f(common.output);
        if (!f) {
            err << "error: cannot write " << common.output << "\n";
            return Usage;
        }
        f << text;
    }
    return code;
}

}  // namespace flagein::cli
