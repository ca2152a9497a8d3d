#include "flagein/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace flagein {

namespace {

// Float copy of a polynomial for fast repeated evaluation.
struct CompiledPoly {
    std::size_t nvars = 0;
    std::vector<double> coeffs;
    std::vector<std::uint32_t> exps;  // nvars entries per term

    CompiledPoly() = default;
    explicit CompiledPoly(const MultiPoly& f) : nvars(f.ring()->nvars()) {
        for (const auto& t : f.terms()) {
            coeffs.push_back(t.coeff.get_d());
            for (std::size_t v = 0; v < nvars; ++v) exps.push_back(t.mono.size() == 0 ? 0 : t.mono[v]);
        }
    }

    double operator()(const std::vector<double>& x) const {
        double sum = 0;
        for (std::size_t t = 0; t < coeffs.size(); ++t) {
            double term = coeffs[t];
            const std::uint32_t* e = &exps[t * nvars];
            for (std::size_t v = 0; v < nvars; ++v)
                for (std::uint32_t k = 0; k < e[v]; ++k) term *= x[v];
            sum += term;
        }
        return sum;
    }
};

struct CompiledSystem {
    std::vector<CompiledPoly> f;
    std::vector<std::vector<CompiledPoly>> jac;  // jac[i][v] = d f_i / d x_v

    explicit CompiledSystem(const EinsteinSystem& sys) {
        for (const auto& p : sys.polynomials) {
            f.emplace_back(p);
            std::vector<CompiledPoly> row;
            for (std::size_t v = 0; v < sys.dimension(); ++v) row.emplace_back(p.derivative(v));
            jac.push_back(std::move(row));
        }
    }

    Eigen::VectorXd value(const std::vector<double>& x) const {
        Eigen::VectorXd out(static_cast<Eigen::Index>(f.size()));
        for (std::size_t i = 0; i < f.size(); ++i) out[static_cast<Eigen::Index>(i)] = f[i](x);
        return out;
    }

    Eigen::MatrixXd jacobian(const std::vector<double>& x) const {
        Eigen::MatrixXd out(static_cast<Eigen::Index>(f.size()), static_cast<Eigen::Index>(x.size()));
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t v = 0; v < x.size(); ++v)
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(v)) = jac[i][v](x);
        return out;
    }
};

std::optional<NewtonResult> newton_run(const CompiledSystem& cs, std::vector<double> x, const OracleOptions& opt) {
    const std::size_t n = x.size();
    if (cs.f.empty()) return NewtonResult{std::move(x), 0};
    Eigen::VectorXd fx = cs.value(x);
    for (std::size_t it = 1; it <= opt.max_iterations; ++it) {
        Eigen::VectorXd dx = cs.jacobian(x).colPivHouseholderQr().solve(-fx);
        if (!dx.allFinite()) return std::nullopt;
        // Stay inside the positive orthant: never shrink a coordinate below a tenth of its value.
        double t = 1;
        for (std::size_t v = 0; v < n; ++v)
            if (dx[static_cast<Eigen::Index>(v)] < 0) t = std::min(t, 0.9 * x[v] / -dx[static_cast<Eigen::Index>(v)]);
        const double f0 = fx.squaredNorm();
        std::vector<double> trial(n);
        Eigen::VectorXd ft;
        bool improved = false;
        for (int halvings = 0; halvings < 40; ++halvings, t /= 2) {
            for (std::size_t v = 0; v < n; ++v) trial[v] = x[v] + t * dx[static_cast<Eigen::Index>(v)];
            ft = cs.value(trial);
            if (ft.allFinite() && ft.squaredNorm() < f0) {
                improved = true;
                break;
            }
        }
        double step = t * dx.lpNorm<Eigen::Infinity>();
        double scale = 1 + *std::max_element(x.begin(), x.end());
        if (!improved) return NewtonResult{std::move(x), it};  // at the floating-point floor
        x = trial;
        fx = ft;
        if (step <= 1e-15 * scale) return NewtonResult{std::move(x), it};
    }
    return NewtonResult{std::move(x), opt.max_iterations};
}

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<double> scaled(const std::vector<double>& x) {
    double m = *std::max_element(x.begin(), x.end());
    std::vector<double> y = x;
    for (auto& v : y) v /= m;
    return y;
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) <= tol) continue;
        return a[i] < b[i];
    }
    return false;
}

std::optional<std::vector<Rational>> snap_to_kaehler(const std::vector<double>& x, const RootSystem& rs,
                                                     const RootPermutation& perm) {
    // permute_metric(x, perm) is proportional to the KE metric, so x is proportional to KE moved by perm^-1.
    const auto ke = kaehler_einstein_metric(rs);
    std::vector<Rational> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = Rational(ke[perm[i]]);
    const double ratio = x[0] / z[0].get_d();
    const Rational lam = simplest_rational(Rational(ratio * (1 - 1e-9)), Rational(ratio * (1 + 1e-9)));
    for (auto& v : z) v *= lam;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(z[i].get_d() - x[i]) > 1e-8 * std::max(1.0, std::abs(x[i]))) return std::nullopt;
    if (sgn(einstein_residual(z, triple_tensor(rs)).residual) != 0) return std::nullopt;
    return z;
}

}  // namespace

std::optional<NewtonResult> newton_solve(const EinsteinSystem& system, std::vector<double> start,
                                         const OracleOptions& options) {
    if (start.size() != system.dimension()) throw DomainError("start point has the wrong dimension");
    return newton_run(CompiledSystem(system), std::move(start), options);
}

std::vector<double> canonical_metric(const std::vector<double>& x, const RootSystem& rs, double tol) {
    std::vector<double> best;
    for (const auto& perm : rs.weyl_permutations()) {
        auto y = scaled(permute_metric(x, perm));
        if (best.empty() || lex_less(y, best, tol)) best = std::move(y);
    }
    return best;
}

double orbit_distance(const std::vector<double>& a, const std::vector<double>& b, const RootSystem& rs) {
    const auto sb = scaled(b);
    double best = INFINITY;
    for (const auto& perm : rs.weyl_permutations()) {
        auto y = scaled(permute_metric(a, perm));
        double d = 0;
        for (std::size_t i = 0; i < y.size(); ++i) d = std::max(d, std::abs(y[i] - sb[i]));
        best = std::min(best, d);
    }
    return best;
}

void classify(SolutionSet& set, const RootSystem& rs, double tol) {
    const TripleTensor triples = triple_tensor(rs);
    struct Group {
        std::vector<double> canonical;
        EinsteinSolution rep;
        std::size_t members = 0;
    };
    auto rank = [](const EinsteinSolution& s) {
        return (s.provenance == Provenance::Algebraic ? 2 : 0) + (s.exact ? 1 : 0);
    };
    std::vector<Group> groups;
    for (auto& sol : set.solutions) {
        auto er = einstein_residual(sol.x, triples);
        sol.k = er.k;
        sol.residual = er.residual;
        if (!(sol.residual < 1e-10))
            throw std::logic_error("solution failed the float Einstein residual check: " + std::to_string(sol.residual));
        auto match = is_kaehler(sol.x, rs, 1e-6);
        sol.kaehler = match.kaehler;
        if (match.kaehler && !sol.exact) sol.exact = snap_to_kaehler(sol.x, rs, match.permutation);
        if (sol.exact) sol.k = einstein_residual(*sol.exact, triples).k.get_d();

        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& g) { return orbit_distance(sol.x, g.rep.x, rs) < tol; });
        if (it == groups.end()) {
            groups.push_back({canonical_metric(sol.x, rs, tol), sol, sol.members});
        } else {
            it->members += sol.members;
            if (rank(sol) > rank(it->rep)) it->rep = sol;
        }
    }
    std::sort(groups.begin(), groups.end(),
              [&](const Group& a, const Group& b) { return lex_less(a.canonical, b.canonical, tol); });
    set.solutions.clear();
    set.classes.clear();
    for (std::size_t c = 0; c < groups.size(); ++c) {
        groups[c].rep.isometry_class = static_cast<int>(c);
        groups[c].rep.members = groups[c].members;
        set.solutions.push_back(std::move(groups[c].rep));
        set.classes.push_back(std::move(groups[c].canonical));
    }
}

SolutionSet newton_oracle(const RootSystem& rs, const EinsteinSystem& system, const OracleOptions& options) {
    if (options.starts == 0) throw ConfigError("the oracle needs at least one start");
    const CompiledSystem cs(system);
    const TripleTensor triples = triple_tensor(rs);
    const std::size_t dim = system.dimension();
    std::vector<std::optional<std::vector<double>>> found(options.starts);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < options.starts; i = next++) {
            std::mt19937_64 rng(mix(options.seed ^ mix(i)));
            std::uniform_real_distribution<double> u(options.log_lo, options.log_hi);
            std::vector<double> start(dim);
            for (auto& v : start) v = std::pow(10.0, u(rng));
            auto res = newton_run(cs, std::move(start), options);
            if (!res) continue;
            if (!std::all_of(res->point.begin(), res->point.end(), [&](double v) { return v > options.tol; })) continue;
            auto x = system.full_metric(res->point);
            if (!std::all_of(x.begin(), x.end(), [&](double v) { return v > options.tol; })) continue;
            if (!(einstein_residual(x, triples).residual < options.tol)) continue;
            found[i] = std::move(x);
        }
    };
    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, options.starts);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    SolutionSet out;
    out.group = rs.spec().label();
    out.normalization = system.normalization.label();
    CaseRecord rec;
    rec.name = "newton-oracle";
    rec.assignments = out.normalization;
    std::size_t converged = 0;
    for (const auto& f : found) {
        if (!f) continue;
        ++converged;
        auto same = [&](const EinsteinSolution& s) {
            for (std::size_t i = 0; i < f->size(); ++i)
                if (std::abs(s.x[i] - (*f)[i]) > 1e-6 * std::max(1.0, std::abs((*f)[i]))) return false;
            return true;
        };
        auto it = std::find_if(out.solutions.begin(), out.solutions.end(), same);
        if (it != out.solutions.end()) continue;
        EinsteinSolution sol;
        sol.x = *f;
        out.solutions.push_back(std::move(sol));
    }
    rec.notes.push_back(std::to_string(options.starts) + " starts, seed " + std::to_string(options.seed) + ", " +
                        std::to_string(converged) + " converged to positive Einstein metrics, " +
                        std::to_string(out.solutions.size()) + " distinct points");
    classify(out, rs, 1e-6);
    rec.notes.push_back(std::to_string(out.classes.size()) + " isometry classes");
    out.cases.push_back(std::move(rec));
    return out;
}

SolutionSet classify_g2(const RootSystem& rs, const SolveOptions& solve, const OracleOptions& oracle) {
    if (rs.spec().label() != "G2") throw ConfigError("the classification case tree is specific to G2");
    SolutionSet out;
    out.group = "G2";
    out.normalization = "x1=1";
    out.kind = "classification";
    auto absorb = [&](SolutionSet&& part) {
        for (auto& c : part.cases) out.cases.push_back(std::move(c));
        for (auto& s : part.solutions) out.solutions.push_back(std::move(s));
    };
    absorb(solve_symmetric_ansatz(rs, solve));
    SolutionSet general = solve_general_case(rs, solve);
    const bool general_complete = general.cases.front().status == "complete";
    absorb(std::move(general));

    {
        const TripleTensor triples = triple_tensor(rs);
        const auto ke = kaehler_einstein_metric(rs);
        std::vector<Rational> x;
        for (const auto& v : ke) x.push_back(Rational(v) / Rational(ke[0]));
        CaseRecord rec;
        rec.name = "kaehler-einstein";
        rec.assignments = "x = 2 delta";
        auto er = einstein_residual(x, triples);
        if (sgn(er.residual) != 0) throw std::logic_error("the 2 delta metric is not Einstein");
        rec.notes.push_back("exact residual 0, k = " + to_string(er.k));
        out.cases.push_back(std::move(rec));
        EinsteinSolution sol;
        for (const auto& v : x) sol.x.push_back(v.get_d());
        sol.exact = x;
        sol.provenance = Provenance::Algebraic;
        out.solutions.push_back(std::move(sol));
    }

    SolutionSet numeric = newton_oracle(rs, build_system(rs, Normalization::parse("x1=1")), oracle);
    const auto oracle_classes = numeric.classes;
    absorb(std::move(numeric));
    classify(out, rs, 1e-6);

    bool agree = oracle_classes.size() == out.classes.size();
    for (const auto& c : oracle_classes) {
        bool hit = std::any_of(out.classes.begin(), out.classes.end(), [&](const std::vector<double>& d) {
            for (std::size_t i = 0; i < c.size(); ++i)
                if (std::abs(c[i] - d[i]) > 1e-6) return false;
            return true;
        });
        agree = agree && hit;
    }
    CaseRecord summary;
    summary.name = "summary";
    summary.notes.push_back(std::string("oracle classes ") + (agree ? "agree" : "disagree") + " with the combined classification");
    if (!general_complete) summary.notes.push_back("general case covered by the numeric oracle (exact elimination over budget)");
    out.cases.push_back(std::move(summary));
    return out;
}

}  // namespace flagein
