#include "flagein/rootsys.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace flagein {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix chain_cartan(int n) {
    Matrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        a[i][i] = 2;
        if (i + 1 < n) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    return a;
}

void link(Matrix& a, int i, int j) {
    a[i][j] = -1;
    a[j][i] = -1;
}

Matrix build_cartan(LieType type, int n) {
    switch (type) {
    case LieType::A:
        return chain_cartan(n);
    case LieType::B: {
        // a_n short
        Matrix a = chain_cartan(n);
        a[n - 1][n - 2] = -2;
        return a;
    }
    case LieType::C: {
        // a_n long
        Matrix a = chain_cartan(n);
        a[n - 2][n - 1] = -2;
        return a;
    }
    case LieType::D: {
        Matrix a = chain_cartan(n - 1);
        for (auto& row : a) row.push_back(0);
        a.emplace_back(static_cast<std::size_t>(n), 0);
        a[n - 1][n - 1] = 2;
        link(a, n - 3, n - 1);
        return a;
    }
    case LieType::E: {
        // Bourbaki labelling: 1-3-4-5-6(-7-8), 2-4
        Matrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < n; ++i) a[i][i] = 2;
        link(a, 0, 2);
        link(a, 1, 3);
        for (int i = 2; i + 1 < n; ++i) link(a, i, i + 1);
        return a;
    }
    case LieType::F: {
        Matrix a = chain_cartan(4);
        a[2][1] = -2;
        return a;
    }
    case LieType::G:
        return {{2, -1}, {-3, 2}};
    }
    throw ConfigError("unknown Lie type");
}

bool rank_supported(LieType type, int n) {
    switch (type) {
    case LieType::A: return n >= 1;
    case LieType::B: return n >= 2;
    case LieType::C: return n >= 2;
    case LieType::D: return n >= 3;
    case LieType::E: return n >= 6 && n <= 8;
    case LieType::F: return n == 4;
    case LieType::G: return n == 2;
    }
    return false;
}

// Relative squared lengths d_i with A_ij d_i = A_ji d_j, propagated along the Dynkin graph.
std::vector<Rational> symmetrizer(const RootSystemSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.rank);
    std::vector<std::optional<Rational>> d(n);
    d[0] = Rational(1);
    std::queue<std::size_t> todo;
    todo.push(0);
    while (!todo.empty()) {
        std::size_t i = todo.front();
        todo.pop();
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || spec.cartan[i][j] == 0 || d[j]) continue;
            d[j] = *d[i] * spec.cartan[i][j] / spec.cartan[j][i];
            todo.push(j);
        }
    }
    std::vector<Rational> out;
    out.reserve(n);
    for (auto& v : d) {
        if (!v) throw ConfigError("Dynkin diagram is not connected");
        out.push_back(*v);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (spec.cartan[i][j] * out[i] != spec.cartan[j][i] * out[j])
                throw ConfigError("Cartan matrix is not symmetrizable");
    return out;
}

Rational symmetric_pairing(const std::vector<std::vector<Rational>>& gram, const Root& a, const Root& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j] == 0) continue;
            s += gram[i][j] * (a.coeffs[i] * b.coeffs[j]);
        }
    }
    return s;
}

Root simple_root(int rank, int i) {
    Root r{std::vector<int>(static_cast<std::size_t>(rank), 0)};
    r.coeffs[static_cast<std::size_t>(i)] = 1;
    return r;
}

// <v, a_i^vee> = sum_j v_j A_ij
int coroot_pairing(const RootSystemSpec& spec, const Root& v, int i) {
    int s = 0;
    for (int j = 0; j < spec.rank; ++j) s += v.coeffs[j] * spec.cartan[i][j];
    return s;
}

Root fold_positive(const Root& r) {
    return r.is_negative() ? -r : r;
}

}  // namespace

RootSystemSpec RootSystemSpec::from_label(std::string_view label) {
    if (label.size() < 2) throw ConfigError("unknown Lie type '" + std::string(label) + "'");
    LieType type;
    switch (label[0]) {
    case 'A': case 'a': type = LieType::A; break;
    case 'B': case 'b': type = LieType::B; break;
    case 'C': case 'c': type = LieType::C; break;
    case 'D': case 'd': type = LieType::D; break;
    case 'E': case 'e': type = LieType::E; break;
    case 'F': case 'f': type = LieType::F; break;
    case 'G': case 'g': type = LieType::G; break;
    default: throw ConfigError("unknown Lie type '" + std::string(label) + "'");
    }
    int rank = 0;
    auto digits = label.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), rank);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || !rank_supported(type, rank))
        throw ConfigError("unsupported Lie type '" + std::string(label) + "'");
    RootSystemSpec spec{type, rank, build_cartan(type, rank)};
    spec.validate();
    return spec;
}

std::string RootSystemSpec::label() const {
    static constexpr char letters[] = {'A', 'B', 'C', 'D', 'E', 'F', 'G'};
    return std::string(1, letters[static_cast<int>(type)]) + std::to_string(rank);
}

void RootSystemSpec::validate() const {
    const auto n = static_cast<std::size_t>(rank);
    if (rank < 1 || cartan.size() != n) throw ConfigError("Cartan matrix size does not match rank");
    for (std::size_t i = 0; i < n; ++i) {
        if (cartan[i].size() != n) throw ConfigError("Cartan matrix is not square");
        if (cartan[i][i] != 2) throw ConfigError("Cartan matrix diagonal must be 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (cartan[i][j] > 0) throw ConfigError("Cartan off-diagonal entries must be nonpositive");
            if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
                throw ConfigError("Cartan matrix zero pattern must be symmetric");
        }
    }
    symmetrizer(*this);
}

int Root::height() const {
    return std::accumulate(coeffs.begin(), coeffs.end(), 0);
}

bool Root::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
}

bool Root::is_positive() const {
    return !is_zero() && std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
}

bool Root::is_negative() const {
    return !is_zero() && std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c <= 0; });
}

Root Root::operator-() const {
    Root r = *this;
    for (auto& c : r.coeffs) c = -c;
    return r;
}

Root operator+(const Root& a, const Root& b) {
    Root r = a;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    return r;
}

Root operator-(const Root& a, const Root& b) {
    return a + (-b);
}

Root operator*(int k, const Root& a) {
    Root r = a;
    for (auto& c : r.coeffs) c *= k;
    return r;
}

std::string to_string(const Root& r) {
    std::string out;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
        int c = r.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? "+" : "-";
        else if (c < 0) out += "-";
        int m = c < 0 ? -c : c;
        if (m != 1) out += std::to_string(m);
        out += "a" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

Rational KillingForm::operator()(const Root& a, const Root& b) const {
    return symmetric_pairing(gram, a, b);
}

std::vector<Root> positive_roots(const RootSystemSpec& spec) {
    spec.validate();
    const int n = spec.rank;
    std::set<Root> known;
    std::vector<Root> layer;
    for (int i = 0; i < n; ++i) {
        layer.push_back(simple_root(n, i));
        known.insert(layer.back());
    }
    // Grow by height: b + a_i is a root iff q > 0 in the a_i-string through b,
    // with q = p - <b, a_i^vee> and p read off the lower layers already known.
    while (!layer.empty()) {
        std::set<Root> next;
        for (const Root& b : layer) {
            for (int i = 0; i < n; ++i) {
                Root ai = simple_root(n, i);
                int p = 0;
                for (Root down = b - ai; known.count(down) != 0; down = down - ai) ++p;
                int q = p - coroot_pairing(spec, b, i);
                if (q > 0) next.insert(b + ai);
            }
        }
        layer.assign(next.begin(), next.end());
        known.insert(next.begin(), next.end());
    }
    std::vector<Root> roots(known.begin(), known.end());
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) {
        int hx = x.height(), hy = y.height();
        if (hx != hy) return hx < hy;
        return x.coeffs > y.coeffs;
    });
    return roots;
}

KillingForm killing_form(const RootSystemSpec& spec) {
    const auto n = static_cast<std::size_t>(spec.rank);
    auto d = symmetrizer(spec);
    std::vector<std::vector<Rational>> sym(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sym[i][j] = spec.cartan[i][j] * d[i] / 2;

    // With Q = c * sym, the identity sum_b Q(a,b)^2 = Q(a,a) fixes c = sym(a,a) / sum_b sym(a,b)^2.
    auto roots = positive_roots(spec);
    const Root& a = roots.front();
    Rational sum_sq = 0;
    for (const Root& b : roots) {
        Rational v = symmetric_pairing(sym, a, b);
        sum_sq += 2 * v * v;
    }
    Rational c = symmetric_pairing(sym, a, a) / sum_sq;

    KillingForm form;
    form.scale = c;
    form.gram = sym;
    for (auto& row : form.gram)
        for (auto& v : row) v *= c;
    return form;
}

Root weyl_reflect(const Root& v, const Root& mirror, const KillingForm& form) {
    if (mirror.is_zero()) throw DomainError("reflection mirror must be a nonzero root");
    Rational k = 2 * form(v, mirror) / form(mirror, mirror);
    if (k.get_den() != 1) throw DomainError("mirror is not a root of this system");
    return v - static_cast<int>(k.get_num().get_si()) * mirror;
}

Weight root_as_weight(const Root& v, const RootSystemSpec& spec) {
    Weight w;
    w.coords.reserve(static_cast<std::size_t>(spec.rank));
    for (int i = 0; i < spec.rank; ++i) w.coords.emplace_back(coroot_pairing(spec, v, i));
    return w;
}

Weight weyl_reflect(const Weight& w, const Root& mirror, const RootSystemSpec& spec, const KillingForm& form) {
    if (mirror.is_zero()) throw DomainError("reflection mirror must be a nonzero root");
    Rational k = 2 * pair_weight_root(w, mirror, form) / form(mirror, mirror);
    Weight m = root_as_weight(mirror, spec);
    Weight out = w;
    for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= k * m.coords[i];
    return out;
}

Weight delta_weight(const RootSystemSpec& spec) {
    auto roots = positive_roots(spec);
    Weight w{std::vector<Rational>(static_cast<std::size_t>(spec.rank), Rational(0))};
    for (const Root& r : roots) {
        Weight rw = root_as_weight(r, spec);
        for (std::size_t i = 0; i < w.coords.size(); ++i) w.coords[i] += rw.coords[i];
    }
    for (auto& c : w.coords) c /= 2;
    return w;
}

Rational pair_weight_root(const Weight& w, const Root& a, const KillingForm& form) {
    Rational s = 0;
    for (std::size_t i = 0; i < w.coords.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        s += w.coords[i] * a.coeffs[i] * form.gram[i][i] / 2;
    }
    return s;
}

std::vector<RootPermutation> weyl_orbit_permutations(const RootSystemSpec& spec) {
    auto roots = positive_roots(spec);
    auto form = killing_form(spec);
    std::map<Root, std::size_t> index;
    for (std::size_t i = 0; i < roots.size(); ++i) index[roots[i]] = i;

    std::vector<RootPermutation> generators;
    for (int i = 0; i < spec.rank; ++i) {
        Root mirror = simple_root(spec.rank, i);
        RootPermutation p(roots.size());
        for (std::size_t j = 0; j < roots.size(); ++j)
            p[j] = index.at(fold_positive(weyl_reflect(roots[j], mirror, form)));
        generators.push_back(std::move(p));
    }

    RootPermutation identity(roots.size());
    std::iota(identity.begin(), identity.end(), std::size_t{0});
    std::set<RootPermutation> group{identity};
    std::vector<RootPermutation> frontier{identity};
    while (!frontier.empty()) {
        std::vector<RootPermutation> next;
        for (const auto& g : frontier) {
            for (const auto& s : generators) {
                RootPermutation h(g.size());
                for (std::size_t j = 0; j < g.size(); ++j) h[j] = s[g[j]];
                if (group.insert(h).second) next.push_back(std::move(h));
            }
        }
        frontier = std::move(next);
    }
    std::vector<RootPermutation> out{identity};
    for (const auto& g : group)
        if (g != identity) out.push_back(g);
    return out;
}

RootSystem::RootSystem(RootSystemSpec spec)
    : spec_(std::move(spec)),
      positive_(positive_roots(spec_)),
      form_(killing_form(spec_)),
      weyl_perms_(weyl_orbit_permutations(spec_)) {
    max_length_ = 0;
    for (const Root& r : positive_) max_length_ = std::max(max_length_, form_.length_squared(r));
}

std::optional<std::size_t> RootSystem::index_of(const Root& r) const {
    auto it = std::find(positive_.begin(), positive_.end(), r);
    if (it == positive_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - positive_.begin());
}

bool RootSystem::contains(const Root& r) const {
    return index_of(r).has_value() || index_of(-r).has_value();
}

bool RootSystem::is_long(std::size_t i) const {
    return form_.length_squared(positive_.at(i)) == max_length_;
}

}  // namespace flagein
