#include "flagein/groebner.hpp"

#include <algorithm>
#include <chrono>

namespace flagein {

namespace {

struct ITerm {
    Monomial mono;
    Integer coeff;
};

using IPoly = std::vector<ITerm>;

IPoly to_integer_poly(const MultiPoly& f) {
    // Clear denominators; sign and content are fixed by make_primitive afterwards.
    Integer l = 1;
    for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    IPoly p;
    p.reserve(f.size());
    for (const auto& t : f.terms()) {
        Integer c = t.coeff.get_num() * (l / t.coeff.get_den());
        p.push_back({t.mono, std::move(c)});
    }
    return p;
}

MultiPoly to_multipoly(const IPoly& p, const RingPtr& ring) {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) terms.push_back({t.mono, Rational(t.coeff)});
    return MultiPoly(ring, std::move(terms));
}

void make_primitive(IPoly& p) {
    if (p.empty()) return;
    Integer g = 0;
    for (const auto& t : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
        if (g == 1) break;
    }
    bool flip = sgn(p.front().coeff) < 0;
    if (g == 1 && !flip) return;
    if (flip) g = -g;
    for (auto& t : p) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
}

std::size_t bytes_of(const IPoly& p) {
    std::size_t b = p.capacity() * sizeof(ITerm);
    for (const auto& t : p) b += mpz_size(t.coeff.get_mpz_t()) * sizeof(mp_limb_t);
    return b;
}

std::size_t max_bits(const IPoly& p) {
    std::size_t b = 0;
    for (const auto& t : p) b = std::max(b, mpz_sizeinbase(t.coeff.get_mpz_t(), 2));
    return b;
}

// a * f - b * m * g where every term of m * g is <= the first term of f handled (from `pos`).
// Terms of f before `pos` are only scaled by a.
void combine_tail(IPoly& f, std::size_t pos, const Integer& a, const Integer& b, const Monomial& m, const IPoly& g,
                  const TermOrder& ord) {
    if (a != 1)
        for (auto& t : f) t.coeff *= a;
    IPoly tail;
    tail.reserve(f.size() - pos + g.size());
    std::size_t i = pos, j = 0;
    Monomial gm;
    bool have = false;
    while (i < f.size() || j < g.size()) {
        if (j < g.size() && !have) {
            gm = g[j].mono * m;
            have = true;
        }
        int c = i == f.size() ? -1 : j == g.size() ? 1 : ord.compare(f[i].mono, gm);
        if (c > 0) {
            tail.push_back(std::move(f[i++]));
        } else if (c < 0) {
            Integer v = -b * g[j].coeff;
            tail.push_back({std::move(gm), std::move(v)});
            ++j;
            have = false;
        } else {
            Integer v = f[i].coeff;
            mpz_submul(v.get_mpz_t(), b.get_mpz_t(), g[j].coeff.get_mpz_t());
            if (sgn(v) != 0) tail.push_back({std::move(f[i].mono), std::move(v)});
            ++i;
            ++j;
            have = false;
        }
    }
    f.resize(pos);
    for (auto& t : tail) f.push_back(std::move(t));
}

class Reducer {
public:
    explicit Reducer(const TermOrder& ord) : ord_(ord) {}

    // Full fraction-free reduction of f modulo polys[active]. Returns a primitive result.
    IPoly reduce(IPoly f, const std::vector<IPoly>& polys, const std::vector<std::size_t>& active,
                 std::size_t* bits_seen = nullptr) const {
        std::size_t pos = 0;
        unsigned steps = 0;
        while (pos < f.size()) {
            const Monomial& m = f[pos].mono;
            const IPoly* reducer = nullptr;
            for (std::size_t k : active) {
                if (polys[k].front().mono.divides(m)) {
                    reducer = &polys[k];
                    break;
                }
            }
            if (reducer == nullptr) {
                ++pos;
                continue;
            }
            const Integer& lg = reducer->front().coeff;
            const Integer& lf = f[pos].coeff;
            Integer d;
            mpz_gcd(d.get_mpz_t(), lg.get_mpz_t(), lf.get_mpz_t());
            Integer a = lg / d;
            Integer b = lf / d;
            if (sgn(a) < 0) {
                a = -a;
                b = -b;
            }
            Monomial q = m / reducer->front().mono;
            combine_tail(f, pos, a, b, q, *reducer, ord_);
            if (++steps % 8 == 0) make_primitive_keep_sign(f);
        }
        make_primitive(f);
        if (bits_seen != nullptr) *bits_seen = std::max(*bits_seen, max_bits(f));
        return f;
    }

private:
    static void make_primitive_keep_sign(IPoly& p) {
        if (p.empty()) return;
        Integer g = 0;
        for (const auto& t : p) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
            if (g == 1) return;
        }
        for (auto& t : p) mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    }

    const TermOrder& ord_;
};

IPoly spoly(const IPoly& f, const IPoly& g, const TermOrder& ord) {
    const Monomial l = lcm(f.front().mono, g.front().mono);
    Integer d;
    mpz_gcd(d.get_mpz_t(), f.front().coeff.get_mpz_t(), g.front().coeff.get_mpz_t());
    Integer a = g.front().coeff / d;  // scales f
    Integer b = f.front().coeff / d;  // scales g
    IPoly sf;
    sf.reserve(f.size());
    Monomial mf = l / f.front().mono;
    for (const auto& t : f) sf.push_back({t.mono * mf, t.coeff});
    // a * sf - b * (l / lm g) * g; leading terms cancel
    combine_tail(sf, 0, a, b, l / g.front().mono, g, ord);
    return sf;
}

struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
    std::uint64_t age;
};

class Buchberger {
public:
    Buchberger(RingPtr ring, const GroebnerBudget& budget)
        : ring_(std::move(ring)), ord_(ring_->order), budget_(budget), reducer_(ord_),
          start_(std::chrono::steady_clock::now()) {}

    GroebnerBasis run(const std::vector<MultiPoly>& input) {
        for (const auto& f : input) {
            IPoly p = to_integer_poly(f);
            if (p.empty()) continue;
            p = reducer_.reduce(std::move(p), polys_, active_, &stats_.max_coeff_bits);
            if (!p.empty()) add(std::move(p));
        }
        while (!pairs_.empty()) {
            if (auto reason = over_budget(); !reason.empty()) return partial(reason);
            Pair pr = take_next();
            ++stats_.pairs_reduced;
            IPoly s = spoly(polys_[pr.i], polys_[pr.j], ord_);
            if (!s.empty()) s = reducer_.reduce(std::move(s), polys_, active_, &stats_.max_coeff_bits);
            if (s.empty()) {
                ++stats_.zero_reductions;
                continue;
            }
            add(std::move(s));
        }
        return finish();
    }

private:
    std::string over_budget() {
        if (budget_.max_pairs != 0 && stats_.pairs_reduced >= budget_.max_pairs)
            return "pair budget of " + std::to_string(budget_.max_pairs) + " exhausted";
        if (budget_.max_coeff_bits != 0 && stats_.max_coeff_bits > budget_.max_coeff_bits)
            return "coefficient size exceeded " + std::to_string(budget_.max_coeff_bits) + " bits";
        if (budget_.max_memory_mb != 0 && stored_bytes_ > budget_.max_memory_mb * (std::size_t{1} << 20))
            return "stored basis exceeded " + std::to_string(budget_.max_memory_mb) + " MB";
        if (budget_.max_seconds > 0 && elapsed() > budget_.max_seconds)
            return "time budget of " + std::to_string(budget_.max_seconds) + " s exhausted";
        return {};
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    Pair take_next() {
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs_.size(); ++k) {
            int c = ord_.compare(pairs_[k].lcm, pairs_[best].lcm);
            if (c < 0 || (c == 0 && pairs_[k].age < pairs_[best].age)) best = k;
        }
        Pair p = std::move(pairs_[best]);
        pairs_[best] = std::move(pairs_.back());
        pairs_.pop_back();
        return p;
    }

    // Gebauer-Moeller update for a new basis element.
    void add(IPoly h) {
        const std::size_t hi = polys_.size();
        stored_bytes_ += bytes_of(h);
        stats_.peak_bytes = std::max(stats_.peak_bytes, stored_bytes_);
        polys_.push_back(std::move(h));
        const Monomial& lh = polys_[hi].front().mono;

        std::vector<Pair> candidates;
        for (std::size_t g : active_)
            candidates.push_back({g, hi, lcm(polys_[g].front().mono, lh), 0});

        // Keep (h, g) unless a pair (h, g2) has an lcm that properly divides it.
        std::vector<Pair> kept;
        for (std::size_t a = 0; a < candidates.size(); ++a) {
            const Pair& p = candidates[a];
            bool coprime = polys_[p.i].front().mono.coprime(lh);
            bool dominated = false;
            if (!coprime) {
                for (std::size_t b = a + 1; b < candidates.size() && !dominated; ++b)
                    dominated = candidates[b].lcm.divides(p.lcm);
                for (const Pair& q : kept) {
                    if (dominated) break;
                    dominated = q.lcm.divides(p.lcm);
                }
            }
            if (dominated) {
                ++stats_.chain_skipped;
            } else {
                kept.push_back(p);
            }
        }

        // Old pairs made redundant by the new leading monomial.
        std::vector<Pair> survivors;
        survivors.reserve(pairs_.size());
        for (auto& p : pairs_) {
            bool drop = lh.divides(p.lcm) && !(lcm(polys_[p.i].front().mono, lh) == p.lcm) &&
                        !(lcm(polys_[p.j].front().mono, lh) == p.lcm);
            if (drop) {
                ++stats_.chain_skipped;
            } else {
                survivors.push_back(std::move(p));
            }
        }
        pairs_ = std::move(survivors);

        for (auto& p : kept) {
            if (polys_[p.i].front().mono.coprime(lh)) {
                ++stats_.coprime_skipped;
                continue;
            }
            p.age = next_age_++;
            ++stats_.pairs_created;
            pairs_.push_back(std::move(p));
        }

        std::vector<std::size_t> still;
        for (std::size_t g : active_)
            if (!lh.divides(polys_[g].front().mono)) still.push_back(g);
        still.push_back(hi);
        active_ = std::move(still);
        if (polys_.size() % 32 == 0) sweep();
    }

    // Frees elements that are neither in the basis nor part of a pending pair.
    void sweep() {
        std::vector<char> live(polys_.size(), 0);
        for (std::size_t g : active_) live[g] = 1;
        for (const auto& p : pairs_) live[p.i] = live[p.j] = 1;
        for (std::size_t k = 0; k < polys_.size(); ++k) {
            if (live[k] || polys_[k].empty()) continue;
            stored_bytes_ -= bytes_of(polys_[k]);
            IPoly().swap(polys_[k]);
        }
    }

    GroebnerBasis partial(const std::string& reason) {
        GroebnerBasis out;
        out.ring = ring_;
        out.status = GroebnerStatus::BudgetExceeded;
        out.budget_reason = reason;
        for (std::size_t g : active_) out.generators.push_back(to_multipoly(polys_[g], ring_));
        stats_.seconds = elapsed();
        out.stats = stats_;
        return out;
    }

    GroebnerBasis finish() {
        // Minimal basis, then tail-reduce every element by the others.
        std::vector<std::size_t> minimal;
        for (std::size_t g : active_) {
            bool redundant = false;
            for (std::size_t o : active_)
                if (o != g && polys_[o].front().mono.divides(polys_[g].front().mono)) redundant = true;
            if (!redundant) minimal.push_back(g);
        }
        std::vector<IPoly> reduced;
        for (std::size_t g : minimal) {
            std::vector<std::size_t> others;
            for (std::size_t o : minimal)
                if (o != g) others.push_back(o);
            reduced.push_back(reduce_tail(polys_[g], others));
        }
        std::sort(reduced.begin(), reduced.end(),
                  [&](const IPoly& a, const IPoly& b) { return ord_.compare(a.front().mono, b.front().mono) < 0; });
        GroebnerBasis out;
        out.ring = ring_;
        for (const auto& p : reduced) out.generators.push_back(to_multipoly(p, ring_));
        stats_.seconds = elapsed();
        out.stats = stats_;
        return out;
    }

    // Reduces every non-leading term; the leading coefficient absorbs the accumulated multiplier.
    IPoly reduce_tail(const IPoly& f, const std::vector<std::size_t>& others) const {
        IPoly rest(f.begin() + 1, f.end());
        Integer scale = 1;
        std::size_t pos = 0;
        while (pos < rest.size()) {
            const Monomial& m = rest[pos].mono;
            const IPoly* r = nullptr;
            for (std::size_t k : others)
                if (polys_[k].front().mono.divides(m)) {
                    r = &polys_[k];
                    break;
                }
            if (r == nullptr) {
                ++pos;
                continue;
            }
            Integer d;
            mpz_gcd(d.get_mpz_t(), r->front().coeff.get_mpz_t(), rest[pos].coeff.get_mpz_t());
            Integer a = r->front().coeff / d;
            Integer b = rest[pos].coeff / d;
            if (sgn(a) < 0) {
                a = -a;
                b = -b;
            }
            combine_tail(rest, pos, a, b, m / r->front().mono, *r, ord_);
            scale *= a;
        }
        IPoly out;
        out.reserve(rest.size() + 1);
        out.push_back({f.front().mono, f.front().coeff * scale});
        for (auto& t : rest) out.push_back(std::move(t));
        make_primitive(out);
        return out;
    }

    RingPtr ring_;
    const TermOrder& ord_;
    GroebnerBudget budget_;
    Reducer reducer_;
    std::chrono::steady_clock::time_point start_;
    std::vector<IPoly> polys_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
    std::uint64_t next_age_ = 0;
    GroebnerStats stats_;
    std::size_t stored_bytes_ = 0;
};

const RingPtr& common_ring(const std::vector<MultiPoly>& polys) {
    if (polys.empty()) throw DomainError("Gröbner basis of an empty generator list");
    const RingPtr& ring = polys.front().ring();
    for (const auto& f : polys)
        if (!(*f.ring() == *ring)) throw DomainError("generators belong to different rings");
    return ring;
}

}  // namespace

std::vector<MultiPoly> GroebnerBasis::eliminate_before(std::size_t first_var) const {
    std::vector<MultiPoly> out;
    for (const auto& g : generators) {
        bool free = true;
        for (std::size_t v = 0; v < first_var && free; ++v) free = !g.involves(v);
        if (free) out.push_back(g);
    }
    return out;
}

GroebnerBasis buchberger(const std::vector<MultiPoly>& generators, const GroebnerBudget& budget) {
    const RingPtr& ring = common_ring(generators);
    return Buchberger(ring, budget).run(generators);
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
    const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
    MultiPoly a = f.mul_term(l / f.leading_monomial(), Rational(1) / f.leading_coeff());
    MultiPoly b = g.mul_term(l / g.leading_monomial(), Rational(1) / g.leading_coeff());
    return a - b;
}

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& G) {
    return divrem(f, G).remainder;
}

bool reduces_to_zero(const MultiPoly& f, const std::vector<MultiPoly>& G) {
    if (f.is_zero()) return true;
    std::vector<IPoly> polys;
    std::vector<std::size_t> active;
    for (const auto& g : G) {
        if (g.is_zero()) continue;
        active.push_back(polys.size());
        polys.push_back(to_integer_poly(g));
    }
    Reducer r(f.ring()->order);
    return r.reduce(to_integer_poly(f), polys, active).empty();
}

bool is_groebner_basis(const std::vector<MultiPoly>& G) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j)
            if (!reduces_to_zero(s_polynomial(G[i], G[j]), G)) return false;
    return true;
}

bool is_reduced(const std::vector<MultiPoly>& G) {
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            const Monomial& lm = G[j].leading_monomial();
            for (const auto& t : G[i].terms())
                if (lm.divides(t.mono)) return false;
        }
    return true;
}

GroebnerBasis saturate(const std::vector<MultiPoly>& generators, const std::vector<MultiPoly>& nonvanishing,
                       const GroebnerBudget& budget) {
    const RingPtr& ring = common_ring(generators);
    MultiPoly product(ring, Rational(1));
    bool any = false;
    for (const auto& c : nonvanishing) {
        if (c.is_zero()) throw DomainError("cannot saturate by the zero polynomial");
        if (c.is_constant()) continue;
        product = product * c.to_ring(ring);
        any = true;
    }
    if (!any) return buchberger(generators, budget);

    std::string tname = "t";
    for (int k = 1; ring->has_var(tname); ++k) tname = "t" + std::to_string(k);
    std::vector<std::string> vars{tname};
    vars.insert(vars.end(), ring->vars.begin(), ring->vars.end());
    TermOrder ord = ring->order.kind == OrderKind::Lex ? TermOrder{OrderKind::Lex, 0}
                                                        : TermOrder{OrderKind::BlockGrevLex, 1};
    RingPtr ext = make_ring(std::move(vars), ord);

    std::vector<MultiPoly> gens;
    for (const auto& g : generators) gens.push_back(g.to_ring(ext));
    gens.push_back(MultiPoly::variable(ext, std::size_t{0}) * product.to_ring(ext) - MultiPoly(ext, Rational(1)));

    GroebnerBasis full = buchberger(gens, budget);
    GroebnerBasis out;
    out.ring = ring;
    out.status = full.status;
    out.budget_reason = full.budget_reason;
    out.stats = full.stats;
    for (const auto& g : full.eliminate_before(1)) out.generators.push_back(g.to_ring(ring));
    return out;
}

}  // namespace flagein
