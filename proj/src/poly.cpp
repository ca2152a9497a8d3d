#include "flagein/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace flagein {

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::span<const std::uint32_t> exps) : exps_(exps.begin(), exps.end()) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint32_t{0});
}

void Monomial::set(std::size_t i, std::uint32_t e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

bool Monomial::coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] += b.exps_[i];
    m.degree_ = a.degree_ + b.degree_;
    return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] -= b.exps_[i];
    m.degree_ = a.degree_ - b.degree_;
    return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (std::size_t i = 0; i < m.exps_.size(); ++i) m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    m.degree_ = std::accumulate(m.exps_.begin(), m.exps_.end(), std::uint32_t{0});
    return m;
}

// ---------------------------------------------------------------------------
// TermOrder

namespace {

int compare_lex(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    return 0;
}

int compare_grevlex(const Monomial& a, const Monomial& b, std::size_t from, std::size_t to) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t i = from; i < to; ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = to; i-- > from;)
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
}

}  // namespace

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind) {
    case OrderKind::Lex:
        return compare_lex(a, b, 0, a.size());
    case OrderKind::GrevLex:
        if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
        return compare_grevlex(a, b, 0, a.size());
    case OrderKind::BlockGrevLex: {
        std::size_t split = std::min(block, a.size());
        if (int c = compare_grevlex(a, b, 0, split); c != 0) return c;
        return compare_grevlex(a, b, split, a.size());
    }
    }
    return 0;
}

std::string to_string(const TermOrder& order) {
    switch (order.kind) {
    case OrderKind::Lex: return "lex";
    case OrderKind::GrevLex: return "grevlex";
    case OrderKind::BlockGrevLex: return "block-grevlex(" + std::to_string(order.block) + ")";
    }
    return "?";
}

TermOrder parse_term_order(std::string_view name) {
    if (name == "lex") return {OrderKind::Lex, 0};
    if (name == "grevlex") return {OrderKind::GrevLex, 0};
    throw ConfigError("unknown term order '" + std::string(name) + "' (expected lex or grevlex)");
}

// ---------------------------------------------------------------------------
// PolyRing

std::size_t PolyRing::index_of(std::string_view name) const {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw DomainError("variable '" + std::string(name) + "' is not in the ring");
    return static_cast<std::size_t>(it - vars.begin());
}

bool PolyRing::has_var(std::string_view name) const {
    return std::find(vars.begin(), vars.end(), name) != vars.end();
}

RingPtr make_ring(std::vector<std::string> vars, TermOrder order) {
    return std::make_shared<const PolyRing>(PolyRing{std::move(vars), order});
}

// ---------------------------------------------------------------------------
// MultiPoly

MultiPoly::MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

MultiPoly::MultiPoly(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
    if (constant != 0) terms_.push_back({Monomial(ring_->nvars()), constant});
}

MultiPoly::MultiPoly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
}

MultiPoly MultiPoly::variable(RingPtr ring, std::string_view name) {
    std::size_t i = ring->index_of(name);
    return variable(std::move(ring), i);
}

MultiPoly MultiPoly::variable(RingPtr ring, std::size_t index) {
    Monomial m(ring->nvars());
    m.set(index, 1);
    MultiPoly p(std::move(ring));
    p.terms_.push_back({std::move(m), Rational(1)});
    return p;
}

void MultiPoly::normalize() {
    const TermOrder& ord = ring_->order;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono) {
            merged.back().coeff += t.coeff;
        } else {
            if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
            merged.push_back(std::move(t));
        }
    }
    if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
    terms_ = std::move(merged);
}

void MultiPoly::require_same_ring(const MultiPoly& g) const {
    if (ring_ != g.ring_ && !(ring_ && g.ring_ && *ring_ == *g.ring_))
        throw DomainError("polynomials belong to different rings");
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

const Term& MultiPoly::leading_term() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return terms_.front();
}

std::uint32_t MultiPoly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::uint32_t MultiPoly::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

std::size_t MultiPoly::sole_variable() const {
    std::size_t found = static_cast<std::size_t>(-1);
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        if (!involves(v)) continue;
        if (found != static_cast<std::size_t>(-1)) return static_cast<std::size_t>(-1);
        found = v;
    }
    return found;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

// Merge of two sorted term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, int sign, const TermOrder& ord) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.compare(a[i].mono, b[j].mono);
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
            ++j;
        } else {
            Rational s = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& g) {
    require_same_ring(g);
    terms_ = merge_terms(terms_, g.terms_, 1, ring_->order);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& g) {
    require_same_ring(g);
    terms_ = merge_terms(terms_, g.terms_, -1, ring_->order);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, const Rational& c) const {
    MultiPoly r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
}

MultiPoly operator*(const MultiPoly& f, const MultiPoly& g) {
    f.require_same_ring(g);
    std::vector<Term> all;
    all.reserve(f.terms_.size() * g.terms_.size());
    for (const auto& a : f.terms_)
        for (const auto& b : g.terms_) all.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return MultiPoly(f.ring_, std::move(all));
}

bool operator==(const MultiPoly& f, const MultiPoly& g) {
    if (f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
        if (!(f.terms_[i].mono == g.terms_[i].mono) || f.terms_[i].coeff != g.terms_[i].coeff) return false;
    return true;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly result(ring_, Rational(1));
    MultiPoly base = *this;
    while (n > 0) {
        if (n & 1U) result = result * base;
        n >>= 1U;
        if (n > 0) base = base * base;
    }
    return result;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        std::uint32_t e = t.mono[var];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        out.push_back({std::move(m), t.coeff * e});
    }
    return MultiPoly(ring_, std::move(out));
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& g) const {
    require_same_ring(g);
    std::uint32_t maxdeg = degree_in(var);
    std::vector<MultiPoly> powers{MultiPoly(ring_, Rational(1))};
    for (std::uint32_t k = 1; k <= maxdeg; ++k) powers.push_back(powers.back() * g);
    MultiPoly out(ring_);
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        std::uint32_t e = m[var];
        m.set(var, 0);
        out += powers[e].mul_term(m, t.coeff);
    }
    return out;
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m = t.mono;
        std::uint32_t e = m[var];
        m.set(var, 0);
        Rational c = t.coeff;
        if (e > 0) {
            Rational p;
            mpz_pow_ui(p.get_num_mpz_t(), value.get_num_mpz_t(), e);
            mpz_pow_ui(p.get_den_mpz_t(), value.get_den_mpz_t(), e);
            p.canonicalize();
            c *= p;
        }
        out.push_back({std::move(m), std::move(c)});
    }
    return MultiPoly(ring_, std::move(out));
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != ring_->nvars()) throw DomainError("evaluation point has wrong dimension");
    Rational s = 0;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (std::uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
        s += v;
    }
    return s;
}

double MultiPoly::evaluate(const std::vector<double>& point) const {
    if (point.size() != ring_->nvars()) throw DomainError("evaluation point has wrong dimension");
    double s = 0;
    for (const auto& t : terms_) {
        double v = t.coeff.get_d();
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.mono[i] != 0) v *= std::pow(point[i], static_cast<int>(t.mono[i]));
        s += v;
    }
    return s;
}

MultiPoly MultiPoly::to_ring(const RingPtr& target) const {
    std::vector<std::size_t> map(ring_->nvars());
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        if (target->has_var(ring_->vars[v])) {
            map[v] = target->index_of(ring_->vars[v]);
        } else if (involves(v)) {
            throw DomainError("variable '" + ring_->vars[v] + "' is missing from the target ring");
        } else {
            map[v] = static_cast<std::size_t>(-1);
        }
    }
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(target->nvars());
        for (std::size_t v = 0; v < ring_->nvars(); ++v)
            if (t.mono[v] != 0) m.set(map[v], t.mono[v]);
        out.push_back({std::move(m), t.coeff});
    }
    return MultiPoly(target, std::move(out));
}

Rational MultiPoly::content() const {
    if (terms_.empty()) return Rational(0);
    Integer g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational c(g, l);
    c.canonicalize();
    return c;
}

MultiPoly MultiPoly::primitive() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (leading_coeff() < 0) c = -c;
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff /= c;
    return r;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    Rational c = leading_coeff();
    MultiPoly r = *this;
    for (auto& t : r.terms_) t.coeff /= c;
    return r;
}

std::size_t MultiPoly::max_coeff_bits() const {
    std::size_t b = 0;
    for (const auto& t : terms_) b = std::max(b, bit_size(t.coeff));
    return b;
}

// ---------------------------------------------------------------------------
// Division

DivisionResult divrem(const MultiPoly& f, const std::vector<MultiPoly>& divisors) {
    const RingPtr& ring = f.ring();
    for (const auto& g : divisors) {
        if (g.is_zero()) throw DomainError("division by the zero polynomial");
        if (!(*g.ring() == *ring)) throw DomainError("polynomials belong to different rings");
    }
    DivisionResult res;
    res.quotients.assign(divisors.size(), MultiPoly(ring));
    std::vector<Term> rem;
    MultiPoly p = f;
    while (!p.is_zero()) {
        const Term lt = p.leading_term();
        bool divided = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            const Term& glt = divisors[i].leading_term();
            if (!glt.mono.divides(lt.mono)) continue;
            Monomial m = lt.mono / glt.mono;
            Rational c = lt.coeff / glt.coeff;
            res.quotients[i] += MultiPoly(ring, std::vector<Term>{{m, c}});
            p -= divisors[i].mul_term(m, c);
            divided = true;
            break;
        }
        if (!divided) {
            rem.push_back(lt);
            p -= MultiPoly(ring, std::vector<Term>{lt});
        }
    }
    res.remainder = MultiPoly(ring, std::move(rem));
    return res;
}

// ---------------------------------------------------------------------------
// Text format

std::string to_string(const MultiPoly& f) {
    if (f.is_zero()) return "0";
    const auto& vars = f.ring()->vars;
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        bool negative = t.coeff < 0;
        Rational mag = negative ? Rational(-t.coeff) : t.coeff;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            std::uint32_t e = t.mono[v];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[v];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += mono;
        } else {
            out += to_string(mag) + "*" + mono;
        }
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

    MultiPoly parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty polynomial");
        MultiPoly p = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly expression() {
        MultiPoly acc(ring_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        MultiPoly t = term();
        acc = negate ? -t : t;
        while (true) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = power();
        while (true) {
            if (accept('*')) {
                acc = acc * power();
            } else if (accept('/')) {
                MultiPoly d = power();
                if (!d.is_constant() || d.is_zero()) fail("division is only allowed by nonzero constants");
                acc *= Rational(1) / d.leading_coeff();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly power() {
        MultiPoly base = primary();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    MultiPoly primary() {
        skip_ws();
        if (pos_ == text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expression();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            Integer n(std::string(text_.substr(start, pos_ - start)), 10);
            return MultiPoly(ring_, Rational(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (!ring_->has_var(name)) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return MultiPoly::variable(ring_, name);
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    const RingPtr& ring_;
    std::size_t pos_ = 0;
};

}  // namespace

MultiPoly parse_poly(std::string_view text, const RingPtr& ring) {
    return PolyParser(text, ring).parse();
}

std::vector<std::string> scan_variables(std::string_view text) {
    std::vector<std::string> vars;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t start = i;
            while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
            std::string name(text.substr(start, i - start));
            if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(std::move(name));
        } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        } else {
            ++i;
        }
    }
    return vars;
}

}  // namespace flagein
