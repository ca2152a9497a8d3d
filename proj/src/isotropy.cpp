#include "flagein/isotropy.hpp"

#include <algorithm>

namespace flagein {

RootString root_string(const Root& alpha, const Root& beta, const RootSystem& rs) {
    if (!rs.contains(alpha) || !rs.contains(beta)) throw DomainError("root_string arguments must be roots");
    if (beta == alpha || beta == -alpha) throw DomainError("root string is undefined for proportional roots");
    RootString s;
    for (Root r = beta - alpha; rs.contains(r); r = r - alpha) ++s.p;
    for (Root r = beta + alpha; rs.contains(r); r = r + alpha) ++s.q;
    return s;
}

Rational n_squared(const Root& alpha, const Root& beta, const RootSystem& rs) {
    if (!rs.contains(alpha + beta)) return Rational(0);
    RootString s = root_string(alpha, beta, rs);
    return Rational(s.q * (s.p + 1), 2) * rs.form().length_squared(alpha);
}

TripleTensor::TripleTensor(std::size_t summands, std::map<Key, Rational> entries)
    : entries_(std::move(entries)), dims_(summands, 2) {}

TripleTensor::Key TripleTensor::key(std::size_t i, std::size_t j, std::size_t k) {
    Key key{i, j, k};
    std::sort(key.begin(), key.end());
    return key;
}

Rational TripleTensor::operator()(std::size_t i, std::size_t j, std::size_t k) const {
    auto it = entries_.find(key(i, j, k));
    return it == entries_.end() ? Rational(0) : it->second;
}

TripleTensor triple_tensor(const RootSystem& rs) {
    const auto& roots = rs.positive();
    std::map<TripleTensor::Key, Rational> entries;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            auto k = rs.index_of(roots[i] + roots[j]);
            if (!k) continue;
            entries[TripleTensor::key(i, j, *k)] = 2 * n_squared(roots[i], roots[j], rs);
        }
    }
    return TripleTensor(roots.size(), std::move(entries));
}

}  // namespace flagein
