#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace flagein {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised for unsupported or inconsistent configuration (unknown group, bad gauge).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical "p/q" (or "p" for integers) text of an exact rational.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "-p" or "p/q"; throws ConfigError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Number of bits in the larger of numerator and denominator.
std::size_t bit_size(const Rational& q);

}  // namespace flagein
