#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypermatch {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised for every violated precondition on caller-supplied input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// C(a, b) with the convention C(a, b) = 0 whenever b < 0, a < 0 or a < b.
BigInt Binomial(std::int64_t a, std::int64_t b);

// Same as Binomial but checked to fit in 64 bits; throws InputError otherwise.
std::uint64_t Binomial64(std::int64_t a, std::int64_t b);

Rational MakeRational(std::int64_t num, std::int64_t den = 1);

// Parses "p/q", an integer, or a decimal such as "0.3" into an exact rational.
Rational ParseRational(const std::string& text);

std::string ToString(const Rational& q);
std::string ToString(const BigInt& z);

// Integer floor of a non-negative rational.
BigInt Floor(const Rational& q);

}  // namespace hypermatch
