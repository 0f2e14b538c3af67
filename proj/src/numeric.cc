#include "hypermatch/numeric.h"

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

namespace hypermatch {

BigInt Binomial(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || a < b) return 0;
  b = std::min(b, a - b);
  // Pascal's rule restricted to the first b+1 columns.
  std::vector<BigInt> row(static_cast<std::size_t>(b) + 1, 0);
  row[0] = 1;
  for (std::int64_t i = 1; i <= a; ++i) {
    for (std::int64_t j = std::min(i, b); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    }
  }
  return row[static_cast<std::size_t>(b)];
}

std::uint64_t Binomial64(std::int64_t a, std::int64_t b) {
  BigInt value = Binomial(a, b);
  if (value > std::numeric_limits<std::uint64_t>::max()) {
    throw InputError("binomial coefficient exceeds 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

Rational MakeRational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

Rational ParseRational(const std::string& text) {
  auto parse_int = [&](const std::string& s) -> BigInt {
    if (s.empty()) throw InputError("malformed rational '" + text + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InputError("malformed rational '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw InputError("malformed rational '" + text + "'");
      }
    }
    BigInt value(s.substr(start));
    return s[0] == '-' ? BigInt(-value) : value;
  };

  if (auto slash = text.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos) {
      throw InputError("malformed rational '" + text + "'");
    }
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt magnitude = abs(parse_int(whole)) * scale + BigInt(frac);
    return Rational(negative ? BigInt(-magnitude) : magnitude, scale);
  }
  return Rational(parse_int(text));
}

std::string ToString(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string ToString(const BigInt& z) { return z.str(); }

BigInt Floor(const Rational& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  BigInt quotient = num / den;
  if (num < 0 && quotient * den != num) quotient -= 1;
  return quotient;
}

}  // namespace hypermatch
