#ifndef CODEBOUNDS_RATIONAL_HPP
#define CODEBOUNDS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace codebounds {

// All arithmetic that ends up in a reported value is exact: arbitrary
// precision integers and rationals, no floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Every quantity enumerated exhaustively is capped at this many inner terms;
// parameters beyond the cap are rejected, never approximated.
inline constexpr long long kEnumerationGuard = 10'000'000;

/// Thrown when an exhaustive enumeration would exceed its guard.
class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct DivMod {
  Int quot;
  Int rem;
};

/// Euclidean division with 0 <= rem < divisor. Requires divisor > 0.
inline DivMod divmod_euclidean(const Int& a, const Int& b) {
  if (b <= 0) throw std::invalid_argument("divmod_euclidean: divisor must be positive");
  Int q = a / b;  // truncates toward zero
  Int r = a - q * b;
  if (r < 0) {
    q -= 1;
    r += b;
  }
  return {std::move(q), std::move(r)};
}

inline Int ipow(const Int& base, unsigned exp) {
  Int result = 1;
  Int b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    b *= b;
    exp >>= 1u;
  }
  return result;
}

inline Int floor_rat(const Rat& r) {
  return divmod_euclidean(numerator(r), denominator(r)).quot;
}

inline std::string to_string(const Int& v) { return v.str(); }

/// Canonical rendering: "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rat_from_string: zero denominator");
  return Rat(num, den);
}

}  // namespace codebounds

#endif  // CODEBOUNDS_RATIONAL_HPP
