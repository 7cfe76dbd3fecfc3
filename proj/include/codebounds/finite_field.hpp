#ifndef CODEBOUNDS_FINITE_FIELD_HPP
#define CODEBOUNDS_FINITE_FIELD_HPP

#include "codebounds/rational.hpp"

#include <vector>

namespace codebounds {

/// Arithmetic mod a prime p. Elements are plain ints in {0, ..., p-1}.
/// Primality is verified at construction by trial division.
class PrimeField {
 public:
  explicit PrimeField(int p);

  int modulus() const { return p_; }

  int add(int a, int b) const { return (a + b) % p_; }
  int sub(int a, int b) const { return (a - b % p_ + p_) % p_; }
  int mul(int a, int b) const { return static_cast<int>(static_cast<long long>(a) * b % p_); }
  int neg(int a) const { return a == 0 ? 0 : p_ - a; }

  /// Multiplicative inverse; inversion of 0 throws std::domain_error.
  int inv(int a) const;

  static bool is_prime(int p);

 private:
  int p_;
};

/// A vector over F_p all of whose entries are nonzero. Length >= 1.
struct NonzeroVector {
  PrimeField field;
  std::vector<int> entries;

  NonzeroVector(PrimeField f, std::vector<int> e);

  int length() const { return static_cast<int>(entries.size()); }
};

/// |{b in (F_p^*)^j : a.b != 0}| by exhaustive enumeration over all
/// (p-1)^j vectors b. Guard: (p-1)^j <= 10^7.
long long count_nonzero_dot(const NonzeroVector& a);

/// |{b in (F_p^*)^j : a.b == 0}|, same enumeration.
long long count_zero_dot(const NonzeroVector& a);

struct DotCounts {
  Int nonzero;  // N
  Int zero;     // Z
};

/// Closed forms N = (q-1)/q * [(q-1)^j - (-1)^j] and Z = (q-1)^j - N.
/// Both are integers for every q >= 2; the division is checked exactly.
DotCounts closed_form_dot_counts(int q, int j);

}  // namespace codebounds

#endif  // CODEBOUNDS_FINITE_FIELD_HPP
