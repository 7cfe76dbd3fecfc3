#include "codebounds/finite_field.hpp"

#include <stdexcept>
#include <string>

namespace codebounds {

bool PrimeField::is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(int p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
}

int PrimeField::inv(int a) const {
  a %= p_;
  if (a < 0) a += p_;
  if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
  // Fermat: a^(p-2) mod p.
  long long result = 1, base = a;
  int e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<int>(result);
}

NonzeroVector::NonzeroVector(PrimeField f, std::vector<int> e) : field(f), entries(std::move(e)) {
  if (entries.empty()) throw std::invalid_argument("NonzeroVector: length must be >= 1");
  for (int v : entries)
    if (v <= 0 || v >= field.modulus())
      throw std::invalid_argument("NonzeroVector: entries must lie in {1, ..., p-1}");
}

namespace {

long long count_dot(const NonzeroVector& a, bool want_nonzero) {
  const int p = a.field.modulus();
  const int j = a.length();
  long long space = 1;
  for (int i = 0; i < j; ++i) {
    space *= p - 1;
    if (space > kEnumerationGuard)
      throw EnumerationLimitError("count_dot: (p-1)^j exceeds enumeration guard");
  }
  // Odometer over b in {1..p-1}^j.
  std::vector<int> b(j, 1);
  long long count = 0;
  for (long long iter = 0; iter < space; ++iter) {
    long long dot = 0;
    for (int i = 0; i < j; ++i) dot += static_cast<long long>(a.entries[i]) * b[i];
    bool nonzero = (dot % p) != 0;
    if (nonzero == want_nonzero) ++count;
    for (int i = 0; i < j; ++i) {
      if (++b[i] < p) break;
      b[i] = 1;
    }
  }
  return count;
}

}  // namespace

long long count_nonzero_dot(const NonzeroVector& a) { return count_dot(a, true); }

long long count_zero_dot(const NonzeroVector& a) { return count_dot(a, false); }

DotCounts closed_form_dot_counts(int q, int j) {
  if (q < 2) throw std::invalid_argument("closed_form_dot_counts: q must be >= 2");
  if (j < 1) throw std::invalid_argument("closed_form_dot_counts: j must be >= 1");
  Int pow = ipow(q - 1, static_cast<unsigned>(j));
  Int inner = (j % 2 == 0) ? Int(pow - 1) : Int(pow + 1);
  Int num = (q - 1) * inner;
  if (num % q != 0) throw std::logic_error("closed_form_dot_counts: numerator not divisible by q");
  Int n = num / q;
  return {n, pow - n};
}

}  // namespace codebounds
