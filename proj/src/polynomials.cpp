#include "codebounds/polynomials.hpp"

#include <stdexcept>

namespace codebounds {

PolyParams::PolyParams(int q_, int n_, int k_, int x_) : q(q_), n(n_), k(k_), x(x_) {
  if (q < 2) throw std::invalid_argument("PolyParams: q must be >= 2");
  if (n < 1) throw std::invalid_argument("PolyParams: n must be >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("PolyParams: k must satisfy 1 <= k <= n");
  if (x < 0 || x > n) throw std::invalid_argument("PolyParams: x must satisfy 0 <= x <= n");
}

Int binomial(long long a, long long b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  Int result = 1;
  for (long long i = 1; i <= b; ++i) {
    result *= a - b + i;
    result /= i;  // exact at every step: result is C(a-b+i, i)
  }
  return result;
}

Int krawtchouk(const PolyParams& p) {
  Int sum = 0;
  for (int j = 0; j <= p.k; ++j) {
    Int term = ipow(p.q - 1, static_cast<unsigned>(p.k - j)) * binomial(p.x, j) *
               binomial(p.n - p.x, p.k - j);
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

namespace {

// Shared kernel: sum_j bracket_scale(j) * (q-1)^(k-j) C(x,j) C(n-x,k-j)
// where bracket(j) = (q-1)^j - (-1)^j.
Int bracket(int q, int j) {
  Int b = ipow(q - 1, static_cast<unsigned>(j));
  return (j % 2 == 0) ? Int(b - 1) : Int(b + 1);
}

}  // namespace

Rat pk_minus(const PolyParams& p) {
  Int sum = 0;
  for (int j = 0; j <= p.k; ++j) {
    sum += bracket(p.q, j) * ipow(p.q - 1, static_cast<unsigned>(p.k - j)) *
           binomial(p.x, j) * binomial(p.n - p.x, p.k - j);
  }
  return Rat(sum, 2);
}

Rat pk_plus(const PolyParams& p) {
  Rat total = Rat(ipow(p.q - 1, static_cast<unsigned>(p.k)) * binomial(p.n, p.k));
  return total - pk_minus(p);
}

Int scaled_pk_minus(const PolyParams& p) {
  Int sum = 0;
  for (int j = 0; j <= p.k; ++j) {
    Int b = bracket(p.q, j);
    if (b % p.q != 0)
      throw std::logic_error("scaled_pk_minus: bracket not divisible by q");
    sum += (b / p.q) * ipow(p.q - 1, static_cast<unsigned>(p.k - j)) * binomial(p.x, j) *
           binomial(p.n - p.x, p.k - j);
  }
  return (p.q - 1) * sum;
}

}  // namespace codebounds
