#ifndef CODEBOUNDS_POLYNOMIALS_HPP
#define CODEBOUNDS_POLYNOMIALS_HPP

#include "codebounds/rational.hpp"

namespace codebounds {

/// Evaluation point of a degree-k Krawtchouk-type polynomial over the
/// Hamming scheme H(n, q). Constructors reject out-of-range parameters.
struct PolyParams {
  int q;  // alphabet size, >= 2
  int n;  // length, >= 1
  int k;  // degree index, 1 <= k <= n
  int x;  // evaluation point, 0 <= x <= n

  PolyParams(int q_, int n_, int k_, int x_);
};

/// C(a, b) with the usual convention C(a, b) = 0 when b < 0, a < 0 or b > a,
/// so sums over shifted binomials need no per-term range guards.
Int binomial(long long a, long long b);

/// P_k(n; x) = sum_j (-1)^j (q-1)^(k-j) C(x, j) C(n-x, k-j).
Int krawtchouk(const PolyParams& p);

/// P_k^-(n; x) = (1/2) sum_j [(q-1)^j - (-1)^j] (q-1)^(k-j) C(x, j) C(n-x, k-j).
/// Nonnegative; denominator is always 1 or 2.
Rat pk_minus(const PolyParams& p);

/// P_k^+(n; x) = (q-1)^k C(n, k) - P_k^-(n; x).
Rat pk_plus(const PolyParams& p);

/// The integer (2(q-1)/q) * P_k^-(n; x), computed term by term: every bracket
/// (q-1)^j - (-1)^j is divisible by q. A non-divisible bracket means the
/// implementation is broken and raises std::logic_error.
Int scaled_pk_minus(const PolyParams& p);

}  // namespace codebounds

#endif  // CODEBOUNDS_POLYNOMIALS_HPP
