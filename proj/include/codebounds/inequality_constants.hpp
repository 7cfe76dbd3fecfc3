#ifndef CODEBOUNDS_INEQUALITY_CONSTANTS_HPP
#define CODEBOUNDS_INEQUALITY_CONSTANTS_HPP

#include "codebounds/rational.hpp"

#include <vector>

namespace codebounds {

/// Maximum of sum_{c<d} n_c n_d over nonnegative integers n_1 + ... + n_h = M,
/// attained by the balanced assignment. With M = s*h + rho:
///   C(h-rho, 2) s^2 + (h-rho) rho s (s+1) + C(rho, 2) (s+1)^2.
Int max_pairwise_products(const Int& M, int h);

struct BruteForceMax {
  Int value;
  bool balanced_only;  // every maximizer satisfies |n_c - n_d| <= 1
};

/// Exhaustive maximum over all compositions of M into h nonnegative parts.
/// Guard: M <= 16, h <= 5.
BruteForceMax max_pairwise_products_bruteforce(int M, int h);

/// Upper bound on the column double-counting sum S(k) for any q-ary code of
/// size M: (q-1)^k C(n,k) [ (q-1)/(2q) M^2 + r(r-q)/(2q) ], r = M mod q.
Rat s_of_k_upper_bound(int q, int n, long long M, int k);

/// Right-hand side of the improved Delsarte inequality:
/// (1/M) r (q-r) (q-1)^(k-1) C(n,k), r = M mod q. Zero exactly when q | M.
Rat improved_delsarte_rhs(int q, int n, long long M, int k);

/// The constant set driving the constant-weight inequalities. All divisions
/// are Euclidean (0 <= remainder < divisor).
struct CWConstantSet {
  Int q_k, r_k;            // divmod of M * scaled_pk_minus(q,n,k,w) by (q-1)^k C(n,k)
  Int s_k, t_k;            // divmod of q_k by q-1
  Int s_prime_k, t_prime_k;  // divmod of q_k + 1 by q-1
  Int T1, T2, T3, T;       // T = T1 + T2 + T3
};

CWConstantSet cw_constants(int q, int n, int w, long long M, int k);

/// Right-hand side of the constant-weight inequality:
/// (M-1)(q-1)^k C(n,k) - (2q / ((q-1)M)) T(k).
Rat cw_inequality_rhs(int q, int n, int w, long long M, int k);

/// Quantities of the Ostergard bound: k, t = divmod(M*w, n) and the part
/// sizes M_i, M'_i. The floor sums satisfy sum_{i>=1} M_i = k+1 and
/// sum_{i>=1} M'_i = k, so each family sums to M.
struct OstergardTerms {
  Int k, t;
  std::vector<Int> m;        // M_0 = M-k-1, M_i = floor((k+i)/(q-1))
  std::vector<Int> m_prime;  // M'_0 = M-k,  M'_i = floor((k+i-1)/(q-1))
};

OstergardTerms ostergard_terms(int q, int n, int w, long long M);

/// 2t sum_{i<j} M_i M_j + 2(n-t) sum_{i<j} M'_i M'_j.
Int ostergard_rhs(int q, int n, int w, long long M);

struct MatrixBalanceMax {
  Int value;
  bool balanced_only;  // every maximizer satisfies the row-1 and row-block balance
};

/// Exhaustive maximum of sum_i sum_{c<d} n_ci n_di over q x N nonnegative
/// matrices with all column sums M and total sum M' over rows 2..q.
/// Enumerates column sums, then compositions within each column.
/// Guard: q <= 4, N <= 4, M <= 8.
MatrixBalanceMax matrix_balancing_max_bruteforce(int M, int Mprime, int q, int N);

/// The balanced-configuration value for the same matrix problem, assembled
/// through the identical quotient/remainder steps cw_constants performs.
Int matrix_balancing_closed_form(const Int& M, const Int& Mprime, int q, const Int& N);

}  // namespace codebounds

#endif  // CODEBOUNDS_INEQUALITY_CONSTANTS_HPP
