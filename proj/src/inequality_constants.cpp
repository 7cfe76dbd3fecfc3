#include "codebounds/inequality_constants.hpp"

#include "codebounds/polynomials.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace codebounds {

Int max_pairwise_products(const Int& M, int h) {
  if (M < 0) throw std::invalid_argument("max_pairwise_products: M must be >= 0");
  if (h < 1) throw std::invalid_argument("max_pairwise_products: h must be >= 1");
  auto [s, rho] = divmod_euclidean(M, h);
  Int big = s + 1;
  return binomial(h - static_cast<long long>(rho), 2) * s * s +
         (h - rho) * rho * s * big + binomial(static_cast<long long>(rho), 2) * big * big;
}

namespace {

Int pair_sum(const std::vector<int>& parts) {
  long long total = 0, squares = 0;
  for (int v : parts) {
    total += v;
    squares += static_cast<long long>(v) * v;
  }
  return Int((total * total - squares) / 2);
}

bool is_balanced(const std::vector<int>& parts) {
  auto [lo, hi] = std::minmax_element(parts.begin(), parts.end());
  return *hi - *lo <= 1;
}

void for_each_composition(int total, int parts, std::vector<int>& buf,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (parts == 1) {
    buf.push_back(total);
    fn(buf);
    buf.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    buf.push_back(first);
    for_each_composition(total - first, parts - 1, buf, fn);
    buf.pop_back();
  }
}

}  // namespace

BruteForceMax max_pairwise_products_bruteforce(int M, int h) {
  if (M < 0 || h < 1) throw std::invalid_argument("max_pairwise_products_bruteforce: bad parameters");
  if (M > 16 || h > 5)
    throw EnumerationLimitError("max_pairwise_products_bruteforce: guard is M <= 16, h <= 5");
  Int best = -1;
  bool balanced_only = true;
  std::vector<int> buf;
  for_each_composition(M, h, buf, [&](const std::vector<int>& parts) {
    Int v = pair_sum(parts);
    if (v > best) {
      best = v;
      balanced_only = is_balanced(parts);
    } else if (v == best && !is_balanced(parts)) {
      balanced_only = false;
    }
  });
  return {best, balanced_only};
}

Rat s_of_k_upper_bound(int q, int n, long long M, int k) {
  if (q < 2 || M < 1) throw std::invalid_argument("s_of_k_upper_bound: need q >= 2, M >= 1");
  PolyParams p(q, n, k, 0);  // validates (q, n, k)
  (void)p;
  Int r = M % q;
  Int coef = ipow(q - 1, static_cast<unsigned>(k)) * binomial(n, k);
  Int inner = (q - 1) * Int(M) * Int(M) + r * (r - q);
  return Rat(coef * inner, Int(2) * q);
}

Rat improved_delsarte_rhs(int q, int n, long long M, int k) {
  if (q < 2 || M < 1) throw std::invalid_argument("improved_delsarte_rhs: need q >= 2, M >= 1");
  PolyParams p(q, n, k, 0);
  (void)p;
  Int r = M % q;
  return Rat(r * (q - r) * ipow(q - 1, static_cast<unsigned>(k - 1)) * binomial(n, k), Int(M));
}

namespace {

struct TAssembly {
  Int q_k, r_k, s_k, t_k, s_prime_k, t_prime_k, T1, T2, T3;
};

// T1 counts the row-1-vs-rest products of the balanced configuration, T2 and
// T3 the within-rest products for the two column classes.
TAssembly assemble_t(const Int& M, const Int& dividend, int q, const Int& divisor) {
  TAssembly a;
  auto d0 = divmod_euclidean(dividend, divisor);
  a.q_k = d0.quot;
  a.r_k = d0.rem;
  auto d1 = divmod_euclidean(a.q_k, q - 1);
  a.s_k = d1.quot;
  a.t_k = d1.rem;
  auto d2 = divmod_euclidean(a.q_k + 1, q - 1);
  a.s_prime_k = d2.quot;
  a.t_prime_k = d2.rem;
  a.T1 = (divisor - a.r_k) * (M - a.q_k) * a.q_k + a.r_k * (M - a.q_k - 1) * (a.q_k + 1);
  a.T2 = (divisor - a.r_k) * max_pairwise_products(a.q_k, q - 1);
  a.T3 = a.r_k * max_pairwise_products(a.q_k + 1, q - 1);
  return a;
}

}  // namespace

CWConstantSet cw_constants(int q, int n, int w, long long M, int k) {
  if (w < 0 || w > n) throw std::invalid_argument("cw_constants: need 0 <= w <= n");
  if (M < 1) throw std::invalid_argument("cw_constants: need M >= 1");
  PolyParams p(q, n, k, w);
  Int dividend = Int(M) * scaled_pk_minus(p);
  // Self-check: the integer dividend must equal (2(q-1)M/q) P_k^-(n; w).
  if (Rat(dividend) != Rat(Int(2) * (q - 1) * M, q) * pk_minus(p))
    throw std::logic_error("cw_constants: dividend mismatch");
  Int divisor = ipow(q - 1, static_cast<unsigned>(k)) * binomial(n, k);
  TAssembly a = assemble_t(Int(M), dividend, q, divisor);
  CWConstantSet c{a.q_k, a.r_k, a.s_k, a.t_k, a.s_prime_k, a.t_prime_k,
                  a.T1,  a.T2,  a.T3,  a.T1 + a.T2 + a.T3};
  if (c.T1 < 0 || c.T2 < 0 || c.T3 < 0)
    throw std::logic_error("cw_constants: negative T component");
  return c;
}

Rat cw_inequality_rhs(int q, int n, int w, long long M, int k) {
  CWConstantSet c = cw_constants(q, n, w, M, k);
  Rat lead = Rat((Int(M) - 1) * ipow(q - 1, static_cast<unsigned>(k)) * binomial(n, k));
  return lead - Rat(Int(2) * q, Int(q - 1) * M) * Rat(c.T);
}

OstergardTerms ostergard_terms(int q, int n, int w, long long M) {
  if (q < 2 || n < 1 || w < 1 || w > n || M < 1)
    throw std::invalid_argument("ostergard_terms: bad parameters");
  OstergardTerms t;
  auto d = divmod_euclidean(Int(M) * w, n);
  t.k = d.quot;
  t.t = d.rem;
  t.m.resize(q);
  t.m_prime.resize(q);
  t.m[0] = Int(M) - t.k - 1;
  t.m_prime[0] = Int(M) - t.k;
  for (int i = 1; i <= q - 1; ++i) {
    t.m[i] = divmod_euclidean(t.k + i, q - 1).quot;
    t.m_prime[i] = divmod_euclidean(t.k + i - 1, q - 1).quot;
  }
  return t;
}

namespace {

Int cross_pair_sum(const std::vector<Int>& v) {
  Int total = 0, squares = 0;
  for (const Int& x : v) {
    total += x;
    squares += x * x;
  }
  return (total * total - squares) / 2;
}

}  // namespace

Int ostergard_rhs(int q, int n, int w, long long M) {
  OstergardTerms t = ostergard_terms(q, n, w, M);
  return 2 * t.t * cross_pair_sum(t.m) + 2 * (n - t.t) * cross_pair_sum(t.m_prime);
}

MatrixBalanceMax matrix_balancing_max_bruteforce(int M, int Mprime, int q, int N) {
  if (M < 0 || Mprime < 0 || q < 2 || N < 1)
    throw std::invalid_argument("matrix_balancing_max_bruteforce: bad parameters");
  if (q > 4 || N > 4 || M > 8)
    throw EnumerationLimitError("matrix_balancing_max_bruteforce: guard is q <= 4, N <= 4, M <= 8");
  if (Mprime > N * M)
    throw std::invalid_argument("matrix_balancing_max_bruteforce: no matrix has these sums");

  // Inner stage: for every possible per-column sum m over rows 2..q, the
  // exhaustive maximum of the within-column products and whether all its
  // maximizers are balanced.
  std::vector<BruteForceMax> inner(M + 1, BruteForceMax{Int(0), true});
  for (int m = 0; m <= M; ++m) inner[m] = max_pairwise_products_bruteforce(m, q - 1);

  // Outer stage: enumerate all tuples (m_1..m_N) with sum M'. The objective
  // splits per column as (M - m_i) m_i + inner(m_i).
  std::vector<std::vector<int>> max_tuples;
  Int best = -1;
  std::vector<int> buf;
  for_each_composition(Mprime, N, buf, [&](const std::vector<int>& tuple) {
    Int value = 0;
    for (int m : tuple) {
      if (m > M) return;  // column sum over rows 2..q cannot exceed M
      value += Int(M - m) * m + inner[m].value;
    }
    if (value > best) {
      best = value;
      max_tuples.clear();
      max_tuples.push_back(tuple);
    } else if (value == best) {
      max_tuples.push_back(tuple);
    }
  });
  if (best < 0)
    throw std::invalid_argument("matrix_balancing_max_bruteforce: no matrix has these sums");

  bool balanced_only = true;
  for (const auto& tuple : max_tuples) {
    if (!is_balanced(tuple)) balanced_only = false;  // row-1 condition
    for (int m : tuple)
      if (!inner[m].balanced_only) balanced_only = false;  // rows 2..q condition
  }
  return {best, balanced_only};
}

Int matrix_balancing_closed_form(const Int& M, const Int& Mprime, int q, const Int& N) {
  TAssembly a = assemble_t(M, Mprime, q, N);
  return a.T1 + a.T2 + a.T3;
}

}  // namespace codebounds
