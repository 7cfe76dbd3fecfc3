#include "codebounds/code_oracle.hpp"

#include "codebounds/finite_field.hpp"
#include "codebounds/inequality_constants.hpp"
#include "codebounds/polynomials.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace codebounds {

Code::Code(int q, int n, std::vector<std::vector<uint8_t>> rows)
    : q_(q), n_(n), m_(static_cast<int>(rows.size())) {
  if (q < 2) throw std::invalid_argument("Code: q must be >= 2");
  if (n < 1) throw std::invalid_argument("Code: n must be >= 1");
  if (m_ < 1) throw std::invalid_argument("Code: at least one codeword required");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw std::invalid_argument("Code: row length mismatch");
    for (uint8_t v : r)
      if (v >= q) throw std::invalid_argument("Code: entry out of alphabet range");
  }
  std::vector<std::vector<uint8_t>> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("Code: duplicate rows (codes are sets)");
  data_.reserve(static_cast<size_t>(m_) * n);
  for (const auto& r : rows) data_.insert(data_.end(), r.begin(), r.end());
}

Code Code::from_words(int q, const std::vector<std::string>& words) {
  std::vector<std::vector<uint8_t>> rows;
  rows.reserve(words.size());
  for (const auto& w : words) {
    std::vector<uint8_t> row;
    row.reserve(w.size());
    for (char c : w) {
      if (c < '0' || c > '9') throw std::invalid_argument("Code::from_words: non-digit symbol");
      row.push_back(static_cast<uint8_t>(c - '0'));
    }
    rows.push_back(std::move(row));
  }
  int n = rows.empty() ? 0 : static_cast<int>(rows.front().size());
  return Code(q, n, std::move(rows));
}

int Code::weight(int m) const {
  auto r = row(m);
  return static_cast<int>(std::count_if(r.begin(), r.end(), [](uint8_t v) { return v != 0; }));
}

bool Code::is_constant_weight(int w) const {
  for (int m = 0; m < m_; ++m)
    if (weight(m) != w) return false;
  return true;
}

int hamming_distance(std::span<const uint8_t> u, std::span<const uint8_t> v) {
  if (u.size() != v.size()) throw std::invalid_argument("hamming_distance: length mismatch");
  int d = 0;
  for (size_t i = 0; i < u.size(); ++i) d += u[i] != v[i];
  return d;
}

DistanceDistribution distance_distribution(const Code& code) {
  const int m = code.size();
  std::vector<long long> counts(code.n() + 1, 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) ++counts[hamming_distance(code.row(a), code.row(b))];
  DistanceDistribution dd;
  dd.size = m;
  dd.b.reserve(counts.size());
  for (long long c : counts) dd.b.emplace_back(Int(c), Int(m));
  return dd;
}

namespace {

void require_prime_alphabet(const Code& code, const char* who) {
  if (!PrimeField::is_prime(code.q()))
    throw std::invalid_argument(std::string(who) + ": alphabet size must be prime");
}

void require_k_range(const Code& code, int k, const char* who) {
  if (k < 1 || k > code.n())
    throw std::invalid_argument(std::string(who) + ": k must satisfy 1 <= k <= n");
}

void require_combination_guard(const Code& code, int k, const char* who) {
  Int combos = ipow(code.q() - 1, static_cast<unsigned>(k)) * binomial(code.n(), k);
  if (combos > kEnumerationGuard)
    throw EnumerationLimitError(std::string(who) + ": (q-1)^k C(n,k) exceeds enumeration guard");
}

/// Walks all k-subsets i_1 < ... < i_k of {0..n-1}; fn may iterate alphas.
template <typename Fn>
void for_each_column_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

/// Odometer over alpha in {1..q-1}^k; returns false when exhausted.
bool next_alpha(std::vector<int>& alpha, int q) {
  for (int t = 0; t < static_cast<int>(alpha.size()); ++t) {
    if (++alpha[t] < q) return true;
    alpha[t] = 1;
  }
  return false;
}

}  // namespace

Int s_of_k_direct(const Code& code, int k) {
  require_prime_alphabet(code, "s_of_k_direct");
  require_k_range(code, k, "s_of_k_direct");
  require_combination_guard(code, k, "s_of_k_direct");
  const int q = code.q(), m = code.size();
  Int total = 0;
  std::vector<int> combined(m);
  std::vector<long long> counts(q);
  for_each_column_subset(code.n(), k, [&](const std::vector<int>& idx) {
    std::vector<int> alpha(k, 1);
    long long subset_sum = 0;
    do {
      std::fill(combined.begin(), combined.end(), 0);
      for (int t = 0; t < k; ++t) {
        const int col = idx[t], a = alpha[t];
        for (int r = 0; r < m; ++r) combined[r] = (combined[r] + a * code.row(r)[col]) % q;
      }
      std::fill(counts.begin(), counts.end(), 0);
      for (int r = 0; r < m; ++r) ++counts[combined[r]];
      long long squares = 0;
      for (int c = 0; c < q; ++c) squares += counts[c] * counts[c];
      subset_sum += (static_cast<long long>(m) * m - squares) / 2;
    } while (next_alpha(alpha, q));
    total += subset_sum;
  });
  return total;
}

Int s1_of_k_paircount(const Code& code, int k) {
  require_prime_alphabet(code, "s1_of_k_paircount");
  require_k_range(code, k, "s1_of_k_paircount");
  require_combination_guard(code, k, "s1_of_k_paircount");
  const int q = code.q(), m = code.size(), n = code.n();
  Int total = 0;
  std::vector<int> diff(n);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      auto ra = code.row(a), rb = code.row(b);
      for (int i = 0; i < n; ++i) diff[i] = (ra[i] - rb[i] + q) % q;
      long long pair_count = 0;
      for_each_column_subset(n, k, [&](const std::vector<int>& idx) {
        bool all_zero = true;
        for (int t = 0; t < k; ++t)
          if (diff[idx[t]] != 0) {
            all_zero = false;
            break;
          }
        if (all_zero) return;  // every alpha dots to zero
        std::vector<int> alpha(k, 1);
        do {
          long long dot = 0;
          for (int t = 0; t < k; ++t) dot += static_cast<long long>(alpha[t]) * diff[idx[t]];
          if (dot % q != 0) ++pair_count;
        } while (next_alpha(alpha, q));
      });
      total += pair_count;
    }
  }
  return total;
}

Int s0_of_k_paircount(const Code& code, int w, int k) {
  require_prime_alphabet(code, "s0_of_k_paircount");
  require_k_range(code, k, "s0_of_k_paircount");
  require_combination_guard(code, k, "s0_of_k_paircount");
  if (!code.is_constant_weight(w))
    throw std::invalid_argument("s0_of_k_paircount: code is not constant-weight w");
  const int q = code.q(), m = code.size(), n = code.n();
  Int total = 0;
  for (int a = 0; a < m; ++a) {
    auto ra = code.row(a);
    long long row_count = 0;
    for_each_column_subset(n, k, [&](const std::vector<int>& idx) {
      bool all_zero = true;
      for (int t = 0; t < k; ++t)
        if (ra[idx[t]] != 0) {
          all_zero = false;
          break;
        }
      if (all_zero) return;
      std::vector<int> alpha(k, 1);
      do {
        long long dot = 0;
        for (int t = 0; t < k; ++t) dot += static_cast<long long>(alpha[t]) * ra[idx[t]];
        if (dot % q != 0) ++row_count;
      } while (next_alpha(alpha, q));
    });
    total += row_count;
  }
  return total;
}

namespace {

uint64_t uniform_below(std::mt19937_64& g, uint64_t bound) {
  // rejection sampling over the largest multiple of bound below 2^64
  const uint64_t max = std::numeric_limits<uint64_t>::max();
  uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
  uint64_t r = g();
  while (rem != 0 && r >= max - rem + 1) r = g();
  return r % bound;
}

std::vector<std::vector<uint8_t>> all_words(int q, int n) {
  std::vector<std::vector<uint8_t>> words;
  std::vector<uint8_t> w(n, 0);
  for (;;) {
    words.push_back(w);
    int pos = n - 1;
    while (pos >= 0 && w[pos] == q - 1) w[pos--] = 0;
    if (pos < 0) break;
    ++w[pos];
  }
  return words;
}

std::vector<std::vector<uint8_t>> all_cw_words(int q, int n, int w) {
  std::vector<std::vector<uint8_t>> words;
  if (w == 0) {
    words.emplace_back(n, 0);
    return words;
  }
  for_each_column_subset(n, w, [&](const std::vector<int>& support) {
    std::vector<int> vals(w, 1);
    do {
      std::vector<uint8_t> word(n, 0);
      for (int t = 0; t < w; ++t) word[support[t]] = static_cast<uint8_t>(vals[t]);
      words.push_back(std::move(word));
    } while (next_alpha(vals, q));
  });
  std::sort(words.begin(), words.end());
  return words;
}

Code sample_distinct(int q, int n, int M, uint64_t seed, const Int& space,
                     const std::function<std::vector<uint8_t>(std::mt19937_64&)>& draw,
                     const std::function<std::vector<std::vector<uint8_t>>()>& materialize) {
  if (M < 1 || Int(M) > space) throw std::invalid_argument("random code: infeasible parameters");
  std::mt19937_64 rng(seed);
  if (space <= Int(4) * M) {
    // dense request: shuffle the whole word space and take a prefix
    auto words = materialize();
    for (size_t i = words.size() - 1; i > 0; --i)
      std::swap(words[i], words[uniform_below(rng, i + 1)]);
    words.resize(M);
    std::sort(words.begin(), words.end());
    return Code(q, n, std::move(words));
  }
  std::set<std::vector<uint8_t>> rows;
  long long attempts = 0, cap = 64LL * M + 256;
  while (static_cast<int>(rows.size()) < M) {
    if (++attempts > cap) throw std::runtime_error("random code: sampling stalled");
    rows.insert(draw(rng));
  }
  return Code(q, n, std::vector<std::vector<uint8_t>>(rows.begin(), rows.end()));
}

}  // namespace

Code random_code(int q, int n, int M, uint64_t seed) {
  if (q < 2 || n < 1) throw std::invalid_argument("random_code: bad parameters");
  Int space = ipow(q, static_cast<unsigned>(n));
  return sample_distinct(
      q, n, M, seed, space,
      [&](std::mt19937_64& rng) {
        std::vector<uint8_t> row(n);
        for (int i = 0; i < n; ++i) row[i] = static_cast<uint8_t>(uniform_below(rng, q));
        return row;
      },
      [&] { return all_words(q, n); });
}

Code random_cw_code(int q, int n, int w, int M, uint64_t seed) {
  if (q < 2 || n < 1 || w < 0 || w > n) throw std::invalid_argument("random_cw_code: bad parameters");
  Int space = binomial(n, w) * ipow(q - 1, static_cast<unsigned>(w));
  return sample_distinct(
      q, n, M, seed, space,
      [&](std::mt19937_64& rng) {
        // uniform support via partial Fisher-Yates, then uniform nonzero values
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = 0; i < w; ++i)
          std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
        std::vector<uint8_t> row(n, 0);
        for (int i = 0; i < w; ++i)
          row[perm[i]] = static_cast<uint8_t>(1 + uniform_below(rng, q - 1));
        return row;
      },
      [&] { return all_cw_words(q, n, w); });
}

std::vector<Int> full_constant_weight_profile(int q, int n, int w) {
  if (q < 2 || n < 1 || w < 0 || w > n)
    throw std::invalid_argument("full_constant_weight_profile: bad parameters");
  // Fix a reference word with support of size w. A weight-w word at distance
  // i agrees on a support positions, differs to another nonzero value on b,
  // is zero on c of them, and is nonzero on c positions outside the support
  // (weights match), so i = b + 2c.
  std::vector<Int> profile(n + 1, Int(0));
  for (int c = 0; c <= std::min(w, n - w); ++c) {
    for (int b = 0; b + c <= w; ++b) {
      int a = w - b - c;
      Int count = binomial(w, a) * binomial(w - a, b) * ipow(q - 2, static_cast<unsigned>(b)) *
                  binomial(n - w, c) * ipow(q - 1, static_cast<unsigned>(c));
      profile[b + 2 * c] += count;
    }
  }
  return profile;
}

CodeEnumerator::CodeEnumerator(int q, int n, std::vector<std::vector<uint8_t>> words, int M)
    : q_(q), n_(n), m_(M), words_(std::move(words)) {
  const int v = static_cast<int>(words_.size());
  if (v > 32) throw EnumerationLimitError("CodeEnumerator: word space exceeds 32");
  if (M < 1 || M > v) throw std::invalid_argument("CodeEnumerator: infeasible parameters");
  indices_.resize(M);
  for (int i = 0; i < M; ++i) indices_[i] = i;
}

CodeEnumerator CodeEnumerator::all_codes(int q, int n, int M) {
  if (q < 2 || n < 1) throw std::invalid_argument("CodeEnumerator: bad parameters");
  if (ipow(q, static_cast<unsigned>(n)) > 32)
    throw EnumerationLimitError("CodeEnumerator: word space exceeds 32");
  return CodeEnumerator(q, n, all_words(q, n), M);
}

CodeEnumerator CodeEnumerator::all_cw_codes(int q, int n, int w, int M) {
  if (q < 2 || n < 1 || w < 0 || w > n) throw std::invalid_argument("CodeEnumerator: bad parameters");
  if (binomial(n, w) * ipow(q - 1, static_cast<unsigned>(w)) > 32)
    throw EnumerationLimitError("CodeEnumerator: word space exceeds 32");
  return CodeEnumerator(q, n, all_cw_words(q, n, w), M);
}

std::optional<Code> CodeEnumerator::next() {
  if (done_) return std::nullopt;
  const int v = static_cast<int>(words_.size());
  if (started_) {
    int pos = m_ - 1;
    while (pos >= 0 && indices_[pos] == v - m_ + pos) --pos;
    if (pos < 0) {
      done_ = true;
      return std::nullopt;
    }
    ++indices_[pos];
    for (int i = pos + 1; i < m_; ++i) indices_[i] = indices_[i - 1] + 1;
  }
  started_ = true;
  std::vector<std::vector<uint8_t>> rows;
  rows.reserve(m_);
  for (int i : indices_) rows.push_back(words_[i]);
  return Code(q_, n_, std::move(rows));
}

Int CodeEnumerator::total_count() const {
  return binomial(static_cast<long long>(words_.size()), m_);
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

long long VerificationReport::failure_count() const {
  return std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"check", c.check},
                   {"params", c.params},
                   {"expected", c.expected},
                   {"actual", c.actual},
                   {"pass", c.pass}});
  }
  return arr;
}

namespace {

std::string param_string(const Code& code, std::optional<int> w, int k) {
  std::ostringstream os;
  os << "q=" << code.q() << " n=" << code.n() << " M=" << code.size();
  if (w) os << " w=" << *w;
  os << " k=" << k;
  return os.str();
}

void add_equal(VerificationReport& rep, const std::string& check, const std::string& params,
               const std::string& expected, const std::string& actual) {
  rep.checks.push_back({check, params, expected, actual, expected == actual});
}

// pass when value >= bound (expected holds the bound)
void add_at_least(VerificationReport& rep, const std::string& check, const std::string& params,
                  const Rat& bound, const Rat& value) {
  rep.checks.push_back({check, params, ">= " + to_string(bound), to_string(value), value >= bound});
}

void add_at_most(VerificationReport& rep, const std::string& check, const std::string& params,
                 const Rat& bound, const Rat& value) {
  rep.checks.push_back({check, params, "<= " + to_string(bound), to_string(value), value <= bound});
}

}  // namespace

VerificationReport verify_identities(const Code& code, std::optional<int> w) {
  require_prime_alphabet(code, "verify_identities");
  if (w && !code.is_constant_weight(*w))
    throw std::invalid_argument("verify_identities: code is not constant-weight w");
  const int q = code.q(), n = code.n(), m = code.size();
  DistanceDistribution dd = distance_distribution(code);
  VerificationReport rep;
  for (int k = 1; k <= n; ++k) {
    const std::string params = param_string(code, w, k);
    Int s = s_of_k_direct(code, k);
    Int s1 = s1_of_k_paircount(code, k);
    add_equal(rep, "s1_eq_2s", params, to_string(Int(2 * s)), to_string(s1));

    Rat scaled_s = Rat(Int(q), Int(q - 1) * m) * Rat(s);
    Rat minus_moment = 0, plus_moment = 0;
    for (int i = 1; i <= n; ++i) {
      if (dd.b[i] == 0) continue;
      PolyParams p(q, n, k, i);
      minus_moment += pk_minus(p) * dd.b[i];
      plus_moment += pk_plus(p) * dd.b[i];
    }
    add_equal(rep, "pk_minus_moment", params, to_string(scaled_s), to_string(minus_moment));
    Rat plus_rhs = Rat(Int(m - 1) * ipow(q - 1, static_cast<unsigned>(k)) * binomial(n, k)) - scaled_s;
    add_equal(rep, "pk_plus_moment", params, to_string(plus_rhs), to_string(plus_moment));

    if (w) {
      Int s0 = s0_of_k_paircount(code, *w, k);
      Int rhs = Int(m) * scaled_pk_minus(PolyParams(q, n, k, *w));
      add_equal(rep, "s0_identity", params, to_string(rhs), to_string(s0));
    }
  }
  return rep;
}

VerificationReport verify_inequalities(const Code& code, std::optional<int> w) {
  require_prime_alphabet(code, "verify_inequalities");
  if (w && !code.is_constant_weight(*w))
    throw std::invalid_argument("verify_inequalities: code is not constant-weight w");
  const int q = code.q(), n = code.n(), m = code.size();
  DistanceDistribution dd = distance_distribution(code);
  VerificationReport rep;
  for (int k = 1; k <= n; ++k) {
    const std::string params = param_string(code, w, k);
    Int s = s_of_k_direct(code, k);
    add_at_most(rep, "s_upper_bound", params, s_of_k_upper_bound(q, n, m, k), Rat(s));

    Rat kraw_moment_all = 0;   // sum over i = 0..n
    Rat kraw_moment_tail = 0;  // sum over i = 1..n
    for (int i = 0; i <= n; ++i) {
      if (dd.b[i] == 0) continue;
      Rat term = Rat(krawtchouk(PolyParams(q, n, k, i))) * dd.b[i];
      kraw_moment_all += term;
      if (i >= 1) kraw_moment_tail += term;
    }
    add_at_least(rep, "improved_delsarte", params, improved_delsarte_rhs(q, n, m, k),
                 kraw_moment_all);

    if (w) {
      add_at_most(rep, "s_cw_upper_bound", params, Rat(cw_constants(q, n, *w, m, k).T), Rat(s));
      add_at_least(rep, "cw_inequality", params, cw_inequality_rhs(q, n, *w, m, k),
                   kraw_moment_tail);
    }
  }
  return rep;
}

}  // namespace codebounds
