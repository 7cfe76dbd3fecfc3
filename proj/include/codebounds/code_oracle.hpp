#ifndef CODEBOUNDS_CODE_ORACLE_HPP
#define CODEBOUNDS_CODE_ORACLE_HPP

#include "codebounds/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace codebounds {

/// An explicit q-ary code: a set of M distinct words of length n over
/// {0, ..., q-1}, held as an M x n matrix. Immutable after construction.
class Code {
 public:
  Code(int q, int n, std::vector<std::vector<uint8_t>> rows);

  /// Convenience for literals: each word is a string of digits, e.g. "0212".
  static Code from_words(int q, const std::vector<std::string>& words);

  int q() const { return q_; }
  int n() const { return n_; }
  int size() const { return m_; }

  std::span<const uint8_t> row(int m) const {
    return {data_.data() + static_cast<size_t>(m) * n_, static_cast<size_t>(n_)};
  }

  int weight(int m) const;
  bool is_constant_weight(int w) const;

 private:
  int q_, n_, m_;
  std::vector<uint8_t> data_;  // row-major M x n
};

/// Number of coordinates where u and v differ. Lengths must match.
int hamming_distance(std::span<const uint8_t> u, std::span<const uint8_t> v);

struct DistanceDistribution {
  long long size;      // M
  std::vector<Rat> b;  // B_0 .. B_n; B_i = (ordered pairs at distance i) / M
};

DistanceDistribution distance_distribution(const Code& code);

/// S(k): over every alpha in (F_q^*)^k and every k-subset of columns, the sum
/// of pairwise products of symbol counts in the F_q-combination of those
/// columns. Requires prime q; guard (q-1)^k C(n,k) <= 10^7 combinations.
Int s_of_k_direct(const Code& code, int k);

/// S_1(k): pairs of a 2 x k submatrix (ordered row pair m != l, k columns)
/// and an alpha whose dot with the row difference is nonzero. Enumerated over
/// row pairs, independently of the column-combination walk of s_of_k_direct.
Int s1_of_k_paircount(const Code& code, int k);

/// S_0(k): pairs of a 1 x k submatrix (single row, k columns) and an alpha
/// whose dot with the row is nonzero. Requires a constant-weight-w code.
Int s0_of_k_paircount(const Code& code, int w, int k);

/// Deterministic seeded samplers; the same seed always yields the same code.
Code random_code(int q, int n, int M, uint64_t seed);
Code random_cw_code(int q, int n, int w, int M, uint64_t seed);

/// Entry i: the number of weight-w words at distance i from a fixed weight-w
/// word. The weight-w sphere is distance-transitive, so this is also the
/// distance distribution of the code of all weight-w words.
std::vector<Int> full_constant_weight_profile(int q, int n, int w);

/// Streams every size-M code over the full word space (or the weight-w word
/// space) exactly once, in lexicographic order. Word spaces are capped at 32.
class CodeEnumerator {
 public:
  static CodeEnumerator all_codes(int q, int n, int M);
  static CodeEnumerator all_cw_codes(int q, int n, int w, int M);

  std::optional<Code> next();

  /// C(V, M) where V is the word-space size.
  Int total_count() const;
  int word_space_size() const { return static_cast<int>(words_.size()); }

 private:
  CodeEnumerator(int q, int n, std::vector<std::vector<uint8_t>> words, int M);

  int q_, n_, m_;
  std::vector<std::vector<uint8_t>> words_;
  std::vector<int> indices_;
  bool done_ = false;
  bool started_ = false;
};

struct CheckResult {
  std::string check;
  std::string params;
  std::string expected;
  std::string actual;
  bool pass;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  long long failure_count() const;
  void merge(const VerificationReport& other);
  nlohmann::ordered_json to_json() const;
};

/// Exact double-counting identities, for every k in 1..n:
///   (1) S_1(k) = 2 S(k)
///   (2) sum_{i>=1} P_k^-(n;i) B_i = (q / ((q-1)M)) S(k)
///   (3) sum_{i>=1} P_k^+(n;i) B_i = (M-1)(q-1)^k C(n,k) - (q / ((q-1)M)) S(k)
///   (4) with w: S_0(k) = M * scaled_pk_minus(q,n,k,w)
/// Failures become report entries, never exceptions.
VerificationReport verify_identities(const Code& code, std::optional<int> w = std::nullopt);

/// Exact inequalities, for every k in 1..n:
///   S(k) <= s_of_k_upper_bound; sum_{i>=0} P_k(n;i) B_i >= improved_delsarte_rhs;
///   with w: S(k) <= T(k) and sum_{i>=1} P_k(n;i) B_i >= cw_inequality_rhs.
VerificationReport verify_inequalities(const Code& code, std::optional<int> w = std::nullopt);

}  // namespace codebounds

#endif  // CODEBOUNDS_CODE_ORACLE_HPP
