#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "codebounds/code_oracle.hpp"
#include "codebounds/polynomials.hpp"

using namespace codebounds;

TEST_CASE("hamming distance") {
  Code c = Code::from_words(3, {"0212", "0122"});
  CHECK(hamming_distance(c.row(0), c.row(1)) == 2);
  CHECK(hamming_distance(c.row(0), c.row(0)) == 0);
  Code b = Code::from_words(2, {"00", "11"});
  CHECK(hamming_distance(b.row(0), b.row(1)) == 2);
  std::vector<uint8_t> u{0, 1}, v{0, 1, 0};
  CHECK_THROWS_AS(hamming_distance(u, v), std::invalid_argument);
}

TEST_CASE("code validation") {
  CHECK_THROWS_AS(Code::from_words(2, {"00", "00"}), std::invalid_argument);
  CHECK_THROWS_AS(Code::from_words(2, {"02"}), std::invalid_argument);
  CHECK_THROWS_AS(Code(2, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Code::from_words(1, {"0"}), std::invalid_argument);
  Code ok = Code::from_words(5, {"0404", "4040"});
  CHECK(ok.size() == 2);
  CHECK(ok.n() == 4);
}

TEST_CASE("distance distribution reference values") {
  DistanceDistribution d1 = distance_distribution(Code::from_words(2, {"00", "11"}));
  CHECK(d1.b == std::vector<Rat>{1, 0, 1});
  DistanceDistribution d2 =
      distance_distribution(Code::from_words(2, {"00", "01", "10", "11"}));
  CHECK(d2.b == std::vector<Rat>{1, 2, 1});
  DistanceDistribution d3 = distance_distribution(Code::from_words(2, {"000"}));
  CHECK(d3.b == std::vector<Rat>{1, 0, 0, 0});
}

TEST_CASE("distance distribution invariants on sampled codes") {
  uint64_t seed = 41;
  for (int q : {2, 3, 5}) {
    for (int n = 2; n <= 5; ++n) {
      for (int M : {2, 5, 9}) {
        Int space = ipow(q, static_cast<unsigned>(n));
        if (space < M) continue;
        Code code = random_code(q, n, M, seed++);
        DistanceDistribution dd = distance_distribution(code);
        CHECK(dd.b[0] == 1);
        Rat sum = 0;
        for (int i = 0; i <= n; ++i) {
          CHECK(dd.b[i] >= 0);
          sum += dd.b[i];
          Rat scaled = dd.b[i] * M;
          CHECK(denominator(scaled) == 1);
          if (i >= 1) CHECK(numerator(scaled) % 2 == 0);  // ordered pairs come in twos
        }
        CHECK(sum == M);
      }
    }
  }
}

TEST_CASE("column double counting on {00, 11}") {
  Code c = Code::from_words(2, {"00", "11"});
  CHECK(s_of_k_direct(c, 1) == 2);
  CHECK(s_of_k_direct(c, 2) == 0);
  CHECK(s1_of_k_paircount(c, 1) == 4);
  CHECK(s1_of_k_paircount(c, 2) == 0);
}

TEST_CASE("a constant column contributes nothing") {
  Code c = Code::from_words(2, {"00", "01"});
  // first column is constant; only the second contributes x = (1,1)
  CHECK(s_of_k_direct(c, 1) == 1);
}

TEST_CASE("singleton codes have no pairs") {
  Code c = Code::from_words(3, {"0120"});
  for (int k = 1; k <= c.n(); ++k) {
    CHECK(s_of_k_direct(c, k) == 0);
    CHECK(s1_of_k_paircount(c, k) == 0);
  }
}

TEST_CASE("s0 on the weight-2 pair code") {
  Code c = Code::from_words(2, {"1100", "0011"});
  CHECK(s0_of_k_paircount(c, 2, 1) == 4);
  CHECK(Int(c.size()) * scaled_pk_minus(PolyParams(2, 4, 1, 2)) == 4);
  CHECK_THROWS_AS(s0_of_k_paircount(c, 1, 1), std::invalid_argument);  // wrong w
}

TEST_CASE("composite alphabets are rejected by the counting oracles") {
  Code c = Code::from_words(4, {"03", "30"});
  CHECK_THROWS_AS(s_of_k_direct(c, 1), std::invalid_argument);
  CHECK_THROWS_AS(s1_of_k_paircount(c, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_identities(c), std::invalid_argument);
}

TEST_CASE("pair-count identity S1 = 2S on sampled codes") {
  uint64_t seed = 1000;
  for (int q : {2, 3}) {
    for (int n = 2; n <= 5; ++n) {
      Code code = random_code(q, n, 4, seed++);
      for (int k = 1; k <= n; ++k) CHECK(s1_of_k_paircount(code, k) == 2 * s_of_k_direct(code, k));
    }
  }
}

TEST_CASE("seeded samplers are deterministic and valid") {
  Code a = random_code(3, 5, 7, 123);
  Code b = random_code(3, 5, 7, 123);
  REQUIRE(a.size() == b.size());
  for (int m = 0; m < a.size(); ++m)
    CHECK(std::vector<uint8_t>(a.row(m).begin(), a.row(m).end()) ==
          std::vector<uint8_t>(b.row(m).begin(), b.row(m).end()));

  Code cw = random_cw_code(3, 6, 2, 5, 9);
  CHECK(cw.is_constant_weight(2));
  Code cw2 = random_cw_code(3, 6, 2, 5, 9);
  CHECK(std::vector<uint8_t>(cw.row(0).begin(), cw.row(0).end()) ==
        std::vector<uint8_t>(cw2.row(0).begin(), cw2.row(0).end()));

  CHECK_THROWS_AS(random_code(2, 2, 5, 0), std::invalid_argument);        // 5 > 2^2
  CHECK_THROWS_AS(random_cw_code(2, 3, 1, 4, 0), std::invalid_argument);  // 4 > 3 words
  // dense request: sampling the whole space must hit every word once
  Code full = random_code(2, 2, 4, 77);
  CHECK(distance_distribution(full).b == std::vector<Rat>{1, 2, 1});
}

TEST_CASE("code enumeration") {
  CodeEnumerator full = CodeEnumerator::all_codes(2, 2, 4);
  CHECK(full.total_count() == 1);
  auto only = full.next();
  REQUIRE(only.has_value());
  CHECK(distance_distribution(*only).b == std::vector<Rat>{1, 2, 1});
  CHECK_FALSE(full.next().has_value());

  CodeEnumerator cw = CodeEnumerator::all_cw_codes(2, 3, 1, 3);
  CHECK(cw.total_count() == 1);
  auto basis = cw.next();
  REQUIRE(basis.has_value());
  CHECK(basis->is_constant_weight(1));
  CHECK_FALSE(cw.next().has_value());

  CodeEnumerator pairs = CodeEnumerator::all_codes(2, 2, 2);
  long long count = 0;
  while (pairs.next()) ++count;
  CHECK(count == 6);  // C(4, 2)
  CHECK(pairs.total_count() == 6);

  CHECK_THROWS_AS(CodeEnumerator::all_codes(2, 6, 2), EnumerationLimitError);  // 64 words
  CHECK_THROWS_AS(CodeEnumerator::all_codes(2, 2, 5), std::invalid_argument);
}

TEST_CASE("identity suite passes on sampled codes") {
  uint64_t seed = 555;
  for (int q : {2, 3, 5}) {
    for (int n = 2; n <= 4; ++n) {
      Int space = ipow(q, static_cast<unsigned>(n));
      int M = space < 6 ? static_cast<int>(space) : 6;
      VerificationReport rep = verify_identities(random_code(q, n, M, seed++));
      CHECK(rep.all_pass());
      CHECK(rep.failure_count() == 0);
    }
  }
  // singleton: every identity degenerates to 0 = 0
  CHECK(verify_identities(Code::from_words(3, {"012"})).all_pass());
}

TEST_CASE("identity suite covers the constant-weight identity") {
  uint64_t seed = 777;
  for (int q : {2, 3}) {
    for (int n = 3; n <= 5; ++n) {
      for (int w = 1; w < n; ++w) {
        Int space = binomial(n, w) * ipow(q - 1, static_cast<unsigned>(w));
        if (space < 3) continue;
        Code code = random_cw_code(q, n, w, 3, seed++);
        VerificationReport rep = verify_identities(code, w);
        CHECK(rep.all_pass());
        bool has_s0 = false;
        for (const auto& c : rep.checks) has_s0 = has_s0 || c.check == "s0_identity";
        CHECK(has_s0);
      }
    }
  }
}

TEST_CASE("inequality suite passes on sampled codes") {
  uint64_t seed = 888;
  for (int q : {2, 3, 5}) {
    for (int n = 2; n <= 4; ++n) {
      Int space = ipow(q, static_cast<unsigned>(n));
      int M = space < 7 ? static_cast<int>(space) : 7;
      CHECK(verify_inequalities(random_code(q, n, M, seed++)).all_pass());
    }
  }
  CHECK(verify_inequalities(Code::from_words(2, {"1100", "0011"}), 2).all_pass());
}

TEST_CASE("full spaces are equality witnesses for the improved inequality") {
  // q | M makes the right-hand side vanish; the full-space moments are 0 too.
  for (auto [q, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 2}}) {
    CodeEnumerator e =
        CodeEnumerator::all_codes(q, n, static_cast<int>(ipow(q, static_cast<unsigned>(n))));
    auto full = e.next();
    REQUIRE(full.has_value());
    DistanceDistribution dd = distance_distribution(*full);
    for (int k = 1; k <= n; ++k) {
      Rat moment = 0;
      for (int i = 0; i <= n; ++i) moment += Rat(krawtchouk(PolyParams(q, n, k, i))) * dd.b[i];
      CHECK(moment == 0);
    }
    CHECK(verify_inequalities(*full).all_pass());
  }
}

TEST_CASE("verification reports serialize to json") {
  VerificationReport rep = verify_identities(Code::from_words(2, {"00", "11"}));
  nlohmann::ordered_json j = rep.to_json();
  REQUIRE(j.is_array());
  REQUIRE(!j.empty());
  for (const auto& entry : j) {
    CHECK(entry.contains("check"));
    CHECK(entry.contains("params"));
    CHECK(entry.contains("expected"));
    CHECK(entry.contains("actual"));
    CHECK(entry["pass"].is_boolean());
  }
}

TEST_CASE("enumeration guard on the counting oracles") {
  // (q-1)^k C(n,k) = 4^9 C(12,9) = 57671680 combinations
  Code big = random_code(5, 12, 3, 4);
  CHECK_THROWS_AS(s_of_k_direct(big, 9), EnumerationLimitError);
}
