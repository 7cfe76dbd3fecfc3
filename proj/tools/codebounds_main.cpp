// codebounds command-line tool: bound tables, constant dumps, verification
// suites. All machine output renders rationals as exact "p/q" strings and is
// byte-deterministic for a fixed seed.

#include <CLI11.hpp>
#include <json.hpp>

#include "codebounds/code_oracle.hpp"
#include "codebounds/finite_field.hpp"
#include "codebounds/inequality_constants.hpp"
#include "codebounds/lp_engine.hpp"
#include "codebounds/polynomials.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace codebounds;
using nlohmann::ordered_json;

std::vector<long long> parse_range(const std::string& spec) {
  std::vector<long long> values;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw std::invalid_argument("empty token in range '" + spec + "'");
    auto dots = token.find("..");
    if (dots == std::string::npos) {
      values.push_back(std::stoll(token));
    } else {
      long long lo = std::stoll(token.substr(0, dots));
      long long hi = std::stoll(token.substr(dots + 2));
      if (lo > hi) throw std::invalid_argument("descending span in range '" + spec + "'");
      for (long long v = lo; v <= hi; ++v) values.push_back(v);
    }
  }
  if (values.empty()) throw std::invalid_argument("empty range '" + spec + "'");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

void check_format(const std::string& format) {
  if (format != "text" && format != "json" && format != "csv")
    throw std::invalid_argument("format must be text, json or csv");
}

void emit(const std::string& output_path, const std::string& payload) {
  if (output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + output_path + "'");
  out << payload;
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

uint64_t uniform_below(std::mt19937_64& g, uint64_t bound) {
  const uint64_t max = std::numeric_limits<uint64_t>::max();
  uint64_t rem = (max % bound + 1) % bound;
  uint64_t r = g();
  while (rem != 0 && r >= max - rem + 1) r = g();
  return r % bound;
}

// ---------------------------------------------------------------------------
// bound

struct BoundArgs {
  std::string q, n, d, w, method;
  std::string format = "text";
  std::string output;
  long long pivot_limit = 1'000'000;
  bool no_binary_parity = false;
};

int run_bound(const BoundArgs& args) {
  check_format(args.format);
  if (args.method != "classical" && args.method != "improved" && args.method != "cw")
    throw std::invalid_argument("method must be classical, improved or cw");
  const bool cw = args.method == "cw";
  if (cw && args.w.empty()) throw std::invalid_argument("method cw requires --w");
  if (!cw && !args.w.empty()) throw std::invalid_argument("--w is only valid with method cw");

  LpOptions opts;
  opts.pivot_limit = args.pivot_limit;
  opts.binary_parity = !args.no_binary_parity;

  std::vector<BoundResult> results;
  for (long long q : parse_range(args.q)) {
    for (long long n : parse_range(args.n)) {
      for (long long d : parse_range(args.d)) {
        if (q < 2 || n < 1 || d < 1 || d > n) continue;
        if (cw) {
          for (long long w : parse_range(args.w)) {
            if (w < 1 || w > n) continue;
            results.push_back(cw_bound(static_cast<int>(q), static_cast<int>(n),
                                       static_cast<int>(d), static_cast<int>(w), opts));
          }
        } else if (args.method == "classical") {
          results.push_back(
              classical_lp_bound(static_cast<int>(q), static_cast<int>(n), static_cast<int>(d), opts));
        } else {
          results.push_back(
              improved_bound(static_cast<int>(q), static_cast<int>(n), static_cast<int>(d), opts));
        }
      }
    }
  }
  if (results.empty()) throw std::invalid_argument("no valid (q, n, d, w) combination in the ranges");

  std::ostringstream out;
  if (args.format == "csv") {
    out << "q,n,d,w,method,bound,real_optimum\n";
    for (const auto& r : results) {
      out << r.q << ',' << r.n << ',' << r.d << ',';
      if (r.w) out << *r.w;
      out << ',' << r.method << ',' << to_string(r.bound) << ',';
      if (r.real_optimum) out << to_string(*r.real_optimum);
      out << '\n';
    }
  } else if (args.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) arr.push_back(r.to_json());
    out << arr.dump(2) << '\n';
  } else {
    out << "q\tn\td\tw\tmethod\tbound\treal_optimum\twarning\n";
    for (const auto& r : results) {
      out << r.q << '\t' << r.n << '\t' << r.d << '\t';
      if (r.w) out << *r.w;
      else out << '-';
      out << '\t' << r.method << '\t' << to_string(r.bound) << '\t';
      if (r.real_optimum) out << to_string(*r.real_optimum);
      else out << '-';
      out << '\t';
      if (r.warning) out << *r.warning;
      else out << '-';
      out << '\n';
    }
  }
  emit(args.output, out.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::string q = "2,3";
  std::string p = "2,3,5,7";
  long long n_max = 5;
  long long size_max = 8;
  long long samples = 100;
  unsigned long long seed = 0;
  long long j_max = 4;
  std::string format = "text";
  std::string output;
};

struct SuiteOutcome {
  std::string name;
  long long checks = 0;
  long long failures = 0;
  std::vector<CheckResult> failed;

  void absorb(const VerificationReport& rep) {
    checks += static_cast<long long>(rep.checks.size());
    for (const auto& c : rep.checks)
      if (!c.pass) {
        ++failures;
        failed.push_back(c);
      }
  }
  void add(const CheckResult& c) {
    ++checks;
    if (!c.pass) {
      ++failures;
      failed.push_back(c);
    }
  }
};

std::vector<int> prime_list(const std::string& spec, const char* flag) {
  std::vector<int> ps;
  for (long long v : parse_range(spec)) {
    if (!PrimeField::is_prime(static_cast<int>(v)))
      throw std::invalid_argument(std::string(flag) + " values must be prime, got " + std::to_string(v));
    ps.push_back(static_cast<int>(v));
  }
  return ps;
}

SuiteOutcome suite_delsarte(const VerifyArgs& args) {
  SuiteOutcome outcome;
  outcome.name = "delsarte";
  auto qs = prime_list(args.q, "--q");
  if (args.n_max < 2 || args.size_max < 2 || args.samples < 1)
    throw std::invalid_argument("verify: need --n-max >= 2, --size-max >= 2, --samples >= 1");
  for (long long s = 0; s < args.samples; ++s) {
    std::mt19937_64 rng(splitmix64(args.seed + static_cast<uint64_t>(s)));
    int q = qs[static_cast<size_t>(s) % qs.size()];
    int n = 2 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(args.n_max - 1)));
    Int space = ipow(q, static_cast<unsigned>(n));
    long long cap = space < args.size_max ? static_cast<long long>(space) : args.size_max;
    int M = 2 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(cap - 1)));
    Code code = random_code(q, n, M, rng());
    outcome.absorb(verify_identities(code));
    outcome.absorb(verify_inequalities(code));
  }
  return outcome;
}

SuiteOutcome suite_cw(const VerifyArgs& args) {
  SuiteOutcome outcome;
  outcome.name = "cw";
  auto qs = prime_list(args.q, "--q");
  if (args.n_max < 2 || args.size_max < 2 || args.samples < 1)
    throw std::invalid_argument("verify: need --n-max >= 2, --size-max >= 2, --samples >= 1");
  for (long long s = 0; s < args.samples; ++s) {
    std::mt19937_64 rng(splitmix64(args.seed + 0x5bd1e995u + static_cast<uint64_t>(s)));
    int q = qs[static_cast<size_t>(s) % qs.size()];
    int n = 2 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(args.n_max - 1)));
    int w = 1 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(n)));
    Int space = binomial(n, w) * ipow(q - 1, static_cast<unsigned>(w));
    while (space < 2) {  // e.g. q=2, w=n has a single word; move to a wider w
      w = 1 + (w % n);
      space = binomial(n, w) * ipow(q - 1, static_cast<unsigned>(w));
    }
    long long cap = space < args.size_max ? static_cast<long long>(space) : args.size_max;
    int M = 2 + static_cast<int>(uniform_below(rng, static_cast<uint64_t>(cap - 1)));
    Code code = random_cw_code(q, n, w, M, rng());
    outcome.absorb(verify_identities(code, w));
    outcome.absorb(verify_inequalities(code, w));
  }
  return outcome;
}

SuiteOutcome suite_dotcount(const VerifyArgs& args) {
  SuiteOutcome outcome;
  outcome.name = "dotcount";
  auto ps = prime_list(args.p, "--p");
  if (args.j_max < 1) throw std::invalid_argument("verify: need --j-max >= 1");
  for (int p : ps) {
    for (int j = 1; j <= args.j_max; ++j) {
      Int work = ipow(p - 1, static_cast<unsigned>(2 * j));
      if (work > Int(100'000'000))
        throw std::invalid_argument("verify dotcount: (p-1)^(2j) beyond desk scale");
      DotCounts closed = closed_form_dot_counts(p, j);
      PrimeField field(p);
      std::vector<int> a(static_cast<size_t>(j), 1);
      for (;;) {
        NonzeroVector vec(field, a);
        long long nz = count_nonzero_dot(vec);
        long long z = count_zero_dot(vec);
        std::ostringstream params;
        params << "p=" << p << " j=" << j << " a=";
        for (int v : a) params << v;
        outcome.add({"nonzero_dot_count", params.str(), to_string(closed.nonzero),
                     std::to_string(nz), Int(nz) == closed.nonzero});
        outcome.add({"zero_dot_count", params.str(), to_string(closed.zero), std::to_string(z),
                     Int(z) == closed.zero});
        int t = 0;
        while (t < j && ++a[static_cast<size_t>(t)] >= p) a[static_cast<size_t>(t++)] = 1;
        if (t == j) break;
      }
    }
  }
  return outcome;
}

SuiteOutcome suite_balance(const VerifyArgs&) {
  SuiteOutcome outcome;
  outcome.name = "balance";
  for (int m = 0; m <= 16; ++m) {
    for (int h = 1; h <= 5; ++h) {
      BruteForceMax brute = max_pairwise_products_bruteforce(m, h);
      Int closed = max_pairwise_products(m, h);
      std::string params = "M=" + std::to_string(m) + " h=" + std::to_string(h);
      outcome.add({"pairwise_max", params, to_string(closed), to_string(brute.value),
                   closed == brute.value});
      outcome.add({"pairwise_max_balanced", params, "true", brute.balanced_only ? "true" : "false",
                   brute.balanced_only});
    }
  }
  for (int q = 2; q <= 4; ++q) {
    for (int N = 1; N <= 4; ++N) {
      for (int m = 0; m <= 8; ++m) {
        for (int mp = 0; mp <= N * m; ++mp) {
          MatrixBalanceMax brute = matrix_balancing_max_bruteforce(m, mp, q, N);
          Int closed = matrix_balancing_closed_form(m, mp, q, N);
          std::string params = "M=" + std::to_string(m) + " M'=" + std::to_string(mp) +
                               " q=" + std::to_string(q) + " N=" + std::to_string(N);
          outcome.add({"matrix_max", params, to_string(closed), to_string(brute.value),
                       closed == brute.value});
          outcome.add({"matrix_max_balanced", params, "true",
                       brute.balanced_only ? "true" : "false", brute.balanced_only});
        }
      }
    }
  }
  return outcome;
}

SuiteOutcome suite_ostergard(const VerifyArgs&) {
  SuiteOutcome outcome;
  outcome.name = "ostergard";
  for (int q = 2; q <= 7; ++q) {
    for (int n = 2; n <= 10; ++n) {
      for (int w = 1; w <= n; ++w) {
        for (int M = 2; M <= 40; ++M) {
          Rat lhs = Rat(Int(2) * cw_constants(q, n, w, M, 1).T, Int(q - 1));
          Int rhs = ostergard_rhs(q, n, w, M);
          std::ostringstream params;
          params << "q=" << q << " n=" << n << " w=" << w << " M=" << M;
          outcome.add({"ostergard_equivalence", params.str(), to_string(rhs), to_string(lhs),
                       lhs == Rat(rhs)});
        }
      }
    }
  }
  return outcome;
}

int run_verify(const VerifyArgs& args) {
  check_format(args.format);
  std::vector<SuiteOutcome> outcomes;
  if (args.suite == "delsarte")
    outcomes.push_back(suite_delsarte(args));
  else if (args.suite == "cw")
    outcomes.push_back(suite_cw(args));
  else if (args.suite == "dotcount")
    outcomes.push_back(suite_dotcount(args));
  else if (args.suite == "balance")
    outcomes.push_back(suite_balance(args));
  else if (args.suite == "ostergard")
    outcomes.push_back(suite_ostergard(args));
  else if (args.suite == "all") {
    outcomes.push_back(suite_delsarte(args));
    outcomes.push_back(suite_cw(args));
    outcomes.push_back(suite_dotcount(args));
    outcomes.push_back(suite_balance(args));
    outcomes.push_back(suite_ostergard(args));
  } else {
    throw std::invalid_argument("suite must be delsarte, cw, dotcount, balance, ostergard or all");
  }

  bool pass = true;
  for (const auto& o : outcomes) pass = pass && o.failures == 0;

  std::ostringstream out;
  if (args.format == "json") {
    ordered_json j;
    j["command"] = "verify";
    j["seed"] = args.seed;
    ordered_json suites = ordered_json::array();
    for (const auto& o : outcomes) {
      ordered_json so;
      so["suite"] = o.name;
      so["checks"] = o.checks;
      so["failures"] = o.failures;
      ordered_json failed = ordered_json::array();
      for (const auto& c : o.failed)
        failed.push_back({{"check", c.check},
                          {"params", c.params},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"pass", c.pass}});
      so["failed"] = std::move(failed);
      suites.push_back(std::move(so));
    }
    j["suites"] = std::move(suites);
    j["pass"] = pass;
    out << j.dump(2) << '\n';
  } else if (args.format == "csv") {
    out << "suite,checks,failures\n";
    for (const auto& o : outcomes)
      out << o.name << ',' << o.checks << ',' << o.failures << '\n';
  } else {
    for (const auto& o : outcomes) {
      for (const auto& c : o.failed)
        out << "FAIL " << c.check << " " << c.params << " expected=" << c.expected
            << " actual=" << c.actual << '\n';
      out << "suite=" << o.name << " seed=" << args.seed << " checks=" << o.checks
          << " failures=" << o.failures << '\n';
    }
    out << (pass ? "PASS" : "FAIL") << '\n';
  }
  emit(args.output, out.str());
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsArgs {
  bool kraw = false;
  std::string q, n, w, M, k, x;
  std::string format = "text";
  std::string output;
};

int run_constants(const ConstantsArgs& args) {
  check_format(args.format);
  if (args.q.empty() || args.n.empty()) throw std::invalid_argument("constants requires --q and --n");

  std::ostringstream out;
  if (args.kraw) {
    if (!args.w.empty() || !args.M.empty())
      throw std::invalid_argument("--kraw tables take only --q, --n, --k, --x");
    ordered_json arr = ordered_json::array();
    std::ostringstream body;
    for (long long q : parse_range(args.q)) {
      for (long long n : parse_range(args.n)) {
        if (q < 2 || n < 1) continue;
        auto ks = args.k.empty() ? parse_range("1.." + std::to_string(n)) : parse_range(args.k);
        auto xs = args.x.empty() ? parse_range("0.." + std::to_string(n)) : parse_range(args.x);
        for (long long k : ks) {
          if (k < 1 || k > n) continue;
          for (long long x : xs) {
            if (x < 0 || x > n) continue;
            PolyParams p(static_cast<int>(q), static_cast<int>(n), static_cast<int>(k),
                         static_cast<int>(x));
            Int kr = krawtchouk(p);
            Rat pm = pk_minus(p), pp = pk_plus(p);
            Int spm = scaled_pk_minus(p);
            if (args.format == "json") {
              arr.push_back({{"q", q},
                             {"n", n},
                             {"k", k},
                             {"x", x},
                             {"krawtchouk", to_string(kr)},
                             {"pk_minus", to_string(pm)},
                             {"pk_plus", to_string(pp)},
                             {"scaled_pk_minus", to_string(spm)}});
            } else {
              const char sep = args.format == "csv" ? ',' : '\t';
              body << q << sep << n << sep << k << sep << x << sep << to_string(kr) << sep
                   << to_string(pm) << sep << to_string(pp) << sep << to_string(spm) << '\n';
            }
          }
        }
      }
    }
    if (args.format == "json") {
      out << arr.dump(2) << '\n';
    } else {
      const char* sep = args.format == "csv" ? "," : "\t";
      out << "q" << sep << "n" << sep << "k" << sep << "x" << sep << "krawtchouk" << sep
          << "pk_minus" << sep << "pk_plus" << sep << "scaled_pk_minus" << '\n'
          << body.str();
    }
    emit(args.output, out.str());
    return 0;
  }

  if (args.w.empty() || args.M.empty())
    throw std::invalid_argument("constants requires --w and --M (or --kraw)");
  ordered_json arr = ordered_json::array();
  std::ostringstream body;
  long long rows = 0;
  for (long long q : parse_range(args.q)) {
    for (long long n : parse_range(args.n)) {
      if (q < 2 || n < 1) continue;
      auto ks = args.k.empty() ? parse_range("1.." + std::to_string(n)) : parse_range(args.k);
      for (long long w : parse_range(args.w)) {
        if (w < 0 || w > n) continue;
        for (long long M : parse_range(args.M)) {
          if (M < 1) continue;
          for (long long k : ks) {
            if (k < 1 || k > n) continue;
            CWConstantSet c = cw_constants(static_cast<int>(q), static_cast<int>(n),
                                           static_cast<int>(w), M, static_cast<int>(k));
            ++rows;
            if (args.format == "json") {
              arr.push_back({{"q", q},
                             {"n", n},
                             {"w", w},
                             {"M", M},
                             {"k", k},
                             {"q_k", to_string(c.q_k)},
                             {"r_k", to_string(c.r_k)},
                             {"s_k", to_string(c.s_k)},
                             {"t_k", to_string(c.t_k)},
                             {"s_prime_k", to_string(c.s_prime_k)},
                             {"t_prime_k", to_string(c.t_prime_k)},
                             {"T1", to_string(c.T1)},
                             {"T2", to_string(c.T2)},
                             {"T3", to_string(c.T3)},
                             {"T", to_string(c.T)}});
            } else {
              const char sep = args.format == "csv" ? ',' : '\t';
              body << q << sep << n << sep << w << sep << M << sep << k << sep << to_string(c.q_k)
                   << sep << to_string(c.r_k) << sep << to_string(c.s_k) << sep << to_string(c.t_k)
                   << sep << to_string(c.s_prime_k) << sep << to_string(c.t_prime_k) << sep
                   << to_string(c.T1) << sep << to_string(c.T2) << sep << to_string(c.T3) << sep
                   << to_string(c.T) << '\n';
            }
          }
        }
      }
    }
  }
  if (rows == 0) throw std::invalid_argument("no valid (q, n, w, M, k) combination in the ranges");
  if (args.format == "json") {
    out << arr.dump(2) << '\n';
  } else {
    const char* sep = args.format == "csv" ? "," : "\t";
    out << "q" << sep << "n" << sep << "w" << sep << "M" << sep << "k" << sep << "q_k" << sep
        << "r_k" << sep << "s_k" << sep << "t_k" << sep << "s_prime_k" << sep << "t_prime_k" << sep
        << "T1" << sep << "T2" << sep << "T3" << sep << "T" << '\n'
        << body.str();
  }
  emit(args.output, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact LP bounds and double-counting verification for q-ary codes"};
  app.require_subcommand(1);

  BoundArgs bound_args;
  CLI::App* bound = app.add_subcommand("bound", "Compute upper bounds on code sizes");
  bound->add_option("--q", bound_args.q, "alphabet sizes (list/spans, e.g. 2,3 or 2..5)")->required();
  bound->add_option("--n", bound_args.n, "lengths")->required();
  bound->add_option("--d", bound_args.d, "minimum distances")->required();
  bound->add_option("--w", bound_args.w, "constant weights (method cw only)");
  bound->add_option("--method", bound_args.method, "classical | improved | cw")->required();
  bound->add_option("--format", bound_args.format, "text | json | csv");
  bound->add_option("--output", bound_args.output, "write to file instead of stdout");
  bound->add_option("--pivot-limit", bound_args.pivot_limit, "simplex pivot limit");
  bound->add_flag("--no-binary-parity", bound_args.no_binary_parity,
                  "drop the q=2 even-distance rows from cw systems");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run identity/inequality suites on explicit codes");
  verify->add_option("--suite", verify_args.suite,
                     "delsarte | cw | dotcount | balance | ostergard | all")->required();
  verify->add_option("--q", verify_args.q, "prime alphabet sizes for sampled codes");
  verify->add_option("--p", verify_args.p, "prime moduli for the dotcount suite");
  verify->add_option("--n-max", verify_args.n_max, "maximum code length");
  verify->add_option("--size-max", verify_args.size_max, "maximum code size");
  verify->add_option("--samples", verify_args.samples, "number of sampled codes");
  verify->add_option("--seed", verify_args.seed, "master seed; all randomness flows from it");
  verify->add_option("--j-max", verify_args.j_max, "maximum vector length for the dotcount suite");
  verify->add_option("--format", verify_args.format, "text | json | csv");
  verify->add_option("--output", verify_args.output, "write to file instead of stdout");

  ConstantsArgs constants_args;
  CLI::App* constants = app.add_subcommand("constants", "Dump constant-weight constants or Krawtchouk tables");
  constants->add_flag("--kraw", constants_args.kraw, "emit Krawtchouk / split polynomial tables");
  constants->add_option("--q", constants_args.q, "alphabet sizes")->required();
  constants->add_option("--n", constants_args.n, "lengths")->required();
  constants->add_option("--w", constants_args.w, "constant weights");
  constants->add_option("--M", constants_args.M, "code sizes");
  constants->add_option("--k", constants_args.k, "degree indices (default 1..n)");
  constants->add_option("--x", constants_args.x, "evaluation points for --kraw (default 0..n)");
  constants->add_option("--format", constants_args.format, "text | json | csv");
  constants->add_option("--output", constants_args.output, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bound->parsed()) return run_bound(bound_args);
    if (verify->parsed()) return run_verify(verify_args);
    return run_constants(constants_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
