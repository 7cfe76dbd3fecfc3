#ifndef CODEBOUNDS_LP_ENGINE_HPP
#define CODEBOUNDS_LP_ENGINE_HPP

#include "codebounds/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace codebounds {

enum class Relation { GreaterEqual, Equal };

struct Constraint {
  std::string name;
  std::vector<Rat> coeffs;
  Relation rel = Relation::GreaterEqual;
  Rat rhs;
};

/// A linear system over implicitly nonnegative variables. The distance
/// distribution builders still emit explicit B_i >= 0 rows; they are
/// redundant for the solver but keep the emitted systems self-contained.
struct LinearSystem {
  std::vector<std::string> vars;
  std::vector<Constraint> constraints;
  std::optional<std::vector<Rat>> objective;  // maximize; absent = feasibility
};

enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  SolveStatus status;
  Rat objective;           // valid when Optimal
  std::vector<Rat> point;  // valid when Optimal; satisfies every constraint exactly
  std::vector<Rat> farkas; // valid when Infeasible; one multiplier per constraint
  long long pivots = 0;
};

class PivotLimitError : public std::runtime_error {
 public:
  explicit PivotLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational two-phase simplex with Bland's least-index anti-cycling
/// rule. Optimal solutions are audited by substitution before returning;
/// infeasibility returns a Farkas certificate y (y_i >= 0 on inequality
/// rows, sum y_i a_i <= 0 componentwise, sum y_i b_i > 0), also audited.
SimplexResult simplex_solve(const LinearSystem& sys, long long pivot_limit = 1'000'000);

/// Exact substitution check of a candidate point (also used by the audits).
bool satisfies(const LinearSystem& sys, const std::vector<Rat>& point);

/// Variables B_i for d <= i <= n; for each k: sum_i P_k(n;i) B_i >= -P_k(n;0)
/// (the B_0 = 1 term moved right); objective maximize sum B_i.
LinearSystem build_classical_system(int q, int n, int d);

/// Same, with the variable range clipped at i_max (used for constant-weight
/// support restrictions).
LinearSystem build_classical_system(int q, int n, int d, int i_max);

/// Classical rows with right-hand side improved_delsarte_rhs(M,k) - P_k(n;0),
/// plus the size equation sum B_i = M-1. Feasibility system, no objective.
LinearSystem build_improved_system(int q, int n, int d, long long M);

/// Variables B_i for d <= i <= min(n, 2w). For each k the classical, the
/// improved, and the constant-weight row (rhs cw_inequality_rhs, no B_0
/// move); size equation; optional binary parity rows (B_i = 0 for odd i).
LinearSystem build_cw_system(int q, int n, int d, int w, long long M, bool binary_parity = true);

struct ScanEntry {
  long long M;
  bool feasible;
};

struct BoundResult {
  std::string method;  // classical | improved | cw
  int q = 0, n = 0, d = 0;
  std::optional<int> w;
  std::optional<Rat> real_optimum;  // classical only: 1 + LP optimum
  Int bound;                        // integer upper bound on the code size
  std::vector<ScanEntry> scan;      // per-M feasibility trace (improved/cw)
  std::vector<Rat> witness;         // optimal solution / last feasible point
  std::vector<Rat> infeasibility;   // Farkas certificate at the stopping M
  std::optional<std::string> warning;

  nlohmann::ordered_json to_json() const;
};

struct LpOptions {
  long long pivot_limit = 1'000'000;
  bool binary_parity = true;  // q = 2 constant-weight codes have even distances
};

/// Solve the classical system once; bound = floor(1 + optimum).
BoundResult classical_lp_bound(int q, int n, int d, const LpOptions& opts = {});

/// Ascending feasibility scan M = 2, 3, ..., U+1 over the improved systems
/// (U = classical integer bound); returns (first infeasible M) - 1, or U when
/// every scanned system is feasible. Sound because a code of size M contains
/// codes of every smaller size.
BoundResult improved_bound(int q, int n, int d, const LpOptions& opts = {});

/// Same scan over the constant-weight systems; U comes from the classical
/// bound with the support restriction i <= 2w.
BoundResult cw_bound(int q, int n, int d, int w, const LpOptions& opts = {});

}  // namespace codebounds

#endif  // CODEBOUNDS_LP_ENGINE_HPP
