#include "codebounds/lp_engine.hpp"

#include "codebounds/code_oracle.hpp"
#include "codebounds/inequality_constants.hpp"
#include "codebounds/polynomials.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace codebounds {

bool satisfies(const LinearSystem& sys, const std::vector<Rat>& point) {
  if (point.size() != sys.vars.size()) return false;
  for (const Rat& x : point)
    if (x < 0) return false;
  for (const auto& c : sys.constraints) {
    Rat lhs = 0;
    for (size_t j = 0; j < point.size(); ++j) lhs += c.coeffs[j] * point[j];
    if (c.rel == Relation::Equal ? lhs != c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

namespace {

// Dense tableau over exact rationals. Rows are the standardized constraints
// (rhs >= 0 after optional sign flips); columns are structural variables,
// slacks for inequality rows, one artificial per row, and the rhs.
class Simplex {
 public:
  Simplex(const LinearSystem& sys, long long pivot_limit)
      : sys_(sys), limit_(pivot_limit), nv_(static_cast<int>(sys.vars.size())) {
    const int m = static_cast<int>(sys.constraints.size());
    sign_.assign(m, 1);
    slack_col_.assign(m, -1);
    int ns = 0;
    for (const auto& c : sys.constraints)
      if (c.rel == Relation::GreaterEqual) ++ns;
    art_start_ = nv_ + ns;
    cols_ = art_start_ + m;  // + rhs col at index cols_
    rows_.assign(m, std::vector<Rat>(cols_ + 1, Rat(0)));
    basis_.assign(m, -1);

    int next_slack = nv_;
    for (int i = 0; i < m; ++i) {
      const auto& c = sys.constraints[i];
      if (static_cast<int>(c.coeffs.size()) != nv_)
        throw std::invalid_argument("simplex_solve: coefficient width mismatch");
      const bool ge = c.rel == Relation::GreaterEqual;
      // Flip so rhs >= 0; flipping a >= row also turns its slack into a
      // ready-made basic variable.
      sign_[i] = ge ? (c.rhs > 0 ? 1 : -1) : (c.rhs >= 0 ? 1 : -1);
      for (int j = 0; j < nv_; ++j) rows_[i][j] = sign_[i] * c.coeffs[j];
      if (ge) {
        slack_col_[i] = next_slack++;
        rows_[i][slack_col_[i]] = Rat(-sign_[i]);
      }
      rows_[i][art_start_ + i] = 1;
      rows_[i][cols_] = sign_[i] * c.rhs;
      basis_[i] = (ge && sign_[i] == -1) ? slack_col_[i] : art_start_ + i;
    }
  }

  SimplexResult run() {
    SimplexResult result;
    result.status = SolveStatus::Optimal;

    // Phase 1: minimize the artificial sum.
    obj_.assign(cols_ + 1, Rat(0));
    for (int j = art_start_; j < cols_; ++j) obj_[j] = 1;
    for (size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] >= art_start_) subtract_row(obj_, rows_[i], Rat(1));
    if (!minimize(cols_)) throw std::logic_error("simplex_solve: phase 1 cannot be unbounded");

    Rat phase1 = -obj_[cols_];
    if (phase1 > 0) {
      result.status = SolveStatus::Infeasible;
      result.farkas = extract_farkas();
      result.pivots = pivots_;
      audit_farkas(result.farkas);
      return result;
    }
    drive_out_artificials();

    // Phase 2: minimize -objective over the real columns.
    if (sys_.objective) {
      obj_.assign(cols_ + 1, Rat(0));
      for (int j = 0; j < nv_; ++j) obj_[j] = -(*sys_.objective)[j];
      for (size_t i = 0; i < rows_.size(); ++i) {
        Rat cb = basis_[i] < nv_ ? obj_[basis_[i]] : Rat(0);
        if (cb != 0) subtract_row(obj_, rows_[i], cb);
      }
      if (!minimize(art_start_)) {
        result.status = SolveStatus::Unbounded;
        result.pivots = pivots_;
        return result;
      }
    }

    result.point = extract_point();
    result.objective = 0;
    if (sys_.objective)
      for (int j = 0; j < nv_; ++j) result.objective += (*sys_.objective)[j] * result.point[j];
    result.pivots = pivots_;
    if (!satisfies(sys_, result.point))
      throw std::logic_error("simplex_solve: solution failed the substitution audit");
    if (!sys_.objective && rows_.size() == sys_.constraints.size()) {
      obj_.assign(cols_ + 1, Rat(0));  // keep later pivots cost-free
      rerunnable_ = true;
    }
    return result;
  }

  bool rerunnable() const { return rerunnable_; }

  // Warm re-solve of a feasibility system after the caller changed only the
  // right-hand sides of the constraints this instance references. The stored
  // artificial block holds the basis inverse, so the new basic values come
  // from one matrix-vector product; dual Bland pivots repair any negatives.
  SimplexResult rerun() {
    if (!rerunnable_) throw std::logic_error("simplex rerun: not in a rerunnable state");
    const size_t m = rows_.size();
    std::vector<Rat> b_std(m);
    for (size_t i = 0; i < m; ++i) b_std[i] = sign_[i] * sys_.constraints[i].rhs;
    for (size_t i = 0; i < m; ++i) {
      Rat v = 0;
      for (size_t j = 0; j < m; ++j) {
        const Rat& inv = rows_[i][art_start_ + static_cast<int>(j)];
        if (inv != 0) v += inv * b_std[j];
      }
      rows_[i][cols_] = std::move(v);
    }
    SimplexResult result;
    result.status = SolveStatus::Optimal;
    for (;;) {
      int leave = -1;
      for (size_t i = 0; i < m; ++i)
        if (rows_[i][cols_] < 0 && (leave < 0 || basis_[i] < basis_[leave]))
          leave = static_cast<int>(i);
      if (leave < 0) break;
      int enter = -1;
      for (int j = 0; j < art_start_; ++j)
        if (rows_[leave][j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) {
        // the row reads (nonnegative combination) = negative: infeasible
        result.status = SolveStatus::Infeasible;
        result.pivots = pivots_;
        rerunnable_ = false;
        return result;
      }
      pivot(leave, enter);
    }
    result.point = extract_point();
    result.objective = 0;
    result.pivots = pivots_;
    if (!satisfies(sys_, result.point))
      throw std::logic_error("simplex rerun: solution failed the substitution audit");
    return result;
  }

 private:
  // factor by value: callers pass elements of target itself
  static void subtract_row(std::vector<Rat>& target, const std::vector<Rat>& row, Rat factor) {
    for (size_t j = 0; j < target.size(); ++j)
      if (row[j] != 0) target[j] -= factor * row[j];
  }

  void pivot(int r, int s) {
    if (++pivots_ > limit_) throw PivotLimitError("simplex_solve: pivot limit exceeded");
    std::vector<Rat>& prow = rows_[r];
    const Rat piv = prow[s];
    for (auto& v : prow) v /= piv;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == r || rows_[i][s] == 0) continue;
      subtract_row(rows_[i], prow, rows_[i][s]);
      rows_[i][s] = 0;  // eliminate exactly
    }
    if (obj_[s] != 0) {
      subtract_row(obj_, prow, obj_[s]);
      obj_[s] = 0;
    }
    basis_[r] = s;
  }

  // Bland: entering = least column index with negative reduced cost;
  // leaving = min ratio, ties broken by least basic column index.
  bool minimize(int entering_limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < entering_limit; ++j)
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rat ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded direction
      pivot(leave, enter);
    }
  }

  // After a zero-value phase 1, pivot leftover artificials out of the basis;
  // rows that reduce to 0 = 0 over the real columns are redundant and dropped.
  void drive_out_artificials() {
    for (size_t i = 0; i < rows_.size();) {
      if (basis_[i] < art_start_) {
        ++i;
        continue;
      }
      int s = -1;
      for (int j = 0; j < art_start_; ++j)
        if (rows_[i][j] != 0) {
          s = j;
          break;
        }
      if (s >= 0) {
        pivot(static_cast<int>(i), s);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
      }
    }
  }

  std::vector<Rat> extract_point() const {
    std::vector<Rat> x(nv_, Rat(0));
    for (size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < nv_) x[basis_[i]] = rows_[i][cols_];
    return x;
  }

  // Phase-1 duals live in the reduced costs of the artificial columns:
  // y_i = 1 - obj[art_i]; mapping back through the row flips gives the
  // certificate in the original orientation.
  std::vector<Rat> extract_farkas() const {
    std::vector<Rat> y(sys_.constraints.size());
    for (size_t i = 0; i < y.size(); ++i)
      y[i] = sign_[i] * (Rat(1) - obj_[art_start_ + static_cast<int>(i)]);
    return y;
  }

  void audit_farkas(const std::vector<Rat>& y) const {
    Rat rhs_combo = 0;
    std::vector<Rat> lhs_combo(nv_, Rat(0));
    for (size_t i = 0; i < y.size(); ++i) {
      const auto& c = sys_.constraints[i];
      if (c.rel == Relation::GreaterEqual && y[i] < 0)
        throw std::logic_error("simplex_solve: Farkas multiplier sign violation");
      for (int j = 0; j < nv_; ++j) lhs_combo[j] += y[i] * c.coeffs[j];
      rhs_combo += y[i] * c.rhs;
    }
    for (const Rat& v : lhs_combo)
      if (v > 0) throw std::logic_error("simplex_solve: Farkas combination not nonpositive");
    if (rhs_combo <= 0) throw std::logic_error("simplex_solve: Farkas certificate not separating");
  }

  const LinearSystem& sys_;
  long long limit_;
  long long pivots_ = 0;
  int nv_, art_start_, cols_;
  bool rerunnable_ = false;
  std::vector<std::vector<Rat>> rows_;
  std::vector<Rat> obj_;
  std::vector<int> basis_;
  std::vector<int> sign_;
  std::vector<int> slack_col_;
};

Int pk_at_zero(int q, int n, int k) {
  return ipow(q - 1, static_cast<unsigned>(k)) * binomial(n, k);
}

void append_nonneg_rows(LinearSystem& sys, int d) {
  const int nv = static_cast<int>(sys.vars.size());
  for (int j = 0; j < nv; ++j) {
    Constraint c;
    c.name = "nonneg:B" + std::to_string(d + j);
    c.coeffs.assign(nv, Rat(0));
    c.coeffs[j] = 1;
    c.rel = Relation::GreaterEqual;
    c.rhs = 0;
    sys.constraints.push_back(std::move(c));
  }
}

std::vector<Rat> krawtchouk_row(int q, int n, int k, int d, int i_max) {
  std::vector<Rat> coeffs;
  coeffs.reserve(i_max - d + 1);
  for (int i = d; i <= i_max; ++i) coeffs.emplace_back(krawtchouk(PolyParams(q, n, k, i)));
  return coeffs;
}

void init_vars(LinearSystem& sys, int d, int i_max) {
  for (int i = d; i <= i_max; ++i) sys.vars.push_back("B" + std::to_string(i));
}

void validate_common(int q, int n, int d) {
  if (q < 2) throw std::invalid_argument("system builder: q must be >= 2");
  if (n < 1) throw std::invalid_argument("system builder: n must be >= 1");
  if (d < 1 || d > n) throw std::invalid_argument("system builder: d must satisfy 1 <= d <= n");
}

bool is_prime_power(int q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int v = q;
    while (v % p == 0) v /= p;
    return v == 1;
  }
  return false;
}

void maybe_warn(BoundResult& r) {
  if (!is_prime_power(r.q))
    r.warning = "alphabet size is not a prime power; the underlying inequalities assume F_q";
}

constexpr long long kScanGuard = kEnumerationGuard;

long long scan_cap(const Int& bound) {
  if (bound > kScanGuard)
    throw EnumerationLimitError("bound driver: feasibility scan longer than guard");
  return static_cast<long long>(bound);
}

}  // namespace

SimplexResult simplex_solve(const LinearSystem& sys, long long pivot_limit) {
  if (sys.objective && sys.objective->size() != sys.vars.size())
    throw std::invalid_argument("simplex_solve: objective width mismatch");
  return Simplex(sys, pivot_limit).run();
}

LinearSystem build_classical_system(int q, int n, int d, int i_max) {
  validate_common(q, n, d);
  if (i_max < d || i_max > n)
    throw std::invalid_argument("build_classical_system: bad variable range");
  LinearSystem sys;
  init_vars(sys, d, i_max);
  append_nonneg_rows(sys, d);
  for (int k = 1; k <= n; ++k) {
    Constraint c;
    c.name = "delsarte:k=" + std::to_string(k);
    c.coeffs = krawtchouk_row(q, n, k, d, i_max);
    c.rel = Relation::GreaterEqual;
    c.rhs = Rat(-pk_at_zero(q, n, k));
    sys.constraints.push_back(std::move(c));
  }
  sys.objective = std::vector<Rat>(sys.vars.size(), Rat(1));
  return sys;
}

LinearSystem build_classical_system(int q, int n, int d) {
  return build_classical_system(q, n, d, n);
}

LinearSystem build_improved_system(int q, int n, int d, long long M) {
  validate_common(q, n, d);
  if (M < 2) throw std::invalid_argument("build_improved_system: M must be >= 2");
  LinearSystem sys;
  init_vars(sys, d, n);
  append_nonneg_rows(sys, d);
  for (int k = 1; k <= n; ++k) {
    Constraint c;
    c.name = "improved:k=" + std::to_string(k);
    c.coeffs = krawtchouk_row(q, n, k, d, n);
    c.rel = Relation::GreaterEqual;
    c.rhs = improved_delsarte_rhs(q, n, M, k) - Rat(pk_at_zero(q, n, k));
    sys.constraints.push_back(std::move(c));
  }
  Constraint size_row;
  size_row.name = "size";
  size_row.coeffs.assign(sys.vars.size(), Rat(1));
  size_row.rel = Relation::Equal;
  size_row.rhs = Rat(M - 1);
  sys.constraints.push_back(std::move(size_row));
  return sys;
}

LinearSystem build_cw_system(int q, int n, int d, int w, long long M, bool binary_parity) {
  validate_common(q, n, d);
  if (w < 1 || w > n) throw std::invalid_argument("build_cw_system: w must satisfy 1 <= w <= n");
  if (M < 2) throw std::invalid_argument("build_cw_system: M must be >= 2");
  const int i_max = std::min(n, 2 * w);
  if (d > i_max) throw std::invalid_argument("build_cw_system: d exceeds 2w (no codeword pairs)");
  LinearSystem sys;
  init_vars(sys, d, i_max);
  append_nonneg_rows(sys, d);
  for (int k = 1; k <= n; ++k) {
    std::vector<Rat> coeffs = krawtchouk_row(q, n, k, d, i_max);
    Constraint classical;
    classical.name = "delsarte:k=" + std::to_string(k);
    classical.coeffs = coeffs;
    classical.rel = Relation::GreaterEqual;
    classical.rhs = Rat(-pk_at_zero(q, n, k));
    sys.constraints.push_back(std::move(classical));

    Constraint improved;
    improved.name = "improved:k=" + std::to_string(k);
    improved.coeffs = coeffs;
    improved.rel = Relation::GreaterEqual;
    improved.rhs = improved_delsarte_rhs(q, n, M, k) - Rat(pk_at_zero(q, n, k));
    sys.constraints.push_back(std::move(improved));

    Constraint cw;
    cw.name = "cw:k=" + std::to_string(k);
    cw.coeffs = std::move(coeffs);
    cw.rel = Relation::GreaterEqual;
    cw.rhs = cw_inequality_rhs(q, n, w, M, k);
    sys.constraints.push_back(std::move(cw));
  }
  Constraint size_row;
  size_row.name = "size";
  size_row.coeffs.assign(sys.vars.size(), Rat(1));
  size_row.rel = Relation::Equal;
  size_row.rhs = Rat(M - 1);
  sys.constraints.push_back(std::move(size_row));
  if (binary_parity && q == 2) {
    for (int i = d; i <= i_max; ++i) {
      if (i % 2 == 0) continue;
      Constraint parity;
      parity.name = "parity:B" + std::to_string(i);
      parity.coeffs.assign(sys.vars.size(), Rat(0));
      parity.coeffs[i - d] = 1;
      parity.rel = Relation::Equal;
      parity.rhs = 0;
      sys.constraints.push_back(std::move(parity));
    }
  }
  return sys;
}

nlohmann::ordered_json BoundResult::to_json() const {
  nlohmann::ordered_json j;
  j["q"] = q;
  j["n"] = n;
  j["d"] = d;
  if (w) j["w"] = *w;
  j["method"] = method;
  if (real_optimum) j["real_optimum"] = to_string(*real_optimum);
  if (bound <= Int(std::numeric_limits<long long>::max()))
    j["bound"] = static_cast<long long>(bound);
  else
    j["bound"] = to_string(bound);
  nlohmann::ordered_json scan_arr = nlohmann::ordered_json::array();
  for (const auto& e : scan) scan_arr.push_back({{"M", e.M}, {"feasible", e.feasible}});
  j["scan"] = std::move(scan_arr);
  if (warning) j["warning"] = *warning;
  return j;
}

BoundResult classical_lp_bound(int q, int n, int d, const LpOptions& opts) {
  LinearSystem sys = build_classical_system(q, n, d);
  SimplexResult res = simplex_solve(sys, opts.pivot_limit);
  if (res.status != SolveStatus::Optimal)
    throw std::logic_error("classical_lp_bound: system must have an optimum");
  BoundResult r;
  r.method = "classical";
  r.q = q;
  r.n = n;
  r.d = d;
  r.real_optimum = Rat(1) + res.objective;
  r.bound = floor_rat(*r.real_optimum);
  r.witness = std::move(res.point);
  maybe_warn(r);
  return r;
}

namespace {

// Shared ascending-M feasibility scan. Cheap exact witnesses (fixed
// relaxation optimizers and whole-space distributions, scaled to the size
// equation) are tried first; otherwise the LP decides, warm-restarted from
// the previous basis since only right-hand sides move between steps. Every
// witness is accepted only after exact substitution, so the feasibility
// trace is identical to a cold LP-only scan.
class ScanDriver {
 public:
  ScanDriver(LinearSystem full, long long pivot_limit)
      : full_(std::move(full)), pivot_limit_(pivot_limit) {
    solver_ = full_;
    solver_.constraints.clear();
    for (size_t i = 0; i < full_.constraints.size(); ++i) {
      if (full_.constraints[i].name.rfind("nonneg:", 0) == 0) continue;  // implied by x >= 0
      solver_.constraints.push_back(full_.constraints[i]);
      solver_of_full_.push_back(static_cast<int>(i));
    }
  }

  void add_witness(std::vector<Rat> point) {
    Witness w;
    w.point = std::move(point);
    for (const Rat& v : w.point) w.total += v;
    if (w.total <= 0) return;
    w.dots.reserve(full_.constraints.size());
    for (const auto& c : full_.constraints) {
      Rat dot = 0;
      for (size_t j = 0; j < w.point.size(); ++j) dot += c.coeffs[j] * w.point[j];
      w.dots.push_back(std::move(dot));
    }
    witnesses_.push_back(std::move(w));
  }

  void set_rhs(size_t full_row, const Rat& value) {
    full_.constraints[full_row].rhs = value;
    for (size_t s = 0; s < solver_of_full_.size(); ++s)
      if (solver_of_full_[s] == static_cast<int>(full_row)) solver_.constraints[s].rhs = value;
  }

  bool step(long long M, std::vector<Rat>& point, std::vector<Rat>& farkas) {
    const Rat target(M - 1);
    for (const Witness& w : witnesses_) {
      if (target > w.total) continue;
      Rat t = target / w.total;
      bool ok = true;
      for (size_t r = 0; r < full_.constraints.size() && ok; ++r) {
        const auto& c = full_.constraints[r];
        Rat lhs = t * w.dots[r];
        ok = c.rel == Relation::Equal ? lhs == c.rhs : lhs >= c.rhs;
      }
      if (ok) {
        point.assign(w.point.size(), Rat(0));
        for (size_t j = 0; j < w.point.size(); ++j) point[j] = t * w.point[j];
        return true;
      }
    }
    SimplexResult res;
    if (lp_ && lp_->rerunnable()) {
      res = lp_->rerun();
    } else {
      lp_.emplace(solver_, pivot_limit_);
      res = lp_->run();
    }
    if (res.status == SolveStatus::Optimal) {
      point = std::move(res.point);
      return true;
    }
    // certificate for the caller-visible system, nonneg rows included
    SimplexResult full_res = simplex_solve(full_, pivot_limit_);
    if (full_res.status != SolveStatus::Infeasible)
      throw std::logic_error("scan driver: stripped and full systems disagree");
    farkas = std::move(full_res.farkas);
    return false;
  }

 private:
  struct Witness {
    std::vector<Rat> point;
    Rat total = 0;
    std::vector<Rat> dots;
  };

  LinearSystem full_, solver_;
  std::vector<int> solver_of_full_;
  std::vector<Witness> witnesses_;
  std::optional<Simplex> lp_;  // references solver_; rhs updates flow through
  long long pivot_limit_;
};

}  // namespace

BoundResult improved_bound(int q, int n, int d, const LpOptions& opts) {
  BoundResult classical = classical_lp_bound(q, n, d, opts);
  const long long U = scan_cap(classical.bound);

  LinearSystem sys = build_improved_system(q, n, d, 2);
  const size_t nv = sys.vars.size();
  if (sys.constraints[nv].name != "improved:k=1" || sys.constraints[nv + n].name != "size")
    throw std::logic_error("improved_bound: unexpected system layout");

  ScanDriver driver(std::move(sys), opts.pivot_limit);
  driver.add_witness(classical.witness);

  BoundResult r;
  r.method = "improved";
  r.q = q;
  r.n = n;
  r.d = d;
  r.bound = U;
  maybe_warn(r);
  for (long long M = 2; M <= U + 1; ++M) {
    for (int k = 1; k <= n; ++k)
      driver.set_rhs(nv + k - 1, improved_delsarte_rhs(q, n, M, k) - Rat(pk_at_zero(q, n, k)));
    driver.set_rhs(nv + n, Rat(M - 1));
    std::vector<Rat> point, farkas;
    bool feasible = driver.step(M, point, farkas);
    r.scan.push_back({M, feasible});
    if (!feasible) {
      r.bound = Int(M - 1);
      r.infeasibility = std::move(farkas);
      return r;
    }
    r.witness = std::move(point);
  }
  return r;
}

BoundResult cw_bound(int q, int n, int d, int w, const LpOptions& opts) {
  validate_common(q, n, d);
  if (w < 1 || w > n) throw std::invalid_argument("cw_bound: w must satisfy 1 <= w <= n");
  const int i_max = std::min(n, 2 * w);

  BoundResult r;
  r.method = "cw";
  r.q = q;
  r.n = n;
  r.d = d;
  r.w = w;
  maybe_warn(r);

  if (d > i_max) {
    // two distinct weight-w words differ in at most 2w coordinates
    r.bound = 1;
    return r;
  }

  LinearSystem support_sys = build_classical_system(q, n, d, i_max);
  SimplexResult support_res = simplex_solve(support_sys, opts.pivot_limit);
  if (support_res.status != SolveStatus::Optimal)
    throw std::logic_error("cw_bound: support-restricted classical system must have an optimum");
  const long long U = scan_cap(floor_rat(Rat(1) + support_res.objective));

  // The scan candidate comes from the tightest valid relaxation we can
  // optimize directly: classical + support (+ parity when enabled).
  SimplexResult witness_res = std::move(support_res);
  if (opts.binary_parity && q == 2) {
    LinearSystem parity_sys = support_sys;
    for (int i = d; i <= i_max; ++i) {
      if (i % 2 == 0) continue;
      Constraint parity;
      parity.name = "parity:B" + std::to_string(i);
      parity.coeffs.assign(parity_sys.vars.size(), Rat(0));
      parity.coeffs[i - d] = 1;
      parity.rel = Relation::Equal;
      parity.rhs = 0;
      parity_sys.constraints.push_back(std::move(parity));
    }
    witness_res = simplex_solve(parity_sys, opts.pivot_limit);
    if (witness_res.status != SolveStatus::Optimal)
      throw std::logic_error("cw_bound: parity-restricted system must have an optimum");
  }

  LinearSystem sys = build_cw_system(q, n, d, w, 2, opts.binary_parity);
  const size_t nv = sys.vars.size();
  if (sys.constraints[nv].name != "delsarte:k=1" || sys.constraints[nv + 3 * n].name != "size")
    throw std::logic_error("cw_bound: unexpected system layout");

  ScanDriver driver(std::move(sys), opts.pivot_limit);
  driver.add_witness(witness_res.point);
  // The whole weight-w space is itself a code; its scaled distance
  // distribution is a strong witness whenever it carries no mass below d.
  {
    std::vector<Int> profile = full_constant_weight_profile(q, n, w);
    bool usable = true;
    for (int i = 1; i < d; ++i) usable = usable && profile[i] == 0;
    if (usable) {
      std::vector<Rat> point;
      for (int i = d; i <= i_max; ++i) point.emplace_back(profile[i]);
      driver.add_witness(std::move(point));
    }
  }

  // M-independent pieces of the constant-weight right-hand sides
  std::vector<Int> spm(n + 1), divisor(n + 1);
  for (int k = 1; k <= n; ++k) {
    spm[k] = scaled_pk_minus(PolyParams(q, n, k, w));
    divisor[k] = pk_at_zero(q, n, k);
  }

  r.bound = U;
  for (long long M = 2; M <= U + 1; ++M) {
    for (int k = 1; k <= n; ++k) {
      driver.set_rhs(nv + 3 * (k - 1) + 1,
                     improved_delsarte_rhs(q, n, M, k) - Rat(divisor[k]));
      Int t_of_k = matrix_balancing_closed_form(Int(M), Int(M) * spm[k], q, divisor[k]);
      driver.set_rhs(nv + 3 * (k - 1) + 2,
                     Rat((Int(M) - 1) * divisor[k]) - Rat(Int(2) * q * t_of_k, Int(q - 1) * M));
    }
    driver.set_rhs(nv + 3 * n, Rat(M - 1));
    std::vector<Rat> point, farkas;
    bool feasible = driver.step(M, point, farkas);
    r.scan.push_back({M, feasible});
    if (!feasible) {
      r.bound = Int(M - 1);
      r.infeasibility = std::move(farkas);
      return r;
    }
    r.witness = std::move(point);
  }
  return r;
}

}  // namespace codebounds
