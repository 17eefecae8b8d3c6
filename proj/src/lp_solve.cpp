#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <set>
#include <thread>

#include "repsel/lp.hpp"

namespace repsel::lp {

int LinearProgram::add_variable(const std::string& name, double lb, double ub, double obj) {
  obj_.push_back(obj);
  lb_.push_back(lb);
  ub_.push_back(ub);
  var_names_.push_back(name);
  return static_cast<int>(obj_.size()) - 1;
}

int LinearProgram::add_constraint(const std::string& name, Sense sense, double rhs,
                                  std::vector<Entry> entries) {
  rows_.push_back(Constraint{name, sense, rhs, std::move(entries)});
  return static_cast<int>(rows_.size()) - 1;
}

void LinearProgram::set_bounds(int var, double lb, double ub) {
  lb_[var] = lb;
  ub_[var] = ub;
}

void LinearProgram::validate() const {
  std::set<std::string> names;
  for (int j = 0; j < num_vars(); ++j) {
    if (!names.insert(var_names_[j]).second)
      throw ConfigError("duplicate variable name: " + var_names_[j]);
    if (std::isnan(lb_[j]) || std::isnan(ub_[j]) || lb_[j] > ub_[j])
      throw ConfigError("bad bounds on variable " + var_names_[j]);
    if (!std::isfinite(obj_[j]))
      throw ConfigError("non-finite objective coefficient on " + var_names_[j]);
  }
  names.clear();
  for (const auto& row : rows_) {
    if (!names.insert(row.name).second) throw ConfigError("duplicate row name: " + row.name);
    if (!std::isfinite(row.rhs)) throw ConfigError("non-finite rhs on row " + row.name);
    std::set<int> cols;
    for (const auto& e : row.entries) {
      if (e.col < 0 || e.col >= num_vars())
        throw ConfigError("row " + row.name + ": entry references unknown column");
      if (!std::isfinite(e.val)) throw ConfigError("row " + row.name + ": non-finite coefficient");
      if (!cols.insert(e.col).second)
        throw ConfigError("row " + row.name + ": duplicate entry for column " +
                          var_names_[e.col]);
    }
  }
}

const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration_limit";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "optimal") return Status::optimal;
  if (s == "infeasible") return Status::infeasible;
  if (s == "unbounded") return Status::unbounded;
  if (s == "iteration_limit") return Status::iteration_limit;
  throw ConfigError("unknown solver status: " + s);
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kDropTol = 1e-13;
constexpr double kDegenStep = 1e-10;
constexpr int kDegenLimit = 300;

// Column ordering for the basis factorization: singleton and short columns
// first, dense (capacity-style) columns last, otherwise original index order.
// Time-expanded models produce nearly banded bases under this order at a
// fraction of the cost of a full fill-reducing analysis.
template <typename StorageIndex>
struct ShortColumnFirstOrdering {
  using PermutationType =
      Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, StorageIndex>;

  template <typename MatrixType>
  void operator()(const MatrixType& mat, PermutationType& perm) {
    const StorageIndex n = static_cast<StorageIndex>(mat.cols());
    std::vector<StorageIndex> order(n);
    for (StorageIndex j = 0; j < n; ++j) order[j] = j;
    const auto* outer = mat.outerIndexPtr();
    std::stable_sort(order.begin(), order.end(), [&](StorageIndex a, StorageIndex b) {
      return outer[a + 1] - outer[a] < outer[b + 1] - outer[b];
    });
    perm.resize(n);
    for (StorageIndex k = 0; k < n; ++k) perm.indices()(order[k]) = k;
  }
};

enum class VarState : uint8_t { basic, at_lower, at_upper, free_zero };

struct Eta {
  int row;
  double pivot;
  std::vector<int> idx;     // excludes the pivot row
  std::vector<double> val;
};

// LP in computational form: structurals, then one logical per row, then any
// phase-1 artificials. Empty rows/columns have already been removed.
struct CoreLP {
  int n = 0;  // structural count
  int m = 0;  // row count
  // structural columns, CSC
  std::vector<int> col_ptr, row_idx;
  std::vector<double> vals;
  std::vector<double> lb, ub, cost;  // over structurals + logicals
  std::vector<double> rhs;
  double b_scale = 1.0;
};

class Simplex {
 public:
  Simplex(const CoreLP& core, const SolverOptions& opts) : lp_(core), opts_(opts) {
    n_total_ = lp_.n + lp_.m;
    lb_ = lp_.lb;
    ub_ = lp_.ub;
    state_.resize(n_total_);
    for (int j = 0; j < n_total_; ++j) state_[j] = initial_state(j);
    basis_.assign(lp_.m, -1);
    xb_.assign(lp_.m, 0.0);
  }

  Status run(long max_iters) {
    crash();
    if (!artificials_.empty()) {
      phase1_ = true;
      Status s = iterate(max_iters);
      phase1_ = false;
      if (s == Status::iteration_limit) return s;
      if (phase1_objective() > opts_.feasibility_tol * lp_.b_scale) return Status::infeasible;
      for (size_t a = 0; a < artificials_.size(); ++a) {
        int j = n_total_ + static_cast<int>(a);
        lb_[j] = 0.0;
        ub_[j] = 0.0;
      }
      for (int r = 0; r < lp_.m; ++r)
        if (basis_[r] >= n_total_ && std::abs(xb_[r]) <= opts_.feasibility_tol * lp_.b_scale)
          xb_[r] = 0.0;
    }
    return iterate(max_iters);
  }

  long iterations() const { return iters_; }

  // Primal values for structurals and logicals from the final basis.
  std::vector<double> primal_values() {
    std::vector<double> x(n_total_, 0.0);
    for (int j = 0; j < n_total_; ++j) x[j] = nonbasic_value(j);
    for (int r = 0; r < lp_.m; ++r)
      if (basis_[r] >= 0 && basis_[r] < n_total_) x[basis_[r]] = xb_[r];
    return x;
  }

  std::vector<double> duals() {
    std::vector<double> y(lp_.m, 0.0);
    btran_costs(y);
    return y;
  }

 private:
  VarState initial_state(int j) const {
    if (std::isfinite(lp_.lb[j])) return VarState::at_lower;
    if (std::isfinite(lp_.ub[j])) return VarState::at_upper;
    return VarState::free_zero;
  }

  double nonbasic_value(int j) const {
    switch (state_[j]) {
      case VarState::at_lower: return lb_[j];
      case VarState::at_upper: return ub_[j];
      default: return 0.0;
    }
  }

  double cost_of(int j) const {
    if (phase1_) return j >= n_total_ ? 1.0 : 0.0;
    return j < n_total_ ? lp_.cost[j] : 0.0;
  }

  // Column j of the computational-form matrix applied as v += scale * A_j.
  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < lp_.n) {
      for (int k = lp_.col_ptr[j]; k < lp_.col_ptr[j + 1]; ++k) f(lp_.row_idx[k], lp_.vals[k]);
    } else if (j < n_total_) {
      f(j - lp_.n, 1.0);
    } else {
      const auto& a = artificials_[j - n_total_];
      f(a.first, a.second);
    }
  }

  double phase1_objective() const {
    double s = 0.0;
    for (int r = 0; r < lp_.m; ++r)
      if (basis_[r] >= n_total_) s += xb_[r];
    return s;
  }

  // Initial basis: logicals everywhere, with two refinements: equality rows
  // take a feasible singleton structural column when one exists, and any
  // remaining out-of-bounds logical is replaced by an artificial.
  void crash() {
    std::vector<double> r(lp_.rhs);
    for (int j = 0; j < lp_.n; ++j) {
      double v = nonbasic_value(j);
      if (v != 0.0)
        for (int k = lp_.col_ptr[j]; k < lp_.col_ptr[j + 1]; ++k)
          r[lp_.row_idx[k]] -= lp_.vals[k] * v;
    }
    std::vector<int> singleton_of_row(lp_.m, -1);
    for (int j = 0; j < lp_.n; ++j)
      if (lp_.col_ptr[j + 1] - lp_.col_ptr[j] == 1) {
        int row = lp_.row_idx[lp_.col_ptr[j]];
        if (singleton_of_row[row] == -1) singleton_of_row[row] = j;
      }
    for (int i = 0; i < lp_.m; ++i) {
      int logical = lp_.n + i;
      double lo = lb_[logical], hi = ub_[logical];
      if (r[i] >= lo && r[i] <= hi) {
        basis_[i] = logical;
        state_[logical] = VarState::basic;
        xb_[i] = r[i];
        continue;
      }
      int j = singleton_of_row[i];
      if (j >= 0) {
        double a = lp_.vals[lp_.col_ptr[j]];
        double v = nonbasic_value(j) + r[i] / a;
        if (v >= lb_[j] && v <= ub_[j]) {
          basis_[i] = j;
          state_[j] = VarState::basic;
          xb_[i] = v;
          continue;
        }
      }
      // logical pinned at its nearest bound, artificial absorbs the residual
      double pin = r[i] > hi ? hi : lo;
      state_[logical] = pin == lo ? VarState::at_lower : VarState::at_upper;
      double resid = r[i] - pin;
      artificials_.push_back({i, resid > 0 ? 1.0 : -1.0});
      int aj = n_total_ + static_cast<int>(artificials_.size()) - 1;
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      state_.push_back(VarState::basic);
      basis_[i] = aj;
      xb_[i] = std::abs(resid);
    }
    refactor();
  }

  void refactor() {
    auto t0 = std::chrono::steady_clock::now();
    ++stat_refactors_;
    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    for (int r = 0; r < lp_.m; ++r)
      for_column_into(basis_[r], trips, r);
    basis_mat_.resize(lp_.m, lp_.m);
    basis_mat_.setFromTriplets(trips.begin(), trips.end());
    lu_.compute(basis_mat_);
    if (lu_.info() != Eigen::Success) throw SolverError("basis factorization failed");
    etas_.clear();
    eta_nnz_ = 0;
    recompute_basics();
    stat_refactor_ms_ += std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - t0).count();
  }

  void for_column_into(int j, std::vector<Eigen::Triplet<double>>& trips, int col) const {
    for_column(j, [&](int row, double val) { trips.emplace_back(row, col, val); });
  }

  void recompute_basics() {
    Eigen::VectorXd b(lp_.m);
    for (int i = 0; i < lp_.m; ++i) b[i] = lp_.rhs[i];
    for (int j = 0; j < static_cast<int>(state_.size()); ++j) {
      if (state_[j] == VarState::basic) continue;
      double v = nonbasic_value(j);
      if (v != 0.0) for_column(j, [&](int row, double val) { b[row] -= val * v; });
    }
    Eigen::VectorXd xb = lu_.solve(b);
    apply_etas_ftran(xb);
    for (int r = 0; r < lp_.m; ++r) xb_[r] = xb[r];
  }

  void apply_etas_ftran(Eigen::VectorXd& x) const {
    for (const auto& e : etas_) {
      double xr = x[e.row] / e.pivot;
      x[e.row] = xr;
      if (xr != 0.0)
        for (size_t k = 0; k < e.idx.size(); ++k) x[e.idx[k]] -= e.val[k] * xr;
    }
  }

  void ftran(Eigen::VectorXd& v) {
    v = lu_.solve(v);
    apply_etas_ftran(v);
  }

  void btran(Eigen::VectorXd& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = v[it->row];
      for (size_t k = 0; k < it->idx.size(); ++k) acc -= it->val[k] * v[it->idx[k]];
      v[it->row] = acc / it->pivot;
    }
    v = lu_.transpose().solve(v);
  }

  void btran_costs(std::vector<double>& y) {
    Eigen::VectorXd cb(lp_.m);
    for (int r = 0; r < lp_.m; ++r) cb[r] = cost_of(basis_[r]);
    btran(cb);
    y.assign(cb.data(), cb.data() + lp_.m);
  }

  // full reduced-cost refresh; also run after every refactor to wash out the
  // drift accumulated by the incremental updates
  void recompute_reduced_costs() {
    std::vector<double> y;
    btran_costs(y);
    const int total = static_cast<int>(state_.size());
    d_.assign(total, 0.0);
    for (int j = 0; j < total; ++j) {
      if (state_[j] == VarState::basic) continue;
      double d = cost_of(j);
      for_column(j, [&](int row, double val) { d -= y[row] * val; });
      d_[j] = d;
    }
  }

  // eligible entering direction for nonbasic j under current reduced cost
  int entering_direction(int j, double dj_tol) const {
    if (state_[j] == VarState::basic || ub_[j] - lb_[j] <= 0.0) return 0;
    double d = d_[j];
    if (state_[j] == VarState::at_lower && d < -dj_tol) return 1;
    if (state_[j] == VarState::at_upper && d > dj_tol) return -1;
    if (state_[j] == VarState::free_zero && std::abs(d) > dj_tol) return d < 0 ? 1 : -1;
    return 0;
  }

  Status iterate(long max_iters) {
    const double c_scale = cost_scale();
    const double dj_tol = opts_.optimality_tol * c_scale;
    const bool devex = opts_.pricing == Pricing::devex;
    int degen_run = 0;
    bool bland = false;
    Eigen::VectorXd w(lp_.m), pivot_row(lp_.m);
    devex_.assign(state_.size(), 1.0);
    recompute_reduced_costs();

    while (true) {
      if (iters_ >= max_iters) return Status::iteration_limit;

      const int total = static_cast<int>(state_.size());
      int enter = -1, dir = 0;
      for (int rescan = 0; rescan < 2 && enter < 0; ++rescan) {
        double best = 0.0;
        for (int j = 0; j < total; ++j) {
          int cand_dir = entering_direction(j, dj_tol);
          if (cand_dir == 0) continue;
          if (bland) {
            enter = j;
            dir = cand_dir;
            break;
          }
          double score = devex ? d_[j] * d_[j] / devex_[j] : std::abs(d_[j]);
          if (score > best) {
            best = score;
            enter = j;
            dir = cand_dir;
          }
        }
        // confirm optimality against freshly computed reduced costs
        if (enter < 0 && rescan == 0) recompute_reduced_costs();
      }
      if (enter < 0) return Status::optimal;

      w.setZero(lp_.m);
      for_column(enter, [&](int row, double val) { w[row] = val; });
      ftran(w);

      // ratio test: step t in the entering direction before a bound blocks
      double t_bound = ub_[enter] - lb_[enter];
      double t_best = kInf;
      int leave_row = -1;
      bool leave_at_upper = false;
      double leave_pivot = 0.0;
      for (int i = 0; i < lp_.m; ++i) {
        double rate = -dir * w[i];
        if (std::abs(rate) <= kPivotTol) continue;
        int bj = basis_[i];
        double t;
        bool to_upper;
        if (rate > 0) {
          if (!std::isfinite(ub_[bj])) continue;
          t = (ub_[bj] - xb_[i]) / rate;
          to_upper = true;
        } else {
          if (!std::isfinite(lb_[bj])) continue;
          t = (lb_[bj] - xb_[i]) / rate;
          to_upper = false;
        }
        if (t < 0) t = 0;
        bool better = false;
        if (t < t_best * (1.0 - 1e-10) - 1e-14) {
          better = true;
        } else if (t <= t_best * (1.0 + 1e-10) + 1e-14) {
          if (bland) {
            // Bland: smallest leaving variable index among ties
            if (leave_row < 0 || basis_[i] < basis_[leave_row]) better = true;
          } else if (leave_row < 0 ||
                     std::abs(w[i]) > std::abs(leave_pivot) * (1.0 + 1e-12)) {
            // prefer the larger pivot for stability, then the lower row
            better = true;
          }
        }
        if (better) {
          t_best = t;
          leave_row = i;
          leave_at_upper = to_upper;
          leave_pivot = w[i];
        }
      }

      ++iters_;
      if (!std::isfinite(t_best) && !std::isfinite(t_bound)) {
        if (phase1_) throw SolverError("phase-1 descent ray; numerical failure");
        return Status::unbounded;
      }

      if (t_bound <= t_best) {
        // bound-to-bound flip, basis unchanged
        for (int i = 0; i < lp_.m; ++i) {
          double rate = -dir * w[i];
          if (rate != 0.0) xb_[i] += rate * t_bound;
        }
        state_[enter] = state_[enter] == VarState::at_lower ? VarState::at_upper
                                                            : VarState::at_lower;
        degen_run = 0;
        bland = false;
        continue;
      }

      const double t = t_best;
      for (int i = 0; i < lp_.m; ++i) {
        double rate = -dir * w[i];
        if (rate != 0.0) xb_[i] += rate * t;
      }
      int leaving = basis_[leave_row];

      // the pivot row of B^-1 N drives both the incremental reduced-cost
      // update and the devex reference-framework weights
      pivot_row.setZero(lp_.m);
      pivot_row[leave_row] = 1.0;
      btran(pivot_row);
      const double alpha_q = w[leave_row];
      const double d_enter = d_[enter];
      const double gamma_q = devex_[enter];
      double gmax = 1.0;
      for (int j = 0; j < total; ++j) {
        if (state_[j] == VarState::basic || j == enter) continue;
        if (ub_[j] - lb_[j] <= 0.0) continue;
        double alpha_j = 0.0;
        for_column(j, [&](int row, double val) { alpha_j += pivot_row[row] * val; });
        if (alpha_j == 0.0) continue;
        d_[j] -= (d_enter / alpha_q) * alpha_j;
        if (devex) {
          double cand = (alpha_j / alpha_q) * (alpha_j / alpha_q) * gamma_q;
          if (cand > devex_[j]) devex_[j] = cand;
          gmax = std::max(gmax, devex_[j]);
        }
      }
      d_[enter] = 0.0;
      d_[leaving] = -d_enter / alpha_q;
      if (devex) {
        devex_[leaving] = std::max(gamma_q / (alpha_q * alpha_q), 1.0);
        if (gmax > 1e12)
          for (auto& g : devex_) g = 1.0;  // new reference framework
      }

      state_[leaving] = leave_at_upper ? VarState::at_upper : VarState::at_lower;
      // snap the leaving variable exactly onto its bound
      double enter_val = nonbasic_value(enter) + dir * t;
      basis_[leave_row] = enter;
      state_[enter] = VarState::basic;
      xb_[leave_row] = enter_val;

      Eta eta;
      eta.row = leave_row;
      eta.pivot = w[leave_row];
      for (int i = 0; i < lp_.m; ++i)
        if (i != leave_row && std::abs(w[i]) > kDropTol) {
          eta.idx.push_back(i);
          eta.val.push_back(w[i]);
        }
      eta_nnz_ += eta.idx.size();
      stat_eta_nnz_total_ += eta.idx.size();
      etas_.push_back(std::move(eta));

      // the eta budget balances PFI application cost against the price of a
      // fresh factorization; storage-style chain columns make etas dense
      if (static_cast<int>(etas_.size()) >= opts_.refactor_interval ||
          eta_nnz_ > static_cast<size_t>(24) * static_cast<size_t>(lp_.m)) {
        refactor();
        recompute_reduced_costs();
      }

      if (opts_.bland_fallback) {
        if (t <= kDegenStep) {
          if (++degen_run >= kDegenLimit) bland = true;
        } else {
          degen_run = 0;
          bland = false;
        }
      }
    }
  }

  double cost_scale() const {
    if (phase1_) return 1.0;
    double s = 1.0;
    for (int j = 0; j < lp_.n; ++j) s = std::max(s, std::abs(lp_.cost[j]));
    return s;
  }

  const CoreLP& lp_;
  SolverOptions opts_;
  int n_total_ = 0;
  std::vector<double> lb_, ub_;  // extended by artificials
  std::vector<VarState> state_;
  std::vector<int> basis_;
  std::vector<double> xb_;
  std::vector<std::pair<int, double>> artificials_;  // (row, sign)
  Eigen::SparseMatrix<double> basis_mat_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, ShortColumnFirstOrdering<int>> lu_;
  std::vector<double> devex_;
  std::vector<double> d_;  // reduced costs, maintained incrementally
  std::vector<Eta> etas_;
 public:
  long stat_refactors_ = 0;
  double stat_refactor_ms_ = 0.0;
  size_t stat_eta_nnz_total_ = 0;
 private:
  size_t eta_nnz_ = 0;
  bool phase1_ = false;
  long iters_ = 0;
};

struct Presolve {
  std::vector<int> var_map;   // original -> core index or -1
  std::vector<int> row_map;   // original -> core row or -1
  std::vector<double> fixed;  // values of removed variables
  bool infeasible = false;
  bool unbounded = false;
};

CoreLP build_core(const LinearProgram& lp, Presolve& pre) {
  const int n = lp.num_vars();
  const int m = lp.num_constraints();
  std::vector<int> col_nnz(n, 0);
  std::vector<char> row_empty(m, 1);
  for (int i = 0; i < m; ++i)
    for (const auto& e : lp.constraint(i).entries)
      if (e.val != 0.0) {
        ++col_nnz[e.col];
        row_empty[i] = 0;
      }

  pre.var_map.assign(n, -1);
  pre.row_map.assign(m, -1);
  pre.fixed.assign(n, 0.0);
  int nn = 0;
  for (int j = 0; j < n; ++j) {
    if (col_nnz[j] > 0) {
      pre.var_map[j] = nn++;
      continue;
    }
    // empty column: fix at the bound favoured by the objective
    double c = lp.objective()[j];
    double v;
    if (c > 0) {
      v = lp.lower(j);
      if (!std::isfinite(v)) pre.unbounded = true;
    } else if (c < 0) {
      v = lp.upper(j);
      if (!std::isfinite(v)) pre.unbounded = true;
    } else {
      v = std::isfinite(lp.lower(j)) ? lp.lower(j)
                                     : (std::isfinite(lp.upper(j)) ? lp.upper(j) : 0.0);
    }
    pre.fixed[j] = std::isfinite(v) ? v : 0.0;
  }
  int mm = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.constraint(i);
    if (row_empty[i]) {
      const double r = row.rhs;
      bool ok = (row.sense == Sense::le && 0 <= r) || (row.sense == Sense::ge && 0 >= r) ||
                (row.sense == Sense::eq && r == 0);
      if (!ok) pre.infeasible = true;
      continue;
    }
    pre.row_map[i] = mm++;
  }

  CoreLP core;
  core.n = nn;
  core.m = mm;
  core.lb.resize(nn + mm);
  core.ub.resize(nn + mm);
  core.cost.assign(nn + mm, 0.0);
  core.rhs.resize(mm);
  for (int j = 0; j < n; ++j) {
    int cj = pre.var_map[j];
    if (cj < 0) continue;
    core.lb[cj] = lp.lower(j);
    core.ub[cj] = lp.upper(j);
    core.cost[cj] = lp.objective()[j];
  }
  // logicals: row a.x + s = b
  for (int i = 0; i < m; ++i) {
    int ci = pre.row_map[i];
    if (ci < 0) continue;
    const auto& row = lp.constraint(i);
    core.rhs[ci] = row.rhs;
    core.b_scale = std::max(core.b_scale, std::abs(row.rhs));
    double* lo = &core.lb[nn + ci];
    double* hi = &core.ub[nn + ci];
    switch (row.sense) {
      case Sense::le: *lo = 0; *hi = kInf; break;
      case Sense::ge: *lo = -kInf; *hi = 0; break;
      case Sense::eq: *lo = 0; *hi = 0; break;
    }
  }
  // CSC assembly for structural columns
  std::vector<int> counts(nn, 0);
  for (int i = 0; i < m; ++i) {
    if (pre.row_map[i] < 0) continue;
    for (const auto& e : lp.constraint(i).entries)
      if (e.val != 0.0) ++counts[pre.var_map[e.col]];
  }
  core.col_ptr.assign(nn + 1, 0);
  for (int j = 0; j < nn; ++j) core.col_ptr[j + 1] = core.col_ptr[j] + counts[j];
  core.row_idx.resize(core.col_ptr[nn]);
  core.vals.resize(core.col_ptr[nn]);
  std::vector<int> fill(core.col_ptr.begin(), core.col_ptr.end() - 1);
  for (int i = 0; i < m; ++i) {
    int ci = pre.row_map[i];
    if (ci < 0) continue;
    for (const auto& e : lp.constraint(i).entries) {
      if (e.val == 0.0) continue;
      int cj = pre.var_map[e.col];
      core.row_idx[fill[cj]] = ci;
      core.vals[fill[cj]] = e.val;
      ++fill[cj];
    }
  }
  return core;
}

}  // namespace

SolveResult solve(const LinearProgram& lp, const SolverOptions& opts) {
  lp.validate();
  SolveResult res;
  res.x.assign(lp.num_vars(), 0.0);
  res.duals.assign(lp.num_constraints(), 0.0);

  Presolve pre;
  CoreLP core = build_core(lp, pre);
  if (pre.infeasible) {
    res.status = Status::infeasible;
    return res;
  }
  if (pre.unbounded) {
    res.status = Status::unbounded;
    return res;
  }

  std::vector<double> core_x(core.n, 0.0);
  std::vector<double> core_y(core.m, 0.0);
  long iters = 0;
  if (core.m > 0 || core.n > 0) {
    long max_iters = opts.max_iterations > 0
                         ? opts.max_iterations
                         : 10L * (lp.num_constraints() + lp.num_vars());
    Simplex s(core, opts);
    Status st = s.run(max_iters);
    iters = s.iterations();
    if (std::getenv("REPSEL_LP_STATS"))
      fprintf(stderr, "[lpstats] m=%d iters=%ld refactors=%ld refactor_ms=%.0f eta_nnz=%zu\n",
              core.m, iters, s.stat_refactors_, s.stat_refactor_ms_, s.stat_eta_nnz_total_);
    auto vals = s.primal_values();
    for (int j = 0; j < core.n; ++j) core_x[j] = vals[j];
    res.status = st;
    if (st == Status::optimal) core_y = s.duals();
  } else {
    res.status = Status::optimal;
  }

  for (int j = 0; j < lp.num_vars(); ++j)
    res.x[j] = pre.var_map[j] >= 0 ? core_x[pre.var_map[j]] : pre.fixed[j];
  for (int i = 0; i < lp.num_constraints(); ++i)
    res.duals[i] = pre.row_map[i] >= 0 ? core_y[pre.row_map[i]] : 0.0;
  res.iterations = iters;

  double obj = lp.objective_constant();
  for (int j = 0; j < lp.num_vars(); ++j) obj += lp.objective()[j] * res.x[j];
  res.objective = obj;

  if (res.status == Status::optimal) {
    // certify feasibility of the reported point
    const double tol = opts.feasibility_tol;
    for (int i = 0; i < lp.num_constraints(); ++i) {
      const auto& row = lp.constraint(i);
      double act = 0.0;
      for (const auto& e : row.entries) act += e.val * res.x[e.col];
      double scale = std::max(1.0, std::abs(row.rhs));
      double viol = 0.0;
      if (row.sense == Sense::le) viol = act - row.rhs;
      else if (row.sense == Sense::ge) viol = row.rhs - act;
      else viol = std::abs(act - row.rhs);
      if (viol > tol * scale * 10)
        throw SolverError("optimal point violates row " + row.name + " by " + fmt_double(viol));
    }
  }
  return res;
}

std::vector<SolveResult> solve_parallel(const std::vector<LinearProgram>& lps,
                                        const SolverOptions& opts, int threads) {
  std::vector<SolveResult> results(lps.size());
  std::vector<std::string> errors(lps.size());
  if (lps.empty()) return results;
  unsigned hw = std::thread::hardware_concurrency();
  int nthreads = threads > 0 ? threads : (hw ? static_cast<int>(hw) : 2);
  nthreads = std::min<int>(nthreads, static_cast<int>(lps.size()));

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= lps.size()) break;
      try {
        results[i] = solve(lps[i], opts);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // per-item failures are carried in the slot, siblings keep their results
  for (size_t i = 0; i < lps.size(); ++i)
    if (!errors[i].empty()) {
      results[i] = SolveResult{};
      results[i].error = errors[i];
    }
  return results;
}

}  // namespace repsel::lp
