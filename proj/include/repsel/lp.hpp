#pragma once

#include <string>
#include <vector>

#include "repsel/common.hpp"

namespace repsel::lp {

struct Entry {
  int col;
  double val;
};

enum class Sense : char { le = 'L', ge = 'G', eq = 'E' };

struct Constraint {
  std::string name;
  Sense sense = Sense::le;
  double rhs = 0.0;
  std::vector<Entry> entries;
};

/// Sparse minimization LP: min c'x + c0 subject to rows and variable bounds.
/// Default bounds are [0, +inf); free variables use (-inf, +inf).
class LinearProgram {
 public:
  int add_variable(const std::string& name, double lb = 0.0, double ub = kInf, double obj = 0.0);
  int add_constraint(const std::string& name, Sense sense, double rhs, std::vector<Entry> entries);

  int num_vars() const { return static_cast<int>(obj_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }

  const std::vector<double>& objective() const { return obj_; }
  double objective_constant() const { return obj_constant_; }
  void set_objective_constant(double c) { obj_constant_ = c; }
  void set_objective(int var, double coeff) { obj_[var] = coeff; }
  void set_bounds(int var, double lb, double ub);

  double lower(int var) const { return lb_[var]; }
  double upper(int var) const { return ub_[var]; }
  const std::string& var_name(int var) const { return var_names_[var]; }
  const Constraint& constraint(int i) const { return rows_[i]; }

  /// Checks name uniqueness, finite coefficients, no duplicate (row, col)
  /// entries and bound sanity. Throws ConfigError.
  void validate() const;

 private:
  std::vector<double> obj_, lb_, ub_;
  std::vector<std::string> var_names_;
  std::vector<Constraint> rows_;
  double obj_constant_ = 0.0;
};

enum class Status { optimal, infeasible, unbounded, iteration_limit };
const char* to_string(Status s);
Status status_from_string(const std::string& s);

struct SolveResult {
  Status status = Status::iteration_limit;
  double objective = 0.0;
  std::vector<double> x;      // primal values (best iterate when not optimal)
  std::vector<double> duals;  // per constraint, populated when optimal
  long iterations = 0;
  std::string error;  // set by solve_parallel when a slot threw; empty otherwise
};

enum class Pricing { devex, dantzig };

struct SolverOptions {
  // Tolerances are applied relative to the largest objective coefficient /
  // row right-hand side so model scaling does not change the outcome class.
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-7;
  long max_iterations = 0;  // 0 -> 10 * (rows + cols)
  Pricing pricing = Pricing::devex;
  bool bland_fallback = true;
  int refactor_interval = 100;
};

/// Two-phase bounded-variable revised simplex with reference-framework devex
/// pricing (Dantzig selectable) and a Bland fallback under prolonged
/// degeneracy. Deterministic for identical inputs and options.
SolveResult solve(const LinearProgram& lp, const SolverOptions& opts = {});

/// Positionally aligned results; each slot identical to a sequential solve.
/// threads = 0 picks the hardware concurrency.
std::vector<SolveResult> solve_parallel(const std::vector<LinearProgram>& lps,
                                        const SolverOptions& opts = {}, int threads = 0);

/// Free-format MPS with deterministically mangled 8-character names and a
/// sidecar `<path>.names.csv` mapping mangled to original names.
void export_mps(const LinearProgram& lp, const std::string& path);

}  // namespace repsel::lp
