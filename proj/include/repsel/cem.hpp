#pragma once

#include <map>
#include <string>
#include <vector>

#include "repsel/datamodel.hpp"
#include "repsel/lp.hpp"

namespace repsel::cem {

struct CapacityPlan {
  struct Caps {
    double size = 0.0;    // MW
    double energy = 0.0;  // MWh, storage only
    double charge = 0.0;  // MW, storage only
  };
  std::map<std::string, Caps> by_resource;
};

/// Which temporal structure and investment treatment the LP gets.
struct CemVariant {
  enum class Kind { full, reduced, single_period, dispatch_only };
  Kind kind = Kind::full;
  std::vector<int> periods;  // reduced: period indices into floor(hours/q)
  std::vector<int> weights;  // reduced: one positive weight per period
  int q = 0;                 // reduced / single_period
  int period_index = 0;      // single_period
  CapacityPlan capacities;   // dispatch_only

  static CemVariant full();
  static CemVariant reduced(std::vector<int> periods, std::vector<int> weights, int q);
  static CemVariant single_period(int index, int q);
  static CemVariant dispatch_only(CapacityPlan caps);
};

struct BuildOptions {
  bool scale_invest_per_period = false;  // single_period only: scale invest by q/hours
};

struct CemSolution {
  lp::Status status = lp::Status::iteration_limit;
  double objective = 0.0;
  int hours = 0;
  std::vector<int> weights;  // per modeled hour

  struct ResourceDispatch {
    std::vector<double> power;      // thermal + vre
    std::vector<double> commit, startup, shutdown;  // thermal
    std::vector<double> charge, discharge, soc;     // storage
  };
  std::map<std::string, ResourceDispatch> dispatch;   // by resource id
  std::map<std::string, std::vector<double>> nse;     // by zone id
  std::map<std::string, std::vector<double>> angle;   // by zone id
  std::map<std::string, std::vector<double>> flow;    // by line id
  CapacityPlan capacities;

  double total_nse() const;
  double annual_generation(const std::string& resource_id) const;  // sum of w_t * power
};

/// Assembles the LP for a variant. Reduced variants slice the passed spec's
/// series at the given period indices; when the periods cover the whole spec
/// (a pre-restricted spec) any positive weights are accepted, otherwise the
/// weights must sum to floor(hours/q).
lp::LinearProgram build(const dm::SystemSpec& spec, const CemVariant& variant,
                        const BuildOptions& opts = {});

CemSolution solve_variant(const dm::SystemSpec& spec, const CemVariant& variant,
                          const lp::SolverOptions& solver_opts = {},
                          const BuildOptions& build_opts = {});

/// One single-period solve per disjoint period, run through solve_parallel.
std::vector<CemSolution> solve_periods(const dm::SystemSpec& spec, int q,
                                       const lp::SolverOptions& solver_opts = {},
                                       const BuildOptions& build_opts = {}, int threads = 0);

/// The solved dispatch series in datamodel column order: power per resource,
/// charge/discharge per storage resource, non-served energy per zone, flow
/// per line. Requires an optimal solution.
dm::SeriesBundle extract_output_features(const dm::SystemSpec& spec, const CemSolution& sol);

struct VerifyReport {
  double max_balance_residual = 0.0;
  double max_soc_residual = 0.0;
  double max_flow_residual = 0.0;
  double max_flow_bound_violation = 0.0;
  double max_negativity = 0.0;
  double max() const;
};
/// Recomputes the physical invariants of a solution from its series.
VerifyReport verify_solution(const dm::SystemSpec& spec, const CemSolution& sol);

void save_solution(const std::string& dir, const dm::SystemSpec& spec, const CemSolution& sol,
                   const std::string& config_hash);
CemSolution load_solution(const std::string& dir, const dm::SystemSpec& spec);
CapacityPlan load_capacity_plan(const std::string& dir);

}  // namespace repsel::cem
