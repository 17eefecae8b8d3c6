#include "repsel/cem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

namespace repsel::cem {

using dm::ResourceKind;
using dm::SystemSpec;
using lp::Sense;

CemVariant CemVariant::full() { return CemVariant{}; }

CemVariant CemVariant::reduced(std::vector<int> periods, std::vector<int> weights, int q) {
  CemVariant v;
  v.kind = Kind::reduced;
  v.periods = std::move(periods);
  v.weights = std::move(weights);
  v.q = q;
  return v;
}

CemVariant CemVariant::single_period(int index, int q) {
  CemVariant v;
  v.kind = Kind::single_period;
  v.period_index = index;
  v.q = q;
  return v;
}

CemVariant CemVariant::dispatch_only(CapacityPlan caps) {
  CemVariant v;
  v.kind = Kind::dispatch_only;
  v.capacities = std::move(caps);
  return v;
}

double CemSolution::total_nse() const {
  double s = 0.0;
  for (const auto& [zone, series] : nse)
    for (int t = 0; t < hours; ++t) s += weights[t] * series[t];
  return s;
}

double CemSolution::annual_generation(const std::string& resource_id) const {
  auto it = dispatch.find(resource_id);
  if (it == dispatch.end() || it->second.power.empty()) return 0.0;
  double s = 0.0;
  for (int t = 0; t < hours; ++t) s += weights[t] * it->second.power[t];
  return s;
}

double VerifyReport::max() const {
  return std::max({max_balance_residual, max_soc_residual, max_flow_residual,
                   max_flow_bound_violation, max_negativity});
}

namespace {

struct TimeStructure {
  int T = 0;
  std::vector<int> src_hour;     // model hour -> source hour in the spec series
  std::vector<int> block_start;  // per model hour
  std::vector<int> block_end;    // per model hour, inclusive
  std::vector<int> weights;

  int prev(int t) const { return t == block_start[t] ? block_end[t] : t - 1; }
};

TimeStructure make_time_structure(const SystemSpec& spec, const CemVariant& var) {
  TimeStructure ts;
  auto add_block = [&](int src_start, int len, int w) {
    int start = ts.T;
    for (int h = 0; h < len; ++h) {
      ts.src_hour.push_back(src_start + h);
      ts.block_start.push_back(start);
      ts.block_end.push_back(start + len - 1);
      ts.weights.push_back(w);
    }
    ts.T += len;
  };
  switch (var.kind) {
    case CemVariant::Kind::full:
    case CemVariant::Kind::dispatch_only:
      add_block(0, spec.hours, 1);
      break;
    case CemVariant::Kind::single_period: {
      if (var.q < 1 || var.q > spec.hours)
        throw ConfigError("single_period: q out of range");
      int p = spec.hours / var.q;
      if (var.period_index < 0 || var.period_index >= p)
        throw ConfigError("single_period: index " + std::to_string(var.period_index) +
                          " out of range, p = " + std::to_string(p));
      add_block(var.period_index * var.q, var.q, 1);
      break;
    }
    case CemVariant::Kind::reduced: {
      if (var.q < 1 || var.q > spec.hours) throw ConfigError("reduced: q out of range");
      const int p = spec.hours / var.q;
      if (var.periods.empty() || var.periods.size() != var.weights.size())
        throw ConfigError("reduced: periods and weights must be non-empty and equal length");
      bool covers_whole = static_cast<int>(var.periods.size()) == p;
      long wsum = 0;
      for (size_t j = 0; j < var.periods.size(); ++j) {
        if (var.periods[j] < 0 || var.periods[j] >= p)
          throw ConfigError("reduced: period index " + std::to_string(var.periods[j]) +
                            " out of range, p = " + std::to_string(p));
        if (var.weights[j] < 1) throw ConfigError("reduced: weights must be >= 1");
        if (var.periods[j] != static_cast<int>(j)) covers_whole = false;
        wsum += var.weights[j];
      }
      // a spec already restricted to its representatives carries the original
      // year's weights; only slices of a larger spec must account for all of it
      if (!covers_whole && wsum != p)
        throw ConfigError("reduced: weights sum to " + std::to_string(wsum) +
                          ", expected p = " + std::to_string(p));
      for (size_t j = 0; j < var.periods.size(); ++j)
        add_block(var.periods[j] * var.q, var.q, var.weights[j]);
      break;
    }
  }
  return ts;
}

std::string idx_name(const char* tag, const std::string& id, int t) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s[%s][%d]", tag, id.c_str(), t);
  return buf;
}

std::string cap_name(const char* tag, const std::string& id) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s[%s]", tag, id.c_str());
  return buf;
}

class Builder {
 public:
  Builder(const SystemSpec& spec, const CemVariant& var, const BuildOptions& opts)
      : spec_(spec), ts_(make_time_structure(spec, var)) {
    fixed_ = var.kind == CemVariant::Kind::dispatch_only;
    const int R = static_cast<int>(spec.resources.size());
    const int Z = static_cast<int>(spec.zones.size());
    const int L = static_cast<int>(spec.lines.size());
    const int T = ts_.T;

    double invest_scale = 1.0;
    if (opts.scale_invest_per_period && var.kind == CemVariant::Kind::single_period)
      invest_scale = static_cast<double>(var.q) / spec.hours;

    cap_size_.assign(R, -1);
    cap_energy_.assign(R, -1);
    cap_charge_.assign(R, -1);
    fix_size_.assign(R, 0.0);
    fix_energy_.assign(R, 0.0);
    fix_charge_.assign(R, 0.0);

    double invest_constant = 0.0;
    for (int r = 0; r < R; ++r) {
      const auto& res = spec.resources[r];
      const auto& c = res.costs;
      const bool storage = res.kind == ResourceKind::storage;
      if (fixed_) {
        auto it = var.capacities.by_resource.find(res.id);
        if (it == var.capacities.by_resource.end())
          throw ConfigError("dispatch_only: no capacity given for resource " + res.id);
        fix_size_[r] = it->second.size;
        fix_energy_[r] = it->second.energy;
        fix_charge_[r] = it->second.charge;
        invest_constant += fix_size_[r] * (c.invest_power + c.fixed_om) +
                           fix_energy_[r] * c.invest_energy * (1.0 + c.degradation) +
                           fix_charge_[r] * (c.invest_charge + c.fixed_om_charge);
        continue;
      }
      cap_size_[r] = lp_.add_variable(cap_name("size", res.id), 0.0, res.ops.max_capacity,
                                      invest_scale * (c.invest_power + c.fixed_om));
      if (storage) {
        cap_energy_[r] =
            lp_.add_variable(cap_name("energy", res.id), 0.0, kInf,
                             invest_scale * c.invest_energy * (1.0 + c.degradation));
        cap_charge_[r] = lp_.add_variable(cap_name("charge", res.id), 0.0, kInf,
                                          invest_scale * (c.invest_charge + c.fixed_om_charge));
      }
    }
    lp_.set_objective_constant(fixed_ ? invest_constant : 0.0);

    pi_.assign(static_cast<size_t>(R) * T, -1);
    v_.assign(static_cast<size_t>(R) * T, -1);
    u_.assign(static_cast<size_t>(R) * T, -1);
    n_.assign(static_cast<size_t>(R) * T, -1);
    chg_.assign(static_cast<size_t>(R) * T, -1);
    dis_.assign(static_cast<size_t>(R) * T, -1);
    soc_.assign(static_cast<size_t>(R) * T, -1);
    chi_.assign(static_cast<size_t>(Z) * T, -1);
    theta_.assign(static_cast<size_t>(Z) * T, -1);
    flow_.assign(static_cast<size_t>(L) * T, -1);

    for (int t = 0; t < T; ++t) {
      const double w = ts_.weights[t];
      for (int r = 0; r < R; ++r) {
        const auto& res = spec.resources[r];
        const auto& c = res.costs;
        switch (res.kind) {
          case ResourceKind::thermal: {
            pi_[rt(r, t)] = lp_.add_variable(idx_name("pi", res.id, t), 0.0, kInf,
                                             w * (c.var_om + c.fuel));
            double unit_ub = fixed_ ? fix_size_[r] / res.ops.unit_size : kInf;
            v_[rt(r, t)] = lp_.add_variable(idx_name("v", res.id, t), 0.0, unit_ub, 0.0);
            u_[rt(r, t)] = lp_.add_variable(idx_name("u", res.id, t), 0.0, unit_ub, 0.0);
            n_[rt(r, t)] =
                lp_.add_variable(idx_name("n", res.id, t), 0.0, unit_ub, w * c.startup);
            break;
          }
          case ResourceKind::vre: {
            double avail = spec.availability.at(res.availability_column)[ts_.src_hour[t]];
            double ub = fixed_ ? avail * fix_size_[r] : kInf;
            pi_[rt(r, t)] = lp_.add_variable(idx_name("pi", res.id, t), 0.0, ub,
                                             w * (c.var_om + c.fuel));
            break;
          }
          case ResourceKind::storage: {
            double chg_ub = fixed_ ? fix_charge_[r] : kInf;
            double soc_ub = fixed_ ? res.ops.depth_of_discharge * fix_energy_[r] : kInf;
            chg_[rt(r, t)] =
                lp_.add_variable(idx_name("chg", res.id, t), 0.0, chg_ub, w * c.var_om_charge);
            dis_[rt(r, t)] = lp_.add_variable(idx_name("dis", res.id, t), 0.0, kInf,
                                              w * (c.var_om + c.fuel));
            soc_[rt(r, t)] = lp_.add_variable(idx_name("soc", res.id, t), 0.0, soc_ub, 0.0);
            break;
          }
        }
      }
      for (int z = 0; z < Z; ++z) {
        chi_[zt(z, t)] = lp_.add_variable(idx_name("chi", spec.zones[z].id, t), 0.0, kInf,
                                          w * spec.voll.at(spec.zones[z].id));
        // reference bus angle pinned to zero
        double lo = z == 0 ? 0.0 : -kInf;
        double hi = z == 0 ? 0.0 : kInf;
        theta_[zt(z, t)] = lp_.add_variable(idx_name("theta", spec.zones[z].id, t), lo, hi, 0.0);
      }
      for (int l = 0; l < L; ++l) {
        const auto& line = spec.lines[l];
        flow_[lt(l, t)] = lp_.add_variable(idx_name("flow", line.id(), t), -line.max_flow,
                                           line.max_flow, 0.0);
      }
    }

    build_rows();
  }

  lp::LinearProgram take_lp() { return std::move(lp_); }

  CemSolution unpack(const lp::SolveResult& result, const CemVariant& var) const {
    CemSolution sol;
    sol.status = result.status;
    sol.objective = result.objective;
    sol.hours = ts_.T;
    sol.weights = ts_.weights;
    const auto& x = result.x;
    auto series = [&](const std::vector<int>& idx, int r) {
      std::vector<double> out(ts_.T, 0.0);
      for (int t = 0; t < ts_.T; ++t) {
        int j = idx[static_cast<size_t>(r) * ts_.T + t];
        if (j >= 0) out[t] = x[j];
      }
      return out;
    };
    for (size_t ri = 0; ri < spec_.resources.size(); ++ri) {
      const int r = static_cast<int>(ri);
      const auto& res = spec_.resources[ri];
      CemSolution::ResourceDispatch d;
      if (res.kind != ResourceKind::storage) d.power = series(pi_, r);
      if (res.kind == ResourceKind::thermal) {
        d.commit = series(v_, r);
        d.startup = series(u_, r);
        d.shutdown = series(n_, r);
      }
      if (res.kind == ResourceKind::storage) {
        d.charge = series(chg_, r);
        d.discharge = series(dis_, r);
        d.soc = series(soc_, r);
      }
      sol.dispatch.emplace(res.id, std::move(d));
      CapacityPlan::Caps caps;
      if (fixed_) {
        caps = var.capacities.by_resource.at(res.id);
      } else {
        caps.size = x[cap_size_[r]];
        caps.energy = cap_energy_[r] >= 0 ? x[cap_energy_[r]] : 0.0;
        caps.charge = cap_charge_[r] >= 0 ? x[cap_charge_[r]] : 0.0;
      }
      sol.capacities.by_resource.emplace(res.id, caps);
    }
    for (size_t z = 0; z < spec_.zones.size(); ++z) {
      sol.nse.emplace(spec_.zones[z].id, series(chi_, static_cast<int>(z)));
      sol.angle.emplace(spec_.zones[z].id, series(theta_, static_cast<int>(z)));
    }
    for (size_t l = 0; l < spec_.lines.size(); ++l)
      sol.flow.emplace(spec_.lines[l].id(), series(flow_, static_cast<int>(l)));
    return sol;
  }

 private:
  size_t rt(int r, int t) const { return static_cast<size_t>(r) * ts_.T + t; }
  size_t zt(int z, int t) const { return static_cast<size_t>(z) * ts_.T + t; }
  size_t lt(int l, int t) const { return static_cast<size_t>(l) * ts_.T + t; }

  void build_rows() {
    const int R = static_cast<int>(spec_.resources.size());
    const int Z = static_cast<int>(spec_.zones.size());
    const int L = static_cast<int>(spec_.lines.size());
    const int T = ts_.T;

    for (int t = 0; t < T; ++t) {
      const int tp = ts_.prev(t);
      // hourly balance per zone: generation + net storage + shed + imports
      // - exports = load
      for (int z = 0; z < Z; ++z) {
        std::vector<lp::Entry> e;
        for (int r = 0; r < R; ++r) {
          if (spec_.resources[r].zone != spec_.zones[z].id) continue;
          if (spec_.resources[r].kind == ResourceKind::storage) {
            e.push_back({dis_[rt(r, t)], 1.0});
            e.push_back({chg_[rt(r, t)], -1.0});
          } else {
            e.push_back({pi_[rt(r, t)], 1.0});
          }
        }
        e.push_back({chi_[zt(z, t)], 1.0});
        for (int l = 0; l < L; ++l) {
          if (spec_.lines[l].from_zone == spec_.zones[z].id)
            e.push_back({flow_[lt(l, t)], -1.0});
          if (spec_.lines[l].to_zone == spec_.zones[z].id) e.push_back({flow_[lt(l, t)], 1.0});
        }
        lp_.add_constraint(idx_name("balance", spec_.zones[z].id, t), Sense::eq,
                           spec_.load[z][ts_.src_hour[t]], std::move(e));
      }

      for (int r = 0; r < R; ++r) {
        const auto& res = spec_.resources[r];
        const auto& ops = res.ops;
        switch (res.kind) {
          case ResourceKind::vre: {
            if (!fixed_) {
              double avail = spec_.availability.at(res.availability_column)[ts_.src_hour[t]];
              lp_.add_constraint(idx_name("avail", res.id, t), Sense::le, 0.0,
                                 {{pi_[rt(r, t)], 1.0}, {cap_size_[r], -avail}});
            }
            break;
          }
          case ResourceKind::thermal: {
            const double inv_unit = 1.0 / ops.unit_size;
            if (!fixed_) {
              lp_.add_constraint(idx_name("vcap", res.id, t), Sense::le, 0.0,
                                 {{v_[rt(r, t)], 1.0}, {cap_size_[r], -inv_unit}});
              lp_.add_constraint(idx_name("ucap", res.id, t), Sense::le, 0.0,
                                 {{u_[rt(r, t)], 1.0}, {cap_size_[r], -inv_unit}});
              lp_.add_constraint(idx_name("ncap", res.id, t), Sense::le, 0.0,
                                 {{n_[rt(r, t)], 1.0}, {cap_size_[r], -inv_unit}});
            }
            lp_.add_constraint(idx_name("cbal", res.id, t), Sense::eq, 0.0,
                               {{v_[rt(r, t)], 1.0},
                                {v_[rt(r, tp)], -1.0},
                                {u_[rt(r, t)], -1.0},
                                {n_[rt(r, t)], 1.0}});
            // committed-unit power window
            lp_.add_constraint(idx_name("pmin", res.id, t), Sense::ge, 0.0,
                               {{pi_[rt(r, t)], 1.0},
                                {v_[rt(r, t)], -ops.rho_min * ops.unit_size}});
            lp_.add_constraint(idx_name("pmax", res.id, t), Sense::le, 0.0,
                               {{pi_[rt(r, t)], 1.0},
                                {v_[rt(r, t)], -ops.rho_max * ops.unit_size}});
            if (fixed_) {
              lp_.add_constraint(idx_name("rup", res.id, t), Sense::le,
                                 ops.ramp_up * fix_size_[r],
                                 {{pi_[rt(r, t)], 1.0}, {pi_[rt(r, tp)], -1.0}});
              lp_.add_constraint(idx_name("rdn", res.id, t), Sense::le,
                                 ops.ramp_down * fix_size_[r],
                                 {{pi_[rt(r, tp)], 1.0}, {pi_[rt(r, t)], -1.0}});
            } else {
              lp_.add_constraint(idx_name("rup", res.id, t), Sense::le, 0.0,
                                 {{pi_[rt(r, t)], 1.0},
                                  {pi_[rt(r, tp)], -1.0},
                                  {cap_size_[r], -ops.ramp_up}});
              lp_.add_constraint(idx_name("rdn", res.id, t), Sense::le, 0.0,
                                 {{pi_[rt(r, tp)], 1.0},
                                  {pi_[rt(r, t)], -1.0},
                                  {cap_size_[r], -ops.ramp_down}});
            }
            break;
          }
          case ResourceKind::storage: {
            // state-of-charge recursion, wrapping to the block's last hour
            lp_.add_constraint(idx_name("sbal", res.id, t), Sense::eq, 0.0,
                               {{soc_[rt(r, t)], 1.0},
                                {soc_[rt(r, tp)], -1.0},
                                {dis_[rt(r, t)], 1.0 / ops.eta_discharge},
                                {chg_[rt(r, t)], -ops.eta_charge}});
            if (!fixed_) {
              lp_.add_constraint(idx_name("scap", res.id, t), Sense::le, 0.0,
                                 {{soc_[rt(r, t)], 1.0},
                                  {cap_energy_[r], -ops.depth_of_discharge}});
              lp_.add_constraint(idx_name("ccap", res.id, t), Sense::le, 0.0,
                                 {{chg_[rt(r, t)], 1.0}, {cap_charge_[r], -1.0}});
              lp_.add_constraint(idx_name("cdcap", res.id, t), Sense::le, 0.0,
                                 {{chg_[rt(r, t)], 1.0},
                                  {dis_[rt(r, t)], 1.0},
                                  {cap_charge_[r], -1.0}});
            } else {
              lp_.add_constraint(idx_name("cdcap", res.id, t), Sense::le, fix_charge_[r],
                                 {{chg_[rt(r, t)], 1.0}, {dis_[rt(r, t)], 1.0}});
            }
            lp_.add_constraint(idx_name("davail", res.id, t), Sense::le, 0.0,
                               {{dis_[rt(r, t)], 1.0}, {soc_[rt(r, tp)], -1.0}});
            break;
          }
        }
      }

      for (int l = 0; l < L; ++l) {
        const auto& line = spec_.lines[l];
        const int zf = spec_.zone_index(line.from_zone);
        const int zto = spec_.zone_index(line.to_zone);
        lp_.add_constraint(idx_name("dcflow", line.id(), t), Sense::eq, 0.0,
                           {{flow_[lt(l, t)], 1.0},
                            {theta_[zt(zf, t)], -line.susceptance},
                            {theta_[zt(zto, t)], line.susceptance}});
        lp_.add_constraint(idx_name("angmin", line.id(), t), Sense::ge, spec_.theta_min,
                           {{theta_[zt(zf, t)], 1.0}, {theta_[zt(zto, t)], -1.0}});
        lp_.add_constraint(idx_name("angmax", line.id(), t), Sense::le, spec_.theta_max,
                           {{theta_[zt(zf, t)], 1.0}, {theta_[zt(zto, t)], -1.0}});
      }
    }
  }

  const SystemSpec& spec_;
  TimeStructure ts_;
  bool fixed_ = false;
  std::vector<int> cap_size_, cap_energy_, cap_charge_;
  std::vector<double> fix_size_, fix_energy_, fix_charge_;
  std::vector<int> pi_, v_, u_, n_, chg_, dis_, soc_, chi_, theta_, flow_;
  lp::LinearProgram lp_;
};

}  // namespace

lp::LinearProgram build(const SystemSpec& spec, const CemVariant& variant,
                        const BuildOptions& opts) {
  Builder b(spec, variant, opts);
  return b.take_lp();
}

CemSolution solve_variant(const SystemSpec& spec, const CemVariant& variant,
                          const lp::SolverOptions& solver_opts, const BuildOptions& build_opts) {
  spec.validate();
  Builder b(spec, variant, build_opts);
  lp::LinearProgram prog = b.take_lp();
  lp::SolveResult result = lp::solve(prog, solver_opts);
  return b.unpack(result, variant);
}

std::vector<CemSolution> solve_periods(const SystemSpec& spec, int q,
                                       const lp::SolverOptions& solver_opts,
                                       const BuildOptions& build_opts, int threads) {
  spec.validate();
  if (q < 1 || q > spec.hours) throw ConfigError("solve_periods: q out of range");
  const int p = spec.hours / q;
  std::vector<Builder> builders;
  builders.reserve(p);
  std::vector<lp::LinearProgram> lps;
  lps.reserve(p);
  std::vector<CemVariant> variants;
  variants.reserve(p);
  for (int i = 0; i < p; ++i) {
    variants.push_back(CemVariant::single_period(i, q));
    builders.emplace_back(spec, variants.back(), build_opts);
    lps.push_back(builders.back().take_lp());
  }
  auto results = lp::solve_parallel(lps, solver_opts, threads);
  std::vector<CemSolution> sols;
  sols.reserve(p);
  for (int i = 0; i < p; ++i) {
    if (!results[i].error.empty())
      throw SolverError("period " + std::to_string(i) + ": " + results[i].error);
    sols.push_back(builders[i].unpack(results[i], variants[i]));
  }
  return sols;
}

dm::SeriesBundle extract_output_features(const SystemSpec& spec, const CemSolution& sol) {
  if (sol.status != lp::Status::optimal)
    throw SolverError("extract_output_features: solution is not optimal");
  dm::SeriesBundle bundle;
  std::vector<const dm::Resource*> by_id;
  for (const auto& r : spec.resources) by_id.push_back(&r);
  std::sort(by_id.begin(), by_id.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });

  for (const auto* r : by_id) {
    const auto& d = sol.dispatch.at(r->id);
    std::vector<double> power = d.power;
    if (power.empty()) power.assign(sol.hours, 0.0);  // storage carries no generator output
    bundle.push_back({dm::SeriesKind::power, r->id, std::move(power)});
  }
  for (const auto* r : by_id)
    if (r->kind == ResourceKind::storage)
      bundle.push_back({dm::SeriesKind::charge, r->id, sol.dispatch.at(r->id).charge});
  for (const auto* r : by_id)
    if (r->kind == ResourceKind::storage)
      bundle.push_back({dm::SeriesKind::discharge, r->id, sol.dispatch.at(r->id).discharge});

  std::vector<std::string> zone_ids;
  for (const auto& z : spec.zones) zone_ids.push_back(z.id);
  std::sort(zone_ids.begin(), zone_ids.end());
  for (const auto& z : zone_ids) bundle.push_back({dm::SeriesKind::nse, z, sol.nse.at(z)});

  std::vector<std::string> line_ids;
  for (const auto& l : spec.lines) line_ids.push_back(l.id());
  std::sort(line_ids.begin(), line_ids.end());
  for (const auto& l : line_ids) bundle.push_back({dm::SeriesKind::flow, l, sol.flow.at(l)});
  return bundle;
}

VerifyReport verify_solution(const SystemSpec& spec, const CemSolution& sol) {
  VerifyReport rep;
  const int T = sol.hours;
  // recover the period blocks from weight runs; equal adjacent weights cannot
  // be distinguished, which only merges blocks and weakens no check here
  std::vector<int> block_start(T), block_end(T);
  {
    int start = 0;
    for (int t = 0; t < T; ++t) {
      if (t > 0 && sol.weights[t] != sol.weights[t - 1]) start = t;
      block_start[t] = start;
    }
    int end = T - 1;
    for (int t = T - 1; t >= 0; --t) {
      if (t < T - 1 && sol.weights[t] != sol.weights[t + 1]) end = t;
      block_end[t] = end;
    }
  }
  auto prev = [&](int t) { return t == block_start[t] ? block_end[t] : t - 1; };

  for (size_t z = 0; z < spec.zones.size(); ++z) {
    const auto& zid = spec.zones[z].id;
    const auto& chi = sol.nse.at(zid);
    for (int t = 0; t < T && t < spec.hours; ++t) {
      double L = spec.load[z][t];
      double acc = chi[t];
      for (const auto& r : spec.resources) {
        if (r.zone != zid) continue;
        const auto& d = sol.dispatch.at(r.id);
        if (r.kind == ResourceKind::storage)
          acc += d.discharge[t] - d.charge[t];
        else
          acc += d.power[t];
      }
      for (const auto& l : spec.lines) {
        if (l.from_zone == zid) acc -= sol.flow.at(l.id())[t];
        if (l.to_zone == zid) acc += sol.flow.at(l.id())[t];
      }
      double resid = std::abs(acc - L) / std::max(1.0, std::abs(L));
      rep.max_balance_residual = std::max(rep.max_balance_residual, resid);
      rep.max_negativity = std::max(rep.max_negativity, -chi[t]);
    }
  }
  for (const auto& r : spec.resources) {
    const auto& d = sol.dispatch.at(r.id);
    for (int t = 0; t < T; ++t) {
      if (!d.power.empty()) rep.max_negativity = std::max(rep.max_negativity, -d.power[t]);
      if (r.kind == ResourceKind::storage) {
        rep.max_negativity =
            std::max({rep.max_negativity, -d.charge[t], -d.discharge[t], -d.soc[t]});
        double expect = d.soc[prev(t)] - d.discharge[t] / r.ops.eta_discharge +
                        r.ops.eta_charge * d.charge[t];
        double scale = std::max(1.0, std::abs(d.soc[t]));
        rep.max_soc_residual =
            std::max(rep.max_soc_residual, std::abs(d.soc[t] - expect) / scale);
      }
    }
  }
  for (const auto& l : spec.lines) {
    const auto& f = sol.flow.at(l.id());
    const auto& th_f = sol.angle.at(l.from_zone);
    const auto& th_t = sol.angle.at(l.to_zone);
    for (int t = 0; t < T; ++t) {
      double expect = l.susceptance * (th_f[t] - th_t[t]);
      rep.max_flow_residual = std::max(rep.max_flow_residual,
                                       std::abs(f[t] - expect) / std::max(1.0, std::abs(f[t])));
      rep.max_flow_bound_violation =
          std::max(rep.max_flow_bound_violation, std::abs(f[t]) - l.max_flow);
    }
  }
  rep.max_flow_bound_violation = std::max(rep.max_flow_bound_violation, 0.0);
  return rep;
}

}  // namespace repsel::cem
