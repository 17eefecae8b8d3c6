#include "repsel/datamodel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "repsel/csv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace repsel::dm {

const char* to_string(ResourceKind k) {
  switch (k) {
    case ResourceKind::thermal: return "thermal";
    case ResourceKind::vre: return "vre";
    case ResourceKind::storage: return "storage";
  }
  return "?";
}

ResourceKind resource_kind_from_string(const std::string& s) {
  if (s == "thermal") return ResourceKind::thermal;
  if (s == "vre") return ResourceKind::vre;
  if (s == "storage") return ResourceKind::storage;
  throw ConfigError("unknown resource kind: '" + s + "'");
}

const char* to_string(SeriesKind k) {
  switch (k) {
    case SeriesKind::load: return "load";
    case SeriesKind::avail: return "avail";
    case SeriesKind::power: return "power";
    case SeriesKind::charge: return "charge";
    case SeriesKind::discharge: return "discharge";
    case SeriesKind::nse: return "nse";
    case SeriesKind::flow: return "flow";
  }
  return "?";
}

int SystemSpec::zone_index(const std::string& id) const {
  for (size_t i = 0; i < zones.size(); ++i)
    if (zones[i].id == id) return static_cast<int>(i);
  return -1;
}

const Resource* SystemSpec::find_resource(const std::string& id) const {
  for (const auto& r : resources)
    if (r.id == id) return &r;
  return nullptr;
}

static void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

void SystemSpec::validate() const {
  require(hours >= 1, "hours must be >= 1");
  require(!zones.empty(), "at least one zone is required");
  std::set<std::string> zone_ids;
  for (const auto& z : zones) {
    require(!z.id.empty(), "zone with empty id");
    require(zone_ids.insert(z.id).second, "duplicate zone id: " + z.id);
  }
  std::set<std::pair<std::string, std::string>> line_pairs;
  for (const auto& l : lines) {
    require(l.from_zone != l.to_zone, "line " + l.id() + ": from and to zones equal");
    require(zone_index(l.from_zone) >= 0, "line " + l.id() + ": unknown zone " + l.from_zone);
    require(zone_index(l.to_zone) >= 0, "line " + l.id() + ": unknown zone " + l.to_zone);
    require(l.susceptance > 0, "line " + l.id() + ": susceptance must be > 0");
    require(l.max_flow >= 0, "line " + l.id() + ": max_flow must be >= 0");
    auto key = std::minmax(l.from_zone, l.to_zone);
    require(line_pairs.insert({key.first, key.second}).second,
            "more than one line between " + l.from_zone + " and " + l.to_zone);
  }
  std::set<std::string> res_ids;
  for (const auto& r : resources) {
    require(!r.id.empty(), "resource with empty id");
    require(res_ids.insert(r.id).second, "duplicate resource id: " + r.id);
    require(zone_index(r.zone) >= 0, "resource " + r.id + ": unknown zone " + r.zone);
    const auto& c = r.costs;
    for (double v : {c.invest_power, c.invest_energy, c.invest_charge, c.degradation,
                     c.fixed_om, c.fixed_om_charge, c.var_om, c.fuel, c.var_om_charge,
                     c.startup})
      require(v >= 0 && std::isfinite(v), "resource " + r.id + ": negative or non-finite cost");
    if (r.kind != ResourceKind::storage) {
      require(c.invest_energy == 0 && c.invest_charge == 0 && c.degradation == 0 &&
                  c.fixed_om_charge == 0 && c.var_om_charge == 0,
              "resource " + r.id + ": storage-only cost fields must be zero");
    }
    if (r.kind != ResourceKind::thermal)
      require(c.startup == 0, "resource " + r.id + ": startup cost on non-thermal resource");
    const auto& o = r.ops;
    require(0 <= o.rho_min && o.rho_min <= o.rho_max && o.rho_max <= 1,
            "resource " + r.id + ": need 0 <= rho_min <= rho_max <= 1");
    require(o.eta_charge > 0 && o.eta_charge <= 1 && o.eta_discharge > 0 && o.eta_discharge <= 1,
            "resource " + r.id + ": efficiencies must be in (0,1]");
    require(o.depth_of_discharge > 0 && o.depth_of_discharge <= 1,
            "resource " + r.id + ": depth_of_discharge must be in (0,1]");
    if (r.kind == ResourceKind::thermal)
      require(o.unit_size > 0, "resource " + r.id + ": unit_size must be > 0");
    if (r.kind == ResourceKind::vre) {
      require(!r.availability_column.empty(),
              "resource " + r.id + ": vre resource needs availability_column");
      auto it = availability.find(r.availability_column);
      require(it != availability.end(), "resource " + r.id +
                                            ": availability column '" + r.availability_column +
                                            "' not present in the availability table");
    } else {
      require(r.availability_column.empty(),
              "resource " + r.id + ": availability_column only applies to vre resources");
    }
  }
  require(load.size() == zones.size(), "load table must cover every zone");
  for (size_t z = 0; z < zones.size(); ++z) {
    require(static_cast<int>(load[z].size()) == hours,
            "load series for zone " + zones[z].id + " has " + std::to_string(load[z].size()) +
                " rows, expected " + std::to_string(hours));
    for (int t = 0; t < hours; ++t)
      require(load[z][t] >= 0 && std::isfinite(load[z][t]),
              "load for zone " + zones[z].id + ", hour " + std::to_string(t + 1) +
                  ": negative or non-finite value");
  }
  for (const auto& [col, vals] : availability) {
    require(static_cast<int>(vals.size()) == hours,
            "availability column " + col + " has " + std::to_string(vals.size()) +
                " rows, expected " + std::to_string(hours));
    for (int t = 0; t < hours; ++t)
      require(vals[t] >= 0 && vals[t] <= 1,
              "availability " + col + ", hour " + std::to_string(t + 1) + ": value " +
                  fmt_double(vals[t]) + " outside [0,1]");
  }
  for (const auto& z : zones) {
    auto it = voll.find(z.id);
    require(it != voll.end(), "voll missing for zone " + z.id);
    require(it->second >= 0, "voll for zone " + z.id + " must be >= 0");
  }
  require(theta_min <= theta_max, "theta_bounds out of order");
}

// ---------------------------------------------------------------------------
// Config ingestion

namespace {

const json& get_req(const json& j, const std::string& key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(ctx + ": missing key '" + key + "'");
  return *it;
}

double get_num(const json& j, const std::string& key, const std::string& ctx, double dflt) {
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_number()) throw ConfigError(ctx + ": '" + key + "' must be a number");
  return it->get<double>();
}

CostParams parse_costs(const json& j, const std::string& ctx) {
  CostParams c;
  c.invest_power = get_num(j, "invest_power", ctx, 0);
  c.invest_energy = get_num(j, "invest_energy", ctx, 0);
  c.invest_charge = get_num(j, "invest_charge", ctx, 0);
  c.degradation = get_num(j, "degradation", ctx, 0);
  c.fixed_om = get_num(j, "fixed_om", ctx, 0);
  c.fixed_om_charge = get_num(j, "fixed_om_charge", ctx, 0);
  c.var_om = get_num(j, "var_om", ctx, 0);
  c.fuel = get_num(j, "fuel", ctx, 0);
  c.var_om_charge = get_num(j, "var_om_charge", ctx, 0);
  c.startup = get_num(j, "startup", ctx, 0);
  return c;
}

OperationalParams parse_ops(const json& j, const std::string& ctx) {
  OperationalParams o;
  o.unit_size = get_num(j, "unit_size", ctx, 1.0);
  o.rho_min = get_num(j, "rho_min", ctx, 0.0);
  o.rho_max = get_num(j, "rho_max", ctx, 1.0);
  o.ramp_up = get_num(j, "ramp_up", ctx, 1.0);
  o.ramp_down = get_num(j, "ramp_down", ctx, 1.0);
  o.depth_of_discharge = get_num(j, "depth_of_discharge", ctx, 1.0);
  o.eta_charge = get_num(j, "eta_charge", ctx, 1.0);
  o.eta_discharge = get_num(j, "eta_discharge", ctx, 1.0);
  if (j.contains("max_capacity") && !j["max_capacity"].is_null())
    o.max_capacity = j["max_capacity"].get<double>();
  return o;
}

// Series CSV: first column `hour` (1-based), remaining columns `<kind>.<id>`.
void read_series_csv(const std::string& path, const std::string& kind, int hours,
                     std::map<std::string, std::vector<double>>& out) {
  auto t = csv::read_table(path);
  if (t.header.empty() || t.header[0] != "hour")
    throw ConfigError(path + ": first column must be 'hour'");
  if (static_cast<int>(t.n_rows()) != hours)
    throw ConfigError(path + ": has " + std::to_string(t.n_rows()) + " data rows, expected " +
                      std::to_string(hours));
  for (size_t r = 0; r < t.rows.size(); ++r) {
    if (t.rows[r][0] != static_cast<double>(r + 1))
      throw ConfigError(path + ": row " + std::to_string(r + 1) + ": hour column must be " +
                        std::to_string(r + 1));
  }
  const std::string prefix = kind + ".";
  for (size_t cidx = 1; cidx < t.header.size(); ++cidx) {
    const std::string& name = t.header[cidx];
    if (name.rfind(prefix, 0) != 0)
      throw ConfigError(path + ": column '" + name + "' must be named '" + prefix + "<id>'");
    std::string id = name.substr(prefix.size());
    if (out.count(id)) throw ConfigError(path + ": duplicate column '" + name + "'");
    std::vector<double> vals(hours);
    for (int r = 0; r < hours; ++r) vals[r] = t.rows[r][cidx];
    out.emplace(std::move(id), std::move(vals));
  }
}

}  // namespace

SystemSpec load_system(const std::string& config_path) {
  json j;
  try {
    j = json::parse(read_text_file(config_path));
  } catch (const json::exception& e) {
    throw ConfigError(config_path + ": JSON parse error: " + e.what());
  }
  const std::string ctx = config_path;
  SystemSpec spec;
  spec.hours = static_cast<int>(get_num(j, "hours", ctx, 8760));
  if (j.contains("theta_bounds")) {
    const auto& tb = j["theta_bounds"];
    if (!tb.is_array() || tb.size() != 2)
      throw ConfigError(ctx + ": theta_bounds must be [min, max]");
    spec.theta_min = tb[0].get<double>();
    spec.theta_max = tb[1].get<double>();
  }
  for (const auto& zj : get_req(j, "zones", ctx)) {
    Zone z;
    z.id = get_req(zj, "id", ctx + ": zone").get<std::string>();
    z.name = zj.value("name", z.id);
    spec.zones.push_back(std::move(z));
  }
  if (j.contains("lines")) {
    for (const auto& lj : j["lines"]) {
      Line l;
      l.from_zone = get_req(lj, "from", ctx + ": line").get<std::string>();
      l.to_zone = get_req(lj, "to", ctx + ": line").get<std::string>();
      l.susceptance = get_req(lj, "susceptance", ctx + ": line " + l.id()).get<double>();
      l.max_flow = get_req(lj, "max_flow", ctx + ": line " + l.id()).get<double>();
      spec.lines.push_back(std::move(l));
    }
  }
  for (const auto& rj : get_req(j, "resources", ctx)) {
    Resource r;
    r.id = get_req(rj, "id", ctx + ": resource").get<std::string>();
    const std::string rctx = ctx + ": resource " + r.id;
    r.kind = resource_kind_from_string(get_req(rj, "kind", rctx).get<std::string>());
    r.zone = get_req(rj, "zone", rctx).get<std::string>();
    if (rj.contains("costs")) r.costs = parse_costs(rj["costs"], rctx);
    if (rj.contains("ops")) r.ops = parse_ops(rj["ops"], rctx);
    r.availability_column = rj.value("availability_column", "");
    spec.resources.push_back(std::move(r));
  }
  const auto& vj = get_req(j, "voll", ctx);
  if (vj.is_number()) {
    for (const auto& z : spec.zones) spec.voll[z.id] = vj.get<double>();
  } else if (vj.is_object()) {
    for (auto it = vj.begin(); it != vj.end(); ++it) spec.voll[it.key()] = it.value().get<double>();
  } else {
    throw ConfigError(ctx + ": voll must be a number or an object of zone -> value");
  }

  const auto& files = get_req(j, "files", ctx);
  const fs::path base = fs::path(config_path).parent_path();
  auto resolve = [&](const std::string& p) { return (base / p).string(); };

  std::map<std::string, std::vector<double>> load_cols;
  read_series_csv(resolve(get_req(files, "load", ctx).get<std::string>()), "load", spec.hours,
                  load_cols);
  spec.load.resize(spec.zones.size());
  for (size_t z = 0; z < spec.zones.size(); ++z) {
    auto it = load_cols.find(spec.zones[z].id);
    if (it == load_cols.end())
      throw ConfigError(ctx + ": load CSV is missing column 'load." + spec.zones[z].id + "'");
    spec.load[z] = std::move(it->second);
  }
  if (files.contains("availability")) {
    read_series_csv(resolve(files["availability"].get<std::string>()), "avail", spec.hours,
                    spec.availability);
  }
  spec.validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Period matrices

std::vector<double> PeriodMatrix::row(int i) const {
  return std::vector<double>(data.begin() + static_cast<size_t>(i) * d,
                             data.begin() + static_cast<size_t>(i + 1) * d);
}

namespace {

struct SeriesRef {
  SeriesKind kind;
  std::string entity;
  const std::vector<double>* full = nullptr;  // input series over the whole horizon
};

bool series_order(const SeriesRef& a, const SeriesRef& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  return a.entity < b.entity;
}

}  // namespace

PeriodMatrix periodize(const SystemSpec& spec, int q, SeriesSelector selector,
                       const std::vector<SeriesBundle>* output_source) {
  if (q < 1) throw ConfigError("periodize: q must be >= 1");
  if (q > spec.hours)
    throw ConfigError("periodize: q = " + std::to_string(q) + " exceeds hours = " +
                      std::to_string(spec.hours));
  const int p = spec.hours / q;

  const bool want_input = selector != SeriesSelector::output;
  const bool want_output = selector != SeriesSelector::input;

  std::vector<SeriesRef> inputs;
  if (want_input) {
    for (size_t z = 0; z < spec.zones.size(); ++z)
      inputs.push_back({SeriesKind::load, spec.zones[z].id, &spec.load[z]});
    for (const auto& [id, vals] : spec.availability)
      inputs.push_back({SeriesKind::avail, id, &vals});
    std::sort(inputs.begin(), inputs.end(), series_order);
  }

  // Output column identities come from the first bundle; every period must
  // supply the same set in the same order.
  const SeriesBundle* proto = nullptr;
  if (want_output) {
    if (!output_source || static_cast<int>(output_source->size()) != p)
      throw ConfigError("periodize: output selector needs one solved period bundle per period (" +
                        std::to_string(p) + " expected)");
    proto = &(*output_source)[0];
  }

  PeriodMatrix m;
  m.p = p;
  m.q = q;
  const int n_in = static_cast<int>(inputs.size());
  const int n_out = proto ? static_cast<int>(proto->size()) : 0;
  m.d = (n_in + n_out) * q;
  m.labels.reserve(m.d);
  for (const auto& s : inputs)
    for (int h = 0; h < q; ++h) m.labels.push_back({s.kind, s.entity, h});
  if (proto)
    for (const auto& c : *proto)
      for (int h = 0; h < q; ++h) m.labels.push_back({c.kind, c.entity, h});

  m.data.resize(static_cast<size_t>(p) * m.d);
  for (int i = 0; i < p; ++i) {
    size_t col = 0;
    for (const auto& s : inputs) {
      for (int h = 0; h < q; ++h) m.at(i, static_cast<int>(col + h)) = (*s.full)[i * q + h];
      col += q;
    }
    if (proto) {
      const auto& bundle = (*output_source)[i];
      if (bundle.size() != proto->size())
        throw ConfigError("periodize: period " + std::to_string(i) +
                          " bundle has a different series set");
      for (size_t s = 0; s < bundle.size(); ++s) {
        const auto& c = bundle[s];
        if (c.kind != (*proto)[s].kind || c.entity != (*proto)[s].entity)
          throw ConfigError("periodize: period " + std::to_string(i) +
                            " bundle ordering differs from period 0");
        if (static_cast<int>(c.values.size()) != q)
          throw ConfigError("periodize: series " + c.entity + " in period " + std::to_string(i) +
                            " has length " + std::to_string(c.values.size()) + ", expected q");
        for (int h = 0; h < q; ++h) m.at(i, static_cast<int>(col + h)) = c.values[h];
        col += q;
      }
    }
  }
  return m;
}

PeriodMatrix normalize(const PeriodMatrix& m) {
  PeriodMatrix out = m;
  std::vector<std::pair<double, double>> scale(m.d);
  for (int j = 0; j < m.d; ++j) {
    double lo = kInf, hi = -kInf;
    for (int i = 0; i < m.p; ++i) {
      lo = std::min(lo, m.at(i, j));
      hi = std::max(hi, m.at(i, j));
    }
    scale[j] = {lo, hi};
    const double range = hi - lo;
    for (int i = 0; i < m.p; ++i)
      out.at(i, j) = range > 0 ? (m.at(i, j) - lo) / range : 0.0;
  }
  out.scaling = std::move(scale);
  return out;
}

PeriodMatrix denormalize(const PeriodMatrix& m) {
  if (!m.scaling) throw ConfigError("denormalize: matrix carries no scaling");
  PeriodMatrix out = m;
  for (int j = 0; j < m.d; ++j) {
    const auto [lo, hi] = (*m.scaling)[j];
    for (int i = 0; i < m.p; ++i)
      out.at(i, j) = hi > lo ? lo + m.at(i, j) * (hi - lo) : lo;
  }
  out.scaling.reset();
  return out;
}

PeriodMatrix hstack(const PeriodMatrix& a, const PeriodMatrix& b) {
  if (a.p != b.p || a.q != b.q) throw ConfigError("hstack: shape mismatch");
  PeriodMatrix out;
  out.p = a.p;
  out.q = a.q;
  out.d = a.d + b.d;
  out.labels = a.labels;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.data.resize(static_cast<size_t>(out.p) * out.d);
  for (int i = 0; i < out.p; ++i) {
    for (int j = 0; j < a.d; ++j) out.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.d; ++j) out.at(i, a.d + j) = b.at(i, j);
  }
  if (a.scaling && b.scaling) {
    auto s = *a.scaling;
    s.insert(s.end(), b.scaling->begin(), b.scaling->end());
    out.scaling = std::move(s);
  }
  return out;
}

}  // namespace repsel::dm
