#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "repsel/cem.hpp"
#include "repsel/csv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace repsel::cem {

namespace {

// dispatch.csv series tags, written in this order per hour
constexpr const char* kResourceTags[] = {"power",  "commit",    "startup", "shutdown",
                                         "charge", "discharge", "soc"};

std::vector<double>& resource_series(CemSolution::ResourceDispatch& d, const std::string& tag) {
  if (tag == "power") return d.power;
  if (tag == "commit") return d.commit;
  if (tag == "startup") return d.startup;
  if (tag == "shutdown") return d.shutdown;
  if (tag == "charge") return d.charge;
  if (tag == "discharge") return d.discharge;
  if (tag == "soc") return d.soc;
  throw ConfigError("dispatch.csv: unknown series tag " + tag);
}

const std::vector<double>* resource_series_const(const CemSolution::ResourceDispatch& d,
                                                 const std::string& tag) {
  return &resource_series(const_cast<CemSolution::ResourceDispatch&>(d), tag);
}

}  // namespace

void save_solution(const std::string& dir, const dm::SystemSpec& spec, const CemSolution& sol,
                   const std::string& config_hash) {
  fs::create_directories(dir);

  {
    std::ostringstream out;
    out << "# config=" << config_hash << "\n";
    out << "resource,zone,size,energy,charge\n";
    for (const auto& r : spec.resources) {
      const auto& c = sol.capacities.by_resource.at(r.id);
      out << r.id << "," << r.zone << "," << fmt_double(c.size) << "," << fmt_double(c.energy)
          << "," << fmt_double(c.charge) << "\n";
    }
    write_text_file((fs::path(dir) / "capacity.csv").string(), out.str());
  }

  {
    std::ostringstream out;
    out << "# config=" << config_hash << "\n";
    out << "hour,series,entity,value\n";
    for (int t = 0; t < sol.hours; ++t) {
      for (const auto& r : spec.resources) {
        const auto& d = sol.dispatch.at(r.id);
        for (const char* tag : kResourceTags) {
          const auto* s = resource_series_const(d, tag);
          if (!s->empty()) out << t + 1 << "," << tag << "," << r.id << ","
                               << fmt_double((*s)[t]) << "\n";
        }
      }
      for (const auto& z : spec.zones) {
        out << t + 1 << ",nse," << z.id << "," << fmt_double(sol.nse.at(z.id)[t]) << "\n";
        out << t + 1 << ",angle," << z.id << "," << fmt_double(sol.angle.at(z.id)[t]) << "\n";
      }
      for (const auto& l : spec.lines)
        out << t + 1 << ",flow," << l.id() << "," << fmt_double(sol.flow.at(l.id())[t]) << "\n";
    }
    write_text_file((fs::path(dir) / "dispatch.csv").string(), out.str());
  }

  json summary;
  summary["status"] = lp::to_string(sol.status);
  summary["objective"] = sol.objective;
  summary["hours"] = sol.hours;
  summary["weights"] = sol.weights;
  summary["config"] = config_hash;
  write_text_file((fs::path(dir) / "summary.json").string(), summary.dump(2) + "\n");
}

CapacityPlan load_capacity_plan(const std::string& dir) {
  const std::string path = (fs::path(dir) / "capacity.csv").string();
  std::ifstream in(path);
  if (!in) throw UpstreamMissing("missing artifact: " + path);
  CapacityPlan plan;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = csv::split_line(line);
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    if (cells.size() != 5) throw ConfigError(path + ": expected 5 columns");
    CapacityPlan::Caps c;
    c.size = std::stod(cells[2]);
    c.energy = std::stod(cells[3]);
    c.charge = std::stod(cells[4]);
    plan.by_resource.emplace(cells[0], c);
  }
  return plan;
}

CemSolution load_solution(const std::string& dir, const dm::SystemSpec& spec) {
  const fs::path base(dir);
  const std::string summary_path = (base / "summary.json").string();
  if (!fs::exists(summary_path)) throw UpstreamMissing("missing artifact: " + summary_path);
  json summary = json::parse(read_text_file(summary_path));

  CemSolution sol;
  sol.status = lp::status_from_string(summary.at("status").get<std::string>());
  sol.objective = summary.at("objective").get<double>();
  sol.hours = summary.at("hours").get<int>();
  sol.weights = summary.at("weights").get<std::vector<int>>();
  sol.capacities = load_capacity_plan(dir);

  for (const auto& r : spec.resources) {
    CemSolution::ResourceDispatch d;
    sol.dispatch.emplace(r.id, std::move(d));
  }
  for (const auto& z : spec.zones) {
    sol.nse.emplace(z.id, std::vector<double>(sol.hours, 0.0));
    sol.angle.emplace(z.id, std::vector<double>(sol.hours, 0.0));
  }
  for (const auto& l : spec.lines) sol.flow.emplace(l.id(), std::vector<double>(sol.hours, 0.0));

  const std::string path = (base / "dispatch.csv").string();
  std::ifstream in(path);
  if (!in) throw UpstreamMissing("missing artifact: " + path);
  std::string line;
  bool header_seen = false;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto cells = csv::split_line(line);
    if (cells.size() != 4)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 4 columns");
    const int hour = std::stoi(cells[0]) - 1;
    const std::string& tag = cells[1];
    const std::string& entity = cells[2];
    const double value = std::stod(cells[3]);
    if (hour < 0 || hour >= sol.hours)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": hour out of range");
    if (tag == "nse" || tag == "angle") {
      auto& m = tag == "nse" ? sol.nse : sol.angle;
      auto it = m.find(entity);
      if (it == m.end())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown zone " + entity);
      it->second[hour] = value;
    } else if (tag == "flow") {
      auto it = sol.flow.find(entity);
      if (it == sol.flow.end())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown line " + entity);
      it->second[hour] = value;
    } else {
      auto it = sol.dispatch.find(entity);
      if (it == sol.dispatch.end())
        throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown resource " + entity);
      auto& series = resource_series(it->second, tag);
      if (series.empty()) series.assign(sol.hours, 0.0);
      series[hour] = value;
    }
  }
  return sol;
}

}  // namespace repsel::cem
