#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repsel/common.hpp"

namespace repsel::dm {

enum class ResourceKind { thermal, vre, storage };

const char* to_string(ResourceKind k);
ResourceKind resource_kind_from_string(const std::string& s);

struct Zone {
  std::string id;
  std::string name;
};

struct Line {
  std::string from_zone;
  std::string to_zone;
  double susceptance = 0.0;  // per unit
  double max_flow = 0.0;     // MW

  std::string id() const { return from_zone + "-" + to_zone; }
};

struct CostParams {
  double invest_power = 0.0;    // USD/MW
  double invest_energy = 0.0;   // USD/MWh, storage only
  double invest_charge = 0.0;   // USD/MWh, storage only
  double degradation = 0.0;     // fraction/yr, storage only
  double fixed_om = 0.0;        // USD/MW-yr
  double fixed_om_charge = 0.0; // USD/MWh-yr, storage only
  double var_om = 0.0;          // USD/MWh
  double fuel = 0.0;            // USD/MWh
  double var_om_charge = 0.0;   // USD/MWh, storage only
  double startup = 0.0;         // USD/MW, thermal only
};

struct OperationalParams {
  double unit_size = 1.0;          // MW
  double rho_min = 0.0;            // fraction of committed unit capacity
  double rho_max = 1.0;
  double ramp_up = 1.0;            // fraction of capacity per hour
  double ramp_down = 1.0;
  double depth_of_discharge = 1.0; // usable fraction of energy capacity
  double eta_charge = 1.0;
  double eta_discharge = 1.0;
  double max_capacity = kInf;      // MW cap on built capacity
};

struct Resource {
  std::string id;
  ResourceKind kind = ResourceKind::thermal;
  std::string zone;
  CostParams costs;
  OperationalParams ops;
  std::string availability_column;  // entity id in the availability table, vre only
};

/// Full system description plus hourly series. Immutable after load; all
/// operations on it are pure functions.
struct SystemSpec {
  std::vector<Zone> zones;         // declaration order; zones[0] is the reference bus
  std::vector<Line> lines;
  std::vector<Resource> resources;
  std::vector<std::vector<double>> load;           // [zone index][t], MW
  std::map<std::string, std::vector<double>> availability;  // column id -> [t]
  std::map<std::string, double> voll;              // zone id -> USD/MWh
  double theta_min = -1.0;
  double theta_max = 1.0;
  int hours = 8760;

  int zone_index(const std::string& id) const;     // -1 when absent
  const Resource* find_resource(const std::string& id) const;
  void validate() const;  // throws ConfigError naming the offending entity
};

SystemSpec load_system(const std::string& config_path);

/// Column ordering of period matrices follows this enum, then entity id,
/// then hour-in-period. Input series sort before output series.
enum class SeriesKind { load = 0, avail, power, charge, discharge, nse, flow };

const char* to_string(SeriesKind k);

struct ColumnLabel {
  SeriesKind kind;
  std::string entity;
  int hour = 0;  // hour within the period
};

/// p x d matrix of flattened per-period series, one row per period.
struct PeriodMatrix {
  int p = 0;
  int d = 0;
  int q = 0;
  std::vector<double> data;  // row-major
  std::vector<ColumnLabel> labels;
  std::optional<std::vector<std::pair<double, double>>> scaling;  // per-column (min, max)

  double& at(int i, int j) { return data[static_cast<size_t>(i) * d + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * d + j]; }
  std::vector<double> row(int i) const;
};

enum class SeriesSelector { input, output, both };

/// One period's worth of named series (used to feed solved dispatch series
/// into periodize without the datamodel knowing about solver types).
struct SeriesColumn {
  SeriesKind kind;
  std::string entity;
  std::vector<double> values;  // length q
};
using SeriesBundle = std::vector<SeriesColumn>;

/// Cuts the horizon into p = floor(hours/q) consecutive periods and flattens
/// the selected series hour-major within each period (all hours of one series
/// are contiguous). Trailing remainder hours are dropped.
PeriodMatrix periodize(const SystemSpec& spec, int q, SeriesSelector selector,
                       const std::vector<SeriesBundle>* output_source = nullptr);

/// Per-column min-max scaling to [0,1]; constant columns map to zero and the
/// (min, max) pair is recorded for denormalize.
PeriodMatrix normalize(const PeriodMatrix& m);
PeriodMatrix denormalize(const PeriodMatrix& m);

/// Column-wise concatenation; both matrices must share p and q.
PeriodMatrix hstack(const PeriodMatrix& a, const PeriodMatrix& b);

}  // namespace repsel::dm
