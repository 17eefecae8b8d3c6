#pragma once

#include <string>
#include <vector>

namespace repsel::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const;  // -1 when absent
  size_t n_rows() const { return rows.size(); }
};

/// Comma-separated, mandatory header row, decimal point, no quoting. Lines
/// starting with '#' are skipped (artifact files carry a config-hash comment).
Table read_table(const std::string& path);

/// Writes '#'-prefixed comment lines, then the header, then numeric rows
/// formatted with fmt_double (integers render without a decimal point).
void write_table(const std::string& path, const std::vector<std::string>& comments,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows);

std::vector<std::string> split_line(const std::string& line);

}  // namespace repsel::csv
