#include "repsel/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "repsel/common.hpp"

namespace repsel::csv {

int Table::col(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

static std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);
  Table t;
  std::string line;
  size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (!have_header) {
      for (auto& c : cells) c = trim(c);
      t.header = cells;
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                        std::to_string(t.header.size()) + " columns, got " +
                        std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (size_t i = 0; i < cells.size(); ++i) {
      const std::string cell = trim(cells[i]);
      char* end = nullptr;
      errno = 0;
      row[i] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || errno == ERANGE)
        throw ConfigError(path + ":" + std::to_string(lineno) + ": column '" +
                          t.header[i] + "': not a number: '" + cell + "'");
    }
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError(path + ": missing header row");
  return t;
}

void write_table(const std::string& path, const std::vector<std::string>& comments,
                 const std::vector<std::string>& header,
                 const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << "\n";
  for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "");
      double v = row[i];
      if (v == static_cast<long long>(v) && std::abs(v) < 1e15)
        out << static_cast<long long>(v);
      else
        out << fmt_double(v);
    }
    out << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace repsel::csv
