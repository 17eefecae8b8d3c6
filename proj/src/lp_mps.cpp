#include <cmath>
#include <cstdio>
#include <sstream>

#include "repsel/lp.hpp"

namespace repsel::lp {

namespace {

std::string mangle_var(int j) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "X%07d", j);
  return buf;
}

std::string mangle_row(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "R%07d", i);
  return buf;
}

}  // namespace

void export_mps(const LinearProgram& lp, const std::string& path) {
  lp.validate();
  std::ostringstream out;
  out << "NAME LP\n";
  out << "ROWS\n";
  out << " N COST\n";
  for (int i = 0; i < lp.num_constraints(); ++i)
    out << " " << static_cast<char>(lp.constraint(i).sense) << " " << mangle_row(i) << "\n";

  // column-major entries: objective first, then rows in declaration order
  std::vector<std::vector<std::pair<std::string, double>>> col_entries(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j)
    if (lp.objective()[j] != 0.0) col_entries[j].push_back({"COST", lp.objective()[j]});
  for (int i = 0; i < lp.num_constraints(); ++i)
    for (const auto& e : lp.constraint(i).entries)
      if (e.val != 0.0) col_entries[e.col].push_back({mangle_row(i), e.val});

  out << "COLUMNS\n";
  for (int j = 0; j < lp.num_vars(); ++j)
    for (const auto& [row, val] : col_entries[j])
      out << "    " << mangle_var(j) << " " << row << " " << fmt_double(val) << "\n";

  out << "RHS\n";
  // objective constant by the usual convention: RHS on the cost row is -c0
  if (lp.objective_constant() != 0.0)
    out << "    RHS COST " << fmt_double(-lp.objective_constant()) << "\n";
  for (int i = 0; i < lp.num_constraints(); ++i)
    if (lp.constraint(i).rhs != 0.0)
      out << "    RHS " << mangle_row(i) << " " << fmt_double(lp.constraint(i).rhs) << "\n";

  out << "BOUNDS\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower(j), hi = lp.upper(j);
    const std::string name = mangle_var(j);
    if (lo == hi) {
      out << " FX BND " << name << " " << fmt_double(lo) << "\n";
      continue;
    }
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << " FR BND " << name << "\n";
      continue;
    }
    if (!std::isfinite(lo))
      out << " MI BND " << name << "\n";
    else if (lo != 0.0)
      out << " LO BND " << name << " " << fmt_double(lo) << "\n";
    if (std::isfinite(hi)) out << " UP BND " << name << " " << fmt_double(hi) << "\n";
  }
  out << "ENDATA\n";
  write_text_file(path, out.str());

  std::ostringstream names;
  names << "mangled,original\n";
  names << "COST,<objective>\n";
  for (int i = 0; i < lp.num_constraints(); ++i)
    names << mangle_row(i) << "," << lp.constraint(i).name << "\n";
  for (int j = 0; j < lp.num_vars(); ++j) names << mangle_var(j) << "," << lp.var_name(j) << "\n";
  write_text_file(path + ".names.csv", names.str());
}

}  // namespace repsel::lp
