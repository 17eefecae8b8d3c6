#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "lp_cases.hpp"
#include "lp_reference.hpp"
#include "repsel/lp.hpp"

using namespace repsel;
using namespace repsel::lp;

namespace {

// dual objective with bound contributions; equals the primal value at an
// optimal basis (strong duality)
double dual_objective(const LinearProgram& lp, const SolveResult& res) {
  double obj = lp.objective_constant();
  for (int i = 0; i < lp.num_constraints(); ++i) obj += res.duals[i] * lp.constraint(i).rhs;
  std::vector<double> d(lp.num_vars());
  for (int j = 0; j < lp.num_vars(); ++j) d[j] = lp.objective()[j];
  for (int i = 0; i < lp.num_constraints(); ++i)
    for (const auto& e : lp.constraint(i).entries) d[e.col] -= res.duals[i] * e.val;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (std::abs(d[j]) < 1e-6 * std::max(1.0, std::abs(lp.objective()[j]))) continue;
    double bound = d[j] > 0 ? lp.lower(j) : lp.upper(j);
    REQUIRE(std::isfinite(bound));  // else the dual would be infeasible
    obj += d[j] * bound;
  }
  return obj;
}

}  // namespace

TEST_CASE("one-variable LP") {
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, 1.0);
  lp.add_constraint("r1", Sense::ge, 1.0, {{x, 1.0}});
  auto res = solve(lp);
  REQUIRE(res.status == Status::optimal);
  CHECK(res.x[x] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two-variable LP with equality") {
  // expected vertex computed by the enumeration oracle: x = y = 1, obj 2
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, 1.0);
  int y = lp.add_variable("y", 0, kInf, 1.0);
  lp.add_constraint("sum", Sense::ge, 2.0, {{x, 1.0}, {y, 1.0}});
  lp.add_constraint("diag", Sense::eq, 0.0, {{x, 1.0}, {y, -1.0}});
  auto oracle = lp_reference::enumerate_vertices(lp);
  REQUIRE(oracle.feasible);
  CHECK(oracle.objective == doctest::Approx(2.0));
  auto res = solve(lp);
  REQUIRE(res.status == Status::optimal);
  CHECK(res.x[x] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.x[y] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(res.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
}

TEST_CASE("infeasible bounds") {
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, 1.0);
  lp.add_constraint("lo", Sense::ge, 1.0, {{x, 1.0}});
  lp.add_constraint("hi", Sense::le, 0.0, {{x, 1.0}});
  auto res = solve(lp);
  CHECK(res.status == Status::infeasible);
}

TEST_CASE("unbounded") {
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, -1.0);
  lp.add_constraint("r", Sense::ge, 0.0, {{x, 1.0}});
  auto res = solve(lp);
  CHECK(res.status == Status::unbounded);
}

TEST_CASE("hand cases match vertex enumeration to 1e-7") {
  auto cases = lp_cases::tiny_cases();
  REQUIRE(cases.size() >= 10);
  for (auto& c : cases) {
    CAPTURE(c.name);
    auto oracle = lp_reference::enumerate_vertices(c.lp);
    REQUIRE(oracle.feasible);
    auto res = solve(c.lp);
    REQUIRE(res.status == Status::optimal);
    CHECK(std::abs(res.objective - oracle.objective) <= 1e-7);
  }
}

TEST_CASE("weak duality on every hand case") {
  for (auto& c : lp_cases::tiny_cases()) {
    CAPTURE(c.name);
    auto res = solve(c.lp);
    REQUIRE(res.status == Status::optimal);
    double dobj = dual_objective(c.lp, res);
    CHECK(std::abs(dobj - res.objective) <=
          1e-6 * std::max(1.0, std::abs(res.objective)));
  }
}

TEST_CASE("objective scaling leaves the argmin unchanged") {
  for (auto& c : lp_cases::tiny_cases()) {
    CAPTURE(c.name);
    auto base = solve(c.lp);
    REQUIRE(base.status == Status::optimal);
    LinearProgram scaled = c.lp;
    for (int j = 0; j < scaled.num_vars(); ++j)
      scaled.set_objective(j, scaled.objective()[j] * 37.0);
    scaled.set_objective_constant(scaled.objective_constant() * 37.0);
    auto res = solve(scaled);
    REQUIRE(res.status == Status::optimal);
    CHECK(res.objective ==
          doctest::Approx(base.objective * 37.0).epsilon(1e-7));
    for (int j = 0; j < scaled.num_vars(); ++j)
      CHECK(std::abs(res.x[j] - base.x[j]) <= 1e-6 * std::max(1.0, std::abs(base.x[j])));
  }
}

TEST_CASE("determinism: repeated solves bit-identical") {
  for (auto& c : lp_cases::tiny_cases()) {
    auto a = solve(c.lp);
    auto b = solve(c.lp);
    CHECK(a.status == b.status);
    CHECK(a.objective == b.objective);  // bitwise
    CHECK(a.x == b.x);
  }
}

TEST_CASE("iteration limit returns best iterate") {
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, 1.0);
  int y = lp.add_variable("y", 0, kInf, 1.0);
  lp.add_constraint("sum", Sense::ge, 2.0, {{x, 1.0}, {y, 1.0}});
  lp.add_constraint("diag", Sense::eq, 0.0, {{x, 1.0}, {y, -1.0}});
  SolverOptions opts;
  opts.max_iterations = 1;
  auto res = solve(lp, opts);
  CHECK(res.status == Status::iteration_limit);
  CHECK(res.x.size() == 2);
}

TEST_CASE("solve_parallel matches sequential solves") {
  auto cases = lp_cases::tiny_cases();
  std::vector<LinearProgram> lps;
  for (auto& c : cases) lps.push_back(c.lp);
  // 52 copies of the first LP exercise scheduling independence
  for (int i = 0; i < 52; ++i) lps.push_back(cases[0].lp);
  auto par = solve_parallel(lps, {}, 4);
  REQUIRE(par.size() == lps.size());
  for (size_t i = 0; i < lps.size(); ++i) {
    auto seq = solve(lps[i]);
    CHECK(par[i].status == seq.status);
    CHECK(par[i].objective == seq.objective);
    CHECK(par[i].x == seq.x);
  }
}

TEST_CASE("solve_parallel carries per-item infeasibility") {
  std::vector<LinearProgram> lps;
  {
    LinearProgram bad;
    int x = bad.add_variable("x", 0, kInf, 1.0);
    bad.add_constraint("lo", Sense::ge, 1.0, {{x, 1.0}});
    bad.add_constraint("hi", Sense::le, 0.0, {{x, 1.0}});
    lps.push_back(bad);
  }
  lps.push_back(lp_cases::tiny_cases()[0].lp);
  auto res = solve_parallel(lps, {}, 2);
  CHECK(res[0].status == Status::infeasible);
  CHECK(res[1].status == Status::optimal);
}

TEST_CASE("empty LP exports and solves to zero") {
  LinearProgram lp;
  auto res = solve(lp);
  CHECK(res.status == Status::optimal);
  CHECK(res.objective == 0.0);
  auto path = std::filesystem::temp_directory_path() / "repsel_empty.mps";
  export_mps(lp, path.string());
  CHECK(std::filesystem::exists(path));
}

TEST_CASE("MPS writer structure for the one-variable LP") {
  LinearProgram lp;
  int x = lp.add_variable("x", 0, kInf, 1.0);
  lp.add_constraint("r1", Sense::ge, 1.0, {{x, 1.0}});
  auto path = std::filesystem::temp_directory_path() / "repsel_onevar.mps";
  export_mps(lp, path.string());
  std::string text = read_text_file(path.string());
  CHECK(text.find(" G R0000000\n") != std::string::npos);
  CHECK(text.find("X0000000 COST 1\n") != std::string::npos);
  CHECK(text.find("X0000000 R0000000 1\n") != std::string::npos);
  CHECK(std::filesystem::exists(path.string() + ".names.csv"));
}

TEST_CASE("MPS round-trip through the external solver") {
  int checked = 0;
  for (auto& c : lp_cases::tiny_cases()) {
    CAPTURE(c.name);
    auto res = solve(c.lp);
    REQUIRE(res.status == Status::optimal);
    auto path = std::filesystem::temp_directory_path() / ("repsel_" + c.name + ".mps");
    export_mps(c.lp, path.string());
    std::string cmd = "python3 " MPS_ORACLE_SCRIPT " " + path.string();
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char status[64];
    double obj = 0.0;
    int got = fscanf(pipe, "%63s %lf", status, &obj);
    int rc = pclose(pipe);
    REQUIRE(rc == 0);
    REQUIRE(got == 2);
    CHECK(std::string(status) == "optimal");
    CHECK(std::abs(obj - res.objective) <= 1e-6 * std::max(1.0, std::abs(res.objective)));
    ++checked;
  }
  CHECK(checked >= 10);
}
