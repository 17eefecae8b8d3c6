// Tiny hand LPs shared by the unit tests and the acceptance suite.
#pragma once

#include <string>
#include <vector>

#include "repsel/lp.hpp"

namespace lp_cases {

struct Case {
  std::string name;
  repsel::lp::LinearProgram lp;
  bool bounded = true;  // vertex oracle applies only to bounded feasible cases
};

inline std::vector<Case> tiny_cases() {
  using repsel::lp::LinearProgram;
  using repsel::lp::Sense;
  std::vector<Case> cases;

  {
    Case c{"one_var_ge", {}, true};
    int x = c.lp.add_variable("x", 0, repsel::kInf, 1.0);
    c.lp.add_constraint("r1", Sense::ge, 1.0, {{x, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"pair_eq", {}, true};
    int x = c.lp.add_variable("x", 0, repsel::kInf, 1.0);
    int y = c.lp.add_variable("y", 0, repsel::kInf, 1.0);
    c.lp.add_constraint("sum", Sense::ge, 2.0, {{x, 1.0}, {y, 1.0}});
    c.lp.add_constraint("diag", Sense::eq, 0.0, {{x, 1.0}, {y, -1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"box_max", {}, true};
    int x = c.lp.add_variable("x", 0, 3, -1.0);
    int y = c.lp.add_variable("y", 0, 4, -2.0);
    c.lp.add_constraint("cap", Sense::le, 6.0, {{x, 1.0}, {y, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"transport", {}, true};
    int a = c.lp.add_variable("a", 0, repsel::kInf, 2.0);
    int b = c.lp.add_variable("b", 0, repsel::kInf, 3.0);
    int d = c.lp.add_variable("d", 0, repsel::kInf, 1.0);
    c.lp.add_constraint("demand", Sense::eq, 10.0, {{a, 1.0}, {b, 1.0}, {d, 1.0}});
    c.lp.add_constraint("cap_a", Sense::le, 4.0, {{a, 1.0}});
    c.lp.add_constraint("cap_d", Sense::le, 3.0, {{d, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"negative_lb", {}, true};
    int x = c.lp.add_variable("x", -5, 5, 1.0);
    int y = c.lp.add_variable("y", -5, 5, 2.0);
    c.lp.add_constraint("r", Sense::ge, -3.0, {{x, 1.0}, {y, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"free_var", {}, true};
    int x = c.lp.add_variable("x", -repsel::kInf, repsel::kInf, 1.0);
    int y = c.lp.add_variable("y", 0, repsel::kInf, 0.5);
    c.lp.add_constraint("r1", Sense::ge, 4.0, {{x, 1.0}, {y, 2.0}});
    c.lp.add_constraint("r2", Sense::ge, -1.0, {{x, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"degenerate", {}, true};
    int x = c.lp.add_variable("x", 0, repsel::kInf, 1.0);
    int y = c.lp.add_variable("y", 0, repsel::kInf, 1.0);
    c.lp.add_constraint("r1", Sense::ge, 2.0, {{x, 1.0}, {y, 1.0}});
    c.lp.add_constraint("r2", Sense::ge, 2.0, {{x, 2.0}, {y, 2.0}});
    c.lp.add_constraint("r3", Sense::ge, 1.0, {{x, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"obj_constant", {}, true};
    int x = c.lp.add_variable("x", 0, repsel::kInf, 3.0);
    c.lp.set_objective_constant(7.5);
    c.lp.add_constraint("r", Sense::ge, 2.0, {{x, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"six_vars", {}, true};
    std::vector<int> v;
    for (int j = 0; j < 6; ++j)
      v.push_back(c.lp.add_variable("v" + std::to_string(j), 0, 10, 1.0 + 0.3 * j));
    c.lp.add_constraint("total", Sense::ge, 12.0,
                        {{v[0], 1.0}, {v[1], 1.0}, {v[2], 1.0}, {v[3], 1.0}, {v[4], 1.0}, {v[5], 1.0}});
    c.lp.add_constraint("mix", Sense::le, 8.0, {{v[0], 1.0}, {v[2], 1.0}, {v[4], 1.0}});
    c.lp.add_constraint("link", Sense::eq, 0.0, {{v[1], 1.0}, {v[3], -1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"ranged_pair", {}, true};
    int x = c.lp.add_variable("x", 0, repsel::kInf, -1.0);
    int y = c.lp.add_variable("y", 0, repsel::kInf, -1.0);
    c.lp.add_constraint("lo", Sense::ge, 1.0, {{x, 1.0}, {y, 1.0}});
    c.lp.add_constraint("hi", Sense::le, 5.0, {{x, 1.0}, {y, 1.0}});
    c.lp.add_constraint("skew", Sense::le, 4.0, {{x, 2.0}, {y, 1.0}});
    cases.push_back(std::move(c));
  }
  {
    Case c{"equality_chain", {}, true};
    int a = c.lp.add_variable("a", 0, repsel::kInf, 1.0);
    int b = c.lp.add_variable("b", 0, repsel::kInf, 4.0);
    int d = c.lp.add_variable("d", 0, 2.5, 0.25);
    c.lp.add_constraint("c1", Sense::eq, 5.0, {{a, 1.0}, {b, 2.0}});
    c.lp.add_constraint("c2", Sense::ge, 1.0, {{b, 1.0}, {d, -1.0}});
    cases.push_back(std::move(c));
  }
  return cases;
}

}  // namespace lp_cases
