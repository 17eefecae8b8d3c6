#!/usr/bin/env python3
"""Independent MPS consumer used as a round-trip oracle.

Parses a free-format MPS file and solves it with scipy's HiGHS backend.
Prints "<status> <objective>" where status is optimal/infeasible/unbounded.
"""
import sys

import numpy as np
from scipy.optimize import linprog


def parse_mps(path):
    section = None
    rows = {}          # name -> sense ('N','L','G','E')
    row_order = []
    obj_row = None
    cols = {}          # var -> {row: coeff}
    var_order = []
    rhs = {}
    bounds = {}        # var -> [lo, hi]

    with open(path) as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0].upper()
                continue
            tok = line.split()
            if section == "ROWS":
                sense, name = tok[0].upper(), tok[1]
                rows[name] = sense
                if sense == "N":
                    if obj_row is None:
                        obj_row = name
                else:
                    row_order.append(name)
            elif section == "COLUMNS":
                var = tok[0]
                if var not in cols:
                    cols[var] = {}
                    var_order.append(var)
                for i in range(1, len(tok) - 1, 2):
                    cols[var][tok[i]] = float(tok[i + 1])
            elif section == "RHS":
                for i in range(1, len(tok) - 1, 2):
                    rhs[tok[i]] = float(tok[i + 1])
            elif section == "BOUNDS":
                btype = tok[0].upper()
                var = tok[2]
                if var not in bounds:
                    bounds[var] = [0.0, np.inf]
                if btype == "LO":
                    bounds[var][0] = float(tok[3])
                elif btype == "UP":
                    bounds[var][1] = float(tok[3])
                elif btype == "FX":
                    bounds[var] = [float(tok[3])] * 2
                elif btype == "FR":
                    bounds[var] = [-np.inf, np.inf]
                elif btype == "MI":
                    bounds[var][0] = -np.inf
                elif btype == "PL":
                    bounds[var][1] = np.inf
                else:
                    raise ValueError("unsupported bound type " + btype)
    n = len(var_order)
    c = np.zeros(n)
    for j, var in enumerate(var_order):
        c[j] = cols[var].get(obj_row, 0.0)
    # RHS on the objective row is the negative of the objective constant
    offset = -rhs.get(obj_row, 0.0)

    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for name in row_order:
        sense = rows[name]
        coeffs = np.zeros(n)
        for j, var in enumerate(var_order):
            coeffs[j] = cols[var].get(name, 0.0)
        b = rhs.get(name, 0.0)
        if sense == "L":
            a_ub.append(coeffs)
            b_ub.append(b)
        elif sense == "G":
            a_ub.append(-coeffs)
            b_ub.append(-b)
        else:
            a_eq.append(coeffs)
            b_eq.append(b)

    var_bounds = [tuple(bounds.get(v, [0.0, np.inf])) for v in var_order]
    return c, a_ub, b_ub, a_eq, b_eq, var_bounds, offset


def main():
    c, a_ub, b_ub, a_eq, b_eq, var_bounds, offset = parse_mps(sys.argv[1])
    kwargs = dict(method="highs", bounds=var_bounds)
    if a_ub:
        kwargs.update(A_ub=np.array(a_ub), b_ub=np.array(b_ub))
    if a_eq:
        kwargs.update(A_eq=np.array(a_eq), b_eq=np.array(b_eq))
    if len(c) == 0:
        print("optimal", offset)
        return
    res = linprog(c, **kwargs)
    if res.status == 0:
        print("optimal", res.fun + offset)
    elif res.status == 2:
        print("infeasible", 0.0)
    elif res.status == 3:
        print("unbounded", 0.0)
    else:
        print("error", 0.0)


if __name__ == "__main__":
    main()
