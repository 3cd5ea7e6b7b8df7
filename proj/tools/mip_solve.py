#!/usr/bin/env python3
"""Solve a CPLEX-LP model with scipy's HiGHS backend.

Usage: mip_solve.py [--relax] model.lp

Reads the LP subset emitted by `ctsp export-model` (Minimize / Subject To /
Bounds / Binaries / End), solves it as a MILP (or as its linear relaxation
with --relax) and prints one line "OBJECTIVE <value>".
"""

import sys

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp


def tokenize(path):
    tokens = []
    with open(path) as fh:
        for line in fh:
            if line.lstrip().startswith("\\"):
                continue
            tokens.extend(line.split())
    return tokens


def is_number(tok):
    try:
        float(tok)
        return True
    except ValueError:
        return False


def parse(tokens):
    pos = 0

    def expect(word):
        nonlocal pos
        if tokens[pos] != word:
            raise SystemExit(f"expected '{word}', found '{tokens[pos]}'")
        pos += 1

    def parse_terms():
        """Returns ({var: coef}, sense, rhs); sense is None for the objective."""
        nonlocal pos
        terms = {}
        sign = 1.0
        coef = None
        while pos < len(tokens):
            tok = tokens[pos]
            if tok in ("<=", ">=", "="):
                pos += 1
                rhs = float(tokens[pos])
                pos += 1
                return terms, tok, rhs
            if tok.endswith(":") or tok in ("Subject", "Bounds", "Binaries", "End"):
                return terms, None, None
            if tok == "+":
                sign = 1.0
            elif tok == "-":
                sign = -1.0
            elif is_number(tok):
                coef = float(tok)
            else:
                value = sign * (coef if coef is not None else 1.0)
                terms[tok] = terms.get(tok, 0.0) + value
                sign, coef = 1.0, None
            pos += 1
        return terms, None, None

    expect("Minimize")
    if not tokens[pos].endswith(":"):
        raise SystemExit("objective must be named")
    pos += 1
    objective, _, _ = parse_terms()

    expect("Subject")
    expect("To")
    rows = []
    while tokens[pos] not in ("Bounds", "Binaries", "End"):
        if not tokens[pos].endswith(":"):
            raise SystemExit(f"constraint must be named, found '{tokens[pos]}'")
        pos += 1
        terms, sense, rhs = parse_terms()
        if sense is None:
            raise SystemExit("constraint lacks a sense")
        rows.append((terms, sense, rhs))

    fixed, lower = {}, {}
    if tokens[pos] == "Bounds":
        pos += 1
        while tokens[pos] not in ("Binaries", "End"):
            var, sense, value = tokens[pos], tokens[pos + 1], float(tokens[pos + 2])
            pos += 3
            if sense == "=":
                fixed[var] = value
            elif sense == ">=":
                lower[var] = value
            else:
                raise SystemExit("unsupported bound sense")

    binaries = set()
    if tokens[pos] == "Binaries":
        pos += 1
        while tokens[pos] != "End":
            binaries.add(tokens[pos])
            pos += 1

    expect("End")
    return objective, rows, fixed, lower, binaries


def main():
    args = sys.argv[1:]
    relax = "--relax" in args
    paths = [a for a in args if not a.startswith("--")]
    if len(paths) != 1:
        raise SystemExit(__doc__)

    objective, rows, fixed, lower, binaries = parse(tokenize(paths[0]))

    variables = sorted(
        set(objective)
        | {v for terms, _, _ in rows for v in terms}
        | set(fixed)
        | set(lower)
        | binaries
    )
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    c = np.zeros(n)
    for var, coef in objective.items():
        c[index[var]] = coef

    data, ri, ci, lb, ub = [], [], [], [], []
    for r, (terms, sense, rhs) in enumerate(rows):
        for var, coef in terms.items():
            data.append(coef)
            ri.append(r)
            ci.append(index[var])
        if sense == "<=":
            lb.append(-np.inf)
            ub.append(rhs)
        elif sense == ">=":
            lb.append(rhs)
            ub.append(np.inf)
        else:
            lb.append(rhs)
            ub.append(rhs)
    a_matrix = sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))

    var_lb = np.zeros(n)
    var_ub = np.full(n, np.inf)
    integrality = np.zeros(n)
    for var in binaries:
        var_ub[index[var]] = 1.0
        if not relax:
            integrality[index[var]] = 1
    for var, value in lower.items():
        var_lb[index[var]] = value
    for var, value in fixed.items():
        var_lb[index[var]] = value
        var_ub[index[var]] = value

    result = milp(
        c,
        constraints=LinearConstraint(a_matrix, lb, ub),
        bounds=Bounds(var_lb, var_ub),
        integrality=integrality,
    )
    if not result.success:
        raise SystemExit(f"solver failed: {result.message}")
    print(f"STATUS {result.status}")
    print(f"OBJECTIVE {result.fun:.9f}")


if __name__ == "__main__":
    main()
