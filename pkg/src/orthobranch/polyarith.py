"""Minimal exact multivariate polynomial arithmetic.

A polynomial in k variables is a dict mapping exponent tuples (length k) to
nonzero Fractions.  Just enough structure for symbolic degree checks and
exact interpolation; not a general computer-algebra layer.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement


def p_zero():
    return {}


def p_const(c, nvars: int):
    c = Fraction(c)
    return {} if c == 0 else {(0,) * nvars: c}


def p_var(index: int, nvars: int):
    exp = [0] * nvars
    exp[index] = 1
    return {tuple(exp): Fraction(1)}


def p_add(a, b):
    out = dict(a)
    for exp, c in b.items():
        new = out.get(exp, Fraction(0)) + c
        if new == 0:
            out.pop(exp, None)
        else:
            out[exp] = new
    return out


def p_scale(a, c):
    c = Fraction(c)
    if c == 0:
        return {}
    return {exp: coef * c for exp, coef in a.items()}


def p_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            exp = tuple(x + y for x, y in zip(ea, eb))
            new = out.get(exp, Fraction(0)) + ca * cb
            if new == 0:
                out.pop(exp, None)
            else:
                out[exp] = new
    return out


def p_eval(a, point):
    point = [Fraction(p) for p in point]
    total = Fraction(0)
    for exp, coef in a.items():
        term = coef
        for x, e in zip(point, exp):
            term *= x**e
        total += term
    return total


def total_degree(a) -> int:
    """Total degree; -1 for the zero polynomial."""
    if not a:
        return -1
    return max(sum(exp) for exp in a)


def monomials_up_to_degree(nvars: int, degree: int):
    """All exponent tuples with total degree <= degree, in a stable order."""
    out = [(0,) * nvars]
    for d in range(1, degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exp = [0] * nvars
            for idx in combo:
                exp[idx] += 1
            out.append(tuple(exp))
    return out
