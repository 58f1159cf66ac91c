"""
Exact real-root counting with Sturm sequences.

Sturm: the number of distinct real roots of p in (a, b] equals V(a) - V(b),
V(x) being the number of sign changes of the sequence evaluated at x.
"""
from __future__ import annotations

from fractions import Fraction

import sympy as sp
from sympy import Poly, Rational

T = sp.Symbol("t")


def as_poly(coefficients):
    """Poly in t from ascending rational coefficients [c0, c1, ...]."""
    terms = [Rational(Fraction(c).numerator, Fraction(c).denominator) for c in coefficients]
    terms = terms or [Rational(0)]
    return Poly(list(reversed(terms)), T, domain="QQ")


def sturm_sequence(p):
    if p.is_zero or p.degree() <= 0:
        return [p]
    return p.sturm()


def count_sign_changes(values):
    """Count sign changes in a sequence, ignoring zeros."""
    nonzero = [v for v in values if v != 0]
    changes = 0
    for a, b in zip(nonzero, nonzero[1:]):
        if (a > 0) != (b > 0):
            changes += 1
    return changes


def sign_changes_at(sequence, x):
    return count_sign_changes([q.eval(x) for q in sequence])


def count_roots(p, a=0, b=1):
    """Distinct real roots of p in the closed interval [a, b]."""
    a, b = Rational(a), Rational(b)
    if p.is_zero:
        raise ValueError("the zero polynomial vanishes everywhere")
    if p.degree() <= 0:
        return 0
    sequence = sturm_sequence(p)
    count = sign_changes_at(sequence, a) - sign_changes_at(sequence, b)
    if p.eval(a) == 0:
        count += 1
    return count


def root_interval(p, a=0, b=1):
    """A rational isolating interval (lo, hi) of some root of p in [a, b], or None."""
    a, b = Rational(a), Rational(b)
    if p.eval(a) == 0:
        return (a, a)
    if p.eval(b) == 0:
        return (b, b)
    intervals = p.intervals(inf=a, sup=b)
    if not intervals:
        return None
    (lo, hi), _ = intervals[0]
    return (Rational(lo), Rational(hi))
