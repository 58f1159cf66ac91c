"""
Projective torus links T_proj(p, q) = h_{a,b}.

(a, b) = ((p+q)/2, (p-q)/2) is the bidegree on the hyperboloid. The braid
t_braid(p, q) is the first half of (alpha beta)^q on p strands, with
alpha = sigma_1 sigma_3 ... and beta = sigma_2 sigma_4 ...
"""
from __future__ import annotations

import dataclasses
import math

from lib.braid_core import BraidWord
from lib.errors import ParityViolation, RangeViolation
from lib.projective_closure import (
    canonical_matrix,
    describe_s3_closure,
    lift,
    s3_doubled_linking_matrix,
)

# Doubled linking numbers of the ruling classes with the core circles u, v.
# The basis is fixed so that lk(alpha, u) = lk(beta, u) = lk(alpha, v) = 1/2
# and lk(beta, v) = -1/2.
BASIS_DLK = {"alpha_u": 1, "beta_u": 1, "alpha_v": 1, "beta_v": -1}


@dataclasses.dataclass(frozen=True)
class TorusParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ParityViolation("(p, q) must not be (0, 0)", p=self.p, q=self.q)
        if (self.p - self.q) % 2:
            raise ParityViolation("p and q must have the same parity", p=self.p, q=self.q)


@dataclasses.dataclass(frozen=True)
class Bidegree:
    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ParityViolation("(a, b) must not be (0, 0)", a=self.a, b=self.b)


def bidegree_of(t):
    return Bidegree((t.p + t.q) // 2, (t.p - t.q) // 2)


def params_of(b):
    return TorusParams(b.a + b.b, b.a - b.b)


def canonicalize(t):
    """Representative of {(p,q), (-p,-q), (q,p), (-q,-p)}; mirrors are never identified."""
    orbit = [(t.p, t.q), (-t.p, -t.q), (t.q, t.p), (-t.q, -t.p)]
    for p, q in orbit:
        if p >= q >= 0:
            return TorusParams(p, q)
    for p, q in orbit:
        if p >= abs(q):
            return TorusParams(p, q)
    return t


def _alpha_beta(p):
    alpha = tuple(range(1, p, 2))
    beta = tuple(range(2, p, 2))
    return alpha, beta


def t_braid(p, q):
    if p < 1 or q < 0:
        raise RangeViolation("t_braid needs p >= 1 and q >= 0", p=p, q=q)
    if (p - q) % 2:
        raise ParityViolation("p and q must have the same parity", p=p, q=q)
    alpha, beta = _alpha_beta(p)
    letters = (alpha + beta) * (q // 2)
    if q % 2:
        letters += alpha
    return BraidWord(p, letters)


def full_torus_braid(p, q):
    """(alpha beta)^q on p strands, whose ordinary closure is T(p, q) in S^3."""
    if p < 1 or q < 0:
        raise RangeViolation("full_torus_braid needs p >= 1 and q >= 0", p=p, q=q)
    alpha, beta = _alpha_beta(p)
    return BraidWord(p, (alpha + beta) * q)


def torus_braid(t):
    """Braid for any TorusParams: canonicalize, then mirror when q stays negative."""
    c = canonicalize(t)
    if c.q >= 0:
        return t_braid(c.p, c.q)
    return t_braid(c.p, -c.q).mirror()


def cr_formula(t):
    if not 1 <= t.q <= t.p:
        raise RangeViolation("crossing formula needs 1 <= q <= p", p=t.p, q=t.q)
    return t.p * (t.q - 1) // 2


def ps_formula(t):
    return min(abs(t.p), abs(t.q))


def component_count(t):
    b = bidegree_of(t)
    return math.gcd(b.a, b.b)


def homology_data(t):
    b = bidegree_of(t)
    return {
        "class_alpha": b.a,
        "class_beta": b.b,
        "dlk_u": b.a * BASIS_DLK["alpha_u"] + b.b * BASIS_DLK["beta_u"],
        "dlk_v": b.a * BASIS_DLK["alpha_v"] + b.b * BASIS_DLK["beta_v"],
        "class_in_U": t.q,
        "class_in_V": t.p,
        "basis_dlk": dict(BASIS_DLK),
    }


def lift_matches_full_torus(p, q):
    """The lift of T_proj(p, q) has the components and linking matrix of T(p, q)."""
    lifted = lift(t_braid(p, q))
    full = full_torus_braid(p, q)
    return (len(describe_s3_closure(lifted).components) == len(describe_s3_closure(full).components)
            and canonical_matrix(s3_doubled_linking_matrix(lifted).entries)
            == canonical_matrix(s3_doubled_linking_matrix(full).entries))


def torus_report(t):
    """Everything the CLI prints for `torus --p P --q Q`."""
    c = canonicalize(t)
    b = bidegree_of(c)
    h = homology_data(c)
    report = {
        "p": c.p,
        "q": c.q,
        "a": b.a,
        "b": b.b,
        "components": component_count(c),
        "cr": cr_formula(c) if 1 <= c.q <= c.p else None,
        "ps": ps_formula(c),
        "dlk_u": h["dlk_u"],
        "dlk_v": h["dlk_v"],
    }
    if c.p >= 1 and c.q >= 0:
        report["t_braid"] = str(t_braid(c.p, c.q))
    return report
