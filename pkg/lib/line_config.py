"""
Oriented lines in RP^3 and certified rigid isotopies of Hopf configurations.

A line is a pair (P, D) of homogeneous vectors in Q^4 (x, y, z, w); the
oriented 2-plane they span is the oriented line. Affine lines are written
with P = (point, 1), D = (direction, 0). The doubled linking number of two
disjoint lines is sign det[P1, D1, P2, D2], which in the affine chart is
sign det(d1, d2, p2 - p1); the standard family {z = c, y = c x} is pairwise
+1 under it.

standardize() moves a Hopf configuration onto the standard family:
  1. chart: an orientation preserving linear path sends a chosen l0 to the
     standard line at infinity of {x = 0}; afterwards every other line has
     positive x-direction,
  2. shear y -> y + lambda z when two projections to the xy-plane are parallel,
  3. shift: translate everything down so every crossing of projections sits
     below the smallest slope,
  4. rotate each line inside its vertical plane onto z = c (largest slope first),
  5. translate each line horizontally onto y = c x.
Every stage is linear in t, so the pairwise determinant is a polynomial in t
and verify_script certifies it has no root on [0, 1] with Sturm sequences.
"""
from __future__ import annotations

import dataclasses
import itertools
import math
from fractions import Fraction

import sympy as sp

from lib import sturm
from lib.errors import (
    CertificateFailed,
    CollisionFound,
    DegenerateChart,
    LinesIntersect,
    MalformedLines,
    NotHopf,
    RangeViolation,
)

X, Y, Z, W = range(4)


def _vec(values):
    return tuple(Fraction(v) for v in values)


def _rational(value):
    if isinstance(value, sp.Basic):
        return sp.Rational(value)
    value = Fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _fraction(value):
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _matrix(rows):
    return sp.Matrix([[_rational(v) for v in row] for row in rows])


def _columns(columns):
    return _matrix(columns).T


def _cross(a, b):
    return tuple(_fraction(v) for v in _matrix([a]).cross(_matrix([b])))


def det4(columns):
    """Determinant of the 4x4 matrix with the given columns."""
    return _fraction(_columns(columns).det())


def _apply(matrix, v):
    return tuple(_fraction(x) for x in _matrix(matrix) * _columns([v]))


def _unit(k):
    return tuple(Fraction(1 if i == k else 0) for i in range(4))


def _elementary(i, j, lam):
    return tuple(tuple(Fraction(lam if (r, c) == (i, j) else 0) for c in range(4)) for r in range(4))


@dataclasses.dataclass(frozen=True)
class ProjLine:
    P: tuple
    D: tuple

    def __post_init__(self):
        P, D = _vec(self.P), _vec(self.D)
        if len(P) != 4 or len(D) != 4:
            raise MalformedLines("a line needs two homogeneous 4-vectors", P=list(map(str, P)))
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "D", D)
        if not any(self.plucker()):
            raise MalformedLines("point and direction do not span a line",
                                 P=[str(v) for v in P], D=[str(v) for v in D])

    @classmethod
    def affine(cls, point, direction):
        return cls(_vec(point) + (Fraction(1),), _vec(direction) + (Fraction(0),))

    @classmethod
    def at_infinity(cls, normal):
        """Line at infinity of the planes with normal n, oriented so that D x P = n."""
        n = _vec(normal)
        if len(n) != 3 or not any(n):
            raise MalformedLines("the normal of a line at infinity must be a nonzero 3-vector",
                                 normal=[str(v) for v in n])
        k = (max(range(3), key=lambda i: abs(n[i])) + 1) % 3
        e = tuple(Fraction(1 if i == k else 0) for i in range(3))
        p = _cross(n, e)
        d = _cross(p, n)
        return cls(p + (Fraction(0),), d + (Fraction(0),))

    @property
    def is_at_infinity(self):
        return self.P[W] == 0 and self.D[W] == 0

    def plucker(self):
        return tuple(self.P[i] * self.D[j] - self.P[j] * self.D[i]
                     for i, j in itertools.combinations(range(4), 2))

    def same_oriented_line(self, other):
        a, b = self.plucker(), other.plucker()
        k = next(i for i, v in enumerate(a) if v != 0)
        ratio = b[k] / a[k]
        return ratio > 0 and all(ratio * x == y for x, y in zip(a, b))

    def reversed(self):
        return ProjLine(self.P, tuple(-v for v in self.D))

    def transformed(self, matrix):
        return ProjLine(_apply(matrix, self.P), _apply(matrix, self.D))

    def affine_form(self):
        """(point, direction) in the chart w = 1, orientation preserved."""
        if self.is_at_infinity:
            raise DegenerateChart("line lies at infinity", normal=[str(v) for v in self.normal()])
        pw, dw = self.P[W], self.D[W]
        if pw != 0:
            alpha, beta = 1 / pw, Fraction(0)
        else:
            alpha, beta = Fraction(0), 1 / dw
        point = tuple(alpha * p + beta * d for p, d in zip(self.P, self.D))
        direction = tuple(-dw * p + pw * d for p, d in zip(self.P, self.D))
        return point[:3], direction[:3]

    def normal(self):
        """Normal of the plane at infinity containing a line at infinity."""
        return _cross(self.D[:3], self.P[:3])

    def to_dict(self):
        if self.is_at_infinity:
            return {"infinity": [str(v) for v in self.normal()]}
        point, direction = self.affine_form()
        return {"point": [str(v) for v in point], "direction": [str(v) for v in direction]}


STANDARD_L0 = ProjLine(_unit(Z), _unit(Y))


def standard_line(c):
    """{z = c, y = c x}, oriented along increasing x."""
    c = Fraction(c)
    return ProjLine((0, 0, c, 1), (1, c, 0, 0))


def dlk_lines(l1, l2):
    det = det4([l1.P, l1.D, l2.P, l2.D])
    if det == 0:
        raise LinesIntersect("lines meet", first=l1.to_dict(), second=l2.to_dict())
    return 1 if det > 0 else -1


def is_hopf_config(lines):
    if len(lines) < 2:
        raise RangeViolation("a configuration needs at least two lines", count=len(lines))
    return all(dlk_lines(a, b) == 1 for a, b in itertools.combinations(lines, 2))


def standard_hyperboloid_config(n, with_infinity=False):
    if n < 1:
        raise RangeViolation("need at least one line", n=n)
    lines = [standard_line(i) for i in range(1, n + 1)]
    if with_infinity:
        lines.insert(0, STANDARD_L0)
    return lines


@dataclasses.dataclass(frozen=True)
class SlopeForm:
    """Affine line {(x, b + s x, f + e x)} with positive x-direction."""
    b: Fraction
    f: Fraction
    s: Fraction
    e: Fraction

    def line(self):
        return ProjLine((0, self.b, self.f, 1), (1, self.s, self.e, 0))

    def height(self, x):
        return self.f + self.e * x


def slope_form(line):
    if line.is_at_infinity:
        raise DegenerateChart("line lies at infinity", normal=[str(v) for v in line.normal()])
    point, direction = line.affine_form()
    if direction[X] <= 0:
        raise DegenerateChart("projection is not transverse to the plane x = 0",
                              direction=[str(v) for v in direction])
    d = tuple(v / direction[X] for v in direction)
    p = tuple(pv - point[X] * dv for pv, dv in zip(point, d))
    return SlopeForm(b=p[Y], f=p[Z], s=d[Y], e=d[Z])


def _canonical(line):
    if line.is_at_infinity:
        return STANDARD_L0 if line.same_oriented_line(STANDARD_L0) else line
    point, direction = line.affine_form()
    if direction[X] > 0:
        return slope_form(line).line()
    return ProjLine.affine(point, direction)


@dataclasses.dataclass(frozen=True)
class LinePath:
    """P(t) = P0 + t P1, D(t) = D0 + t D1 for t in [0, 1]."""
    P0: tuple
    P1: tuple
    D0: tuple
    D1: tuple

    @classmethod
    def stationary(cls, line):
        zero = (Fraction(0),) * 4
        return cls(line.P, zero, line.D, zero)

    @classmethod
    def between(cls, start, end):
        return cls(start.P, tuple(b - a for a, b in zip(start.P, end.P)),
                   start.D, tuple(b - a for a, b in zip(start.D, end.D)))

    @property
    def moving(self):
        return any(self.P1) or any(self.D1)

    def at(self, t):
        t = Fraction(t)
        return ProjLine(tuple(a + t * b for a, b in zip(self.P0, self.P1)),
                        tuple(a + t * b for a, b in zip(self.D0, self.D1)))

    def to_dict(self):
        return {key: [str(v) for v in getattr(self, key)] for key in ("P0", "P1", "D0", "D1")}

    @classmethod
    def from_dict(cls, data):
        return cls(*(tuple(Fraction(v) for v in data[key]) for key in ("P0", "P1", "D0", "D1")))


@dataclasses.dataclass(frozen=True)
class Stage:
    kind: str
    label: str
    paths: tuple
    # N for stages moving every line along (I + t N)
    matrix: tuple = None

    def start_lines(self):
        return [path.at(0) for path in self.paths]

    def end_lines(self):
        return [path.at(1) for path in self.paths]

    def to_dict(self):
        data = {"kind": self.kind, "label": self.label, "paths": [p.to_dict() for p in self.paths]}
        if self.matrix is not None:
            data["matrix"] = [[str(v) for v in row] for row in self.matrix]
        return data

    @classmethod
    def from_dict(cls, data):
        matrix = data.get("matrix")
        if matrix is not None:
            matrix = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        return cls(data["kind"], data.get("label", ""),
                   tuple(LinePath.from_dict(p) for p in data["paths"]), matrix)


@dataclasses.dataclass(frozen=True)
class IsotopyScript:
    initial: tuple
    stages: tuple
    # index of the input line sent to the standard line at infinity, None when it is virtual
    l0_index: int = None

    def final_lines(self):
        return list(self.stages[-1].end_lines()) if self.stages else list(self.initial)

    def slopes(self):
        result = []
        for index, line in enumerate(self.final_lines()):
            result.append(None if index == self.l0_index else slope_form(line).s)
        return result

    def to_dict(self):
        return {
            "lines": [line.to_dict() for line in self.initial],
            "initial": [LinePath.stationary(line).to_dict() for line in self.initial],
            "l0": self.l0_index,
            "slopes": [None if s is None else str(s) for s in self.slopes()],
            "stages": [stage.to_dict() for stage in self.stages],
        }

    @classmethod
    def from_dict(cls, data):
        initial = tuple(LinePath.from_dict(p).at(0) for p in data["initial"])
        return cls(initial, tuple(Stage.from_dict(s) for s in data["stages"]), data.get("l0"))


def _is_standard_line(line):
    try:
        form = slope_form(line)
    except DegenerateChart:
        return False
    return form.b == 0 and form.e == 0 and form.f == form.s


def is_standard_config(lines, l0_index=None):
    for index, line in enumerate(lines):
        if index == l0_index or line.is_at_infinity:
            if not line.same_oriented_line(STANDARD_L0):
                return False
        elif not _is_standard_line(line):
            return False
    slopes = [slope_form(l).s for i, l in enumerate(lines) if not l.is_at_infinity and i != l0_index]
    return len(set(slopes)) == len(slopes)


def final_equations_hold(script):
    """The final configuration is {z = c_i, y = c_i x} (plus l0), exactly."""
    return is_standard_config(script.final_lines(), script.l0_index)


def _transform_stage(state, matrix, kind, label):
    paths = tuple(LinePath(line.P, _apply(matrix, line.P), line.D, _apply(matrix, line.D))
                  for line in state)
    return Stage(kind, label, paths, tuple(tuple(row) for row in matrix))


def _chart_matrix(l0):
    """A matrix of positive determinant sending l0's (P, D) to (e_z, e_y)."""
    basis = [_unit(k) for k in range(4)]
    for b1, b4 in itertools.permutations(basis, 2):
        columns = [b1, l0.D, l0.P, b4]
        det = det4(columns)
        if det == 0:
            continue
        if det < 0:
            columns[0] = tuple(-v for v in b1)
        A = _columns(columns).inv()
        return [[_fraction(A[r, c]) for c in range(4)] for r in range(4)]
    raise DegenerateChart("could not complete l0 to a basis", line=l0.to_dict())


def _gl_plus_factors(A):
    """Stages (kind, N) whose paths I + t N, applied in order, compose to A (det A > 0)."""
    M = [list(row) for row in A]
    ops = []

    def add_row(i, j, lam):
        M[i] = [a + lam * b for a, b in zip(M[i], M[j])]
        ops.append((i, j, lam))

    for j in range(4):
        if M[j][j] == 0:
            pivot = next(i for i in range(j + 1, 4) if M[i][j] != 0)
            add_row(j, pivot, Fraction(1))
        for i in range(4):
            if i != j and M[i][j] != 0:
                add_row(i, j, -M[i][j] / M[j][j])
    diagonal = [M[k][k] for k in range(4)]

    factors = []
    if any(abs(d) != 1 for d in diagonal):
        N = [[abs(diagonal[r]) - 1 if r == c else Fraction(0) for c in range(4)] for r in range(4)]
        factors.append(("scale", N))
    negative = [k for k in range(4) if diagonal[k] < 0]
    for i, j in zip(negative[::2], negative[1::2]):
        # half turn in the (i, j) plane as six shears
        for lam, (r, c) in ((-1, (i, j)), (1, (j, i)), (-1, (i, j))) * 2:
            factors.append(("shear", _elementary(r, c, lam)))
    for i, j, lam in reversed(ops):
        factors.append(("shear", _elementary(i, j, -lam)))
    return factors


def _crossing_heights(forms):
    heights = []
    for a, b in itertools.combinations(forms, 2):
        if a.s == b.s:
            continue
        x = (b.b - a.b) / (a.s - b.s)
        heights.extend((a.height(x), b.height(x)))
    return heights


def _shear_parameter(forms):
    for k in range(1, 65):
        for lam in (Fraction(1, k), Fraction(-1, k)):
            slopes = [form.s + lam * form.e for form in forms]
            if len(set(slopes)) == len(slopes):
                return lam
    raise DegenerateChart("no shear separates the projected slopes",
                          slopes=[str(form.s) for form in forms])


def standardize(lines):
    lines = [line if isinstance(line, ProjLine) else ProjLine(*line) for line in lines]
    if not lines:
        raise RangeViolation("need at least one line", count=0)
    if len(lines) >= 2 and not is_hopf_config(lines):
        raise NotHopf("some pair of lines is linked negatively",
                      pairs=[[i, j] for i, j in itertools.combinations(range(len(lines)), 2)
                             if dlk_lines(lines[i], lines[j]) != 1])

    at_infinity = [i for i, line in enumerate(lines) if line.is_at_infinity]
    if at_infinity:
        l0 = at_infinity[0]
    elif all(line.affine_form()[1][X] > 0 for line in lines):
        l0 = None
    else:
        l0 = 0
    if is_standard_config(lines, l0):
        return IsotopyScript(tuple(lines), (), l0)

    stages = []
    state = [_canonical(line) for line in lines]

    def push(stage):
        stages.append(stage)
        state[:] = [_canonical(line) for line in stage.end_lines()]

    def per_line(kind, index, end):
        paths = tuple(LinePath.between(line, end) if i == index else LinePath.stationary(line)
                      for i, line in enumerate(state))
        push(Stage(kind, f"{kind} line {index}", paths))

    if l0 is not None and not state[l0].same_oriented_line(STANDARD_L0):
        A = _chart_matrix(state[l0])
        for k, (kind, N) in enumerate(_gl_plus_factors(A)):
            push(_transform_stage(state, N, kind, f"chart {k}"))

    others = [i for i in range(len(lines)) if i != l0]
    forms = {i: slope_form(state[i]) for i in others}
    slopes = [forms[i].s for i in others]
    if len(set(slopes)) != len(slopes):
        lam = _shear_parameter([forms[i] for i in others])
        push(_transform_stage(state, _elementary(Y, Z, lam), "shear", f"shear y += {lam} z"))
        forms = {i: slope_form(state[i]) for i in others}

    heights = _crossing_heights([forms[i] for i in others])
    s_min = min(form.s for form in forms.values())
    if heights and max(heights) >= s_min:
        drop = math.floor(max(heights) - s_min) + 1
        push(_transform_stage(state, _elementary(Z, W, -drop), "shift", f"shift z -= {drop}"))
        forms = {i: slope_form(state[i]) for i in others}

    order = sorted(others, key=lambda i: forms[i].s, reverse=True)
    for i in order:
        form = forms[i]
        if form.e != 0 or form.f != form.s:
            per_line("rotate", i, SlopeForm(form.b, form.s, form.s, Fraction(0)).line())
    for i in order:
        form = slope_form(state[i])
        if form.b != 0:
            per_line("translate", i, standard_line(form.s))
    return IsotopyScript(tuple(lines), tuple(stages), l0)


@dataclasses.dataclass(frozen=True)
class PairCertificate:
    stage: int
    pair: tuple
    coefficients: tuple
    sturm_roots: int
    dlk: int

    def to_dict(self):
        return {
            "stage": self.stage,
            "pair": list(self.pair),
            "polynomial": [str(c) for c in self.coefficients],
            "sturm_roots": self.sturm_roots,
            "dlk": self.dlk,
        }


@dataclasses.dataclass(frozen=True)
class Certificate:
    entries: tuple

    @property
    def verified(self):
        return all(entry.sturm_roots == 0 for entry in self.entries)

    def to_dict(self):
        return {"verified": self.verified, "pairs": [entry.to_dict() for entry in self.entries]}


def _coefficients(expr):
    """Ascending rational coefficients of a polynomial in t."""
    poly = sp.Poly(sp.expand(expr), sturm.T, domain="QQ")
    return [_fraction(c) for c in reversed(poly.all_coeffs())]


def _matrix_factor(stage):
    """det(I + t N), after checking every path follows N."""
    for index, path in enumerate(stage.paths):
        if _apply(stage.matrix, path.P0) != path.P1 or _apply(stage.matrix, path.D0) != path.D1:
            raise CertificateFailed("stage path does not follow its matrix", line=index)
    return (sp.eye(4) + sturm.T * _matrix(stage.matrix)).det(method="berkowitz")


def pair_polynomial(stage, i, j, factor=None):
    """Ascending coefficients of det[P_i(t), D_i(t), P_j(t), D_j(t)] along the stage."""
    a, b = stage.paths[i], stage.paths[j]
    start = _columns([a.P0, a.D0, b.P0, b.D0])
    if factor is not None:
        return _coefficients(start.det() * factor)
    velocity = _columns([a.P1, a.D1, b.P1, b.D1])
    if velocity.is_zero_matrix:
        return _coefficients(start.det())
    return _coefficients((start + sturm.T * velocity).det(method="berkowitz"))


def verify_script(script):
    entries = []
    previous = list(script.initial)
    for index, stage in enumerate(script.stages):
        start = stage.start_lines()
        if len(start) != len(previous):
            raise CertificateFailed("stage has the wrong number of lines", stage=index)
        for line_index, (before, after) in enumerate(zip(previous, start)):
            if not before.same_oriented_line(after):
                raise CertificateFailed("stage does not start where the previous one ended",
                                        stage=index, line=line_index)
        factor = _matrix_factor(stage) if stage.matrix is not None else None
        for i, j in itertools.combinations(range(len(start)), 2):
            coefficients = pair_polynomial(stage, i, j, factor)
            poly = sturm.as_poly(coefficients)
            if poly.is_zero:
                raise CollisionFound("lines coincide along the stage", stage=index, pair=[i, j],
                                     witness=["0", "1"])
            roots = sturm.count_roots(poly)
            if roots:
                lo, hi = sturm.root_interval(poly)
                raise CollisionFound("lines cross during the stage", stage=index, pair=[i, j],
                                     witness=[str(lo), str(hi)], sturm_roots=roots)
            dlk = 1 if coefficients[0] > 0 else -1
            if dlk != dlk_lines(previous[i], previous[j]):
                raise CertificateFailed("linking number changed between stages", stage=index, pair=[i, j])
            entries.append(PairCertificate(index, (i, j), tuple(coefficients), roots, dlk))
        previous = stage.end_lines()
    return Certificate(tuple(entries))


def random_positive_matrix(rng, transvections=6):
    """A random rational matrix of positive determinant."""
    M = sp.diag(*[sp.Rational(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(4)])
    for _ in range(transvections):
        i, j = rng.sample(range(4), 2)
        E = sp.eye(4)
        E[i, j] = sp.Rational(rng.randint(-3, 3), rng.randint(1, 3))
        M = E * M
    return [[_fraction(M[r, c]) for c in range(4)] for r in range(4)]


def random_hopf_configuration(n, rng):
    """n standard lines with distinct random slopes, moved by a random orientation preserving map."""
    if n < 1:
        raise RangeViolation("need at least one line", n=n)
    slopes = set()
    while len(slopes) < n:
        slopes.add(Fraction(rng.randint(-12, 12), rng.randint(1, 4)))
    M = random_positive_matrix(rng)
    return [_canonical(standard_line(c).transformed(M)) for c in sorted(slopes)]


def collision_fixture():
    """Two standard lines; the second is lowered from z = 2 to z = 0 and passes through the first."""
    fixed, moving = standard_line(1), standard_line(2)
    lowered = ProjLine((0, 0, 0, 1), moving.D)
    stage = Stage("translate", "lower line 1 through line 0",
                  (LinePath.stationary(fixed), LinePath.between(moving, lowered)))
    return IsotopyScript((fixed, moving), (stage,), None)
