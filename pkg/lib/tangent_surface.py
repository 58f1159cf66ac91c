"""
Tangent surface of the most symmetric MW-knot K = {z^d = w^(d-2)} in RP^3.

K is parametrized on the unit torus of the radius sqrt(2) sphere by
gamma(theta) = (e^{i(d-2)theta}, e^{i d theta}), theta in [0, pi). Points of
C^2 are stored as real 4-vectors (Re z, Im z, Re w, Im w).

A plane of RP^3 is the projectivization of a 3-space n^perp. The real tangent
line at theta is span(gamma, gamma'), and it meets the plane in
v = (n.gamma') gamma - (n.gamma) gamma'.

Pencil names: `lprime` is the pencil whose sections are d-hypocycloids and
`l` the one whose sections are (d-2)-epicycloids. With gamma written as
(e^{i(d-2)theta}, e^{i d theta}), the hypocycloid planes are the ones that
contain the axis {w = 0}, so `lprime` planes contain {w = 0} and `l` planes
contain {z = 0}. Writing K as {w^d = z^(d-2)} exchanges the two axes and
keeps the names.

Knots and tangent lines are drawn in the gnomonic chart of RP^3 = S^3/(+-1)
about CENTER: x -> (x.b1, x.b2, x.b3) / (x.CENTER). Antipodal points land on
the same chart point, so the chart images close up for every d.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json

import numpy as np
import svgwrite

import config
from lib.errors import DegenerateChart, DegeneratePlane, RangeViolation

# pencil name -> axis line its planes contain
PENCILS = {"lprime": "w=0", "l": "z=0"}

# chart center, off the torus and off both axis lines {z = 0}, {w = 0}
_CENTER_ANGLES = (np.pi / 6, 0.3, 0.7)
CENTER = np.array([
    np.cos(_CENTER_ANGLES[0]) * np.cos(_CENTER_ANGLES[1]),
    np.cos(_CENTER_ANGLES[0]) * np.sin(_CENTER_ANGLES[1]),
    np.sin(_CENTER_ANGLES[0]) * np.cos(_CENTER_ANGLES[2]),
    np.sin(_CENTER_ANGLES[0]) * np.sin(_CENTER_ANGLES[2]),
])
_CHART_BASIS = np.linalg.svd(CENTER[None, :])[2][1:]
RADIUS = np.sqrt(2.0)

# orthographic camera for 3D samples: screen axes in chart coordinates
CAMERA = {
    "right": [1 / np.sqrt(2), -1 / np.sqrt(2), 0.0],
    "up": [1 / np.sqrt(6), 1 / np.sqrt(6), 2 / np.sqrt(6)],
}
VIEWBOX = (-4.0, -4.0, 8.0, 8.0)
PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"]


@dataclasses.dataclass(frozen=True)
class CurveSample:
    d: int
    theta: np.ndarray
    points: np.ndarray
    chart: np.ndarray
    curve: str = "mw_knot"

    @property
    def columns(self):
        return ("theta", "x", "y", "z")

    def rows(self):
        return np.column_stack([self.theta, self.chart])

    def screen(self):
        right, up = np.array(CAMERA["right"]), np.array(CAMERA["up"])
        return np.column_stack([self.chart @ right, self.chart @ up])

    def pieces(self):
        """Screen polylines, broken where the curve crosses the plane at infinity of the chart."""
        side = np.sign(self.points @ CENTER)
        breaks = np.flatnonzero(side[1:] != side[:-1]) + 1
        return [piece for piece in np.split(self.screen(), breaks) if len(piece) > 1]

    def metadata(self):
        return {
            "curve": self.curve,
            "degree": self.d,
            "samples": int(len(self.theta)),
            "chart": "gnomonic about " + ",".join(f"{v:.6f}" for v in CENTER),
            "camera": CAMERA,
            "viewBox": list(VIEWBOX),
        }


@dataclasses.dataclass(frozen=True)
class SectionCurve:
    d: int
    pencil: str
    phi: float
    theta: np.ndarray
    points: np.ndarray
    cusps: tuple
    closure_gap: float
    cusp_threshold: float

    @property
    def columns(self):
        return ("theta", "x", "y")

    def rows(self):
        return np.column_stack([self.theta, self.points])

    def screen(self):
        return self.points

    def pieces(self):
        return [self.points]

    @property
    def closed(self):
        return self.closure_gap < config.CLOSURE_TOLERANCE

    def metadata(self):
        return {
            "curve": "section",
            "degree": self.d,
            "pencil": self.pencil,
            "axis": PENCILS.get(self.pencil, "custom"),
            "phi": self.phi,
            "samples": int(len(self.theta)),
            "cusps": len(self.cusps),
            "cusp_threshold": self.cusp_threshold,
            "closure_tolerance": config.CLOSURE_TOLERANCE,
            "closure_gap": self.closure_gap,
            "camera": "plane chart (v.e1 / v.e0, v.e2 / v.e0)",
            "viewBox": list(VIEWBOX),
        }


def gamma(d, theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([
        np.cos((d - 2) * theta), np.sin((d - 2) * theta),
        np.cos(d * theta), np.sin(d * theta),
    ], axis=-1)


def gamma_prime(d, theta):
    theta = np.asarray(theta, dtype=float)
    return np.stack([
        -(d - 2) * np.sin((d - 2) * theta), (d - 2) * np.cos((d - 2) * theta),
        -d * np.sin(d * theta), d * np.cos(d * theta),
    ], axis=-1)


def _grid(m):
    return np.arange(m) * (np.pi / m)


def gnomonic(points):
    points = np.atleast_2d(points)
    return (points @ _CHART_BASIS.T) / (points @ CENTER)[:, None]


def mw_knot_sample(d, m):
    if d < 3:
        raise RangeViolation("degree must be at least 3", d=d)
    if m < 4:
        raise RangeViolation("need at least 4 samples", m=m)
    theta = _grid(m)
    points = gamma(d, theta)
    return CurveSample(d, theta, points, gnomonic(points))


def pencil_frame(pencil, phi):
    """(normal, e0, e1, e2): e0 completes the axis line e1, e2 to a basis of the plane."""
    c, s = np.cos(phi), np.sin(phi)
    if pencil == "lprime":
        return (np.array([0.0, 0.0, -s, c]), np.array([0.0, 0.0, c, s]),
                np.array([1.0, 0.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0, 0.0]))
    if pencil == "l":
        return (np.array([-s, c, 0.0, 0.0]), np.array([c, s, 0.0, 0.0]),
                np.array([0.0, 0.0, 1.0, 0.0]), np.array([0.0, 0.0, 0.0, 1.0]))
    raise RangeViolation("pencil must be 'lprime' or 'l'", pencil=pencil)


def plane_frame(normal):
    """Orthonormal (normal, e0, e1, e2) for an arbitrary plane n^perp."""
    n = np.asarray(normal, dtype=float)
    n = n / np.linalg.norm(n)
    _, _, vt = np.linalg.svd(n[None, :])
    e0, e1, e2 = vt[1], vt[2], vt[3]
    return n, e0, e1, e2


def _intersections(d, theta, frame, threshold):
    n, e0, e1, e2 = frame
    g, gp = gamma(d, theta), gamma_prime(d, theta)
    ng, ngp = g @ n, gp @ n
    conditioning = np.hypot(ng, ngp)
    worst = int(np.argmin(conditioning))
    if conditioning[worst] < threshold:
        raise DegeneratePlane("a tangent line lies in the plane", theta=float(theta[worst]),
                              conditioning=float(conditioning[worst]), threshold=threshold)
    v = ngp[:, None] * g - ng[:, None] * gp
    w0 = v @ e0
    if np.min(np.abs(w0)) < threshold:
        raise DegenerateChart("section reaches the line at infinity of the plane chart",
                              theta=float(theta[int(np.argmin(np.abs(w0)))]))
    return np.column_stack([(v @ e1) / w0, (v @ e2) / w0])


def discrete_speed(points):
    """Central-difference speed of a closed, uniformly sampled curve."""
    return np.linalg.norm(np.roll(points, -1, axis=0) - np.roll(points, 1, axis=0), axis=1) / 2


def cusp_indices(points, threshold=None):
    threshold = config.CUSP_THRESHOLD if threshold is None else threshold
    if len(points) < 3:
        return ()
    speed = discrete_speed(points)
    minima = (speed < np.roll(speed, 1)) & (speed <= np.roll(speed, -1))
    low = speed < threshold * speed.max()
    return tuple(int(i) for i in np.flatnonzero(minima & low))


def _section_from_frame(d, pencil, phi, m, frame, threshold, cusp_threshold):
    if d < 3:
        raise RangeViolation("degree must be at least 3", d=d)
    if m < 512:
        raise RangeViolation("sections need at least 512 samples", m=m)
    theta = _grid(m)
    points = _intersections(d, theta, frame, threshold)
    end = _intersections(d, np.array([np.pi]), frame, threshold)[0]
    gap = float(np.linalg.norm(end - points[0]))
    cusps = tuple(float(theta[i]) for i in cusp_indices(points, cusp_threshold))
    return SectionCurve(d, pencil, float(phi), theta, points, cusps, gap, cusp_threshold)


def section(d, pencil, phi, m=None, threshold=None, cusp_threshold=None):
    m = config.DEFAULT_SAMPLES if m is None else m
    threshold = config.DEGENERATE_PLANE_THRESHOLD if threshold is None else threshold
    cusp_threshold = config.CUSP_THRESHOLD if cusp_threshold is None else cusp_threshold
    return _section_from_frame(d, pencil, phi, m, pencil_frame(pencil, phi), threshold, cusp_threshold)


def section_by_normal(d, normal, m=None, threshold=None, cusp_threshold=None):
    m = config.DEFAULT_SAMPLES if m is None else m
    threshold = config.DEGENERATE_PLANE_THRESHOLD if threshold is None else threshold
    cusp_threshold = config.CUSP_THRESHOLD if cusp_threshold is None else cusp_threshold
    return _section_from_frame(d, "custom", 0.0, m, plane_frame(normal), threshold, cusp_threshold)


def cusp_count(c):
    return len(c.cusps)


def expected_cusps(d, pencil):
    return d if pencil == "lprime" else d - 2


def symmetry_order(d, pencil):
    return expected_cusps(d, pencil)


def rotational_residual(c, fold=None):
    """max |Z(theta + pi/k) - e^{-+2 pi i/k} Z(theta)| after centering, minimized over the sign."""
    if c.pencil not in PENCILS:
        raise RangeViolation("symmetry is defined for the two pencils only", pencil=c.pencil)
    fold = symmetry_order(c.d, c.pencil) if fold is None else fold
    shifted = _intersections(c.d, c.theta + np.pi / fold, pencil_frame(c.pencil, c.phi),
                             config.DEGENERATE_PLANE_THRESHOLD)
    z = (c.points[:, 0] - c.points[:, 0].mean()) + 1j * (c.points[:, 1] - c.points[:, 1].mean())
    zs = (shifted[:, 0] - shifted[:, 0].mean()) + 1j * (shifted[:, 1] - shifted[:, 1].mean())
    residuals = [np.max(np.abs(zs - np.exp(sign * 2j * np.pi / fold) * z)) for sign in (-1, 1)]
    return float(min(residuals))


def min_separation(c, gap=8, block=256):
    """Smallest distance between samples more than `gap` steps apart (cyclically)."""
    points = c.points
    m = len(points)
    index = np.arange(m)
    best = np.inf
    for start in range(0, m, block):
        rows = points[start:start + block]
        distance = np.linalg.norm(rows[:, None, :] - points[None, :, :], axis=2)
        steps = np.abs(index[start:start + block, None] - index[None, :])
        steps = np.minimum(steps, m - steps)
        distance[steps <= gap] = np.inf
        best = min(best, float(distance.min()))
    return best


def tangent_segment(d, theta, half_length=0.5, m=64):
    """Samples of the tangent line at theta (a great circle of S^3) in the gnomonic chart."""
    g = gamma(d, theta)
    gp = gamma_prime(d, theta)
    unit = RADIUS * gp / np.linalg.norm(gp)
    s = np.linspace(-half_length, half_length, m)
    points = np.cos(s)[:, None] * g[None, :] + np.sin(s)[:, None] * unit[None, :]
    return CurveSample(d, s, points, gnomonic(points), curve="tangent_line")


def section_grid(d, pencil, k, m=None):
    """k sections of the pencil at phi = j pi / k."""
    return [section(d, pencil, j * np.pi / k, m) for j in range(k)]


def emit_csv(c):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(c.columns)
    for row in c.rows():
        writer.writerow(["%.12e" % v for v in row])
    return buffer.getvalue().encode("utf-8")


def emit_svg(curves):
    if not isinstance(curves, (list, tuple)):
        curves = [curves]
    minx, miny, width, height = VIEWBOX
    dwg = svgwrite.Drawing(size=("512px", "512px"), viewBox=f"{minx} {miny} {width} {height}")
    dwg.set_desc(desc=json.dumps([c.metadata() for c in curves], sort_keys=True))
    for i, c in enumerate(curves):
        for piece in c.pieces():
            points = [(float(x), float(-y)) for x, y in piece]
            dwg.add(dwg.polyline(points=points, fill="none", stroke=PALETTE[i % len(PALETTE)],
                                 stroke_width=0.01))
    return dwg.tostring().encode("utf-8")


def emit(c, fmt):
    if fmt == "csv":
        return emit_csv(c)
    if fmt == "svg":
        return emit_svg(c)
    raise RangeViolation("format must be csv or svg", format=fmt)
