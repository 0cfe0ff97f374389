"""Point configurations and their line structure.

A line is a maximal subset of affine dimension one.  This module groups
points into lines exactly (rank-one tests on difference vectors), counts
lines through each point, classifies ordinary versus special lines,
projects configurations generically to the plane, and evaluates the
per-dimension lower-bound constants used by the verification harness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import fields
from .fields import COMPLEX_FLOAT, EXACT_MODES, GAUSSIAN, RATIONAL
from .errors import GenericProjectionError
from .matrix import Matrix, rank

DEFAULT_POINT_TOL = 1e-9


class PointConfig:
    """n distinct points in field^d with a collinearity tolerance for floats."""

    __slots__ = ("field", "dim", "points", "tol", "_affine_dim", "_int_points")

    def __init__(self, field, points, tol=None):
        if field not in fields.FIELD_MODES:
            raise fields.FieldModeError(f"unknown field mode {field!r}")
        pts = [tuple(fields.coerce_scalar(x, field) for x in p) for p in points]
        if not pts:
            raise ValueError("need at least one point")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points of mixed dimension")
        if field == COMPLEX_FLOAT:
            tol = DEFAULT_POINT_TOL if tol is None else float(tol)
            if not tol > 0:
                raise ValueError("complex_float configs need tol > 0")
        else:
            if tol not in (None, 0, 0.0):
                raise ValueError("exact configs must have tol = 0")
            tol = 0.0
        self.field = field
        self.dim = d
        self.points = pts
        self.tol = tol
        self._affine_dim = None
        self._int_points = self._compute_int_points()
        self._check_distinct()

    def _compute_int_points(self):
        if self.field != RATIONAL:
            return None
        l = 1
        for p in self.points:
            for x in p:
                l = l * x.denominator // math.gcd(l, x.denominator)
        return [tuple(int(x * l) for x in p) for p in self.points]

    def _check_distinct(self):
        if self.field in EXACT_MODES:
            if len(set(self.points)) != len(self.points):
                raise ValueError("duplicate points")
        else:
            scale = max(
                (abs(x) for p in self.points for x in p), default=1.0
            )
            n = len(self.points)
            for i in range(n):
                for j in range(i + 1, n):
                    if all(
                        abs(a - b) <= self.tol * max(scale, 1e-300)
                        for a, b in zip(self.points[i], self.points[j])
                    ):
                        raise ValueError(f"points {i} and {j} coincide within tol")

    def __len__(self):
        return len(self.points)

    def affine_dim(self) -> int:
        if self._affine_dim is None:
            if len(self.points) == 1:
                self._affine_dim = 0
            else:
                base = self.points[0]
                diffs = [
                    [p[i] - base[i] for i in range(self.dim)]
                    for p in self.points[1:]
                ]
                m = Matrix(
                    self.field,
                    diffs,
                    self.tol if self.field == COMPLEX_FLOAT else None,
                )
                self._affine_dim = rank(m)
        return self._affine_dim

    def to_json(self):
        return {
            "field": self.field,
            "dim": self.dim,
            "tol": self.tol,
            "points": [
                [fields.scalar_to_json(x, self.field) for x in p] for p in self.points
            ],
        }

    @classmethod
    def from_json(cls, obj):
        field = obj["field"]
        pts = [
            [fields.scalar_from_json(v, field) for v in p] for p in obj["points"]
        ]
        return cls(field, pts, obj.get("tol") if field == COMPLEX_FLOAT else None)

    def __repr__(self):
        return f"PointConfig({self.field!r}, n={len(self.points)}, dim={self.dim})"


@dataclass(frozen=True)
class Line:
    members: frozenset
    direction: tuple


@dataclass
class LineSet:
    lines: list
    point_to_lines: dict

    def through(self, i):
        return self.point_to_lines.get(i, [])

    def special(self):
        return [k for k, ln in enumerate(self.lines) if len(ln.members) >= 3]

    def to_json(self):
        return {
            "count": len(self.lines),
            "lines": [
                {
                    "members": sorted(ln.members),
                    "size": len(ln.members),
                    "ordinary": len(ln.members) == 2,
                }
                for ln in self.lines
            ],
        }


def _collinear_exact(p, q, r):
    # 2x2 minors of the difference vectors (q-p, r-p) must all vanish
    d = len(p)
    u = [q[i] - p[i] for i in range(d)]
    v = [r[i] - p[i] for i in range(d)]
    for a in range(d):
        for b in range(a + 1, d):
            if u[a] * v[b] != u[b] * v[a]:
                return False
    return True


def _collinear_float(p, q, r, tol):
    d = len(p)
    u = [q[i] - p[i] for i in range(d)]
    v = [r[i] - p[i] for i in range(d)]
    su = max((abs(x) for x in u), default=0.0)
    sv = max((abs(x) for x in v), default=0.0)
    thresh = tol * max(su * sv, 1e-300)
    for a in range(d):
        for b in range(a + 1, d):
            if abs(u[a] * v[b] - u[b] * v[a]) > thresh:
                return False
    return True


def _collinear_tester(config: PointConfig):
    if config._int_points is not None:
        pts = config._int_points
        return lambda i, j, k: _collinear_exact(pts[i], pts[j], pts[k])
    if config.field in EXACT_MODES:
        pts = config.points
        return lambda i, j, k: _collinear_exact(pts[i], pts[j], pts[k])
    pts = config.points
    tol = config.tol
    return lambda i, j, k: _collinear_float(pts[i], pts[j], pts[k], tol)


def _reduced_direction(p, q, field):
    d = [b - a for a, b in zip(p, q)]
    lead = next((x for x in d if x), None)
    if lead is None:
        return tuple(d)
    if field == COMPLEX_FLOAT:
        lead = max(d, key=abs)
    return tuple(x / lead for x in d)


def lines(config: PointConfig) -> LineSet:
    """Group all points into maximal collinear subsets.

    Every unordered pair of points ends up in exactly one line.
    """
    n = len(config)
    if n < 2:
        raise ValueError("need at least two points")
    collinear = _collinear_tester(config)
    covered = set()
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in covered:
                continue
            members = [i, j]
            for k in range(n):
                if k != i and k != j and collinear(i, j, k):
                    members.append(k)
            members.sort()
            for a_pos in range(len(members)):
                for b_pos in range(a_pos + 1, len(members)):
                    covered.add((members[a_pos], members[b_pos]))
            direction = _reduced_direction(
                config.points[members[0]], config.points[members[1]], config.field
            )
            out.append(Line(frozenset(members), direction))
    p2l = {}
    for idx, ln in enumerate(out):
        for m in ln.members:
            p2l.setdefault(m, []).append(idx)
    return LineSet(out, p2l)


@dataclass
class PointIncidence:
    lines_through: int  # l_i
    special_through: int  # l_i'
    special_neighbors: int  # k_i: points of S \ {v_i} on special lines through v_i


def classify(config: PointConfig, line_set: LineSet | None = None):
    """Per-point incidence counts (lines, special lines, special neighbors)."""
    ls = line_set if line_set is not None else lines(config)
    n = len(config)
    out = []
    for i in range(n):
        through = ls.through(i)
        l_i = len(through)
        special = [ls.lines[k] for k in through if len(ls.lines[k].members) >= 3]
        lp_i = len(special)
        k_i = sum(len(ln.members) - 1 for ln in special)
        if config.field in EXACT_MODES:
            assert n - 1 - l_i + lp_i == k_i
        out.append(PointIncidence(l_i, lp_i, k_i))
    return out


def maxlines(config: PointConfig, line_set: LineSet | None = None):
    """(point index, count) with the most distinct lines through one point."""
    ls = line_set if line_set is not None else lines(config)
    best_i, best = 0, -1
    for i in range(len(config)):
        c = len(ls.through(i))
        if c > best:
            best_i, best = i, c
    return best_i, best


def generic_project_to_plane(config: PointConfig, seed=0) -> PointConfig:
    """Random integer linear map to the plane, verified to preserve all lines.

    Resamples up to ten times; raises GenericProjectionError if no sampled
    map preserves the collinearity structure.
    """
    import random as _random

    if config.affine_dim() < 2:
        raise ValueError("affine dimension below 2; nothing to project")
    rng = _random.Random(seed)
    original = lines(config)
    original_sets = sorted(sorted(ln.members) for ln in original.lines)
    for _ in range(10):
        t = [
            [rng.randint(-10**6, 10**6) for _ in range(config.dim)] for _ in range(2)
        ]
        imgs = []
        for p in config.points:
            imgs.append(
                tuple(
                    sum((fields.coerce_scalar(t[r][c], config.field) * p[c] for c in range(config.dim)), fields.zero(config.field))
                    for r in range(2)
                )
            )
        try:
            projected = PointConfig(
                config.field, imgs, config.tol if config.field == COMPLEX_FLOAT else None
            )
        except ValueError:
            continue  # collision: not generic
        new = lines(projected)
        new_sets = sorted(sorted(ln.members) for ln in new.lines)
        if new_sets == original_sets:
            return projected
    raise GenericProjectionError("projection not generic after 10 attempts")


def f_lower_bound(d: int) -> Fraction:
    """Lower bound on the guaranteed maxlines fraction in dimension d."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    return max(Fraction(1, 3), 1 - Fraction(4, d + 1))


def reduce_to_affine_dim(config: PointConfig) -> PointConfig:
    """Re-coordinatize onto a difference basis so ambient = affine dimension.

    Translates to the first point and expresses all differences in a basis
    of difference vectors; affine dependencies are preserved exactly.
    """
    ad = config.affine_dim()
    if ad == config.dim:
        return config
    if ad == 0:
        raise ValueError("configuration is a single point class")
    base = config.points[0]
    diffs = [
        [p[i] - base[i] for i in range(config.dim)] for p in config.points
    ]
    dmat = Matrix.from_columns(
        config.field,
        diffs,
        config.tol if config.field == COMPLEX_FLOAT else None,
    )
    from .matrix import rref as _rref

    ech, pivots, _ = _rref(dmat)
    basis_cols = [diffs[j] for j in pivots[:ad]]
    aug = Matrix.from_columns(
        config.field,
        basis_cols + diffs,
        config.tol if config.field == COMPLEX_FLOAT else None,
    )
    ech2, piv2, _ = _rref(aug)
    new_pts = []
    for k in range(len(diffs)):
        col = ad + k
        new_pts.append(tuple(ech2.data[r][col] for r in range(ad)))
    return PointConfig(
        config.field, new_pts, config.tol if config.field == COMPLEX_FLOAT else None
    )


def check_maxlines_bounds(config: PointConfig) -> dict:
    """Evaluate both guaranteed lower bounds on maxlines for this config.

    Returns a report dict; a failing bound on a full-dimensional exact
    configuration would falsify the underlying theorem.
    """
    n = len(config)
    ad = config.affine_dim()
    if ad < 2:
        return {"skipped": True, "reason": f"affine dimension {ad} < 2", "n": n}
    if ad != config.dim:
        return {
            "skipped": True,
            "reason": f"affine dimension {ad} below ambient {config.dim}; reduce first",
            "n": n,
        }
    point, m = maxlines(config)
    report = {
        "skipped": False,
        "n": n,
        "dim": ad,
        "maxlines": m,
        "argmax_point": point,
    }
    frac = f_lower_bound(ad)
    frac_bound = frac * n
    report["fraction_bound"] = str(frac_bound)
    report["fraction_bound_pass"] = Fraction(m) >= frac_bound
    if ad == 2:
        floor_bound = n // 3 + 1
        report["floor_bound"] = floor_bound
        report["floor_bound_pass"] = m >= floor_bound
    report["pass"] = report["fraction_bound_pass"] and report.get(
        "floor_bound_pass", True
    )
    return report
