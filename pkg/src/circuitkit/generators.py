"""Instance generators: structured families and seeded random instances."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .fields import COMPLEX_FLOAT, GAUSSIAN, RATIONAL, GaussianRational
from .matrix import Matrix, rank
from .points import PointConfig


def dowling(d: int, t: int) -> Matrix:
    """Rank-d cyclic geometry of order t: basis vectors plus e_i - z^k e_j.

    z is a t-th root of unity, so the matrix is exact for t in {1, 2, 4}
    and complex-float otherwise.  Column count is d + t * C(d, 2).
    """
    if d < 2 or t < 1:
        raise ValueError("need d >= 2 and t >= 1")
    if t == 1:
        field, zeta = RATIONAL, Fraction(1)
    elif t == 2:
        field, zeta = RATIONAL, Fraction(-1)
    elif t == 4:
        field, zeta = GAUSSIAN, GaussianRational(0, 1)
    else:
        field, zeta = COMPLEX_FLOAT, complex(math.cos(2 * math.pi / t), math.sin(2 * math.pi / t))
    cols = []
    for i in range(d):
        cols.append([1 if r == i else 0 for r in range(d)])
    power = [zeta**k for k in range(t)]
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(t):
                col = [0] * d
                col[i] = 1
                col[j] = -power[k]
                cols.append(col)
    return Matrix.from_columns(field, cols, 1e-9 if field == COMPLEX_FLOAT else None)


def half_circle(n: int, tol=1e-9) -> Matrix:
    """2 x n float matrix with columns evenly spaced on the upper half circle."""
    if n < 2:
        raise ValueError("need n >= 2")
    cols = [
        [math.cos(i * math.pi / n), math.sin(i * math.pi / n)] for i in range(n)
    ]
    return Matrix.from_columns(COMPLEX_FLOAT, cols, tol)


def unsigned_incidence_complete(v: int) -> Matrix:
    """v x C(v,2) unsigned node-edge incidence matrix of the complete graph."""
    if v < 3:
        raise ValueError("need v >= 3")
    cols = []
    for i in range(v):
        for j in range(i + 1, v):
            col = [0] * v
            col[i] = 1
            col[j] = 1
            cols.append(col)
    return Matrix.from_columns(RATIONAL, cols)


def grid_config(side: int) -> PointConfig:
    """side x side integer grid in the rational plane."""
    if side < 2:
        raise ValueError("need side >= 2")
    return PointConfig(RATIONAL, [(x, y) for x in range(side) for y in range(side)])


def random_config(d: int, n: int, seed=0, coord_range=9) -> PointConfig:
    """n distinct integer points with full affine dimension d."""
    if n < d + 1:
        raise ValueError("need n >= d + 1 for full affine dimension")
    rng = random.Random(seed)
    for _ in range(1000):
        pts = set()
        while len(pts) < n:
            pts.add(tuple(rng.randint(-coord_range, coord_range) for _ in range(d)))
        config = PointConfig(RATIONAL, sorted(pts))
        if config.affine_dim() == d:
            return config
    raise RuntimeError("failed to sample a full-dimensional configuration")


def random_special_config(seed=0, line_count=4, max_param=5) -> PointConfig:
    """Planar configuration in which every point lies on a special line.

    Built as a union of random lines carrying 3 to 5 points each; resamples
    until no line degenerates below three distinct points after merging.
    """
    from .points import classify, lines

    rng = random.Random(seed)
    for _ in range(200):
        pts = set()
        ok = True
        for _ in range(line_count):
            while True:
                base = (rng.randint(-12, 12), rng.randint(-12, 12))
                direction = (rng.randint(-4, 4), rng.randint(-4, 4))
                if direction != (0, 0):
                    break
            count = rng.randint(3, 5)
            params = rng.sample(range(-max_param, max_param + 1), count)
            for s in params:
                pts.add((base[0] + s * direction[0], base[1] + s * direction[1]))
        if len(pts) < 5:
            continue
        config = PointConfig(RATIONAL, sorted(pts))
        if config.affine_dim() != 2:
            continue
        incidences = classify(config, lines(config))
        if all(inc.special_neighbors >= 1 for inc in incidences):
            return config
        _ = ok
    raise RuntimeError("failed to sample a special-structure configuration")


def random_rational_matrix(seed, d, n, num_range=9, den_range=3) -> Matrix:
    rng = random.Random(seed)
    return Matrix(
        RATIONAL,
        [
            [
                Fraction(rng.randint(-num_range, num_range), rng.randint(1, den_range))
                for _ in range(n)
            ]
            for _ in range(d)
        ],
    )


def random_integer_matrix(seed, d, n, lo=-5, hi=5) -> Matrix:
    rng = random.Random(seed)
    return Matrix(
        RATIONAL, [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d)]
    )


def random_unit_column_matrix(seed, d, n) -> Matrix:
    """Random matrix with exactly unit-norm rational columns, full row rank.

    Columns come from the rational parametrization of the unit sphere:
    (2t, 1 - |t|^2) / (1 + |t|^2) for t in Q^(d-1).
    """
    rng = random.Random(seed)
    for _ in range(500):
        cols = []
        for _ in range(n):
            t = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(d - 1)]
            tsq = sum((x * x for x in t), Fraction(0))
            denom = 1 + tsq
            col = [2 * x / denom for x in t] + [(1 - tsq) / denom]
            cols.append(col)
        m = Matrix.from_columns(RATIONAL, cols)
        if rank(m) == d:
            return m
    raise RuntimeError("failed to sample a full-rank unit-column matrix")


def random_noncollinear_2xl(seed, l, coord_range=9) -> Matrix:
    """2 x l integer matrix with nonzero pairwise non-collinear columns."""
    rng = random.Random(seed)
    cols = []
    directions = set()
    attempts = 0
    while len(cols) < l:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("failed to sample non-collinear columns")
        c = (rng.randint(-coord_range, coord_range), rng.randint(-coord_range, coord_range))
        if c == (0, 0):
            continue
        g = math.gcd(abs(c[0]), abs(c[1]))
        norm = (c[0] // g, c[1] // g)
        if norm[0] < 0 or (norm[0] == 0 and norm[1] < 0):
            norm = (-norm[0], -norm[1])
        if norm in directions:
            continue
        directions.add(norm)
        cols.append(list(c))
    return Matrix.from_columns(RATIONAL, cols)


def random_ip_instance(seed):
    """Small feasible bounded integer program; sometimes repeats columns."""
    from .graver import IPInstance

    rng = random.Random(seed)
    d = rng.randint(1, 2)
    n = rng.randint(2, 5)
    cols = []
    for _ in range(n):
        if cols and rng.random() < 0.35:
            cols.append(list(cols[rng.randrange(len(cols))]))
        else:
            col = [rng.randint(-3, 3) for _ in range(d)]
            cols.append(col)
    a = [[cols[j][i] for j in range(n)] for i in range(d)]
    u = [rng.randint(1, 4) for _ in range(n)]
    x0 = [rng.randint(0, ui) for ui in u]
    b = [sum(a[i][j] * x0[j] for j in range(n)) for i in range(d)]
    c = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
    return IPInstance(a, b, u, c)
