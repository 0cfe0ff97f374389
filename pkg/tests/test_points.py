import random
from fractions import Fraction

import pytest

from circuitkit.errors import GenericProjectionError
from circuitkit.fields import COMPLEX_FLOAT, RATIONAL
from circuitkit.generators import grid_config, random_config
from circuitkit.points import (
    PointConfig,
    check_maxlines_bounds,
    classify,
    f_lower_bound,
    generic_project_to_plane,
    lines,
    maxlines,
    reduce_to_affine_dim,
)


def test_grid_line_census():
    # brute force over all 36 pairs: 3 rows + 3 columns + 2 diagonals special,
    # 12 ordinary lines
    ls = lines(grid_config(3))
    assert len(ls.lines) == 20
    sizes = sorted(len(ln.members) for ln in ls.lines)
    assert sizes.count(3) == 8
    assert sizes.count(2) == 12


def test_three_collinear_points():
    ls = lines(PointConfig(RATIONAL, [(0, 0), (1, 1), (2, 2)]))
    assert len(ls.lines) == 1
    assert ls.lines[0].members == frozenset({0, 1, 2})


def test_general_position_pair_count():
    pts = [(0, 0), (1, 0), (0, 1), (2, 3)]
    ls = lines(PointConfig(RATIONAL, pts))
    assert len(ls.lines) == 6  # n(n-1)/2, no 3 collinear


def test_duplicate_points_rejected():
    with pytest.raises(ValueError):
        PointConfig(RATIONAL, [(0, 0), (0, 0)])


def test_pair_cover_identity():
    rng = random.Random(5)
    for seed in range(10):
        n = rng.randint(4, 14)
        config = random_config(2, n, seed=seed + 40)
        ls = lines(config)
        covered = sum(
            len(ln.members) * (len(ln.members) - 1) // 2 for ln in ls.lines
        )
        assert covered == n * (n - 1) // 2


def test_maxlines_grid():
    point, m = maxlines(grid_config(3))
    assert m == 6  # attained at an edge midpoint


def test_maxlines_general_position():
    pts = [(0, 0), (1, 0), (0, 1), (2, 3), (5, 1), (3, 4), (1, 7)]
    config = PointConfig(RATIONAL, pts)
    ls = lines(config)
    if all(len(ln.members) == 2 for ln in ls.lines):
        _, m = maxlines(config, ls)
        assert m == 6


def test_maxlines_collinear():
    config = PointConfig(RATIONAL, [(i, i) for i in range(5)])
    _, m = maxlines(config)
    assert m == 1


def test_classify_identity_per_point():
    config = grid_config(3)
    incs = classify(config)
    n = len(config)
    # identity n-1-l_i+l_i' = k_i is asserted inside classify; spot-check values
    corner = incs[0]
    assert (corner.lines_through, corner.special_through) == (5, 3)
    center = incs[4]
    assert (center.lines_through, center.special_through) == (4, 4)
    mid = incs[1]
    assert (mid.lines_through, mid.special_through) == (6, 2)
    assert mid.special_neighbors == 4


def test_ordinary_only_iff_maxlines_n_minus_1():
    pts = [(0, 0), (1, 0), (0, 1), (2, 3), (5, 1)]
    config = PointConfig(RATIONAL, pts)
    incs = classify(config)
    _, m = maxlines(config)
    sees_only_ordinary = any(inc.special_through == 0 for inc in incs)
    assert (m == len(config) - 1) == sees_only_ordinary


def test_projection_planar_preserved():
    config = grid_config(3)
    proj = generic_project_to_plane(config, seed=1)
    assert len(lines(proj).lines) == 20


def test_projection_from_3d():
    pts3 = [(x, y, 0) for (x, y) in grid_config(3).points]
    config = PointConfig(RATIONAL, pts3)
    proj = generic_project_to_plane(config, seed=2)
    assert proj.dim == 2
    assert len(lines(proj).lines) == 20


def test_projection_random_4d():
    config = random_config(4, 12, seed=9)
    proj = generic_project_to_plane(config, seed=3)
    original = sorted(sorted(ln.members) for ln in lines(config).lines)
    projected = sorted(sorted(ln.members) for ln in lines(proj).lines)
    assert original == projected


def test_projection_requires_dimension():
    config = PointConfig(RATIONAL, [(i, i) for i in range(4)])
    with pytest.raises(ValueError):
        generic_project_to_plane(config, seed=0)


def test_f_lower_bound_values():
    assert f_lower_bound(2) == Fraction(1, 3)
    assert f_lower_bound(4) == Fraction(1, 3)  # 1 - 4/5 < 1/3
    assert f_lower_bound(7) == Fraction(1, 2)
    with pytest.raises(ValueError):
        f_lower_bound(1)


def test_check_bounds_grid():
    report = check_maxlines_bounds(grid_config(3))
    assert not report["skipped"]
    assert report["maxlines"] == 6
    assert report["floor_bound"] == 4
    assert report["pass"]


def test_check_bounds_skips_degenerate():
    config = PointConfig(RATIONAL, [(i,) for i in range(4)])
    report = check_maxlines_bounds(config)
    assert report["skipped"]


def test_check_bounds_requires_reduction():
    pts3 = [(x, y, 0) for (x, y) in grid_config(3).points]
    config = PointConfig(RATIONAL, pts3)
    report = check_maxlines_bounds(config)
    assert report["skipped"]
    reduced = reduce_to_affine_dim(config)
    report2 = check_maxlines_bounds(reduced)
    assert not report2["skipped"] and report2["pass"]
    assert report2["maxlines"] == 6


def test_random_bounds_hold():
    rng = random.Random(99)
    for seed in range(20):
        d = rng.randint(2, 5)
        n = rng.randint(d + 2, 18)
        config = random_config(d, n, seed=seed + 300)
        report = check_maxlines_bounds(config)
        assert report["pass"], report


def test_float_collinearity():
    config = PointConfig(
        COMPLEX_FLOAT,
        [(0.0, 0.0), (1.0, 1.0 + 1e-13), (2.0, 2.0), (1.0, 0.0)],
        tol=1e-9,
    )
    ls = lines(config)
    triple = [ln for ln in ls.lines if len(ln.members) == 3]
    assert len(triple) == 1 and triple[0].members == frozenset({0, 1, 2})


def test_json_round_trip():
    config = grid_config(3)
    back = PointConfig.from_json(config.to_json())
    assert back.points == config.points
