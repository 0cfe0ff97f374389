import random
from fractions import Fraction

import pytest

from circuitkit.fields import (
    COMPLEX_FLOAT,
    GAUSSIAN,
    RATIONAL,
    FieldModeError,
    GaussianRational,
)
from circuitkit.matrix import (
    Matrix,
    all_subdets,
    det,
    dist_sq_to_span,
    kernel_basis,
    mat_vec,
    rank,
    rref,
)


def rational(rows):
    return Matrix(RATIONAL, rows)


def cofactor_det(rows):
    """Independent determinant oracle: expansion by minors."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def test_rref_identity():
    ech, pivots, rk = rref(Matrix.identity(2))
    assert rk == 2
    assert pivots == [0, 1]


def test_rref_already_reduced():
    m = rational([[1, 0, 2], [0, 1, 1]])
    ech, pivots, rk = rref(m)
    assert rk == 2
    assert pivots == [0, 1]
    assert ech == m


def test_rref_repeated_row():
    assert rank(rational([[1, 1], [1, 1]])) == 1


def test_kernel_simple():
    # hand elimination: x1 = -2 x3, x2 = -x3; normalized so the lead entry is 1
    basis = kernel_basis(rational([[1, 0, 2], [0, 1, 1]]))
    assert basis == [[Fraction(1), Fraction(1, 2), Fraction(-1, 2)]]


def test_kernel_identity_empty():
    assert kernel_basis(Matrix.identity(3)) == []


def test_kernel_rank_nullity():
    assert len(kernel_basis(rational([[1, 1, 1]]))) == 2


def test_det_2x2():
    assert det(rational([[0, 2], [1, 1]])) == -2


def test_det_identity():
    assert det(Matrix.identity(3)) == 1


def test_all_subdets_enumerates_minors():
    vals = [v for _, _, v in all_subdets(rational([[1, 0, 2], [0, 1, 1]]), 2)]
    assert sorted(vals) == [-2, 1, 1]
    assert max(abs(v) for v in vals) == 2


def test_dist_sq_examples():
    e1, e2 = [Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]
    assert dist_sq_to_span(e1, [e2], RATIONAL) == 1
    assert dist_sq_to_span(e1, [e1], RATIONAL) == 0
    assert dist_sq_to_span([Fraction(1), Fraction(1)], [e1], RATIONAL) == 1


def test_dist_sq_empty_basis_is_norm():
    assert dist_sq_to_span([Fraction(3), Fraction(4)], [], RATIONAL) == 25


def random_rational_matrix(rng, d, n, denom=3):
    return rational(
        [
            [Fraction(rng.randint(-9, 9), rng.randint(1, denom)) for _ in range(n)]
            for _ in range(d)
        ]
    )


def test_rank_transpose_invariant():
    rng = random.Random(7)
    for _ in range(40):
        m = random_rational_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        assert rank(m) == rank(m.transpose())


def test_kernel_vectors_annihilate_exactly():
    rng = random.Random(11)
    for _ in range(30):
        m = random_rational_matrix(rng, rng.randint(1, 4), rng.randint(2, 6))
        for v in kernel_basis(m):
            assert all(x == 0 for x in mat_vec(m, v))


def test_dist_sq_zero_iff_dependent():
    rng = random.Random(13)
    for _ in range(40):
        d = rng.randint(2, 4)
        v = [Fraction(rng.randint(-5, 5)) for _ in range(d)]
        basis = [[Fraction(rng.randint(-5, 5)) for _ in range(d)] for _ in range(rng.randint(1, 3))]
        with_v = Matrix.from_columns(RATIONAL, basis + [v])
        without_v = Matrix.from_columns(RATIONAL, basis)
        dependent = rank(with_v) == rank(without_v)
        assert (dist_sq_to_span(v, basis, RATIONAL) == 0) == dependent


def test_det_matches_cofactor_expansion():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        assert det(rational(rows)) == cofactor_det(rows)


def test_gaussian_hermitian_gram_exact():
    i = GaussianRational(0, 1)
    v = [GaussianRational(1, 2), GaussianRational(0, -1)]
    b = [GaussianRational(1, 0), GaussianRational(1, 1)]
    d = dist_sq_to_span(v, [b], GAUSSIAN)
    # oracle: |v|^2 - |<b,v>|^2 / |b|^2, all exact rationals
    bv = (b[0].conjugate() * v[0]) + (b[1].conjugate() * v[1])
    expected = Fraction(6) - Fraction(bv.abs_sq(), 3)
    assert d == expected
    assert isinstance(d, Fraction)
    _ = i  # direct unit: i * conj(i) == 1
    assert (i * i.conjugate()) == GaussianRational(1, 0)


def test_gaussian_division_exact():
    a = GaussianRational(Fraction(3, 2), Fraction(-1, 3))
    b = GaussianRational(2, 5)
    assert (a / b) * b == a


def test_float_mode_requires_tol():
    with pytest.raises(ValueError):
        Matrix(COMPLEX_FLOAT, [[1.0]], tol=0)
    with pytest.raises(ValueError):
        Matrix(RATIONAL, [[1]], tol=1e-9)


def test_float_rank_tolerance():
    m = Matrix(COMPLEX_FLOAT, [[1.0, 1.0], [1.0, 1.0 + 1e-14]], tol=1e-10)
    assert rank(m) == 1
    m2 = Matrix(COMPLEX_FLOAT, [[1.0, 1.0], [1.0, 1.0 + 1e-5]], tol=1e-10)
    assert rank(m2) == 2


def test_mixed_mode_rejected():
    with pytest.raises(FieldModeError):
        Matrix(RATIONAL, [[1.5]])
    with pytest.raises(FieldModeError):
        Matrix("unknown", [[1]])


def test_json_round_trip():
    m = rational([[Fraction(1, 2), 3], [-1, 0]])
    assert Matrix.from_json(m.to_json()) == m
    g = Matrix(GAUSSIAN, [[GaussianRational(1, 2), 0]])
    assert Matrix.from_json(g.to_json()) == g
    f = Matrix(COMPLEX_FLOAT, [[complex(1, -2), 0.5]], tol=1e-9)
    assert Matrix.from_json(f.to_json()) == f


def test_det_non_square_rejected():
    with pytest.raises(ValueError):
        det(rational([[1, 2, 3], [4, 5, 6]]))
