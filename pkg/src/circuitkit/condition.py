"""Condition measures of a matrix kernel.

Computes the circuit imbalance measure (by circuit enumeration and,
independently, by determinant ratios over basis swaps), the minimum
normalized basis-column distance (exact squared value), the maximum
rank-sized subdeterminant of integer matrices, and a sampled lower bound
on the diagonally-reweighted oblique projection norm.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb

from . import fields
from .fields import COMPLEX_FLOAT, EXACT_MODES, GAUSSIAN, RATIONAL, abs_sq
from .errors import EnumerationGuardError
from .matrix import (
    Matrix,
    abs_sq_norm,
    all_subdets,
    as_int_rows,
    det,
    dist_sq_to_span,
    int_det,
    int_rank,
    kernel_basis,
    rank,
    rref,
)

CIRCUIT_GUARD_COLS = 20
CIRCUIT_GUARD_RANK = 8
BASIS_GUARD_COUNT = 60000


@dataclass(frozen=True)
class Circuit:
    """Support-minimal kernel vector: zero off support, lead coefficient 1."""

    support: tuple
    coeffs: tuple


@dataclass
class KappaResult:
    value: float
    method: str
    no_circuit: bool = False
    value_exact: Fraction | None = None  # rational mode only
    value_sq: Fraction | None = None  # exact modes
    witness_circuit: Circuit | None = None
    ratio_indices: tuple | None = None  # (i, j) with |x_i / x_j| maximal
    witness_basis: tuple | None = None  # (basis tuple, leaving i, entering j)

    def to_json(self):
        out = {
            "kappa": self.value,
            "method": self.method,
            "no_circuit": self.no_circuit,
        }
        if self.value_exact is not None:
            out["kappa_exact"] = str(self.value_exact)
        if self.value_sq is not None:
            out["kappa_sq"] = str(self.value_sq)
        if self.witness_circuit is not None:
            out["witness_circuit"] = {
                "support": list(self.witness_circuit.support),
                "coeffs": [str(c) for c in self.witness_circuit.coeffs],
            }
        if self.ratio_indices is not None:
            out["ratio_indices"] = list(self.ratio_indices)
        if self.witness_basis is not None:
            b, i, j = self.witness_basis
            out["witness_basis"] = {"basis": list(b), "leaving": i, "entering": j}
        return out


def _scaled_int_columns(A: Matrix):
    """Per-column integer versions (column scaling preserves independence)."""
    if A.field != RATIONAL:
        return None
    cols = []
    for j in range(A.cols):
        col = A.column(j)
        l = 1
        for x in col:
            l = l * x.denominator // math.gcd(l, x.denominator)
        cols.append([int(x * l) for x in col])
    return cols


def circuits(A: Matrix):
    """All support-minimal dependent column sets with their kernel vectors.

    A subset is a circuit iff its columns have nullity one and the kernel
    vector has full support.  Enumerates subsets of size at most rank+1.
    """
    n = A.cols
    r = rank(A)
    if n > CIRCUIT_GUARD_COLS or r > CIRCUIT_GUARD_RANK:
        raise EnumerationGuardError(
            f"circuit enumeration guard exceeded (n={n} > {CIRCUIT_GUARD_COLS} "
            f"or rank={r} > {CIRCUIT_GUARD_RANK})"
        )
    int_cols = _scaled_int_columns(A)

    def subset_rank(cols_sel):
        if int_cols is not None:
            d = A.rows
            return int_rank([[int_cols[c][i] for c in cols_sel] for i in range(d)])
        return rank(A.column_submatrix(cols_sel))

    found = []
    found_supports = []
    for size in range(1, r + 2):
        for subset in itertools.combinations(range(n), size):
            sset = set(subset)
            if any(fs < sset for fs in found_supports):
                continue
            if subset_rank(subset) != size - 1:
                continue
            sub = A.column_submatrix(subset)
            kb = kernel_basis(sub)
            if len(kb) != 1:
                continue
            v = kb[0]
            if any(sub.is_entry_zero(x) for x in v):
                continue
            coeffs = [fields.zero(A.field)] * n
            for pos, col in enumerate(subset):
                coeffs[col] = v[pos]
            found.append(Circuit(tuple(subset), tuple(coeffs)))
            found_supports.append(sset)
    return found


def kappa_circuit(A: Matrix) -> KappaResult:
    """Max |x_i / x_j| over circuits x; flagged value 1 when no circuit exists."""
    cs = circuits(A)
    if not cs:
        return KappaResult(value=1.0, method="circuit", no_circuit=True)
    best_sq = None
    best = None
    for c in cs:
        entries = [(idx, c.coeffs[idx]) for idx in c.support]
        mags = [(abs_sq(x, A.field), idx) for idx, x in entries]
        hi_sq, hi = max(mags)
        lo_sq, lo = min(mags)
        ratio_sq = (
            Fraction(hi_sq, lo_sq) if A.field in EXACT_MODES else hi_sq / lo_sq
        )
        if best_sq is None or ratio_sq > best_sq:
            best_sq = ratio_sq
            best = (c, hi, lo)
    c, hi, lo = best
    value_exact = None
    if A.field == RATIONAL:
        value_exact = abs(c.coeffs[hi] / c.coeffs[lo])
    value_sq = best_sq if A.field in EXACT_MODES else None
    return KappaResult(
        value=math.sqrt(float(best_sq)),
        method="circuit",
        value_exact=value_exact,
        value_sq=value_sq,
        witness_circuit=c,
        ratio_indices=(hi, lo),
    )


def _spanning_row_set(A: Matrix, r):
    if r == A.rows:
        return tuple(range(A.rows))
    _, pivots, _ = rref(A.transpose())
    return tuple(pivots)


def kappa_detratio(A: Matrix) -> KappaResult:
    """Max |det(A_{B u j \\ i}) / det(A_B)| over bases B and swaps (i, j).

    For rank-deficient matrices the determinants are taken over a fixed
    spanning row set, which leaves the ratios unchanged (Cramer).
    """
    n = A.cols
    r = rank(A)
    if r == 0:
        return KappaResult(value=1.0, method="detratio", no_circuit=True)
    if n > 40 or comb(n, r) > BASIS_GUARD_COUNT:
        raise EnumerationGuardError(
            f"basis enumeration guard exceeded (C({n},{r}) bases)"
        )
    row_sel = _spanning_row_set(A, r)

    int_rows_scaled = None
    if A.field == RATIONAL:
        l = 1
        for row in A.data:
            for x in row:
                l = l * x.denominator // math.gcd(l, x.denominator)
        int_rows_scaled = [[int(x * l) for x in row] for row in A.data]

    def minor(cols_sel):
        if int_rows_scaled is not None:
            return Fraction(
                int_det([[int_rows_scaled[i][j] for j in cols_sel] for i in row_sel])
            )
        return det(A.submatrix(row_sel, cols_sel))

    scale = A.scale_entry_max() if A.field == COMPLEX_FLOAT else None
    best_sq = None
    best_witness = None
    for basis in itertools.combinations(range(n), r):
        db = minor(basis)
        db_sq = abs_sq(db, A.field)
        if A.field in EXACT_MODES:
            if db_sq == 0:
                continue
        elif float(db_sq) ** 0.5 <= (A.tol * max(scale, 1e-300)) ** r:
            continue
        bset = set(basis)
        for j in range(n):
            if j in bset:
                continue
            for i in basis:
                swapped = tuple(sorted(bset - {i} | {j}))
                ds = minor(swapped)
                ds_sq = abs_sq(ds, A.field)
                if A.field in EXACT_MODES:
                    if ds_sq == 0:
                        continue
                    ratio_sq = Fraction(ds_sq, db_sq)
                else:
                    if ds_sq == 0.0:
                        continue
                    ratio_sq = ds_sq / db_sq
                if best_sq is None or ratio_sq > best_sq:
                    best_sq = ratio_sq
                    best_witness = (basis, i, j)
    if best_sq is None:
        return KappaResult(value=1.0, method="detratio", no_circuit=True)
    value_exact = None
    if A.field == RATIONAL:
        basis, i, j = best_witness
        swapped = tuple(sorted(set(basis) - {i} | {j}))
        value_exact = abs(minor(swapped) / minor(basis))
    return KappaResult(
        value=math.sqrt(float(best_sq)),
        method="detratio",
        value_exact=value_exact,
        value_sq=best_sq if A.field in EXACT_MODES else None,
        witness_basis=best_witness,
    )


def kappa(A: Matrix, method="auto") -> KappaResult:
    """Circuit imbalance measure; float mode always uses determinant ratios."""
    if A.field == COMPLEX_FLOAT:
        if method == "circuit":
            raise ValueError("complex_float mode supports only the detratio method")
        return kappa_detratio(A)
    if method in ("auto", "circuit"):
        return kappa_circuit(A)
    if method == "detratio":
        return kappa_detratio(A)
    raise ValueError(f"unknown kappa method {method!r}")


@dataclass
class DeltaResult:
    delta_sq: Fraction
    delta_float: float
    witness: tuple  # (basis tuple, column i)

    def to_json(self):
        b, i = self.witness
        return {
            "delta_sq": str(self.delta_sq),
            "delta": self.delta_float,
            "witness_basis": list(b),
            "witness_column": i,
        }


def delta_measure(A: Matrix) -> DeltaResult:
    """min over bases B and i in B of dist(a_i, span(rest))^2 / |a_i|^2."""
    n, d = A.cols, A.rows
    r = rank(A)
    if r != d:
        raise ValueError(f"delta requires full row rank (rank {r} < d {d})")
    if n > 20 or d > 8 or comb(n, d) > BASIS_GUARD_COUNT:
        raise EnumerationGuardError("delta basis enumeration guard exceeded")
    cols = A.columns()
    best = None
    best_witness = None
    for basis in itertools.combinations(range(n), d):
        if rank(A.column_submatrix(basis)) != d:
            continue
        for i in basis:
            rest = [cols[j] for j in basis if j != i]
            dsq = dist_sq_to_span(cols[i], rest, A.field, A.tol)
            norm_sq = abs_sq_norm(cols[i], A.field)
            val = dsq / norm_sq
            if best is None or val < best:
                best = val
                best_witness = (basis, i)
    return DeltaResult(best, math.sqrt(float(best)), best_witness)


def delta_modularity(A: Matrix):
    """Max |det| over rank-sized square submatrices of an integer matrix."""
    ints = as_int_rows(A)
    if ints is None:
        raise ValueError("delta_modularity requires integer entries")
    r = rank(A)
    if comb(A.rows, r) * comb(A.cols, r) > 500000:
        raise EnumerationGuardError("subdeterminant enumeration guard exceeded")
    best = 0
    best_witness = None
    for rows_sel, cols_sel, val in all_subdets(A, r):
        v = abs(val)
        if v > best:
            best = v
            best_witness = (rows_sel, cols_sel)
    return int(best), best_witness


def chibar_sample(A: Matrix, trials=1000, seed=0):
    """Sampled lower bound on the sup of ||A^T (A D A^T)^-1 A D||_op.

    Diagonal entries are drawn log-uniformly over [1e-6, 1e6]; singular
    reweightings are skipped.
    """
    import numpy as np

    d = A.rows
    if rank(A) != d:
        raise ValueError("chibar requires full row rank")
    a = A.to_complex_array()
    if not np.iscomplexobj(a) or np.all(a.imag == 0):
        a = a.real
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(trials):
        dvec = 10.0 ** rng.uniform(-6.0, 6.0, A.cols)
        adat = (a * dvec) @ a.conj().T
        try:
            x = np.linalg.solve(adat, a * dvec)
        except np.linalg.LinAlgError:
            continue
        m = a.conj().T @ x
        val = float(np.linalg.norm(m, 2))
        if math.isfinite(val) and val > best:
            best = val
    return best


def project_kernel(A: Matrix, coords) -> Matrix:
    """A matrix whose kernel is the projection of ker(A) onto ``coords``.

    Projects a kernel basis onto the coordinate set, then returns the
    annihilator of the projected span as row vectors.
    """
    coords = tuple(sorted(set(coords)))
    if any(j < 0 or j >= A.cols for j in coords):
        raise ValueError("projection coordinates out of range")
    tol = A.tol if A.field == COMPLEX_FLOAT else None
    k = len(coords)
    if k == 0:
        return Matrix(A.field, [[]], tol)
    kb = kernel_basis(A)
    projected = [[v[j] for j in coords] for v in kb]
    projected = [p for p in projected if any(p)] if A.field in EXACT_MODES else projected
    if not projected:
        return Matrix.identity(k, A.field, tol)
    stacked = Matrix(A.field, projected, tol)
    ann = kernel_basis(stacked)
    if not ann:
        return Matrix(A.field, [[fields.zero(A.field)] * k], tol)
    return Matrix(A.field, ann, tol)


@dataclass
class ConditionReport:
    """Bundle of condition measures for one matrix; fields fill on demand."""

    kappa: KappaResult | None = None
    kappa_detratio: KappaResult | None = None
    delta: DeltaResult | None = None
    delta_mod: int | None = None
    delta_mod_witness: tuple | None = None
    chibar: float | None = None
    chibar_trials: int | None = None
    chibar_seed: int | None = None
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        out = {}
        if self.kappa is not None:
            out.update(self.kappa.to_json())
        if self.kappa_detratio is not None:
            out["detratio"] = self.kappa_detratio.to_json()
        if self.delta is not None:
            out.update(self.delta.to_json())
        if self.delta_mod is not None:
            out["delta_mod"] = self.delta_mod
            if self.delta_mod_witness is not None:
                rows_sel, cols_sel = self.delta_mod_witness
                out["delta_mod_witness"] = {
                    "rows": list(rows_sel),
                    "cols": list(cols_sel),
                }
        if self.chibar is not None:
            out["chibar_sample"] = self.chibar
            out["trials"] = self.chibar_trials
            out["seed"] = self.chibar_seed
        if self.notes:
            out["notes"] = self.notes
        return out
