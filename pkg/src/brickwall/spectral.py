"""Substitution matrix, dominant eigenpair, and exact counting.

The matrix M has entry (t, u) = number of bricks of type u in the image of
type t (expected count, as an exact rational, for random rules).  Its
dominant eigenvalue is lambda1*lambda2 with right eigenvector the brick
areas; the normalized left eigenvector gives asymptotic brick frequencies.
Counting (brick totals, realization counts) stays in arbitrary-precision
integers throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .rules import RuleError, SubstitutionRule

_TOL = 1e-9
_MAX_ITER = 100_000


@dataclass(frozen=True)
class SubstitutionMatrix:
    type_order: Tuple[str, ...]
    entries: Tuple[Tuple[Fraction, ...], ...]
    # right eigenvector data for the exact identity M*v = expansion*v;
    # block rules count grid cells, so every letter has cell area 1
    areas: Optional[Tuple[int, ...]] = None
    expansion: Optional[int] = None

    @property
    def size(self) -> int:
        return len(self.type_order)

    def __getitem__(self, pair):
        i = self.type_order.index(pair[0])
        j = self.type_order.index(pair[1])
        return self.entries[i][j]


def matrix(rule: SubstitutionRule) -> SubstitutionMatrix:
    """M for a rule; random rules get probability-weighted expected counts."""
    if rule.is_parametric:
        raise RuleError(f"rule '{rule.name}' has unbound parameter p; bind it first")
    order = rule.type_ids
    index = {tid: i for i, tid in enumerate(order)}
    rows = []
    for tid in order:
        row = [Fraction(0)] * len(order)
        if rule.engine == "block":
            for grid_row in rule.blocks[tid].cells:
                for ref in grid_row:
                    row[index[ref]] += 1
        else:
            for opt in rule.images[tid]:
                pr = opt.probability.value
                for pl in opt.placements:
                    row[index[pl.type_id]] += pr
        rows.append(tuple(row))
    if rule.engine == "block":
        areas = tuple(1 for _ in rule.types)
    else:
        areas = tuple(t.area for t in rule.types)
    return SubstitutionMatrix(order, tuple(rows), areas, rule.expansion)


def assert_area_eigenvector(M: SubstitutionMatrix) -> None:
    """Exact rational check that the area vector is a right eigenvector for
    the expansion eigenvalue; raises ValueError when the identity fails."""
    if M.areas is None or M.expansion is None:
        return
    for i, row in enumerate(M.entries):
        lhs = sum(row[j] * M.areas[j] for j in range(M.size))
        rhs = M.expansion * M.areas[i]
        if lhs != rhs:
            raise ValueError(f"area eigenvector identity fails at"
                             f" {M.type_order[i]}: {lhs} != {rhs}")


def _power_iteration(a: np.ndarray, tol: float, max_iter: int):
    x = np.ones(a.shape[0])
    for _ in range(max_iter):
        y = a @ x
        lam = float(np.max(np.abs(y)))
        if lam == 0.0:
            return 0.0, x
        xn = y / lam
        if float(np.max(np.abs(xn - x))) < tol:
            return lam, xn
        x = xn
    raise RuntimeError(f"power iteration did not converge in {max_iter} steps")


def _as_float_array(M: SubstitutionMatrix) -> np.ndarray:
    return np.array([[float(e) for e in row] for row in M.entries])


def pf_eigenvalue(M: SubstitutionMatrix, tol: float = _TOL,
                  max_iter: int = _MAX_ITER) -> float:
    """Dominant eigenvalue by power iteration (all-ones start, max-norm
    convergence).  Also asserts the exact area eigenvector identity."""
    assert_area_eigenvector(M)
    lam, _ = _power_iteration(_as_float_array(M), tol, max_iter)
    return lam


def brick_frequencies(M: SubstitutionMatrix, tol: float = _TOL,
                      max_iter: int = _MAX_ITER) -> Tuple[float, ...]:
    """Normalized left eigenvector for the dominant eigenvalue: the
    asymptotic share of each brick type."""
    _, vec = _power_iteration(_as_float_array(M).T, tol, max_iter)
    total = float(np.sum(vec))
    if total == 0.0:
        raise RuntimeError("left eigenvector collapsed to zero")
    return tuple(float(v) / total for v in vec)


def _matmul(a, b):
    size = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(size))
                       for j in range(size))
                 for i in range(size))


def matrix_power(M: SubstitutionMatrix, n: int) -> SubstitutionMatrix:
    """Exact M**n by repeated squaring; n = 0 gives the identity."""
    if n < 0:
        raise ValueError("matrix_power needs n >= 0")
    size = M.size
    result = tuple(tuple(Fraction(1 if i == j else 0) for j in range(size))
                   for i in range(size))
    base = M.entries
    e = n
    while e:
        if e & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        e >>= 1
    expansion = M.expansion ** n if M.expansion is not None else None
    return SubstitutionMatrix(M.type_order, result, M.areas, expansion)


def _count_vectors(rule: SubstitutionRule):
    """Integer count vector per type plus option counts; refuses rules whose
    option choice changes the counts (the level populations are then random
    and neither brick totals nor realization counts are well defined)."""
    order = rule.type_ids
    index = {tid: i for i, tid in enumerate(order)}
    rows: List[List[int]] = []
    option_counts: List[int] = []
    for tid in order:
        if rule.engine == "block":
            counts = [0] * len(order)
            for grid_row in rule.blocks[tid].cells:
                for ref in grid_row:
                    counts[index[ref]] += 1
            rows.append(counts)
            option_counts.append(1)
            continue
        per_option = []
        for opt in rule.images[tid]:
            counts = [0] * len(order)
            for pl in opt.placements:
                counts[index[pl.type_id]] += 1
            per_option.append(counts)
        if any(c != per_option[0] for c in per_option[1:]):
            raise RuleError(f"option choice changes brick counts for '{tid}';"
                            " counting is not defined for this rule")
        rows.append(per_option[0])
        option_counts.append(len(rule.images[tid]))
    return rows, option_counts


def _seed_vector(rule, seed_type):
    order = rule.type_ids
    rule.get_type(seed_type)
    return [1 if tid == seed_type else 0 for tid in order]


def _vec_mat(v, rows):
    size = len(rows)
    return [sum(v[i] * rows[i][j] for i in range(size)) for j in range(size)]


def count_bricks(rule: SubstitutionRule, seed_type: str, n: int) -> int:
    """Exact number of bricks in the n-th image of the seed."""
    if n < 0:
        raise ValueError("count_bricks needs n >= 0")
    rows, _ = _count_vectors(rule)
    v = _seed_vector(rule, seed_type)
    for _ in range(n):
        v = _vec_mat(v, rows)
    return sum(v)


def count_realizations(rule: SubstitutionRule, seed_type: str, n: int) -> int:
    """Exact number of distinct outcome sequences when generating the n-th
    image: every brick at every level picks one of its k options, so the
    count is the product over levels m < n of prod_t k_t ** N_m(t)."""
    if n < 0:
        raise ValueError("count_realizations needs n >= 0")
    rows, ks = _count_vectors(rule)
    v = _seed_vector(rule, seed_type)
    total = 1
    for _ in range(n):
        for k, count in zip(ks, v):
            total *= k ** count
        v = _vec_mat(v, rows)
    return total
