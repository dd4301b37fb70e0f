"""Hitting sets for products of variable differences.

A set of assignments ``A ⊆ F_q^n`` hits ``prod (x_a - x_b)`` iff some row has
pairwise different entries on every listed pair.  Rows come from transposing
``n`` distinct nonzero codewords of a code with relative distance
``1 - 1/h``: two columns then agree on at most ``m/h`` rows, so a product of
at most ``h - 1`` differences vanishes on fewer than all of them.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import AlphabetTooSmall, BudgetExceeded, EpsilonInfeasible, RegimeViolation
from .gfq import FieldSpec, field_make
from .gvcode import (
    CodeParams,
    LinearCode,
    construct_code,
    enumerate_codewords,
    spcode2_params,
    spcode_params,
)

log = logging.getLogger(__name__)

__all__ = [
    "HittingSet",
    "Verdict",
    "code_params_for",
    "build_hitting",
    "build_dense_hitting",
    "hitting_size",
    "dense_hitting_size",
    "pair_index",
    "pair_constraints",
    "verify_hitting",
    "verify_hitting_density",
    "max_column_agreement",
]

DEFAULT_BUDGET = 10**7


@dataclass
class HittingSet:
    spec: FieldSpec
    n: int
    matrix: np.ndarray  # shape (m, n)
    degree: int
    h: int
    eps: Fraction | None = None
    code: LinearCode | None = None

    @property
    def m(self) -> int:
        return self.matrix.shape[0]


@dataclass
class Verdict:
    ok: bool
    checks: int
    witness: tuple | None = None
    min_hits: int | None = None

    def __bool__(self):
        return self.ok


def code_params_for(q: int, h: int, n: int) -> CodeParams:
    if 4 * h < q:
        return spcode_params(q, h, n)
    return spcode2_params(q, h, n)


def hitting_size(n: int, d: int, q: int) -> int:
    """Closed-form number of rows for a hitting set of degree d."""
    return code_params_for(q, d + 1, n).m


def dense_hitting_size(n: int, d: int, q: int, eps: Fraction) -> int:
    return code_params_for(q, math.ceil((d + 1) / Fraction(eps)), n).m


def _from_code(n: int, d: int, h: int, params: CodeParams, eps) -> HittingSet:
    code = construct_code(params)
    if code.params.m != params.m:
        log.warning("hitting set uses %d rows instead of %d", code.params.m, params.m)
    words = enumerate_codewords(code, n)
    matrix = np.stack(words, axis=1) if words else np.zeros((code.m, 0), dtype=np.int64)
    return HittingSet(code.spec, n, matrix, d, h, eps, code)


def _check_n(n: int, q: int, d: int):
    if n < 2:
        raise ValueError("n must be >= 2")
    if n <= q or n <= d:
        warnings.warn(f"n={n} <= max(q, d); construction valid but not size-optimal", stacklevel=3)


def build_hitting(n: int, d: int, q: int) -> HittingSet:
    field_make(q)
    if d < 1:
        raise ValueError("degree must be >= 1")
    if q < d + 2:
        raise AlphabetTooSmall(f"need q >= d+2 = {d + 2}, got q={q}")
    _check_n(n, q, d)
    h = d + 1
    return _from_code(n, d, h, code_params_for(q, h, n), None)


def build_dense_hitting(n: int, d: int, q: int, eps) -> HittingSet:
    field_make(q)
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise EpsilonInfeasible("eps must lie in (0, 1]")
    if d < 1:
        raise ValueError("degree must be >= 1")
    if q < (d + 1) / eps + 1:
        raise EpsilonInfeasible(f"need q >= (d+1)/eps + 1 = {(d + 1) / eps + 1}, got q={q}")
    _check_n(n, q, d)
    h = math.ceil((d + 1) / eps)
    try:
        params = code_params_for(q, h, n)
    except RegimeViolation as exc:  # pragma: no cover - excluded by the check above
        raise EpsilonInfeasible(str(exc)) from exc
    return _from_code(n, d, h, params, eps)


def pair_index(n: int):
    """All unordered pairs (a, b), a < b, in lexicographic order."""
    return list(itertools.combinations(range(n), 2))


def pair_constraints(n: int, degree: int):
    """Sets of 1..degree distinct pairs, by size then lexicographically."""
    pairs = pair_index(n)
    for size in range(1, degree + 1):
        yield from itertools.combinations(pairs, size)


def _count_pair_sets(n: int, degree: int) -> int:
    npairs = n * (n - 1) // 2
    return sum(math.comb(npairs, s) for s in range(1, degree + 1))


def _run(matrix, constraints_iter, total, budget, threshold) -> Verdict:
    """Check every constraint has more than ``threshold`` separating rows."""
    m = matrix.shape[0]
    if total * m > budget:
        raise BudgetExceeded(f"{total} constraints x {m} rows exceeds budget {budget}")
    min_hits = None
    for chunk in kernels.chunked(constraints_iter):
        hits = kernels.separation_counts(matrix, kernels.as_pairsets(chunk))
        if len(hits):
            lo = int(hits.min())
            min_hits = lo if min_hits is None else min(min_hits, lo)
            bad = np.flatnonzero(hits <= threshold)
            if len(bad):
                return Verdict(False, total * m, chunk[bad[0]], lo)
    return Verdict(True, total * m, None, min_hits)


def verify_hitting(hs: HittingSet, degree: int | None = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    degree = hs.degree if degree is None else degree
    total = _count_pair_sets(hs.n, degree)
    return _run(hs.matrix, pair_constraints(hs.n, degree), total, budget, 0)


def verify_hitting_density(
    hs: HittingSet, degree: int | None = None, eps=None, budget: int = DEFAULT_BUDGET
) -> Verdict:
    degree = hs.degree if degree is None else degree
    eps = Fraction(hs.eps if eps is None else eps)
    total = _count_pair_sets(hs.n, degree)
    # hits > (1 - eps) m
    threshold = math.floor((1 - eps) * hs.m)
    return _run(hs.matrix, pair_constraints(hs.n, degree), total, budget, threshold)


def max_column_agreement(matrix: np.ndarray) -> int:
    """Largest number of rows on which two distinct columns agree."""
    n = matrix.shape[1]
    best = 0
    for a in range(n):
        agree = (matrix[:, a + 1:] == matrix[:, a : a + 1]).sum(axis=0)
        if len(agree):
            best = max(best, int(agree.max()))
    return best
