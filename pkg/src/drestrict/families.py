"""Perfect hash, cover-free and separating hash families built on hitting sets.

Each property reduces to separating pairs of coordinates:

* PHF: a function is injective on ``S`` iff it separates every pair in ``S``
  (``d(d-1)/2`` difference factors);
* SHF: images of disjoint classes are disjoint iff every cross pair is
  separated (``D2 = sum_{i<j} d_i d_j`` factors);
* CFF: a hitting set row separating the ``w`` designated items from the ``r``
  others, followed by ``chi_R`` with ``R`` the set of designated values.
"""

from __future__ import annotations

import itertools
import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .bounds import dense_phf_feasibility, g_factor
from .errors import (
    AlphabetTooSmall,
    BudgetExceeded,
    DegreeMismatch,
    EpsilonInfeasible,
    InsufficientAlphabet,
)
from .gfq import field_make, is_prime_power, next_prime_power, prev_prime_power, tables
from .hitter import (
    DEFAULT_BUDGET,
    HittingSet,
    Verdict,
    build_dense_hitting,
    build_hitting,
    dense_hitting_size,
    hitting_size,
)

log = logging.getLogger(__name__)

__all__ = [
    "PerfectHashFamily",
    "CoverFreeFamily",
    "SeparatingHashFamily",
    "GreedyFamilySpec",
    "phf_size",
    "dense_phf_size",
    "build_phf",
    "build_dense_phf",
    "greedy_phf",
    "greedy_bound",
    "build_phf_small_d",
    "chi_family",
    "cff_alphabet",
    "build_cff",
    "compose_cff",
    "build_shf",
    "build_shf_small_alphabet",
    "shf_degrees",
    "verify_phf",
    "verify_phf_density",
    "verify_cff",
    "verify_shf",
]


@dataclass
class PerfectHashFamily:
    n: int
    q: int
    d: int
    functions: np.ndarray  # (m, n), values in [0, q)
    dense_eps: Fraction | None = None
    field_q: int | None = None
    h: int | None = None

    @property
    def m(self) -> int:
        return self.functions.shape[0]


@dataclass
class CoverFreeFamily:
    n: int
    w: int
    r: int
    tests: np.ndarray  # (m, n) of 0/1
    field_q: int | None = None

    @property
    def m(self) -> int:
        return self.tests.shape[0]

    @property
    def functions(self) -> np.ndarray:
        return self.tests


@dataclass
class SeparatingHashFamily:
    n: int
    q: int
    ds: tuple[int, ...]
    functions: np.ndarray
    field_q: int | None = None
    h: int | None = None

    @property
    def m(self) -> int:
        return self.functions.shape[0]

    @property
    def D1(self) -> int:
        return shf_degrees(self.ds)[0]

    @property
    def D2(self) -> int:
        return shf_degrees(self.ds)[1]


@dataclass
class GreedyFamilySpec:
    N: int
    q: int
    d: int
    t: int
    Q: int
    chosen: list[tuple[int, ...]] = field(default_factory=list)


def shf_degrees(ds) -> tuple[int, int]:
    D1 = sum(ds)
    D2 = sum(a * b for a, b in itertools.combinations(ds, 2))
    return D1, D2


def _usable_q(q: int) -> int:
    if q < 2:
        raise AlphabetTooSmall(f"q={q} too small")
    return q if is_prime_power(q) else prev_prime_power(q)


def _constant_family(n: int) -> np.ndarray:
    return np.zeros((1, n), dtype=np.int64)


# -- plain and dense PHF -----------------------------------------------------

def _phf_checks(n: int, q: int, d: int) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < d:
        raise ValueError(f"need n >= d, got n={n}, d={d}")
    qq = _usable_q(q)
    D = d * (d - 1) // 2
    if d > 1 and qq < D + 2:
        raise AlphabetTooSmall(f"need a prime power q >= d(d-1)/2+2 = {D + 2} at or below q={q}")
    return qq


def phf_size(n: int, q: int, d: int) -> int:
    qq = _phf_checks(n, q, d)
    if d == 1:
        return 1
    return hitting_size(n, d * (d - 1) // 2, qq)


def build_phf(n: int, q: int, d: int) -> PerfectHashFamily:
    qq = _phf_checks(n, q, d)
    if d == 1:
        return PerfectHashFamily(n, q, d, _constant_family(n), field_q=qq)
    hs = build_hitting(n, d * (d - 1) // 2, qq)
    return PerfectHashFamily(n, q, d, hs.matrix, field_q=qq, h=hs.h)


def _dense_checks(n: int, q: int, d: int, eps) -> tuple[int, Fraction]:
    qq = _phf_checks(n, q, d)
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise EpsilonInfeasible("eps must lie in (0, 1]")
    verdict = dense_phf_feasibility(qq, d, eps)
    if verdict.verdicts.get("infeasible"):
        raise EpsilonInfeasible(f"no (1-eps)-dense PHF exists for q={qq}, d={d}, eps={eps}")
    D = d * (d - 1) // 2
    if d > 1 and not qq > (D + 1) / eps:
        raise EpsilonInfeasible(f"need q > (d(d-1)/2+1)/eps = {(D + 1) / eps}, got q={qq}")
    return qq, eps


def dense_phf_size(n: int, q: int, d: int, eps) -> int:
    qq, eps = _dense_checks(n, q, d, eps)
    if d == 1:
        return 1
    return dense_hitting_size(n, d * (d - 1) // 2, qq, eps)


def build_dense_phf(n: int, q: int, d: int, eps) -> PerfectHashFamily:
    qq, eps = _dense_checks(n, q, d, eps)
    if d == 1:
        return PerfectHashFamily(n, q, d, _constant_family(n), eps, field_q=qq)
    hs = build_dense_hitting(n, d * (d - 1) // 2, qq, eps)
    return PerfectHashFamily(n, q, d, hs.matrix, eps, field_q=qq, h=hs.h)


# -- greedy inner family and small-d composition ----------------------------

def greedy_bound(N: int, q: int, d: int) -> int:
    """Smallest s with C(N,d) * (1 - g(q,d))**s < 1; the greedy size guarantee."""
    total = math.comb(N, d)
    g = g_factor(q, d)
    if g == 0:
        raise AlphabetTooSmall(f"no ({N},{q},{d})-PHF: d > q")
    if g == 1 or total <= 1:
        return min(total, 1)
    s, rem = 0, Fraction(total)
    while rem >= 1:
        rem *= 1 - g
        s += 1
    return s


def _poly_evaluations(Q: int, d: int, N: int) -> np.ndarray:
    """Values of every polynomial of degree < d over GF(Q) at the first N elements.

    Members are ordered by coefficient vector, leading coefficient first.
    """
    t = tables(field_make(Q))
    coeffs = np.array(list(itertools.product(range(Q), repeat=d)), dtype=np.int64)
    xs = np.arange(N, dtype=np.int64)[None, :]
    acc = np.zeros((len(coeffs), N), dtype=np.int64)
    for c in range(d):
        acc = t.add(t.mul(acc, xs), coeffs[:, c : c + 1])
    return coeffs, acc


def _subsets(n: int, d: int, limit: int | None = None) -> np.ndarray:
    count = math.comb(n, d) if limit is None else limit
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), d)),
        dtype=np.int64,
        count=count * d,
    )
    return flat.reshape(count, d)


def greedy_phf(N: int, q: int, d: int, budget: int = 10**8):
    """Greedy set cover over low-degree polynomials, projected to GF(q).

    Returns ``(family, spec)``.  Evaluation values in GF(Q), Q = q**t, are
    projected to GF(q) by ``index % q`` (the low base-p digits), which keeps
    every joint distribution at distinct points uniform.
    """
    field_make(q)
    if N > 1000:
        raise BudgetExceeded("greedy PHF limited to N <= 1000")
    if d < 1 or d > q:
        raise AlphabetTooSmall(f"need 1 <= d <= q, got d={d}, q={q}")
    t = 0
    while q**t < N:
        t += 1
    Q = q**t
    spec = GreedyFamilySpec(N, q, d, t, Q)
    if d == 1:
        spec.chosen.append((0,))
        return PerfectHashFamily(N, q, d, _constant_family(N), field_q=q), spec
    cost = math.comb(N, d) * Q**d
    if cost > budget:
        raise BudgetExceeded(f"greedy cover needs {cost} checks, budget {budget}")
    coeffs, values = _poly_evaluations(Q, d, N)
    values %= q
    table = kernels.injective_table(values, _subsets(N, d))
    uncovered = np.ones(table.shape[1], dtype=bool)
    chosen = []
    while uncovered.any():
        counts = table[:, uncovered].sum(axis=1)
        best = int(np.argmax(counts))
        if counts[best] == 0:
            raise AssertionError("greedy cover stalled")
        chosen.append(best)
        uncovered &= ~table[best]
    bound = greedy_bound(N, q, d)
    assert len(chosen) <= bound, (len(chosen), bound)
    spec.chosen = [tuple(int(c) for c in coeffs[i]) for i in chosen]
    return PerfectHashFamily(N, q, d, values[chosen], field_q=q), spec


def build_phf_small_d(n: int, q: int, d: int) -> PerfectHashFamily:
    field_make(q)
    if d > q:
        raise AlphabetTooSmall(f"need d <= q, got d={d}, q={q}")
    if q > d * d:
        return build_phf(n, q, d)
    if n > 16:
        lln = math.log2(math.log2(n))
        if d > math.log2(n) / (8 * lln):
            warnings.warn(f"d={d} exceeds log n / (8 log log n); size bound not guaranteed", stacklevel=2)
    q1 = next_prime_power(d**3)
    outer = build_phf(n, q1, d)
    inner, _ = greedy_phf(q1, q, d)
    funcs = inner.functions[:, outer.functions]  # (m2, m1, n)
    funcs = funcs.transpose(1, 0, 2).reshape(-1, n)
    return PerfectHashFamily(n, q, d, np.ascontiguousarray(funcs), field_q=q)


# -- cover-free families -----------------------------------------------------

def chi_family(q: int, w: int, r: int) -> CoverFreeFamily:
    """Indicator vectors of all w-subsets of a q-element set."""
    rows = []
    for R in itertools.combinations(range(q), w):
        v = np.zeros(q, dtype=np.int64)
        v[list(R)] = 1
        rows.append(v)
    return CoverFreeFamily(q, w, r, np.array(rows, dtype=np.int64).reshape(-1, q))


def cff_alphabet(w: int, r: int, qmult=3) -> int:
    return next_prime_power(max(w * r + 2, math.ceil(Fraction(qmult) * w * r)))


def compose_cff(inner: CoverFreeFamily, hs: HittingSet) -> CoverFreeFamily:
    if inner.n != hs.spec.q:
        raise DegreeMismatch(f"inner family is over {inner.n} points, hitting set over GF({hs.spec.q})")
    if hs.degree < inner.w * inner.r:
        raise DegreeMismatch(f"hitting set degree {hs.degree} < w*r = {inner.w * inner.r}")
    tests = inner.tests[:, hs.matrix]  # (M, m, n)
    tests = tests.transpose(1, 0, 2).reshape(-1, hs.n)
    return CoverFreeFamily(hs.n, inner.w, inner.r, np.ascontiguousarray(tests), field_q=hs.spec.q)


def build_cff(n: int, w: int, r: int, qmult=3) -> CoverFreeFamily:
    if w < 1 or r < 1:
        raise ValueError("w and r must be >= 1")
    if n <= w + r:
        raise ValueError(f"need n > w + r, got n={n}")
    q = cff_alphabet(w, r, qmult)
    hs = build_hitting(n, w * r, q)
    return compose_cff(chi_family(q, w, r), hs)


# -- separating hash families ------------------------------------------------

def _check_ds(n: int, ds) -> tuple[int, ...]:
    ds = tuple(int(x) for x in ds)
    if not ds or min(ds) < 1:
        raise ValueError("class sizes must be positive")
    if sum(ds) > n:
        raise ValueError(f"classes of total size {sum(ds)} do not fit in n={n}")
    return ds


def build_shf(n: int, q: int, ds) -> SeparatingHashFamily:
    ds = _check_ds(n, ds)
    if len(ds) == 1:
        return SeparatingHashFamily(n, q, ds, _constant_family(n))
    D2 = shf_degrees(ds)[1]
    qq = prev_prime_power(q) if q >= 2 else 0
    if qq < D2 + 2:
        raise InsufficientAlphabet(f"need a prime power q' with D2+2 = {D2 + 2} <= q' <= q={q}")
    hs = build_hitting(n, D2, qq)
    return SeparatingHashFamily(n, q, ds, hs.matrix, field_q=qq, h=hs.h)


def _colorings(q: int, ds):
    """Disjoint (R_1..R_r), |R_i| = d_i, in lexicographic order."""

    def rec(i, free):
        if i == len(ds):
            yield ()
            return
        for R in itertools.combinations(free, ds[i]):
            rest = [x for x in free if x not in R]
            for tail in rec(i + 1, rest):
                yield (R,) + tail

    yield from rec(0, list(range(q)))


def build_shf_small_alphabet(n: int, ds, cap: int = 10**6) -> SeparatingHashFamily:
    ds = _check_ds(n, ds)
    r = len(ds)
    if r < 2:
        raise ValueError("need at least two classes")
    D1, D2 = shf_degrees(ds)
    qq = next_prime_power(2 * D2 + 2)
    count = math.factorial(qq) // math.prod(math.factorial(x) for x in ds) // math.factorial(qq - D1)
    if count > cap:
        raise BudgetExceeded(f"{count} inner colorings exceed cap {cap}")
    hs = build_hitting(n, D2, qq)
    inner = np.zeros((count, qq), dtype=np.int64)
    for idx, Rs in enumerate(_colorings(qq, ds)):
        for color, R in enumerate(Rs):
            inner[idx, list(R)] = color
    funcs = inner[:, hs.matrix].transpose(1, 0, 2).reshape(-1, n)
    return SeparatingHashFamily(n, r, ds, np.ascontiguousarray(funcs), field_q=qq, h=hs.h)


# -- verifiers ---------------------------------------------------------------

def _pair_positions(d: int):
    pa, pb = zip(*itertools.combinations(range(d), 2))
    return np.array(pa), np.array(pb)


def _check_budget(total: int, m: int, budget: int) -> int:
    checks = total * m
    if checks > budget:
        raise BudgetExceeded(f"{total} constraints x {m} rows exceeds budget {budget}")
    return checks


def _subset_blocks(n: int, d: int):
    it = itertools.combinations(range(n), d)
    while True:
        block = list(itertools.islice(it, kernels.CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), d)


def _verify_subsets(matrix, n, d, threshold, budget) -> Verdict:
    m = matrix.shape[0]
    checks = _check_budget(math.comb(n, d), m, budget)
    if d < 2:
        ok = m > threshold
        return Verdict(ok, checks, None if ok else tuple(range(d)), m)
    pa, pb = _pair_positions(d)
    min_hits = None
    for block in _subset_blocks(n, d):
        pairsets = np.stack([block[:, pa], block[:, pb]], axis=-1)
        hits = kernels.separation_counts(matrix, pairsets)
        lo = int(hits.min())
        min_hits = lo if min_hits is None else min(min_hits, lo)
        bad = np.flatnonzero(hits <= threshold)
        if len(bad):
            return Verdict(False, checks, tuple(int(x) for x in block[bad[0]]), lo)
    return Verdict(True, checks, None, min_hits)


def verify_phf(family, d: int | None = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    d = family.d if d is None else d
    return _verify_subsets(family.functions, family.n, d, 0, budget)


def verify_phf_density(family, eps=None, d: int | None = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    d = family.d if d is None else d
    eps = Fraction(family.dense_eps if eps is None else eps)
    threshold = math.floor((1 - eps) * family.m)
    return _verify_subsets(family.functions, family.n, d, threshold, budget)


def verify_cff(family, w: int | None = None, r: int | None = None, budget: int = DEFAULT_BUDGET) -> Verdict:
    w = family.w if w is None else w
    r = family.r if r is None else r
    n, m = family.n, family.m
    total = math.comb(n, w) * math.comb(n - w, r)
    checks = _check_budget(total, m, budget)

    def constraints():
        for J in itertools.combinations(range(n), w):
            rest = [x for x in range(n) if x not in J]
            for K in itertools.combinations(rest, r):
                yield J, K

    min_hits = None
    for block in kernels.chunked(constraints()):
        ones = np.array([J for J, _ in block], dtype=np.int64).reshape(len(block), w)
        zeros = np.array([K for _, K in block], dtype=np.int64).reshape(len(block), r)
        hits = kernels.cff_counts(family.tests, ones, zeros)
        lo = int(hits.min())
        min_hits = lo if min_hits is None else min(min_hits, lo)
        bad = np.flatnonzero(hits == 0)
        if len(bad):
            return Verdict(False, checks, block[bad[0]], lo)
    return Verdict(True, checks, None, min_hits)


def _class_tuples(n: int, ds):
    def rec(i, free):
        if i == len(ds):
            yield ()
            return
        for C in itertools.combinations(free, ds[i]):
            rest = [x for x in free if x not in C]
            for tail in rec(i + 1, rest):
                yield (C,) + tail

    yield from rec(0, list(range(n)))


def verify_shf(family, ds=None, budget: int = DEFAULT_BUDGET) -> Verdict:
    ds = tuple(family.ds if ds is None else ds)
    n, m = family.n, family.m
    D1 = sum(ds)
    total = math.factorial(n) // math.prod(math.factorial(x) for x in ds) // math.factorial(n - D1)
    checks = _check_budget(total, m, budget)
    if len(ds) < 2:
        return Verdict(True, checks, None, m)
    offsets = np.cumsum((0,) + ds)
    pa, pb = [], []
    for k, j in itertools.combinations(range(len(ds)), 2):
        for a in range(offsets[k], offsets[k + 1]):
            for b in range(offsets[j], offsets[j + 1]):
                pa.append(a)
                pb.append(b)
    pa, pb = np.array(pa), np.array(pb)
    min_hits = None
    for block in kernels.chunked(_class_tuples(n, ds)):
        flat = np.array([sum(cs, ()) for cs in block], dtype=np.int64)
        pairsets = np.stack([flat[:, pa], flat[:, pb]], axis=-1)
        hits = kernels.separation_counts(family.functions, pairsets)
        lo = int(hits.min())
        min_hits = lo if min_hits is None else min(min_hits, lo)
        bad = np.flatnonzero(hits == 0)
        if len(bad):
            return Verdict(False, checks, block[bad[0]], lo)
    return Verdict(True, checks, None, min_hits)
