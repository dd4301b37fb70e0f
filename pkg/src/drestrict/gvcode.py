"""Derandomised construction of linear codes on the Gilbert-Varshamov line.

The generator matrix ``[v_1 | ... | v_k]`` has ``v_1`` fixed to the all-ones
column.  The other columns are chosen symbol by symbol with the method of
conditional expectations, tracking only normalized codewords (messages whose
first nonzero coordinate is 1): every codeword is a scalar multiple of one of
those, so it is enough to keep them all heavy.

The estimator counts, for each tracked message, the probability that a
uniformly random completion leaves it with too many zeros.  All probabilities
for a fixed number ``N`` of remaining positions share the denominator
``q**N``, so they are kept as exact integer numerators.  ``TailTable`` holds
whole rows; construction only walks the few levels that tracked messages
occupy (``_Levels``).
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, Infeasible, RegimeViolation, TooMany
from .gfq import FieldSpec, field_make, tables

log = logging.getLogger(__name__)

__all__ = [
    "CodeParams",
    "LinearCode",
    "TailTable",
    "tail_point",
    "dimension_for",
    "spcode_params",
    "spcode2_params",
    "construct_code",
    "normalized_messages",
    "enumerate_codewords",
    "codeword",
    "min_weight_bruteforce",
]


def dimension_for(q: int, n: int) -> int:
    """Smallest k with q**k >= n + 1, i.e. ceil(log(n+1)/log q)."""
    k = 0
    while q**k < n + 1:
        k += 1
    return k


@dataclass(frozen=True)
class CodeParams:
    q: int
    m: int
    k: int
    delta: Fraction
    h: int | None = None
    n: int | None = None
    m_closed_form: int | None = None

    @property
    def max_zeros(self) -> int:
        """A codeword is good iff it has at most this many zero positions."""
        return math.floor((1 - self.delta) * self.m)

    @property
    def min_weight(self) -> int:
        return math.ceil(self.delta * self.m)


def _check_common(q: int, h: int, n: int):
    field_make(q)
    if n < 1:
        raise ValueError("n must be >= 1")
    if h < 2:
        raise RegimeViolation("h must be >= 2")


def spcode_params(q: int, h: int, n: int) -> CodeParams:
    """Length for the small-h regime 1 < h < q/4."""
    _check_common(q, h, n)
    if not 4 * h < q:
        raise RegimeViolation(f"need h < q/4, got h={h}, q={q}")
    m = math.ceil(h * math.log(q * (n + 1)) / (math.log(q) - math.log(h) - 1))
    return CodeParams(q, m, dimension_for(q, n), Fraction(h - 1, h), h, n, m)


def spcode2_params(q: int, h: int, n: int) -> CodeParams:
    """Length for the large-h regime q/4 <= h <= q - 1."""
    _check_common(q, h, n)
    if 4 * h < q or h > q - 1:
        raise RegimeViolation(f"need q/4 <= h <= q-1, got h={h}, q={q}")
    m = math.ceil(4 * (q - 1) ** 2 * h * math.log(q * (n + 1)) / (q - h) ** 2)
    return CodeParams(q, m, dimension_for(q, n), Fraction(h - 1, h), h, n, m)


class TailTable:
    """Integer numerators ``A[N][s] = q**N * P[Bin(N, 1/q) >= s]``.

    Only ``s`` in ``[0, smax]`` is stored.  Rows are produced for decreasing
    ``N`` using ``A[N][s] = A[N-1][s-1] + (q-1) * A[N-1][s]`` solved for row
    ``N-1``, so memory stays at one row.
    """

    def __init__(self, q: int, top: int, smax: int):
        self.q = q
        self.top = top
        self.smax = smax
        row = [1] + [0] * smax
        for _ in range(top):
            new = [row[0] * q]
            for s in range(1, smax + 1):
                new.append(row[s - 1] + (q - 1) * row[s])
            row = new
        self._top_row = row

    @staticmethod
    def direct(q: int, N: int, s: int) -> int:
        s = max(s, 0)
        return sum(math.comb(N, j) * (q - 1) ** (N - j) for j in range(s, N + 1))

    def rows_descending(self):
        """Yield ``(N, row)`` for N = top, top-1, ..., 0."""
        q, row = self.q, self._top_row
        yield self.top, row
        for N in range(self.top, 0, -1):
            new = [q ** (N - 1)]
            for s in range(1, self.smax + 1):
                num = row[s] - new[s - 1]
                if q > 2:
                    num //= q - 1
                new.append(num)
            row = new
            yield N - 1, row

    @property
    def top_row(self) -> list[int]:
        return self._top_row


def _at(row: list[int], s: int) -> int:
    if s <= 0:
        return row[0]
    if s >= len(row):
        return 0
    return row[s]


def tail_point(q: int, N: int, s: int) -> tuple[int, int]:
    """``(A[N][s], T[N][s-1])`` where ``T[N][j] = C(N, j) (q-1)**(N-j)``.

    Sums the complement, so the cost is ``s`` big-integer steps.
    """
    if s <= 0:
        return q**N, 0
    if s > N + 1:
        return 0, 0
    term = (q - 1) ** N
    acc = 0
    for j in range(s - 1):
        acc += term
        term = term * (N - j) // ((j + 1) * (q - 1))
    return q**N - acc - term, term


class _Levels:
    """Tail numerators at a handful of levels ``s`` for one row ``N``.

    Each level stores ``(A[N][s], T[N][s-1])``; then ``A[N][s-1]`` is their
    sum, and both move down a row or a level with one exact division.
    """

    def __init__(self, q: int, N: int, levels):
        self.q, self.N = q, N
        first = max(levels)
        self.vals = {first: tail_point(q, N, first)}
        for s in sorted(set(levels), reverse=True)[1:]:
            self.add(s)

    def add(self, s: int):
        """Open level ``s`` from the existing level ``s + 1``."""
        if s in self.vals:
            return
        a, t = self.vals[s + 1]
        N, j = self.N, s  # t = T[N][j]; want T[N][j-1]
        if j <= 0:
            lower = 0
        elif t:
            lower = t * j * (self.q - 1) // (N - j + 1)
        else:
            lower = 1 if j - 1 == N else 0
        self.vals[s] = (a + t, lower)

    def step(self, keep):
        """Move to row ``N - 1`` keeping only the levels in ``keep``."""
        q, N = self.q, self.N
        out = {}
        for s in keep:
            a, t = self.vals[s]
            t2 = t * (N - s + 1) // (N * (q - 1)) if s >= 1 else 0
            out[s] = ((a - t2) // q, t2)
        self.vals = out
        self.N = N - 1


@dataclass
class LinearCode:
    spec: FieldSpec
    params: CodeParams
    columns: np.ndarray  # shape (k, m)
    phi_trace: list[Fraction] = field(default_factory=list, repr=False)
    bad_count: int = 0

    @property
    def k(self) -> int:
        return self.columns.shape[0]

    @property
    def m(self) -> int:
        return self.columns.shape[1]


def normalized_messages(q: int, k: int):
    """Normalized messages in lexicographic order."""
    for u in itertools.product(range(q), repeat=k):
        for c in u:
            if c:
                if c == 1:
                    yield u
                break


def codeword(spec: FieldSpec, columns: np.ndarray, u) -> np.ndarray:
    t = tables(spec)
    out = np.zeros(columns.shape[1], dtype=np.int64)
    for ui, col in zip(u, columns):
        if ui:
            out = t.add(out, t.mul(ui, col))
    return out


def _initial_phi(params: CodeParams) -> Fraction:
    q, m, k = params.q, params.m, params.k
    need = params.max_zeros + 1
    n_norm = (q**k - 1) // (q - 1)
    return Fraction(n_norm * tail_point(q, m, need)[0], q**m)


def construct_code(params: CodeParams, cap_factor: int = 4) -> LinearCode:
    """Greedy generator columns; see module docstring.

    If the requested length does not give an initial estimate below 1, the
    length is increased one position at a time up to ``cap_factor`` times the
    requested length.
    """
    spec = field_make(params.q)
    q, k = params.q, params.k
    m0 = params.m
    m = m0
    while True:
        trial = CodeParams(q, m, k, params.delta, params.h, params.n, params.m_closed_form)
        phi0 = _initial_phi(trial)
        if phi0 < 1:
            break
        m += 1
        if m > cap_factor * m0:
            raise Infeasible(f"no length up to {cap_factor}x{m0} gives estimator < 1")
    if m != m0:
        log.warning("estimator forced length increase %d -> %d (q=%d, k=%d)", m0, m, q, k)
    params = trial
    t = tables(spec)

    need0 = params.max_zeros + 1
    tail_m = tail_point(q, m, need0)[0]
    qm = q**m

    columns = np.zeros((k, m), dtype=np.int64)
    columns[0] = 1
    n_norm = (q**k - 1) // (q - 1)
    trace = [phi0]
    # the message e_1 is now fixed and has no zeros
    bad = 1 if need0 <= 0 else 0
    trace.append(Fraction(bad, 1) + Fraction((n_norm - 1) * tail_m, qm))

    for j in range(1, k):
        later = (q**k - q ** (j + 1)) // (q - 1)  # normalized msgs with top index > j
        tracked = [u for u in normalized_messages(q, j + 1) if u[j]]
        # partial codewords and the symbol that would zero each position
        zsym = np.empty((len(tracked), m), dtype=np.int64)
        for i, u in enumerate(tracked):
            partial = codeword(spec, columns[:j], u[:j])
            zsym[i] = t.mul(t.neg[partial], t.inv[u[j]])
        need = [need0] * len(tracked)
        const_part = Fraction(bad, 1) + Fraction(later * tail_m, qm)

        levels = _Levels(q, m, need)
        prev_num = len(need) * tail_m
        for pos in range(m):
            levels.step(set(need))
            N, vals = levels.N, levels.vals
            base = 0
            delta = [0] * q
            zcol = zsym[:, pos]
            for i, s_need in enumerate(need):
                lo, gap = vals[s_need]
                base += lo
                delta[zcol[i]] += gap
            best = min(range(q), key=delta.__getitem__)
            columns[j, pos] = best
            for i in np.flatnonzero(zcol == best):
                need[i] -= 1
                levels.add(need[i])
            num = base + delta[best]
            if num * q > prev_num:
                raise AssertionError("pessimistic estimator increased")
            prev_num = num
            trace.append(const_part + Fraction(num, q**N))
        bad += sum(1 for s in need if s <= 0)
        trace.append(Fraction(bad, 1) + Fraction(later * tail_m, qm))

    return LinearCode(spec, params, columns, trace, bad)


def enumerate_codewords(code: LinearCode, n: int) -> list[np.ndarray]:
    """n distinct nonzero codewords: normalized ones first, then multiples."""
    q, k = code.params.q, code.k
    if n > q**k - 1:
        raise TooMany(f"code has only {q**k - 1} nonzero codewords")
    t = tables(code.spec)
    normal = []
    for u in normalized_messages(q, k):
        if len(normal) == n:
            return normal
        normal.append(codeword(code.spec, code.columns, u))
    out = list(normal)
    for lam in range(2, q):
        for c in normal:
            if len(out) == n:
                return out
            out.append(t.mul(lam, c))
    return out[:n]


def min_weight_bruteforce(code: LinearCode, budget: int = 10**6) -> int:
    """Exact minimum weight, scanning normalized messages only."""
    q, k = code.params.q, code.k
    if (q**k - 1) // (q - 1) > budget:
        raise BudgetExceeded("too many normalized codewords")
    return min(
        int(np.count_nonzero(codeword(code.spec, code.columns, u)))
        for u in normalized_messages(q, k)
    )
