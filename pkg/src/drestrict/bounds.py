"""Bound formulas for reporting and feasibility gating.

Asymptotic bounds are evaluated as their dominant term with constants
omitted and are tagged ``asymptotic=True``.  Logs inside ratios are natural
(the base cancels); a standalone ``log n`` is base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError

__all__ = [
    "BoundValue",
    "BoundReport",
    "entropy_q",
    "g_factor",
    "phf_lower_bound",
    "dense_phf_feasibility",
    "cff_bounds",
    "shf_lower_bound",
]

MAX_CFF_D = 60


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: float | Fraction
    asymptotic: bool
    note: str = ""


@dataclass
class BoundReport:
    params: dict
    values: list[BoundValue] = field(default_factory=list)
    verdicts: dict[str, bool] = field(default_factory=dict)

    def add(self, name, value, asymptotic, note=""):
        self.values.append(BoundValue(name, value, asymptotic, note))

    def __getitem__(self, name) -> BoundValue:
        for v in self.values:
            if v.name == name:
                return v
        raise KeyError(name)


def entropy_q(q: int, p) -> float:
    """q-ary entropy H_q(p)."""
    if q < 2 or not 0 <= p <= 1:
        raise DomainError(f"entropy_q needs q >= 2 and 0 <= p <= 1, got q={q}, p={p}")
    p = float(p)
    lq = math.log(q)
    if p == 0:
        return 0.0
    if p == 1:
        return math.log(q - 1) / lq
    return (p * math.log((q - 1) / p) + (1 - p) * math.log(1 / (1 - p))) / lq


def g_factor(q: int, d: int) -> Fraction:
    """prod_{i<d} (1 - i/q): chance that d uniform values in [q] are distinct."""
    if q < 1 or d < 1:
        raise DomainError("g_factor needs q >= 1 and d >= 1")
    g = Fraction(1)
    for i in range(1, d):
        g *= 1 - Fraction(i, q)
    return g


def phf_lower_bound(n: int, q: int, d: int) -> BoundReport:
    if n <= d:
        raise DomainError("need n > d")
    if q < d:
        raise DomainError(f"no ({n},{q},{d})-PHF exists when q < d")
    rep = BoundReport({"n": n, "q": q, "d": d})
    g = g_factor(q, d)
    rep.add("g(q,d)", g, False)
    if d == 1:
        rep.add("lower_fk", 1.0, False, "d = 1: one function suffices")
        rep.add("lower_generic", 1.0, False, "d = 1: one function suffices")
        return rep
    fk = (q - d + 1) / q * (math.log(n) / math.log(q - d + 2)) / float(g)
    rep.add("lower_fk", fk, True, "((q-d+1)/(q log(q-d+2))) log n / g(q,d)")
    rep.add("lower_generic", d * math.log(n) / math.log(q), True, "d log n / log q")
    return rep


def dense_phf_feasibility(q: int, d: int, eps, n: int | None = None) -> BoundReport:
    """Flags (q, d, eps) for which no (1-eps)-dense PHF exists."""
    eps = Fraction(eps)
    rep = BoundReport({"q": q, "d": d, "eps": eps, "n": n})
    threshold = Fraction(d * (d - 1), 2 * q) - Fraction(d * d * (d - 1) ** 2, 8 * q * q)
    applicable = 2 * q > d * d
    rep.add("eps_threshold", threshold, False, "d(d-1)/(2q) - d^2(d-1)^2/(8q^2), valid for q > d^2/2")
    rep.verdicts["regime"] = applicable
    rep.verdicts["infeasible"] = applicable and d > 1 and eps <= threshold
    if n is not None and n > 1 and q > 1:
        rep.add("lower_dense", d * math.log(n) / (float(eps) * math.log(q)), True, "d log n / (eps log q)")
    return rep


def cff_bounds(n: int, w: int, r: int) -> BoundReport:
    d = w + r
    if d > MAX_CFF_D:
        raise DomainError(f"w + r = {d} exceeds {MAX_CFF_D}")
    if w < 1 or r < 1 or n < 2:
        raise DomainError("need w, r >= 1 and n >= 2")
    rep = BoundReport({"n": n, "w": w, "r": r})
    logn = math.log2(n)
    b = math.comb(d, w)
    if r > 1:
        rep.add("lower_group_testing", r * r / math.log2(r) * logn, True, "r^2/log r * log n (w = 1 shape)")
    if b > 1:
        rep.add("lower", d * b / math.log2(b) * logn, True, "d C(d,w) / log C(d,w) * log n")
    rep.add("upper_union", math.sqrt(w * r * d) * b * logn, True, "sqrt(w r d) C(d,w) log n")
    return rep


def shf_lower_bound(n: int, q: int, ds) -> BoundReport:
    D1 = sum(ds)
    rep = BoundReport({"n": n, "q": q, "ds": tuple(ds)})
    if D1 <= 1:
        rep.add("lower", 0.0, False, "D1 <= 1")
        return rep
    if q < 2 or n <= (D1 - 1) * q:
        raise DomainError(f"need n > (D1-1) q = {(D1 - 1) * q}")
    val = (D1 - 1) * (math.log(n) - math.log(D1 - 1) - math.log(q)) / math.log(q)
    rep.add("lower", val, False, "(D1-1)(log n - log(D1-1) - log q)/log q")
    return rep
