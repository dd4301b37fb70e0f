"""Brute-force reference checks, independent of the construction code.

Everything here works from DRF documents (or plain nested lists) and uses its
own tiny field arithmetic and straightforward loops over the defining
property.  These are slow on purpose; they adjudicate the fast verifiers.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .drf import KEY_ORDER, DrfDocument, parse
from .errors import BudgetExceeded

__all__ = [
    "ConstraintBudget",
    "OracleResult",
    "oracle_min_distance",
    "oracle_check",
    "oracle_check_text",
    "oracle_random_family_baseline",
    "corrupt_symbol",
    "prune_rows",
    "tighten_code",
]

DEFAULT_MAX_CHECKS = 10**7


@dataclass
class ConstraintBudget:
    max_checks: int = DEFAULT_MAX_CHECKS
    elapsed: int = 0

    def charge(self, amount: int):
        self.elapsed += amount
        if self.elapsed > self.max_checks:
            raise BudgetExceeded(f"oracle budget of {self.max_checks} checks exhausted")


@dataclass
class OracleResult:
    ok: bool
    witness: object = None
    checks: int = 0
    min_hits: int | None = None


# -- minimal field arithmetic (digits base p, constant term first) ----------

def _factor_prime_power(q: int) -> tuple[int, int]:
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e = round(math.log(q, p))
    return p, e


def _make_mul(q: int, modulus):
    p, e = _factor_prime_power(q)
    if e == 1:
        return lambda a, b: a * b % q, lambda a, b: (a + b) % q
    low = list(reversed(modulus))  # constant first, monic

    def digits(a):
        return [(a // p**i) % p for i in range(e)]

    def undigits(ds):
        return sum(c * p**i for i, c in enumerate(ds))

    def mul(a, b):
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(digits(a)):
            for j, y in enumerate(digits(b)):
                prod[i + j] += x * y
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            prod[i] = 0
            if c:
                for j in range(e):
                    prod[i - e + j] -= c * low[j]
        return undigits([c % p for c in prod[:e]])

    def add(a, b):
        return undigits([(x + y) % p for x, y in zip(digits(a), digits(b))])

    return mul, add


def oracle_min_distance(columns, q: int, modulus=None, budget: int = 10**6):
    """Minimum weight over ALL nonzero messages; returns (weight, message)."""
    k = len(columns)
    m = len(columns[0]) if k else 0
    if q**k - 1 > budget:
        raise BudgetExceeded(f"{q**k - 1} messages exceed budget {budget}")
    mul, add = _make_mul(q, modulus)
    best, arg = None, None
    for u in itertools.product(range(q), repeat=k):
        if not any(u):
            continue
        w = 0
        for t in range(m):
            s = 0
            for ui, col in zip(u, columns):
                if ui:
                    s = add(s, mul(ui, col[t]))
            w += s != 0
        if best is None or w < best:
            best, arg = w, u
    return best, arg


# -- property checks from documents -----------------------------------------

def _need(m: int, eps) -> int:
    """Smallest hit count that counts as success."""
    if eps is None:
        return 1
    return math.floor((1 - eps) * m) + 1


def _scan(rows, constraints, hit, need, budget):
    """First constraint with fewer than ``need`` hitting rows."""
    m = len(rows)
    checks = 0
    min_hits = None
    for con in constraints:
        count = seen = 0
        for row in rows:
            seen += 1
            if hit(row, con):
                count += 1
                if need == 1:
                    break
        budget.charge(seen)
        checks += seen
        if min_hits is None or count < min_hits:
            min_hits = count
        if count < need:
            return OracleResult(False, con, checks, count)
    return OracleResult(True, None, checks, min_hits)


def _disjoint_classes(n, ds):
    def rec(i, free):
        if i == len(ds):
            yield ()
            return
        for C in itertools.combinations(free, ds[i]):
            rest = [x for x in free if x not in C]
            for tail in rec(i + 1, rest):
                yield (C,) + tail

    return rec(0, list(range(n)))


def oracle_check(doc: DrfDocument, max_checks: int = DEFAULT_MAX_CHECKS) -> OracleResult:
    budget = ConstraintBudget(max_checks)
    h = doc.header
    rows = doc.rows.tolist()
    n = h["n"]
    if doc.kind == "code":
        weight, msg = oracle_min_distance(rows, h["q"], h.get("modulus"), budget=max_checks)
        target = math.ceil(doc.delta * h["m"])
        if weight is None or weight >= target:
            return OracleResult(True, None, h["q"] ** h["k"] - 1, weight)
        return OracleResult(False, msg, h["q"] ** h["k"] - 1, weight)
    need = _need(h["m"], doc.eps)
    if doc.kind == "phf":
        d = h["d"]

        def hit(row, S):
            return len({row[i] for i in S}) == len(S)

        return _scan(rows, itertools.combinations(range(n), d), hit, need, budget)
    if doc.kind == "hitting":
        pairs = list(itertools.combinations(range(n), 2))
        cons = itertools.chain.from_iterable(
            itertools.combinations(pairs, s) for s in range(1, h["d"] + 1)
        )

        def hit(row, I):
            return all(row[a] != row[b] for a, b in I)

        return _scan(rows, cons, hit, need, budget)
    if doc.kind == "cff":
        w, r = h["w"], h["r"]

        def cons():
            for J in itertools.combinations(range(n), w):
                rest = [x for x in range(n) if x not in J]
                for K in itertools.combinations(rest, r):
                    yield (J, K)

        def hit(row, JK):
            J, K = JK
            return all(row[j] == 1 for j in J) and all(row[k] == 0 for k in K)

        return _scan(rows, cons(), hit, 1, budget)
    ds = h["ds"]

    def hit(row, classes):
        images = [{row[i] for i in C} for C in classes]
        return all(a.isdisjoint(b) for a, b in itertools.combinations(images, 2))

    if len(ds) < 2:
        return OracleResult(True, None, 0, len(rows))
    return _scan(rows, _disjoint_classes(n, ds), hit, 1, budget)


def oracle_check_text(text: str, max_checks: int = DEFAULT_MAX_CHECKS) -> OracleResult:
    return oracle_check(parse(text), max_checks)


# -- random baseline ---------------------------------------------------------

def oracle_random_family_baseline(kind: str, params: dict, trials: int = 20, seed: int = 0,
                                  max_checks: int = DEFAULT_MAX_CHECKS) -> float:
    """Fraction of uniformly random families of the given size that pass.

    ``params`` holds ``n``, ``m`` and the kind's parameters (``q, d`` for phf,
    ``w, r`` for cff, ``q, ds`` for shf, ``q, d`` for hitting).
    """
    rng = random.Random(seed)
    n, m = params["n"], params["m"]
    q = 2 if kind == "cff" else params["q"]
    header = {key: params[key] for key in ("n", "q", "d", "w", "r", "ds") if key in params}
    header["q"] = q
    header["m"] = m
    if kind == "hitting":
        header["h"] = params.get("h", params["d"] + 1)
    passed = 0
    for _ in range(trials):
        rows = np.array([[rng.randrange(q) for _ in range(n)] for _ in range(m)],
                        dtype=np.int64).reshape(m, n)
        doc = DrfDocument(kind, dict(sorted(header.items(), key=lambda kv: KEY_ORDER.index(kv[0]))), rows)
        if m and oracle_check(doc, max_checks).ok:
            passed += 1
    return passed / trials if trials else 0.0


# -- negative-control helpers ------------------------------------------------

def corrupt_symbol(doc: DrfDocument, seed: int) -> DrfDocument:
    """Copy of ``doc`` with exactly one body symbol replaced by a different one."""
    rng = random.Random(seed)
    rows = doc.rows.copy()
    i = rng.randrange(rows.shape[0])
    j = rng.randrange(rows.shape[1])
    q = doc.header["q"]
    new = rng.randrange(q - 1)
    if new >= rows[i, j]:
        new += 1
    rows[i, j] = new
    return DrfDocument(doc.kind, dict(doc.header), rows)


def prune_rows(doc: DrfDocument, max_checks: int = DEFAULT_MAX_CHECKS) -> DrfDocument:
    """Drop rows front to back while the oracle still accepts the document.

    The result is a valid family in which every row is needed by some
    constraint, which makes single-symbol corruptions detectable.
    """
    if doc.kind == "code":
        raise ValueError("pruning applies to families, not codes")
    keep = list(range(doc.rows.shape[0]))
    for i in list(keep):
        trial = [x for x in keep if x != i]
        if not trial:
            continue
        cand = DrfDocument(doc.kind, dict(doc.header, m=len(trial)), doc.rows[trial])
        if oracle_check(cand, max_checks).ok:
            keep = trial
    return DrfDocument(doc.kind, dict(doc.header, m=len(keep)), doc.rows[keep])


def tighten_code(doc: DrfDocument) -> DrfDocument:
    """Same code with the distance claim set to its exact minimum weight."""
    h = doc.header
    weight, _ = oracle_min_distance(doc.rows.tolist(), h["q"], h.get("modulus"))
    delta = Fraction(weight, h["m"])
    hdr = dict(h, delta_num=delta.numerator, delta_den=delta.denominator)
    hdr.pop("h", None)
    return DrfDocument("code", hdr, doc.rows.copy())

