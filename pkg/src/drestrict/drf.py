"""DRF v1: the text interchange format for constructed objects.

Layout (LF line endings, no trailing whitespace)::

    DRF 1
    kind phf
    n 100
    q 17
    d 3
    m 67
    h 4
    field_q 17
    data
    <m lines of n space-separated decimal symbols>

Header keys must appear in ``KEY_ORDER`` order.  For ``kind code`` the body
holds the k generator columns, one line of m symbols each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParseError

__all__ = [
    "KINDS",
    "KEY_ORDER",
    "DrfDocument",
    "parse",
    "serialize",
    "load",
    "dump",
    "to_document",
    "from_document",
]

KINDS = ("code", "hitting", "phf", "cff", "shf")
KEY_ORDER = (
    "n", "q", "d", "w", "r", "ds", "m", "k",
    "eps_num", "eps_den", "delta_num", "delta_den", "h", "field_q", "modulus",
)
REQUIRED = {
    "code": {"n", "q", "m", "k", "delta_num", "delta_den"},
    "hitting": {"n", "q", "d", "m", "h"},
    "phf": {"n", "q", "d", "m"},
    "cff": {"n", "q", "w", "r", "m"},
    "shf": {"n", "q", "ds", "m"},
}
OPTIONAL = {
    "code": {"h", "modulus"},
    "hitting": {"eps_num", "eps_den", "modulus"},
    "phf": {"eps_num", "eps_den", "h", "field_q"},
    "cff": {"field_q"},
    "shf": {"h", "field_q"},
}
_TUPLE_KEYS = {"ds", "modulus"}


@dataclass
class DrfDocument:
    kind: str
    header: dict = field(default_factory=dict)
    rows: np.ndarray = None
    version: int = 1

    def __eq__(self, other):
        if not isinstance(other, DrfDocument):
            return NotImplemented
        return (
            self.version == other.version
            and self.kind == other.kind
            and list(self.header.items()) == list(other.header.items())
            and self.rows.shape == other.rows.shape
            and bool(np.array_equal(self.rows, other.rows))
        )

    @property
    def eps(self) -> Fraction | None:
        if "eps_num" in self.header:
            return Fraction(self.header["eps_num"], self.header["eps_den"])
        return None

    @property
    def delta(self) -> Fraction | None:
        if "delta_num" in self.header:
            return Fraction(self.header["delta_num"], self.header["delta_den"])
        return None


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    return str(value)


def serialize(doc: DrfDocument) -> str:
    lines = [f"DRF {doc.version}", f"kind {doc.kind}"]
    for key in KEY_ORDER:
        if key in doc.header:
            lines.append(f"{key} {_fmt(doc.header[key])}")
    lines.append("data")
    lines.extend(" ".join(str(int(x)) for x in row) for row in doc.rows)
    return "\n".join(lines) + "\n"


def _int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{key}: expected an integer, got {text!r}") from None


def parse(text: str) -> DrfDocument:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != "DRF 1":
        raise ParseError("missing 'DRF 1' magic line")
    if len(lines) < 2 or not lines[1].startswith("kind "):
        raise ParseError("missing kind line")
    kind = lines[1][5:]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    header = {}
    pos = 2
    last = -1
    while True:
        if pos >= len(lines):
            raise ParseError("missing 'data' line")
        line = lines[pos]
        pos += 1
        if line == "data":
            break
        key, _, value = line.partition(" ")
        if key not in KEY_ORDER or key not in REQUIRED[kind] | OPTIONAL[kind]:
            raise ParseError(f"unknown header key {key!r} for kind {kind}")
        idx = KEY_ORDER.index(key)
        if idx <= last:
            raise ParseError(f"header key {key!r} out of canonical order")
        last = idx
        if not value or value != value.strip():
            raise ParseError(f"bad value for {key!r}")
        if key in _TUPLE_KEYS:
            header[key] = tuple(_int(v, key) for v in value.split(","))
        else:
            header[key] = _int(value, key)
    missing = REQUIRED[kind] - header.keys()
    if missing:
        raise ParseError(f"missing header keys {sorted(missing)}")
    if ("eps_num" in header) != ("eps_den" in header):
        raise ParseError("eps_num and eps_den must appear together")

    if kind == "code":
        nrows, ncols = header["k"], header["m"]
    else:
        nrows, ncols = header["m"], header["n"]
    body = lines[pos:]
    if len(body) != nrows:
        raise ParseError(f"expected {nrows} data lines, found {len(body)}")
    rows = np.zeros((nrows, ncols), dtype=np.int64)
    q = header["q"]
    for i, line in enumerate(body):
        parts = line.split(" ")
        if len(parts) != ncols or (ncols == 0 and line):
            raise ParseError(f"data line {i + 1}: expected {ncols} entries")
        vals = [_int(p, f"data line {i + 1}") for p in parts] if ncols else []
        if any(not 0 <= v < q for v in vals):
            raise ParseError(f"data line {i + 1}: symbol outside [0, {q})")
        rows[i] = vals
    return DrfDocument(kind, header, rows)


def load(path) -> DrfDocument:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse(fh.read())


def dump(doc: DrfDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(doc))


# -- object conversion -------------------------------------------------------

def to_document(obj) -> DrfDocument:
    from .families import CoverFreeFamily, PerfectHashFamily, SeparatingHashFamily
    from .gvcode import LinearCode
    from .hitter import HittingSet

    if isinstance(obj, LinearCode):
        p = obj.params
        hdr = {"n": p.n or 0, "q": p.q, "m": obj.m, "k": obj.k,
               "delta_num": p.delta.numerator, "delta_den": p.delta.denominator}
        if p.h is not None:
            hdr["h"] = p.h
        if obj.spec.modulus is not None:
            hdr["modulus"] = obj.spec.modulus
        return DrfDocument("code", hdr, np.asarray(obj.columns))
    if isinstance(obj, HittingSet):
        hdr = {"n": obj.n, "q": obj.spec.q, "d": obj.degree, "m": obj.m}
        if obj.eps is not None:
            hdr["eps_num"], hdr["eps_den"] = obj.eps.numerator, obj.eps.denominator
        hdr["h"] = obj.h
        if obj.spec.modulus is not None:
            hdr["modulus"] = obj.spec.modulus
        return DrfDocument("hitting", hdr, np.asarray(obj.matrix))
    if isinstance(obj, PerfectHashFamily):
        hdr = {"n": obj.n, "q": obj.q, "d": obj.d, "m": obj.m}
        if obj.dense_eps is not None:
            hdr["eps_num"], hdr["eps_den"] = obj.dense_eps.numerator, obj.dense_eps.denominator
        if obj.h is not None:
            hdr["h"] = obj.h
        if obj.field_q is not None:
            hdr["field_q"] = obj.field_q
        return DrfDocument("phf", hdr, np.asarray(obj.functions))
    if isinstance(obj, CoverFreeFamily):
        hdr = {"n": obj.n, "q": 2, "w": obj.w, "r": obj.r, "m": obj.m}
        if obj.field_q is not None:
            hdr["field_q"] = obj.field_q
        return DrfDocument("cff", hdr, np.asarray(obj.tests))
    if isinstance(obj, SeparatingHashFamily):
        hdr = {"n": obj.n, "q": obj.q, "ds": tuple(obj.ds), "m": obj.m}
        if obj.h is not None:
            hdr["h"] = obj.h
        if obj.field_q is not None:
            hdr["field_q"] = obj.field_q
        return DrfDocument("shf", hdr, np.asarray(obj.functions))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_document(doc: DrfDocument):
    from .families import CoverFreeFamily, PerfectHashFamily, SeparatingHashFamily
    from .gfq import field_make
    from .gvcode import CodeParams, LinearCode
    from .hitter import HittingSet
    from .errors import NotPrimePower

    h = doc.header
    if doc.kind in ("code", "hitting"):
        try:
            spec = field_make(h["q"])
        except NotPrimePower as exc:
            raise ParseError(str(exc)) from exc
        if h.get("modulus") != spec.modulus:
            raise ParseError(f"modulus {h.get('modulus')} does not match GF({h['q']})")
    if doc.kind == "code":
        params = CodeParams(h["q"], h["m"], h["k"], doc.delta, h.get("h"), h["n"] or None)
        return LinearCode(spec, params, doc.rows.copy())
    if doc.kind == "hitting":
        return HittingSet(spec, h["n"], doc.rows.copy(), h["d"], h["h"], doc.eps)
    if doc.kind == "phf":
        return PerfectHashFamily(h["n"], h["q"], h["d"], doc.rows.copy(), doc.eps,
                                 h.get("field_q"), h.get("h"))
    if doc.kind == "cff":
        return CoverFreeFamily(h["n"], h["w"], h["r"], doc.rows.copy(), h.get("field_q"))
    return SeparatingHashFamily(h["n"], h["q"], h["ds"], doc.rows.copy(), h.get("field_q"), h.get("h"))
