from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from drestrict import drf, families, gvcode, hitter
from drestrict.errors import ParseError
from grid import GOLDEN

GOOD = "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ndata\n0 1 2\n2 1 0\n"


def test_parse_and_serialize():
    doc = drf.parse(GOOD)
    assert doc.kind == "phf" and doc.header == {"n": 3, "q": 3, "d": 2, "m": 2}
    assert doc.rows.tolist() == [[0, 1, 2], [2, 1, 0]]
    assert drf.serialize(doc) == GOOD


@pytest.mark.parametrize(
    "text",
    [
        "",
        "DRF 2\nkind phf\n",
        "DRF 1\nkind tree\nn 1\ndata\n",
        "DRF 1\nkind phf\nq 3\nn 3\nd 2\nm 2\ndata\n0 1 2\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ncolor 1\ndata\n0 1 2\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ndata\n0 1 2\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ndata\n0 1 3\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ndata\n0 1\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\ndata\n0 1 2 \n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nm 2\ndata\n0 1 2\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq x\nd 2\nm 2\ndata\n0 1 2\n2 1 0\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\n",
        "DRF 1\nkind phf\nn 3\nq 3\nd 2\nm 2\neps_num 1\ndata\n0 1 2\n2 1 0\n",
    ],
    ids=[
        "empty", "version", "kind", "order", "unknown-key", "short-body", "range",
        "width", "trailing-space", "missing-key", "not-int", "no-data", "half-eps",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        drf.parse(text)


def test_modulus_must_match():
    text = "DRF 1\nkind hitting\nn 2\nq 4\nd 1\nm 1\nh 2\nmodulus 1,1,0\ndata\n0 1\n"
    with pytest.raises(ParseError):
        drf.from_document(drf.parse(text))


def _objects():
    return [
        gvcode.construct_code(gvcode.spcode2_params(9, 3, 40)),
        hitter.build_hitting(12, 2, 7),
        hitter.build_dense_hitting(12, 1, 16, Fraction(1, 3)),
        families.build_phf(20, 11, 3),
        families.build_dense_phf(20, 9, 2, Fraction(1, 2)),
        families.build_cff(8, 1, 2),
        families.build_shf(10, 5, (1, 2)),
    ]


@pytest.mark.filterwarnings("ignore::UserWarning")
def test_object_round_trip():
    for obj in _objects():
        doc = drf.to_document(obj)
        text = drf.serialize(doc)
        back = drf.parse(text)
        assert back == doc
        assert drf.serialize(drf.to_document(drf.from_document(back))) == text


def test_golden_files_are_canonical():
    files = sorted(GOLDEN.glob("*.drf"))
    assert files
    for path in files:
        raw = path.read_bytes()
        assert b"\r" not in raw and b" \n" not in raw
        assert drf.serialize(drf.parse(raw.decode())).encode() == raw


@given(
    st.integers(1, 6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.integers(2, 9),
            st.lists(st.lists(st.integers(0, 8), min_size=n, max_size=n), min_size=0, max_size=5),
        )
    )
)
def test_round_trip_property(args):
    n, q, rows = args
    rows = [[v % q for v in r] for r in rows]
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    doc = drf.DrfDocument("shf", {"n": n, "q": q, "ds": (1, 1), "m": len(rows)}, arr)
    assert drf.parse(drf.serialize(doc)) == doc
