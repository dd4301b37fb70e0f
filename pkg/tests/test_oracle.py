import warnings
from fractions import Fraction

import numpy as np
import pytest

from drestrict import drf, families, gvcode, hitter, oracle
from drestrict.errors import BudgetExceeded
from grid import GOLDEN

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def test_min_distance_examples():
    assert oracle.oracle_min_distance([[1, 1, 1]], 2)[0] == 3
    with pytest.raises(BudgetExceeded):
        oracle.oracle_min_distance([[1] * 4] * 9, 5, budget=1000)


def test_oracle_field_matches_library():
    from drestrict.gfq import field_make, tables
    for q in (4, 8, 9, 16, 25, 27):
        spec = field_make(q)
        mul, add = oracle._make_mul(q, spec.modulus)
        t = tables(spec)
        for a in range(q):
            for b in range(q):
                assert mul(a, b) == int(t.mul(a, b))
                assert add(a, b) == int(t.add(a, b))


def _verdict(doc):
    obj = drf.from_document(doc)
    kind = doc.kind
    if kind == "hitting":
        return (hitter.verify_hitting_density(obj) if doc.eps is not None else hitter.verify_hitting(obj))
    if kind == "phf":
        fn = families.verify_phf_density if doc.eps is not None else families.verify_phf
        return fn(obj, budget=10**8)
    if kind == "cff":
        return families.verify_cff(obj, budget=10**8)
    return families.verify_shf(obj, budget=10**8)


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.drf")), ids=lambda p: p.stem)
def test_oracle_agrees_on_golden_grid(path):
    doc = drf.load(path)
    ref = oracle.oracle_check(doc, 10**8)
    assert ref.ok
    if doc.kind == "code":
        code = drf.from_document(doc)
        assert ref.min_hits == gvcode.min_weight_bruteforce(code)
    else:
        assert _verdict(doc).ok


def _prunable(path):
    doc = drf.load(path)
    return doc.kind == "code" or doc.rows.size <= 5000


# pruning costs one oracle pass per row, so only the smaller grid members
@pytest.mark.parametrize("path", [p for p in sorted(GOLDEN.glob("*.drf")) if _prunable(p)], ids=lambda p: p.stem)
def test_oracle_agrees_on_corruptions(path):
    doc = drf.load(path)
    base = oracle.tighten_code(doc) if doc.kind == "code" else oracle.prune_rows(doc, 10**8)
    failures = 0
    for seed in range(64):
        bad = oracle.corrupt_symbol(base, seed)
        ref = oracle.oracle_check(bad, 10**8)
        if doc.kind == "code":
            code = drf.from_document(bad)
            assert (gvcode.min_weight_bruteforce(code) >= code.params.min_weight) == ref.ok
        else:
            v = _verdict(bad)
            assert v.ok == ref.ok
            if not ref.ok:
                assert v.witness == ref.witness
        if not ref.ok:
            failures += 1
            break
    assert failures


def test_prune_keeps_validity():
    doc = drf.to_document(families.build_phf(12, 17, 3))
    small = oracle.prune_rows(doc)
    assert small.rows.shape[0] < doc.rows.shape[0]
    assert oracle.oracle_check(small).ok
    assert set(map(tuple, small.rows.tolist())) <= set(map(tuple, doc.rows.tolist()))


def test_corrupt_changes_one_symbol():
    doc = drf.to_document(families.build_phf(12, 17, 3))
    for seed in range(20):
        bad = oracle.corrupt_symbol(doc, seed)
        assert int((bad.rows != doc.rows).sum()) == 1
        assert bad.rows.max() < 17


def test_random_baseline():
    rate = oracle.oracle_random_family_baseline("phf", {"n": 10, "q": 17, "d": 3, "m": families.phf_size(10, 17, 3)}, trials=10)
    assert 0 <= rate <= 1
    assert oracle.oracle_random_family_baseline("phf", {"n": 10, "q": 17, "d": 3, "m": 0}, trials=5) == 0
    # one function and d = 1 never fails
    assert oracle.oracle_random_family_baseline("phf", {"n": 10, "q": 5, "d": 1, "m": 10}, trials=5) == 1
    assert oracle.oracle_random_family_baseline("phf", {"n": 10, "q": 17, "d": 3, "m": 20}, seed=3) == \
        oracle.oracle_random_family_baseline("phf", {"n": 10, "q": 17, "d": 3, "m": 20}, seed=3)


def test_oracle_reads_text():
    text = (GOLDEN / "phf_n30_q17_d3.drf").read_text()
    assert oracle.oracle_check_text(text).ok
