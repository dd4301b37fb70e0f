"""Acceptance criteria, one test each; see the summary section of the run."""

import io
import itertools
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest

from drestrict import bounds, drf, families, gvcode, hitter, oracle
from drestrict.cli import main
from grid import GOLDEN, GRID, construct

pytestmark = [pytest.mark.acceptance, pytest.mark.filterwarnings("ignore::UserWarning")]

CODE_GRID = [
    (q, h, n)
    for q in (5, 7, 8, 9, 16, 17)
    for h in (2, 3, 4)
    if h <= q - 1
    for n in (15, 20, 100)
]
_codes = {}


def _code(q, h, n):
    if (q, h, n) not in _codes:
        _codes[q, h, n] = gvcode.construct_code(hitter.code_params_for(q, h, n))
    return _codes[q, h, n]


def test_c01_code_distance(criterion, caplog):
    with criterion(1, "code distance on the q/h/n grid", 60):
        for q, h, n in CODE_GRID:
            params = hitter.code_params_for(q, h, n)
            code = _code(q, h, n)
            assert code.m == params.m == params.m_closed_form, (q, h, n)
            weight, _ = oracle.oracle_min_distance(code.columns.tolist(), q, code.spec.modulus)
            assert weight >= math.ceil((1 - Fraction(1, h)) * code.m), (q, h, n, weight)
        assert "forced length increase" not in caplog.text


def test_c02_hitting_sets(criterion):
    with criterion(2, "hitting sets n<=10, d<=3 and (100,3,17) size", 30):
        for q in (7, 17, 25):
            for d in (1, 2, 3):
                for n in range(2, 11):
                    hs = hitter.build_hitting(n, d, q)
                    assert hitter.verify_hitting(hs).ok, (n, d, q)
        assert hitter.build_hitting(100, 3, 17).m == 67


def test_c03_dense_hitting(criterion):
    with criterion(3, "dense hitting sets q=25, eps in {1/2, 1/4}", 30):
        for eps in (Fraction(1, 2), Fraction(1, 4)):
            for d in (1, 2):
                for n in range(2, 11):
                    hs = hitter.build_dense_hitting(n, d, 25, eps)
                    v = hitter.verify_hitting_density(hs)
                    assert v.ok and v.min_hits > (1 - eps) * hs.m, (n, d, eps)


def test_c04_phf(criterion):
    with criterion(4, "PHF (30,17,3) and (100,17,3) exhaustive", 60):
        for n, expected in ((30, 57), (100, 67)):
            fam = families.build_phf(n, 17, 3)
            assert fam.m == families.phf_size(n, 17, 3) == expected
            v = families.verify_phf(fam, budget=10**8)
            assert v.ok and v.checks == math.comb(n, 3) * fam.m


def test_c05_small_d_phf(criterion):
    with criterion(5, "small-d PHF (40,3,3) and greedy (8,3,3)", 120):
        fam = families.build_phf_small_d(40, 3, 3)
        v = families.verify_phf(fam, budget=10**8)
        assert v.ok and v.checks == math.comb(40, 3) * fam.m
        inner, _ = families.greedy_phf(8, 3, 3)
        bound = math.ceil(math.log(math.comb(8, 3)) / -math.log(1 - bounds.g_factor(3, 3)))
        assert inner.m <= bound == 17
        assert families.verify_phf(inner).ok


def test_c06_dense_phf(criterion):
    with criterion(6, "dense PHF (30,9,2,1/2) and infeasibility flag", 30):
        fam = families.build_dense_phf(30, 9, 2, Fraction(1, 2))
        ref = oracle.oracle_check(drf.parse(drf.serialize(drf.to_document(fam))))
        assert ref.ok and ref.min_hits > fam.m // 2
        assert families.verify_phf_density(fam).ok
        rep = bounds.dense_phf_feasibility(100, 2, Fraction(1, 200))
        assert rep["eps_threshold"].value == Fraction(199, 20000)
        assert rep.verdicts["infeasible"]


def test_c07_cff(criterion):
    with criterion(7, "CFF (20,1,2) size 945 and (12,2,2)", 60):
        fam = families.build_cff(20, 1, 2)
        assert fam.m == 945
        v = families.verify_cff(fam, budget=10**8)
        assert v.ok and v.checks == 20 * math.comb(19, 2) * 945
        fam = families.build_cff(12, 2, 2)
        v = families.verify_cff(fam, budget=10**8)
        assert v.ok and v.checks == math.comb(12, 2) * math.comb(10, 2) * fam.m


def test_c08_shf(criterion):
    with criterion(8, "SHF (15,5,(1,2)) and PHF/CFF as SHF", 60):
        fam = families.build_shf(15, 5, (1, 2))
        v = families.verify_shf(fam)
        assert v.ok and v.checks == 1365 * fam.m
        phf = families.build_phf(30, 17, 3)
        as_shf = families.SeparatingHashFamily(30, 17, (1, 1, 1), phf.functions)
        assert families.verify_shf(as_shf, budget=10**8).ok
        cff = families.build_cff(20, 1, 2)
        as_shf = families.SeparatingHashFamily(20, 2, (2, 1), cff.tests)
        assert families.verify_shf(as_shf, budget=10**8).ok


def test_c09_estimator(criterion):
    with criterion(9, "estimator monotone, no bad words, GV link", None):
        for q, h, n in CODE_GRID:
            code = _code(q, h, n)
            trace = code.phi_trace
            assert all(b <= a for a, b in zip(trace, trace[1:])), (q, h, n)
            assert code.bad_count == 0
            delta = code.params.delta
            if code.k <= (1 - bounds.entropy_q(q, delta)) * code.m:
                assert trace[0] < 1


NEGATIVE = {
    "code": "code --q 5 --h 3 --n 15",
    "hitting": "hitting --n 8 --d 2 --q 7",
    "phf": "phf --n 20 --q 17 --d 3",
    "cff": "cff --n 8 --w 1 --r 2",
    "shf": "shf --n 10 --q 5 --ds 1,2",
}


def test_c10_negative_controls(criterion, tmp_path):
    with criterion(10, "single-symbol corruption caught for every kind", None):
        for kind, args in NEGATIVE.items():
            path = tmp_path / f"{kind}.drf"
            assert main(["construct", *args.split(), "-o", str(path)], out=io.StringIO()) == 0
            doc = drf.load(path)
            base = oracle.tighten_code(doc) if kind == "code" else oracle.prune_rows(doc)
            for seed in range(200):
                drf.dump(oracle.corrupt_symbol(base, seed), path)
                out = io.StringIO()
                code = main(["verify", str(path)], out=out)
                assert code in (0, 1)
                if code == 1:
                    assert out.getvalue().startswith(f"WITNESS {kind} ")
                    break
            else:
                raise AssertionError(f"no seed broke the {kind} file")


def test_c11_determinism(criterion, tmp_path):
    with criterion(11, "grid rebuilds byte-identical to golden files", None):
        for name in GRID:
            path = tmp_path / f"{name}.drf"
            construct(name, path)
            assert path.read_bytes() == (GOLDEN / f"{name}.drf").read_bytes(), name
