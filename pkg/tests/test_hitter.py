import math
import warnings
from fractions import Fraction

import numpy as np
import pytest

from drestrict import hitter
from drestrict.errors import AlphabetTooSmall, BudgetExceeded, EpsilonInfeasible
from drestrict.gfq import field_make

pytestmark = pytest.mark.filterwarnings("ignore:n=")


def _matrix_hs(rows, degree=1, q=5):
    rows = np.array(rows, dtype=np.int64)
    return hitter.HittingSet(field_make(q), rows.shape[1], rows, degree, degree + 1)


def test_size_examples():
    hs = hitter.build_hitting(100, 3, 17)
    assert (hs.m, hs.h) == (67, 4)
    hs = hitter.build_hitting(20, 2, 7)
    assert (hs.m, hs.h) == (135, 3)
    with pytest.raises(AlphabetTooSmall):
        hitter.build_hitting(10, 9, 7)


def test_dense_size_examples():
    # closed form evaluates to 100.45
    assert hitter.dense_hitting_size(50, 2, 25, Fraction(1, 2)) == 101
    hs = hitter.build_dense_hitting(50, 2, 25, Fraction(1, 2))
    assert hs.h == 6 and hs.m == math.ceil(6 * math.log(25 * 51) / (math.log(25) - math.log(6) - 1))
    with pytest.raises(EpsilonInfeasible):
        hitter.build_dense_hitting(50, 5, 49, Fraction(1, 10))


def test_eps_one_matches_plain():
    plain = hitter.build_hitting(30, 2, 17)
    dense = hitter.build_dense_hitting(30, 2, 17, 1)
    assert np.array_equal(plain.matrix, dense.matrix)
    assert hitter.verify_hitting_density(dense, eps=1).ok


def test_small_n_is_warning_only():
    with pytest.warns(UserWarning):
        hs = hitter.build_hitting(5, 2, 7)
    assert hitter.verify_hitting(hs).ok
    with pytest.raises(ValueError):
        hitter.build_hitting(1, 1, 5)


def test_rows_are_codeword_positions():
    hs = hitter.build_hitting(40, 2, 11)
    from drestrict.gvcode import enumerate_codewords
    words = enumerate_codewords(hs.code, 40)
    for j, w in enumerate(words):
        assert np.array_equal(hs.matrix[:, j], w)


@pytest.mark.parametrize("n,d,q", [(40, 2, 11), (100, 3, 17), (60, 1, 5), (30, 4, 7)])
def test_column_agreement_bound(n, d, q):
    hs = hitter.build_hitting(n, d, q)
    assert hitter.max_column_agreement(hs.matrix) <= hs.m // hs.h


def test_verify_small_build():
    hs = hitter.build_hitting(8, 2, 5)
    v = hitter.verify_hitting(hs)
    assert v.ok and v.checks == (28 + math.comb(28, 2)) * hs.m


def test_constant_row_fails():
    v = hitter.verify_hitting(_matrix_hs([[0, 0, 0, 0]]))
    assert not v.ok and v.witness == ((0, 1),)


def test_constant_rows_fail():
    v = hitter.verify_hitting(_matrix_hs([[c] * 6 for c in range(5)]))
    assert not v.ok and v.witness == ((0, 1),) and v.min_hits == 0


def test_witness_is_first_in_order():
    rows = [[0, 1, 2, 3], [0, 1, 2, 2]]
    v = hitter.verify_hitting(_matrix_hs(rows, degree=2))
    assert v.ok
    rows = [[0, 1, 2, 2], [1, 1, 2, 3]]
    v = hitter.verify_hitting(_matrix_hs(rows, degree=2))
    assert not v.ok and v.witness == ((0, 1), (2, 3))


def test_density_examples():
    hs = hitter.build_dense_hitting(12, 2, 25, Fraction(1, 2))
    assert hitter.verify_hitting_density(hs).ok
    assert hitter.verify_hitting_density(hs, eps=1).ok
    v = hitter.verify_hitting_density(_matrix_hs([[0, 1, 2, 3, 4, 0]]), eps=0)
    # more than m rows can never separate, so the first pair is reported
    assert not v.ok and v.witness == ((0, 1),)


def test_density_threshold_is_strict():
    # 2 rows, eps = 1/2: need more than one separating row
    hs = _matrix_hs([[0, 1], [0, 0]])
    assert not hitter.verify_hitting_density(hs, eps=Fraction(1, 2)).ok
    hs = _matrix_hs([[0, 1], [1, 0]])
    assert hitter.verify_hitting_density(hs, eps=Fraction(1, 2)).ok


def test_budget():
    hs = hitter.build_hitting(100, 3, 17)
    with pytest.raises(BudgetExceeded):
        hitter.verify_hitting(hs)


def test_pair_constraint_order():
    cons = list(hitter.pair_constraints(3, 2))
    assert cons[:3] == [((0, 1),), ((0, 2),), ((1, 2),)]
    assert cons[3] == ((0, 1), (0, 2))
    assert len(cons) == 3 + 3
