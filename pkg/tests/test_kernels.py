import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from drestrict import _kernels_py, kernels

compiled = pytest.importorskip("drestrict._kernels")


@st.composite
def matrices(draw, max_rows=150):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(2, 9))
    q = draw(st.integers(2, 6))
    return draw(hnp.arrays(np.int64, (m, n), elements=st.integers(0, q - 1)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_separation_counts_agree(data):
    mat = data.draw(matrices())
    n = mat.shape[1]
    L = data.draw(st.integers(1, 4))
    C = data.draw(st.integers(1, 20))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    ps = np.array(data.draw(st.lists(st.lists(pair, min_size=L, max_size=L), min_size=C, max_size=C)))
    a = compiled.separation_counts(mat, ps)
    b = _kernels_py.separation_counts(mat, ps)
    assert a.tolist() == b.tolist()
    ref = [sum(all(row[x] != row[y] for x, y in con) for row in mat.tolist()) for con in ps.tolist()]
    assert a.tolist() == ref


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_cff_counts_agree(data):
    m = data.draw(st.integers(1, 140))
    n = data.draw(st.integers(3, 8))
    tests = data.draw(hnp.arrays(np.int64, (m, n), elements=st.integers(0, 1)))
    C = data.draw(st.integers(1, 10))
    perms = [data.draw(st.permutations(range(n))) for _ in range(C)]
    w = data.draw(st.integers(1, 2))
    r = data.draw(st.integers(1, n - w))
    ones = np.array([p[:w] for p in perms])
    zeros = np.array([p[w:w + r] for p in perms])
    a = compiled.cff_counts(tests, ones, zeros)
    b = _kernels_py.cff_counts(tests, ones, zeros)
    assert a.tolist() == b.tolist()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_injective_table_agrees(data):
    evals = data.draw(matrices(max_rows=40))
    n = evals.shape[1]
    d = data.draw(st.integers(2, min(4, n)))
    subsets = np.array([sorted(data.draw(st.permutations(range(n)))[:d]) for _ in range(5)])
    a = np.asarray(compiled.injective_table(evals, subsets))
    b = np.asarray(_kernels_py.injective_table(evals, subsets))
    assert a.tolist() == b.tolist()


def test_selected_backend():
    assert kernels.BACKEND in ("cython", "python")


def test_pairset_padding():
    ps = kernels.as_pairsets([((0, 1),), ((2, 3), (4, 5))])
    assert ps.shape == (2, 2, 2)
    assert ps[0].tolist() == [[0, 1], [0, 1]]


def test_empty_constraint_block():
    mat = np.zeros((3, 4), dtype=np.int64)
    ps = np.zeros((0, 1, 2), dtype=np.int64)
    assert compiled.separation_counts(mat, ps).shape == (0,)
    assert _kernels_py.separation_counts(mat, ps).shape == (0,)
