import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from gpilab import _linalg

primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    p = draw(primes)
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return np.array(rows, dtype=np.int64), p


def brute_rank(M, p):
    # size of the row space, counted by enumerating all combinations
    span = {tuple((np.array(c) @ M) % p) for c in itertools.product(range(p), repeat=M.shape[0])}
    return round(np.log(len(span)) / np.log(p))


@settings(max_examples=60, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_span_count(Mp):
    M, p = Mp
    assert _linalg.rank(M, p) == brute_rank(M, p)


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_dimension(Mp):
    M, p = Mp
    N = _linalg.nullspace(M, p)
    assert N.shape[0] == M.shape[1] - _linalg.rank(M, p)
    if N.size:
        assert not ((M @ N.T) % p).any()
        assert _linalg.rank(N, p) == N.shape[0]


@settings(max_examples=80, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_systems(Mp, data):
    M, p = Mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=M.shape[1], max_size=M.shape[1])))
    b = (M @ x) % p
    sol = _linalg.solve(M, b, p)
    assert sol is not None
    assert np.array_equal((M @ sol) % p, b)


def test_solve_reports_inconsistency():
    M = np.array([[1, 1], [2, 2]])
    assert _linalg.solve(M, np.array([1, 0]), 3) is None


def test_rref_shape():
    R, piv = _linalg.rref(np.array([[0, 2, 4], [1, 1, 1]]), 5)
    assert piv == [0, 1]
    assert np.array_equal(R[:, piv], np.eye(2, dtype=np.int64))


def test_inverse_table():
    for p in (2, 3, 7, 11):
        inv = _linalg.inverse_table(p)
        assert all(a * inv[a] % p == 1 for a in range(1, p))


@settings(max_examples=40, deadline=None)
@given(primes, st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_batch_inverse(p, n, seed):
    rng = np.random.default_rng(seed)
    mats = rng.integers(0, p, size=(20, n, n))
    invs, ok = _linalg.batch_inverse(mats, p)
    for M, Minv, good in zip(mats, invs, ok):
        assert good == (_linalg.rank(M, p) == n)
        if good:
            assert np.array_equal(M @ Minv % p, np.eye(n, dtype=np.int64))


def test_in_rowspace():
    basis = np.array([[1, 0, 1], [0, 1, 1]])
    assert _linalg.in_rowspace(basis, np.array([1, 1, 2]), 3)
    assert not _linalg.in_rowspace(basis, np.array([0, 0, 1]), 3)
