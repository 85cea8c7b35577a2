import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grover_pgst.lattice import content, in_lattice, integer_kernel, lll_reduce, normalize_sign


def _rank(vecs):
    return np.linalg.matrix_rank(np.array(vecs, dtype=float)) if vecs else 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=5, max_size=5), min_size=1, max_size=4))
def test_kernel_is_exact_and_full(rows):
    ker = integer_kernel(rows, 5)
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(ker) == 5 - _rank(rows)
    # a kernel basis from unimodular operations consists of primitive vectors
    for v in ker:
        assert content(v) == 1


def test_kernel_example():
    ker = integer_kernel([[2, 4]])
    assert len(ker) == 1 and normalize_sign(ker[0]) == (2, -1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10_000))
def test_lll_preserves_lattice_and_shortens(d, seed):
    rng = np.random.default_rng(seed)
    while True:
        B = rng.integers(-50, 51, size=(d, d))
        if round(abs(np.linalg.det(B))) != 0:
            break
    basis = [tuple(int(x) for x in row) for row in B]
    red = lll_reduce(basis)
    assert round(abs(np.linalg.det(np.array(red, dtype=float)))) == round(abs(np.linalg.det(B)))
    assert all(in_lattice(basis, v) for v in red)
    assert all(in_lattice(red, v) for v in basis)
    norms = [sum(x * x for x in v) for v in red]
    assert norms[0] <= min(sum(x * x for x in v) for v in basis) * 2 ** (d - 1)


def test_lll_finds_relation():
    # the relation 3 x + 5 y - 7 z = 0 hidden in a scaled embedding
    a, b = 1234567, 7654321
    vals = [7 * a, 7 * b, 3 * a + 5 * b]
    basis = [[1 if i == j else 0 for j in range(3)] + [vals[i] * 10**6] for i in range(3)]
    red = lll_reduce(basis)
    assert normalize_sign(red[0]) == (3, 5, -7, 0)


def test_lll_rejects_dependent():
    with pytest.raises(ValueError):
        lll_reduce([(1, 2), (2, 4)])


def test_membership():
    assert in_lattice([(1, 0), (0, 2)], (3, 4))
    assert not in_lattice([(1, 0), (0, 2)], (3, 5))
    assert in_lattice([], (0, 0)) and not in_lattice([], (1, 0))
