import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grover_pgst.cayley import circulant
from grover_pgst.graph_core import complete, cycle, discriminant, petersen, random_connected
from grover_pgst.spectral import SpectralError, decompose, eigenvalue_support, sign_pattern


def test_k2():
    dec = decompose(discriminant(complete(2)))
    assert np.allclose(dec.eigenvalues, [1, -1]) and dec.multiplicities == (1, 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_complete_spectrum(n):
    dec = decompose(discriminant(complete(n)))
    assert np.allclose(dec.eigenvalues, [1, 1 / (1 - n)], atol=1e-12)
    assert dec.multiplicities == (1, n - 1)


def test_c4():
    dec = decompose(discriminant(cycle(4)))
    assert np.allclose(dec.eigenvalues, [1, 0, -1], atol=1e-12)
    assert dec.multiplicities == (1, 2, 1)
    assert len(eigenvalue_support(dec, 0)) == 3


def test_rejects_bad_input():
    with pytest.raises(SpectralError, match="symmetric"):
        decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        decompose(np.eye(2), group_tol=0)


def test_ambiguous_cluster_raises():
    # chain of gaps each below tol but spanning more than tol
    with pytest.raises(SpectralError, match="spans"):
        decompose(np.diag([0.0, 0.6e-9, 1.2e-9]), group_tol=1e-9)


def test_close_gap_caveat():
    dec = decompose(np.diag([0.0, 5e-9]), group_tol=1e-9)
    assert len(dec.eigenvalues) == 2 and dec.caveats


def test_sign_patterns():
    sp = sign_pattern(decompose(discriminant(complete(2))), 0, 1)
    assert sp.valid and np.allclose(sp.plus_set, [1]) and np.allclose(sp.minus_set, [-1])
    sp = sign_pattern(decompose(discriminant(complete(3))), 0, 1)
    assert not sp.valid and sp.violation == pytest.approx(-0.5)
    sp = sign_pattern(decompose(discriminant(cycle(4))), 0, 2)
    assert sp.valid and np.allclose(sp.plus_set, [1, -1]) and np.allclose(sp.minus_set, [0], atol=1e-12)
    with pytest.raises(ValueError):
        sign_pattern(decompose(discriminant(cycle(4))), 1, 1)


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 11), st.floats(0.1, 0.9), st.integers(0, 5000))
def test_projector_algebra_and_support(n, p, seed):
    g = random_connected(n, p, seed)
    dec = decompose(discriminant(g))
    assert max(dec.residuals().values()) < 1e-10
    for u in range(n):
        assert any(abs(mu - 1) < 1e-9 for mu in eigenvalue_support(dec, u))
    for u in range(n):
        for v in range(u + 1, n):
            a, b = sign_pattern(dec, u, v), sign_pattern(dec, v, u)
            assert a.valid == b.valid
            if a.valid:
                assert g.degree[u] == g.degree[v]
                assert a.plus_set == b.plus_set and a.minus_set == b.minus_set
                assert set(a.plus_set) | set(a.minus_set) == set(a.support_u) == set(a.support_v)


def test_automorphism_commutes_with_projectors():
    g = petersen()
    dec = decompose(discriminant(g))
    perm = [1, 2, 3, 4, 0, 6, 7, 8, 9, 5]  # rotation of the drawing
    M = np.zeros((10, 10))
    M[perm, np.arange(10)] = 1
    for E in dec.projectors:
        assert np.abs(M @ E - E @ M).max() < 1e-10
    cg = circulant(9, [1, 2, 7, 8])
    dec = decompose(discriminant(cg.graph))
    for u in range(9):
        assert np.allclose(eigenvalue_support(dec, u), eigenvalue_support(dec, (u + 4) % 9))
