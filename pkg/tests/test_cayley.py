from fractions import Fraction

import numpy as np
import pytest

from grover_pgst.cayley import (
    AbelianGroup,
    CayleyError,
    ConnectionSet,
    cayley_eigenvalue,
    cayley_eigenvector,
    cayley_graph,
    character_value,
    circulant,
    exact_spectrum,
    order_two_elements,
    pgst_check,
    product_family,
    product_family_reference,
    sign_partition,
)
from grover_pgst.algebraic import approx_value
from grover_pgst.chebyshev_walk import chebyshev_matrix
from grover_pgst.graph_core import discriminant
from grover_pgst.spectral import decompose, sign_pattern


def test_group_basics():
    G = AbelianGroup((4, 2))
    assert G.order == 8 and G.exponent == 4
    assert G.add((3, 1), (2, 1)) == (1, 0) and G.neg((1, 1)) == (3, 1)
    assert G.order_of((1, 0)) == 4 and G.order_of((0, 1)) == 2
    assert AbelianGroup((6,)).element(7) == (1,)


def test_characters():
    G = AbelianGroup((4,))
    assert abs(character_value(G, 1, 2) + 1) < 1e-15
    H = AbelianGroup((3, 4))
    for a in H.elements:
        for b in H.elements:
            assert abs(character_value(H, a, b) - character_value(H, b, a)) < 1e-12
            assert abs(character_value(H, a, H.neg(b)) - character_value(H, a, b).conjugate()) < 1e-12


def test_eigenvalue_examples():
    cg = circulant(6, [1, 5])
    assert cayley_eigenvalue(cg.group, cg.conn, (1,)) == pytest.approx(0.5)
    assert exact_spectrum(cg) == (1, Fraction(1, 2), Fraction(-1, 2), -1, Fraction(-1, 2), Fraction(1, 2))
    # mu_(a,b) factors as (sum over Z_3^*) * (sum over Z_2) / 4
    spec = dict(zip(product_family(3, 2).group.elements, exact_spectrum(product_family(3, 2))))
    assert spec[(0, 0)] == 1 and spec[(1, 0)] == Fraction(-1, 2) and spec[(0, 1)] == 0 and spec[(1, 1)] == 0


@pytest.mark.parametrize("factors,conn", [((5,), [1, 4]), ((6,), [1, 2, 4, 5]), ((3, 3), [(1, 0), (2, 0), (0, 1), (0, 2)])])
def test_eigenvectors(factors, conn):
    cg = cayley_graph(factors, conn)
    P = discriminant(cg.graph).P
    V = np.array([cayley_eigenvector(cg.group, a) for a in cg.group.elements]).T
    assert np.abs(V.conj().T @ V - np.eye(cg.group.order)).max() < 1e-12
    for k, a in enumerate(cg.group.elements):
        mu = cayley_eigenvalue(cg.group, cg.conn, a)
        assert np.abs(P @ V[:, k] - mu * V[:, k]).max() < 1e-12


def test_exact_matches_numeric():
    for cg in (circulant(7, [1, 6]), circulant(12, [1, 3, 9, 11]), product_family(4, 3), cayley_graph((2, 6), [(1, 0), (0, 1), (0, 5)])):
        for a, x in zip(cg.group.elements, exact_spectrum(cg)):
            assert abs(approx_value(x) - cayley_eigenvalue(cg.group, cg.conn, a)) < 1e-9


def test_order_two_elements():
    assert order_two_elements(AbelianGroup((6,))) == [(3,)]
    assert set(order_two_elements(AbelianGroup((4, 2)))) == {(2, 0), (0, 1), (2, 1)}
    assert order_two_elements(AbelianGroup((5,))) == []


def test_sign_partition():
    sp = sign_partition(AbelianGroup((6,)), 3)
    assert sp.gamma1 == ((1,), (3,), (5,)) and (0,) in sp.gamma0
    G = AbelianGroup((4, 2))
    for w in order_two_elements(G):
        sp = sign_partition(G, w)
        assert len(sp.gamma0) == len(sp.gamma1) == 4 and G.zero in sp.gamma0
    with pytest.raises(CayleyError):
        sign_partition(G, (1, 0))


def test_connection_set_errors():
    G = AbelianGroup((6,))
    with pytest.raises(CayleyError, match="identity"):
        ConnectionSet.build(G, [0, 1, 5])
    with pytest.raises(CayleyError, match="negation"):
        ConnectionSet.build(G, [1])
    with pytest.raises(CayleyError, match="subgroup"):
        ConnectionSet.build(G, [2, 4])
    with pytest.raises(CayleyError, match="empty"):
        ConnectionSet.build(G, [])


def test_pgst_examples():
    assert pgst_check(circulant(4, [1, 3]), 0, 2).outcome == "Yes"
    v = pgst_check(circulant(5, [1, 4]), 0, 1)
    assert v.outcome == "No" and v.certificate["type"] == "order" and v.certificate["order"] == 5
    v = pgst_check(product_family(3, 2), (0, 0), (0, 1))
    assert v.outcome == "Yes" and v.certificate["w"] == [0, 1]
    with pytest.raises(ValueError):
        pgst_check(circulant(4, [1, 3]), 1, 1)


@pytest.mark.parametrize("n,m", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (2, 4), (3, 4)])
def test_product_family_reference(n, m):
    cg = product_family(n, m)
    expected, pair = product_family_reference(n, m)
    targets = [pair] if pair else [((0, 0), w) for w in cg.group.elements if w != cg.group.zero]
    for u, v in targets:
        assert pgst_check(cg, u, v).outcome == ("Yes" if expected else "No")


def test_transition_matrices_are_translation_invariant():
    cg = circulant(8, [1, 3, 5, 7])
    G = cg.group
    P = discriminant(cg.graph).P
    for m in (1, 2, 5, 9):
        T = chebyshev_matrix(P, m)
        for x in G.elements:
            for y in G.elements:
                for s in ((1,), (3,)):
                    i, j = G.index(x), G.index(y)
                    k, l = G.index(G.add(x, s)), G.index(G.add(y, s))
                    assert abs(T[i, j] - T[k, l]) < 1e-10


@pytest.mark.parametrize("cg,u,v", [(circulant(4, [1, 3]), 0, 2), (product_family(3, 2), (0, 0), (0, 1)), (circulant(10, [1, 3, 7, 9]), 0, 5)])
def test_yes_implies_sign_pattern(cg, u, v):
    G = cg.group
    assert pgst_check(cg, u, v).outcome == "Yes"
    sp = sign_pattern(decompose(discriminant(cg.graph)), G.index(u), G.index(v))
    assert sp.valid
    odd = sign_partition(G, G.sub(G.element(v), G.element(u))).gamma1
    minus = {round(cayley_eigenvalue(G, cg.conn, a), 9) for a in odd}
    assert {round(x, 9) for x in sp.minus_set} == minus
