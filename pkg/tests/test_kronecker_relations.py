import json
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from grover_pgst.algebraic import AlgebraicRoot, CosPi
from grover_pgst.chebyshev_walk import detect_period, pst_check
from grover_pgst.graph_core import complete, cycle, discriminant, path, random_connected, star
from grover_pgst.kronecker_relations import (
    AngleClass,
    AngleKind,
    _niven_guard,
    classify_angle,
    decide_pgst_generic,
    is_relation,
    parity_verdict,
    relation_basis,
    verify_relation_certificate,
)
from grover_pgst.lattice import in_lattice
from grover_pgst.spectral import decompose
from grover_pgst.unitary_cayley import discriminant_spectrum, unitary_cayley_graph

F = Fraction


def test_classify_examples():
    a = classify_angle(F(1, 2))
    assert a.kind is AngleKind.RATIONAL_PI and a.pi_multiple == F(1, 3)
    a = classify_angle(F(-1, 3))
    assert a.kind is AngleKind.STRUCTURED and a.family == "inverse-linear" and a.base == 3 and a.beta_sign == -1
    assert classify_angle(F(1, 4)).family == "inverse-totient"
    assert classify_angle(0).pi_multiple == F(1, 2)
    assert classify_angle(F(2, 3)).kind is AngleKind.UNCLASSIFIED
    assert classify_angle(CosPi(F(2, 7))).pi_multiple == F(2, 7)
    assert classify_angle(0.3).kind is AngleKind.UNCLASSIFIED
    with pytest.raises(ValueError):
        classify_angle(F(4, 3))
    with pytest.raises(ValueError):
        classify_angle(1.5)


def test_niven_guard_is_hard():
    with pytest.raises(AssertionError):
        _niven_guard(AngleClass(F(1, 3), AngleKind.RATIONAL_PI, pi_multiple=F(2, 5)))


def test_lattice_zero_and_pi():
    lat = relation_basis([F(1), F(-1)])
    assert lat.mode == "exact" and set(lat.basis) == {(1, 0), (0, 2)}


def test_lattice_thirds():
    lat = relation_basis([F(1, 2), F(-1, 2), F(-1)])
    rng = np.random.default_rng(0)
    for _ in range(1000):
        v = tuple(int(x) for x in rng.integers(-20, 21, size=3))
        member = (v[0] + 2 * v[1] + 3 * v[2]) % 6 == 0
        assert in_lattice(lat.basis, v) == member == is_relation(lat, v)


def test_lattice_inverse_linear_and_right_angle():
    lat = relation_basis([F(-1, 3), F(0)])
    assert lat.basis == ((0, 4),)


def test_exact_lattice_sampled_against_numerics():
    angles = [F(1), F(1, 4), F(-1, 4), F(1, 8), F(-1, 8), F(0), F(-1, 2)]
    lat = relation_basis(angles)
    assert lat.mode == "exact"
    rng = np.random.default_rng(1)
    k = len(lat.basis)
    for _ in range(1000):
        c = rng.integers(-5, 6, size=k)
        v = [int(x) for x in np.array(lat.basis).T @ c]
        assert abs(lat.angle_sum(v, 60)) < mpmath.mpf(10) ** -50
        w = list(v)
        w[int(rng.integers(1, len(w)))] += int(rng.integers(1, 4))
        if not in_lattice(lat.basis, w):
            assert abs(lat.angle_sum(w, 60)) > mpmath.mpf(10) ** -20


def test_shared_squarefree_part_falls_back():
    # 4^2 - 1 = 15 and 31^2 - 1 = 960 = 15 * 64
    lat = relation_basis([F(1, 4), F(1, 31)], precision=60)
    assert lat.mode == "heuristic" and any("square-free" in n for n in lat.notes)


def test_parity_examples():
    lat = relation_basis([F(1), F(-1)])
    assert parity_verdict(lat, [0, 1]).outcome == "Yes"
    lat = relation_basis([F(1), F(1, 2), F(-1, 2), F(-1)])
    assert parity_verdict(lat, [0, 1, 0, 1]).outcome == "Yes"
    lat = relation_basis([F(0), F(0)])
    v = parity_verdict(lat, [1, 0])
    assert v.outcome == "No" and verify_relation_certificate(v, lat)
    assert is_relation(lat, (1, 3)) and in_lattice(lat.basis, (1, 3))
    with pytest.raises(ValueError):
        parity_verdict(lat, [1])


def test_generic_examples():
    v = decide_pgst_generic(decompose(discriminant(cycle(4))), 0, 2)
    assert v.outcome == "Yes" and v.mode == "exact"
    v = decide_pgst_generic(decompose(discriminant(complete(3))), 0, 1)
    assert v.outcome == "No" and v.certificate["type"] == "cospectrality" and v.certificate["exact"] == "-1/2"
    g = unitary_cayley_graph(8).graph
    v = decide_pgst_generic(decompose(discriminant(g)), 0, 4, exact_eigenvalues=discriminant_spectrum(8).mu)
    assert v.outcome == "No" and v.certificate["exact"] == "0"
    doc = json.loads(v.to_json())
    assert doc["schema"] == "1" and doc["outcome"] == "No"
    with pytest.raises(ValueError):
        decide_pgst_generic(decompose(discriminant(cycle(4))), 1, 1)


def test_supplied_eigenvalues_must_match():
    with pytest.raises(ValueError, match="do not match"):
        decide_pgst_generic(decompose(discriminant(cycle(4))), 0, 2, exact_eigenvalues=[F(1), F(-1)])


@pytest.mark.parametrize("g", [cycle(5), cycle(6), path(5), star(4), random_connected(6, 0.5, 4)])
def test_generic_symmetric(g):
    dec = decompose(discriminant(g))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            a, b = decide_pgst_generic(dec, u, v, precision=60), decide_pgst_generic(dec, v, u, precision=60)
            assert a.outcome == b.outcome


@pytest.mark.parametrize("g", [complete(2), cycle(3), cycle(4), cycle(6), cycle(7), cycle(8), path(3), path(4), path(6), star(4)])
def test_periodic_graphs_agree_with_pst_search(g):
    assert detect_period(g, 200) is not None
    dec = decompose(discriminant(g))
    for u in range(g.n):
        for v in range(u + 1, g.n):
            found = pst_check(g, u, v, 200).status == "found"
            assert (decide_pgst_generic(dec, u, v).outcome == "Yes") == found


def test_heuristic_refutes_with_odd_relation():
    x = AlgebraicRoot((F(1), F(-1), F(-1, 5)), -0.17082039324993686)
    neg = AlgebraicRoot((F(1), F(1), F(-1, 5)), 0.17082039324993686)
    lat = relation_basis([x, neg, F(-1)], precision=80)
    assert lat.mode == "heuristic"
    v = parity_verdict(lat, [0, 1, 0])
    assert v.outcome == "No" and verify_relation_certificate(v, lat)
    assert parity_verdict(lat, [0, 0, 0]).outcome == "Unknown"


def test_floats_give_unknown():
    lat = relation_basis([0.3, -0.3])
    v = parity_verdict(lat, [0, 1])
    assert v.outcome == "Unknown" and "insufficient precision" in lat.notes[0]
    assert v.certificate["type"] == "bounds"


@dataclass(frozen=True)
class _Drifting:
    """1/2 plus a perturbation visible only beyond half the base precision."""

    approx: float = 0.5

    def evaluate(self, dps):
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(1) / 2 + mpmath.mpf(10) ** -195

    def key(self):
        return ("drift",)


def test_relation_failing_at_double_precision_is_discarded():
    lat = relation_basis([_Drifting(), F(-1)], precision=200)
    assert lat.mode == "heuristic"
    assert any("discarded" in n for n in lat.notes)
    assert parity_verdict(lat, [1, 0]).outcome == "Unknown"
