import math
from fractions import Fraction

import mpmath
import pytest

from grover_pgst.algebraic import AlgebraicRoot, CosPi, CyclotomicReal, identify_spectrum, simplify, to_mpf, value_key
from grover_pgst.graph_core import cycle, discriminant, path, petersen, random_connected, star
from grover_pgst.spectral import decompose


def test_cospi_normalises():
    assert CosPi(Fraction(5, 3)).r == Fraction(1, 3)
    assert CosPi(Fraction(-1, 4)) == CosPi(Fraction(1, 4))
    with mpmath.workdps(60):
        assert abs(CosPi(Fraction(1, 4)).evaluate(50) - mpmath.sqrt(2) / 2) < mpmath.mpf(10) ** -50


def test_cyclotomic_rational_detection():
    half = CyclotomicReal.from_exponents(6, [1, 5], Fraction(1, 2))
    assert half.rational == Fraction(1, 2)
    # the four primitive 5th roots sum to -1
    assert CyclotomicReal.from_exponents(5, [1, 2, 3, 4], Fraction(1)).rational == -1
    golden = CyclotomicReal.from_exponents(5, [1, 4], Fraction(1, 2))
    assert golden.rational is None
    assert golden.as_cospi() == CosPi(Fraction(2, 5))


def test_cyclotomic_not_a_cosine():
    # (cos(pi/4) + 1) / 2 is irrational and not cos of a rational angle
    x = CyclotomicReal.from_exponents(8, [1, 7, 0, 0], Fraction(1, 4))
    assert x.rational is None and x.as_cospi() is None
    assert simplify(x) is x
    with mpmath.workdps(80):
        assert abs(x.evaluate(70) - (mpmath.sqrt(2) / 2 + 1) / 2) < mpmath.mpf(10) ** -70


def test_simplify_niven_values():
    assert simplify(CosPi(Fraction(1, 3))) == Fraction(1, 2)
    assert simplify(CosPi(Fraction(1, 2))) == 0
    assert simplify(CosPi(Fraction(1, 5))) == CosPi(Fraction(1, 5))


def test_algebraic_root_precision():
    r = AlgebraicRoot((Fraction(1), Fraction(0), Fraction(-2)), 1.41)
    with mpmath.workdps(220):
        assert abs(r.evaluate(200) - mpmath.sqrt(2)) < mpmath.mpf(10) ** -200


def test_helpers():
    assert to_mpf(0.5, 50) is None
    assert value_key(Fraction(1, 2)) == value_key(Fraction(2, 4))


@pytest.mark.parametrize("n", [5, 7, 8, 12])
def test_cycle_spectrum_is_cosines(n):
    d = discriminant(cycle(n))
    dec = decompose(d)
    exact = identify_spectrum(d.adjacency, d.degrees, dec.eigenvalues, dec.multiplicities)
    for mu, x in zip(dec.eigenvalues, exact):
        val = float(x) if isinstance(x, Fraction) else x.approx
        assert abs(val - mu) < 1e-9
        if isinstance(x, CosPi):
            assert (x.r * n / 2).denominator == 1  # angle 2 pi j / n


def test_identify_other_graphs():
    d = discriminant(petersen())
    dec = decompose(d)
    assert identify_spectrum(d.adjacency, d.degrees, dec.eigenvalues, dec.multiplicities) == (
        Fraction(1),
        Fraction(1, 3),
        Fraction(-2, 3),
    )
    d = discriminant(star(5))
    dec = decompose(d)
    assert identify_spectrum(d.adjacency, d.degrees, dec.eigenvalues, dec.multiplicities) == (1, 0, -1)
    d = discriminant(path(4))
    dec = decompose(d)
    got = identify_spectrum(d.adjacency, d.degrees, dec.eigenvalues, dec.multiplicities)
    assert got == (1, Fraction(1, 2), Fraction(-1, 2), -1)
    g = random_connected(9, 0.4, 2)
    d = discriminant(g)
    dec = decompose(d)
    got = identify_spectrum(d.adjacency, d.degrees, dec.eigenvalues, dec.multiplicities)
    assert got is not None
    for mu, x in zip(dec.eigenvalues, got):
        if isinstance(x, AlgebraicRoot):
            assert abs(float(x.evaluate(30)) - mu) < 1e-9
            assert math.isclose(x.approx, mu, abs_tol=1e-8)
