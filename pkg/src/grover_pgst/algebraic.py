"""Exact representations of discriminant eigenvalues.

Four shapes occur:

* rationals (``fractions.Fraction``),
* ``CosPi(r)``: the number ``cos(r pi)`` for rational ``r``,
* ``CyclotomicReal``: a real element of ``Q(zeta_N)`` stored as a reduced
  polynomial in ``zeta_N`` (character sums of abelian Cayley graphs),
* ``AlgebraicRoot``: a real root of an irreducible rational polynomial
  (eigenvalues of arbitrary graphs, from the characteristic polynomial).

Each shape can be evaluated to any number of decimal digits with mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import mpmath
import numpy as np
import sympy
from sympy.polys.matrices import DomainMatrix

_x = sympy.Symbol("x")


@dataclass(frozen=True)
class CosPi:
    """``cos(r pi)`` with ``r`` reduced into ``[0, 1]``."""

    r: Fraction

    def __post_init__(self):
        r = Fraction(self.r) % 2
        if r > 1:
            r = 2 - r
        object.__setattr__(self, "r", r)

    @property
    def approx(self) -> float:
        return math.cos(math.pi * self.r.numerator / self.r.denominator)

    def evaluate(self, dps: int) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            return +mpmath.cospi(mpmath.mpf(self.r.numerator) / self.r.denominator)

    def key(self):
        return ("cospi", self.r)

    def __str__(self) -> str:
        return f"cos({self.r}*pi)"


@lru_cache(maxsize=256)
def _cyclotomic(N: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(N, _x), _x, domain="QQ")


def _reduce(coeffs: dict[int, Fraction], N: int) -> tuple[Fraction, ...]:
    """Reduce ``sum c_k zeta^k`` modulo the ``N``-th cyclotomic polynomial."""
    expr = sympy.Poly.from_dict({(k % N,): sympy.Rational(c.numerator, c.denominator) for k, c in coeffs.items()} or {(0,): 0}, _x, domain="QQ")
    rem = expr.rem(_cyclotomic(N))
    deg = _cyclotomic(N).degree()
    dense = rem.all_coeffs()[::-1]
    out = [Fraction(int(c.p), int(c.q)) for c in dense] + [Fraction(0)] * (deg - len(dense))
    return tuple(out[:deg]) if deg else (Fraction(0),)


@dataclass(frozen=True)
class CyclotomicReal:
    """A real number ``sum_k c_k zeta_N^k``, reduced modulo ``Phi_N``."""

    N: int
    coeffs: tuple[Fraction, ...]
    approx: float = field(compare=False)

    @classmethod
    def from_exponents(cls, N: int, exponents: Sequence[int], scale: Fraction) -> "CyclotomicReal":
        counts: dict[int, Fraction] = {}
        for k in exponents:
            counts[k % N] = counts.get(k % N, Fraction(0)) + scale
        approx = float(sum(float(c) * math.cos(2 * math.pi * k / N) for k, c in counts.items()))
        return cls(N, _reduce(counts, N), approx)

    @property
    def rational(self) -> Fraction | None:
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def evaluate(self, dps: int) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            z = mpmath.expjpi(mpmath.mpf(2) / self.N)
            val = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * z**k for k, c in enumerate(self.coeffs) if c)
            return +mpmath.re(val)

    def as_cospi(self) -> CosPi | None:
        """Exact test for ``value = cos(r pi)``; returns the angle when it is."""
        if abs(self.approx) > 1 + 1e-9:
            return None
        theta = math.acos(max(-1.0, min(1.0, self.approx)))
        K = 2 * self.N
        j = round(K * theta / (2 * math.pi))
        lifted = {2 * k: c for k, c in enumerate(self.coeffs) if c}
        lifted[j % K] = lifted.get(j % K, Fraction(0)) - Fraction(1, 2)
        lifted[(-j) % K] = lifted.get((-j) % K, Fraction(0)) - Fraction(1, 2)
        if all(c == 0 for c in _reduce(lifted, K)):
            return CosPi(Fraction(2 * j, K))
        return None

    def key(self):
        return ("cyc", self.N, self.coeffs)

    def __str__(self) -> str:
        terms = " + ".join(f"({c})z^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"[{terms}]_{self.N}"


@dataclass(frozen=True)
class AlgebraicRoot:
    """Real root of the monic irreducible polynomial ``coeffs`` (highest degree first) nearest ``approx``."""

    coeffs: tuple[Fraction, ...]
    approx: float

    def evaluate(self, dps: int) -> mpmath.mpf:
        return _root_at(self.coeffs, self.approx, dps)

    def key(self):
        return ("alg", self.coeffs, round(self.approx, 9))

    def __str__(self) -> str:
        return f"root of {list(map(str, self.coeffs))} near {self.approx:.12g}"


@lru_cache(maxsize=1024)
def _root_at(coeffs: tuple[Fraction, ...], approx: float, dps: int) -> mpmath.mpf:
    with mpmath.workdps(dps + 20):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        roots = mpmath.polyroots(cs, maxsteps=200 + 4 * dps, extraprec=4 * dps)
        best = min(roots, key=lambda z: abs(z - approx))
        return +mpmath.re(best)


Exact = Union[Fraction, CosPi, CyclotomicReal, AlgebraicRoot]


def simplify(value: Exact) -> Exact:
    """Collapse a cyclotomic value to a rational or ``CosPi`` when possible."""
    if isinstance(value, CosPi):
        r = value.r
        if r in (0, Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), 1):
            return Fraction({0: 1, Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): 0, Fraction(2, 3): Fraction(-1, 2), 1: -1}[r])
        return value
    if isinstance(value, CyclotomicReal):
        q = value.rational
        if q is not None:
            return q
        c = value.as_cospi()
        return c if c is not None else value
    return value


def approx_value(value) -> float:
    if isinstance(value, (Fraction, int)):
        return float(value)
    if isinstance(value, float):
        return value
    return float(value.approx)


def to_mpf(value, dps: int) -> mpmath.mpf | None:
    """High-precision value, or ``None`` for plain floats (no extra digits available)."""
    if isinstance(value, (Fraction, int)):
        with mpmath.workdps(dps + 10):
            return mpmath.mpf(value.numerator) / value.denominator if isinstance(value, Fraction) else mpmath.mpf(value)
    if isinstance(value, float):
        return None
    return value.evaluate(dps)


def value_key(value):
    if isinstance(value, (Fraction, int)):
        return ("q", Fraction(value))
    if isinstance(value, float):
        return ("f", round(value, 10))
    return value.key()


# ---------------------------------------------------------------------------
# exact spectra of arbitrary graphs

IDENTIFY_MAX_VERTICES = 64


def _recognise_cospi(factor: sympy.Poly, root: float) -> CosPi | None:
    theta = math.acos(max(-1.0, min(1.0, root))) / math.pi
    r = Fraction(theta).limit_denominator(720)
    if abs(float(r) - theta) > 1e-9:
        return None
    M = (r / 2).denominator  # cos(r pi) = cos(2 pi k / M)
    if M >= 3 and sympy.totient(M) // 2 != factor.degree():
        return None
    mp = sympy.minimal_polynomial(sympy.cos(sympy.pi * sympy.Rational(r.numerator, r.denominator)), _x, polys=True)
    if mp.monic() == factor.monic():
        return CosPi(r)
    return None


def identify_spectrum(adjacency: np.ndarray, degrees: Sequence[float], eigenvalues: Sequence[float], multiplicities: Sequence[int]):
    """Exact values for each numeric eigenvalue of ``D^{-1/2} A D^{-1/2}``.

    Factors the characteristic polynomial of the similar rational matrix
    ``D^{-1} A`` and matches each irreducible factor to eigenvalue clusters.
    Returns ``None`` when the graph is too large or the match fails.
    """
    n = adjacency.shape[0]
    if n > IDENTIFY_MAX_VERTICES:
        return None
    rows = [[sympy.Rational(1, int(degrees[u])) if adjacency[u, v] else sympy.Integer(0) for v in range(n)] for u in range(n)]
    dm = DomainMatrix.from_list_sympy(n, n, rows).convert_to(sympy.QQ)
    cp = sympy.Poly(dm.charpoly(), _x, domain="QQ")
    _, factors = cp.factor_list()
    exact: list = [None] * len(eigenvalues)
    for f, e in factors:
        f = f.monic()
        roots = np.roots([float(c) for c in f.all_coeffs()])
        for z in roots:
            if abs(z.imag) > 1e-7:
                return None
            i = int(np.argmin([abs(z.real - mu) for mu in eigenvalues]))
            if abs(eigenvalues[i] - z.real) > 1e-6 or multiplicities[i] != e or exact[i] is not None:
                return None
            if f.degree() == 1:
                c = f.all_coeffs()[1]
                exact[i] = Fraction(-int(c.p), int(c.q))
            else:
                exact[i] = _recognise_cospi(f, z.real) or AlgebraicRoot(
                    tuple(Fraction(int(c.p), int(c.q)) for c in f.all_coeffs()), float(z.real)
                )
    if any(x is None for x in exact):
        return None
    return tuple(exact)
