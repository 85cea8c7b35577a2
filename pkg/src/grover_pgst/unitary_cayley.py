"""Unitary Cayley graphs ``Cay(Z_n, Z_n^x)``.

The discriminant eigenvalue at character ``j`` is ``mu(t) / phi(t)`` with
``t = n / gcd(n, j)``, so the whole spectrum is rational and known in
closed form.  PGST from ``0`` to ``n/2`` happens exactly when
``n = 2m`` or ``n = 4m`` with ``m`` odd and square-free.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cayley import AbelianGroup, CayleyGraph, ConnectionSet, cayley_graph
from .number_theory import is_squarefree, unitary_eigenvalue

# Moduli whose unitary Cayley graph admits perfect state transfer.  This is
# an established classification that is taken as given here, not re-derived.
PST_MODULI = frozenset({2, 4, 6, 12})


def _check_modulus(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ValueError(f"unitary Cayley graphs need n >= 2, got {n}")
    return n


def unitary_connection_set(n: int) -> ConnectionSet:
    n = _check_modulus(n)
    return ConnectionSet.build(AbelianGroup((n,)), [(k,) for k in range(1, n) if math.gcd(k, n) == 1])


def unitary_cayley_graph(n: int) -> CayleyGraph:
    n = _check_modulus(n)
    return cayley_graph((n,), [(k,) for k in range(1, n) if math.gcd(k, n) == 1])


@dataclass(frozen=True)
class UnitarySpectrum:
    n: int
    mu: tuple[Fraction, ...]  # indexed by character j

    def distinct(self) -> list[Fraction]:
        return sorted(set(self.mu), reverse=True)


def discriminant_spectrum(n: int) -> UnitarySpectrum:
    n = _check_modulus(n)
    return UnitarySpectrum(n, tuple(unitary_eigenvalue(j, n) for j in range(n)))


def zero_pair_obstruction(n: int) -> tuple[int, int] | None:
    """Smallest odd ``a`` and even ``b`` with ``mu_a = mu_b = 0``, if both exist."""
    mu = discriminant_spectrum(n).mu
    odd = next((j for j in range(1, n, 2) if mu[j] == 0), None)
    even = next((j for j in range(0, n, 2) if mu[j] == 0), None)
    if odd is None or even is None:
        return None
    return odd, even


def decide_pgst(n: int) -> tuple[bool, tuple[int, int] | None]:
    n = _check_modulus(n)
    for alpha in (1, 2):
        m, r = divmod(n, 2**alpha)
        if r == 0 and m % 2 == 1 and is_squarefree(m):
            return True, (0, n // 2)
    return False, None


def decide_pst(n: int) -> bool:
    return _check_modulus(n) in PST_MODULI
