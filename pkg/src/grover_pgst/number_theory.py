"""Integer arithmetic used by the unitary Cayley spectra.

Factorisation is plain trial division; inputs here are at most a few
million.  The arithmetic Ramanujan sum is the source of truth and the
trigonometric sum is kept as an independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _check_positive(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return n


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation as ``((p, e), ...)`` with ascending primes."""
    n = _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def mobius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def totient(n: int) -> int:
    result = _check_positive(n)
    for p, _ in factorize(n):
        result = result // p * (p - 1)
    return result


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def squarefree_part(n: int) -> int:
    """Product of the primes dividing ``n`` to an odd power."""
    out = 1
    for p, e in factorize(n):
        if e % 2:
            out *= p
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def ramanujan_sum(j: int, n: int, method: str = "arithmetic") -> int | float:
    """``c(j, n)``: sum of ``exp(2 pi i j k / n)`` over units ``k`` mod ``n``.

    ``method="arithmetic"`` returns the exact integer ``mu(t) phi(n) / phi(t)``
    with ``t = n / gcd(n, j)``; ``method="trig"`` sums the cosines directly.
    """
    n = _check_positive(n)
    if method == "arithmetic":
        t = n // math.gcd(n, j)
        return mobius(t) * totient(n) // totient(t)
    if method == "trig":
        return math.fsum(math.cos(2.0 * math.pi * ((j * k) % n) / n) for k in range(1, n + 1) if math.gcd(k, n) == 1)
    raise ValueError(f"unknown method {method!r}; use 'arithmetic' or 'trig'")


def unitary_eigenvalue(j: int, n: int) -> Fraction:
    """Normalised Ramanujan sum ``c(j, n) / phi(n) = mu(t) / phi(t)``."""
    t = _check_positive(n) // math.gcd(n, j)
    return Fraction(mobius(t), totient(t))


@dataclass(frozen=True)
class GcdClassTable:
    """Partition of ``0..n-1`` by ``gcd(j, n)``; ``classes[r]`` is ``I_r``."""

    n: int
    classes: dict[int, tuple[int, ...]]

    def t(self, r: int) -> int:
        """Common value of ``n / gcd(j, n)`` on the class ``I_r``."""
        return self.n // r


def gcd_classes(n: int) -> GcdClassTable:
    n = _check_positive(n)
    classes: dict[int, list[int]] = {r: [] for r in divisors(n)}
    for j in range(n):
        classes[math.gcd(j, n)].append(j)
    return GcdClassTable(n=n, classes={r: tuple(js) for r, js in classes.items()})
