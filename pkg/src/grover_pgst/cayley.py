"""Cayley graphs of finite abelian groups and their character spectra.

Group elements are tuples ``(x_1, ..., x_k)`` with ``x_i`` in ``Z_{n_i}``,
enumerated in lexicographic order; that order is the vertex numbering of
the underlying :class:`~grover_pgst.graph_core.Graph`.  The character
``chi_a`` is an eigenvector of the discriminant ``A / |S|`` with eigenvalue
``(1/|S|) sum_{s in S} chi_a(s)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import algebraic
from .graph_core import Graph
from .kronecker_relations import (
    DEFAULT_COEFF_BOUND,
    DEFAULT_PRECISION,
    PgstVerdict,
    classify_angle,
    parity_verdict,
    relation_basis,
)

Element = tuple[int, ...]


class CayleyError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        if not factors or any(f < 2 for f in factors):
            raise CayleyError(f"cyclic factors must all be >= 2, got {list(factors)}")
        object.__setattr__(self, "factors", factors)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.factors)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product(*(range(f) for f in self.factors)))

    @cached_property
    def _index(self) -> dict[Element, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def element(self, x) -> Element:
        """Normalise an int (cyclic groups) or sequence to a reduced tuple."""
        if isinstance(x, (int, np.integer)):
            if len(self.factors) != 1:
                raise CayleyError(f"integer {x} given for a group with {len(self.factors)} factors")
            x = (x,)
        x = tuple(int(c) for c in x)
        if len(x) != len(self.factors):
            raise CayleyError(f"element {x} has {len(x)} components, expected {len(self.factors)}")
        return tuple(c % f for c, f in zip(x, self.factors))

    def index(self, x) -> int:
        return self._index[self.element(x)]

    def add(self, a, b) -> Element:
        return tuple((x + y) % f for x, y, f in zip(self.element(a), self.element(b), self.factors))

    def neg(self, a) -> Element:
        return tuple((-x) % f for x, f in zip(self.element(a), self.factors))

    def sub(self, a, b) -> Element:
        return self.add(a, self.neg(b))

    def order_of(self, a) -> int:
        return math.lcm(*(f // math.gcd(x, f) for x, f in zip(self.element(a), self.factors)))

    @property
    def zero(self) -> Element:
        return (0,) * len(self.factors)


@dataclass(frozen=True)
class ConnectionSet:
    group: AbelianGroup
    elements: tuple[Element, ...]

    @classmethod
    def build(cls, group: AbelianGroup, elements: Iterable) -> "ConnectionSet":
        elems = sorted({group.element(x) for x in elements})
        if not elems:
            raise CayleyError("connection set is empty")
        if group.zero in elems:
            raise CayleyError("connection set contains the identity")
        missing = [x for x in elems if group.neg(x) not in elems]
        if missing:
            raise CayleyError(f"connection set is not closed under negation: -{missing[0]} missing")
        seen = {group.zero}
        frontier = [group.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for s in elems:
                    y = group.add(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) != group.order:
            raise CayleyError(f"connection set generates a subgroup of order {len(seen)} < {group.order}")
        return cls(group, tuple(elems))

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CayleyGraph:
    group: AbelianGroup
    conn: ConnectionSet
    graph: Graph


def cayley_graph(group: AbelianGroup | Sequence[int], connection: Iterable) -> CayleyGraph:
    if not isinstance(group, AbelianGroup):
        group = AbelianGroup(tuple(group))
    conn = ConnectionSet.build(group, connection)
    edges = []
    for i, x in enumerate(group.elements):
        for s in conn.elements:
            j = group.index(group.add(x, s))
            if i < j:
                edges.append((i, j))
    return CayleyGraph(group, conn, Graph.from_edges(edges, group.order))


def circulant(n: int, connection: Iterable[int]) -> CayleyGraph:
    return cayley_graph(AbelianGroup((n,)), [(c,) for c in connection])


def product_family(n: int, m: int) -> CayleyGraph:
    """``Cay(Z_n x Z_m, (Z_n minus 0) x Z_m)``."""
    group = AbelianGroup((n, m))
    return cayley_graph(group, [(a, b) for a in range(1, n) for b in range(m)])


def product_family_reference(n: int, m: int) -> tuple[bool, tuple[Element, Element] | None]:
    """Known answer for the product family: PGST exactly when ``m = 2``, at ``((0,0),(0,1))``."""
    return (True, ((0, 0), (0, 1))) if m == 2 else (False, None)


# ---------------------------------------------------------------------------
# characters and spectra


def _phase(group: AbelianGroup, a, b) -> int:
    """Exponent ``k`` with ``chi_a(b) = zeta_N^k``, ``N`` the group exponent."""
    N = group.exponent
    return sum(x * y * (N // f) for x, y, f in zip(group.element(a), group.element(b), group.factors)) % N


def character_value(group: AbelianGroup, a, b) -> complex:
    return cmath.exp(2j * math.pi * _phase(group, a, b) / group.exponent)


def cayley_eigenvalue(group: AbelianGroup, conn: ConnectionSet, a) -> float:
    total = sum(character_value(group, a, s) for s in conn.elements)
    if abs(total.imag) > 1e-12 * max(1, len(conn)):
        raise CayleyError(f"character sum at {a} is not real: {total}")
    return total.real / len(conn)


def exact_eigenvalue(group: AbelianGroup, conn: ConnectionSet, a):
    """Exact ``mu_a``: a ``Fraction``, ``CosPi`` or ``CyclotomicReal``."""
    raw = algebraic.CyclotomicReal.from_exponents(
        group.exponent, [_phase(group, a, s) for s in conn.elements], Fraction(1, len(conn))
    )
    return algebraic.simplify(raw)


def exact_spectrum(cg: CayleyGraph) -> tuple:
    """Exact eigenvalue per group element, in element order."""
    return tuple(exact_eigenvalue(cg.group, cg.conn, a) for a in cg.group.elements)


def cayley_eigenvector(group: AbelianGroup, a) -> np.ndarray:
    return np.array([character_value(group, a, x) for x in group.elements]) / math.sqrt(group.order)


def order_two_elements(group: AbelianGroup) -> list[Element]:
    return [x for x in group.elements if x != group.zero and group.order_of(x) == 2]


@dataclass(frozen=True)
class SignPartition:
    w: Element
    gamma0: tuple[Element, ...]
    gamma1: tuple[Element, ...]


def sign_partition(group: AbelianGroup, w) -> SignPartition:
    w = group.element(w)
    if w == group.zero or group.order_of(w) != 2:
        raise CayleyError(f"{w} does not have order 2")
    g0, g1 = [], []
    for a in group.elements:
        val = character_value(group, a, w)
        if abs(val - 1) < 1e-12:
            g0.append(a)
        elif abs(val + 1) < 1e-12:
            g1.append(a)
        else:
            raise CayleyError(f"chi_{a}({w}) = {val} is not +-1")
    return SignPartition(w, tuple(g0), tuple(g1))


def pgst_check(
    cg: CayleyGraph,
    u,
    v,
    precision: int = DEFAULT_PRECISION,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
) -> PgstVerdict:
    """Decide PGST between group elements ``u`` and ``v`` using one angle per character."""
    group = cg.group
    u, v = group.element(u), group.element(v)
    if u == v:
        raise ValueError("PGST needs two distinct vertices")
    w = group.sub(v, u)
    if group.order_of(w) != 2:
        cert = {"type": "order", "difference": list(w), "order": group.order_of(w)}
        return PgstVerdict("No", cert, mode="exact", precision=precision, coeff_bound=coeff_bound)
    odd = set(sign_partition(group, w).gamma1)
    weights = [1 if a in odd else 0 for a in group.elements]
    lat = pgst_lattice(cg, precision, coeff_bound)
    verdict = parity_verdict(lat, weights)
    cert = dict(verdict.certificate)
    cert["elements"] = [list(a) for a in group.elements]
    cert["w"] = list(w)
    return PgstVerdict(verdict.outcome, cert, verdict.mode, verdict.precision, verdict.coeff_bound, verdict.caveats)


def pgst_lattice(cg: CayleyGraph, precision: int = DEFAULT_PRECISION, coeff_bound: int = DEFAULT_COEFF_BOUND):
    """The element-indexed relation lattice used by :func:`pgst_check`."""
    cache: dict = {}
    angles = []
    for mu in exact_spectrum(cg):
        key = algebraic.value_key(mu)
        if key not in cache:
            cache[key] = classify_angle(mu, precision)
        angles.append(cache[key])
    return relation_basis(angles, precision, coeff_bound)
