"""Integer relations among arccos angles and the parity test for PGST.

For angles ``theta_i = arccos(mu_i)`` the relation lattice is

    L = { l in Z^d : sum_i l_i theta_i in 2 pi Z }.

Pretty good state transfer holds exactly when every ``l`` in ``L`` has an
even weighted sum over the minus side of the sign split.  Parity is an
additive functional, so checking a basis of ``L`` is enough.

Two ways to obtain ``L``:

* exact: every distinct angle is a rational multiple of pi or
  ``arccos(+-1/d)`` with ``d >= 3``.  The numbers ``pi, arccos(1/d_1), ...``
  are taken to be linearly independent over Q (a single ``d`` always
  qualifies; several need pairwise distinct square-free parts of
  ``d^2 - 1``), so each irrational base must carry net coefficient zero
  and the pi part reduces to a congruence that is solved over Z.
* heuristic: LLL on a high-precision embedding of ``(theta, 2 pi)``.
  Candidate relations are re-checked at twice the working precision.  The
  heuristic can refute (an odd relation is a certificate) but never
  confirms, so an all-even heuristic basis yields ``Unknown``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

import mpmath

from . import algebraic
from .lattice import integer_kernel, lll_reduce, normalize_sign
from .number_theory import squarefree_part
from .spectral import DEFAULT_SUPPORT_TOL, SpectralDecomposition, sign_pattern

DEFAULT_PRECISION = 200
DEFAULT_COEFF_BOUND = 10**6
SCHEMA_VERSION = "1"

# rational cosines of rational multiples of pi
_NIVEN = {
    Fraction(1): Fraction(0),
    Fraction(1, 2): Fraction(1, 3),
    Fraction(0): Fraction(1, 2),
    Fraction(-1, 2): Fraction(2, 3),
    Fraction(-1): Fraction(1),
}


class AngleKind(Enum):
    RATIONAL_PI = "rational_pi"
    STRUCTURED = "structured_irrational"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class AngleClass:
    """``arccos(mu)`` together with what is known about it exactly.

    For ``STRUCTURED`` angles ``theta = pi_part * pi + beta_sign * arccos(1/base)``.
    """

    mu: object
    kind: AngleKind
    pi_multiple: Fraction | None = None
    family: str | None = None
    base: int | None = None
    beta_sign: int = 0

    @property
    def exact(self) -> bool:
        return self.kind is not AngleKind.UNCLASSIFIED

    @property
    def pi_part(self) -> Fraction:
        if self.kind is AngleKind.RATIONAL_PI:
            return self.pi_multiple
        if self.kind is AngleKind.STRUCTURED:
            return Fraction(0) if self.beta_sign > 0 else Fraction(1)
        raise ValueError("unclassified angle has no exact pi part")

    @property
    def approx_mu(self) -> float:
        return algebraic.approx_value(self.mu)

    def theta(self, dps: int) -> mpmath.mpf | None:
        with mpmath.workdps(dps + 10):
            if self.kind is AngleKind.RATIONAL_PI:
                return mpmath.pi * self.pi_multiple.numerator / self.pi_multiple.denominator
            x = algebraic.to_mpf(self.mu, dps + 10)
            if x is None:
                return None
            return mpmath.acos(x)

    def describe(self) -> str:
        if self.kind is AngleKind.RATIONAL_PI:
            return f"arccos({self.mu}) = {self.pi_multiple}*pi"
        if self.kind is AngleKind.STRUCTURED:
            return f"arccos({self.mu}) [{self.family}, base 1/{self.base}]"
        return f"arccos({self.mu})"


def classify_angle(mu, precision: int = DEFAULT_PRECISION) -> AngleClass:
    """Place ``arccos(mu)`` in one of the angle families.

    ``mu`` may be an int, ``Fraction``, one of the exact types from
    :mod:`grover_pgst.algebraic`, or a plain float (always unclassified).
    """
    if isinstance(mu, AngleClass):
        return mu
    if isinstance(mu, int):
        mu = Fraction(mu)
    if not isinstance(mu, float):
        mu = algebraic.simplify(mu)
    if abs(algebraic.approx_value(mu)) > 1 + 1e-12:
        raise ValueError(f"|mu| > 1 for mu = {mu}")
    if isinstance(mu, Fraction):
        if abs(mu) > 1:
            raise ValueError(f"|mu| > 1 for mu = {mu}")
        if mu in _NIVEN:
            cls = AngleClass(mu, AngleKind.RATIONAL_PI, pi_multiple=_NIVEN[mu])
        elif mu.numerator in (1, -1) and mu.denominator >= 3:
            positive = mu > 0
            cls = AngleClass(
                mu,
                AngleKind.STRUCTURED,
                family="inverse-totient" if positive else "inverse-linear",
                base=mu.denominator,
                beta_sign=1 if positive else -1,
            )
        else:
            cls = AngleClass(mu, AngleKind.UNCLASSIFIED)
    elif isinstance(mu, algebraic.CosPi):
        cls = AngleClass(mu, AngleKind.RATIONAL_PI, pi_multiple=mu.r)
    else:
        cls = AngleClass(mu, AngleKind.UNCLASSIFIED)
    _niven_guard(cls)
    return cls


def _niven_guard(cls: AngleClass) -> None:
    # a rational cosine at a rational multiple of pi must be one of five values
    if cls.kind is AngleKind.RATIONAL_PI and isinstance(cls.mu, Fraction):
        assert cls.mu in _NIVEN, f"rational-pi angle with rational cosine {cls.mu}"


# ---------------------------------------------------------------------------
# relation lattices


@dataclass(frozen=True)
class RelationLattice:
    angles: tuple[AngleClass, ...]
    basis: tuple[tuple[int, ...], ...]
    mode: str  # "exact" | "heuristic"
    precision: int
    coeff_bound: int
    complete: bool
    classes: tuple[tuple[int, ...], ...]
    notes: tuple[str, ...] = ()

    def angle_sum(self, relation: Sequence[int], dps: int | None = None) -> mpmath.mpf | None:
        return _angle_sum(self.angles, relation, dps or self.precision)


def _angle_sum(angles: Sequence[AngleClass], relation: Sequence[int], dps: int):
    """``sum l_i theta_i`` reduced to ``(-pi, pi]`` modulo ``2 pi``."""
    with mpmath.workdps(dps + 10):
        total = mpmath.mpf(0)
        for a, l in zip(angles, relation):
            if l:
                t = a.theta(dps)
                if t is None:
                    return None
                total += l * t
        two_pi = 2 * mpmath.pi
        r = total - two_pi * mpmath.nint(total / two_pi)
        return +r


def _independent_bases(bases: set[int]) -> bool:
    parts = [squarefree_part(d * d - 1) for d in bases]
    return len(parts) == len(set(parts))


def _exact_lattice(reps: Sequence[AngleClass]) -> list[tuple[int, ...]]:
    d = len(reps)
    bases = sorted({a.base for a in reps if a.kind is AngleKind.STRUCTURED})
    rows = []
    for b in bases:
        rows.append([a.beta_sign if a.base == b else 0 for a in reps] + [0])
    r = [a.pi_part for a in reps]
    L = math.lcm(*(x.denominator for x in r))
    rows.append([int(x * L) for x in r] + [-2 * L])
    ker = integer_kernel(rows, d + 1)
    vecs = [v[:d] for v in ker]
    if not vecs:
        return []
    return _canonical(lll_reduce(vecs))


def _canonical(vecs) -> list[tuple[int, ...]]:
    out = [normalize_sign(v) for v in vecs if any(v)]
    return sorted(out, key=lambda v: (sum(x * x for x in v), [-abs(x) for x in v], v))


def _heuristic_lattice(reps: Sequence[AngleClass], precision: int, coeff_bound: int):
    d = len(reps)
    notes = []
    thetas = [a.theta(precision) for a in reps]
    if any(t is None for t in thetas):
        missing = [a.describe() for a, t in zip(reps, thetas) if t is None]
        return [], [f"insufficient precision: no high-precision value for {', '.join(missing)}"]
    with mpmath.workdps(precision + 20):
        scale = mpmath.mpf(10) ** precision
        cols = [int(mpmath.nint(t * scale)) for t in thetas] + [int(mpmath.nint(2 * mpmath.pi * scale))]
    embed = [[1 if j == i else 0 for j in range(d + 1)] + [cols[i]] for i in range(d + 1)]
    reduced = lll_reduce(embed)
    tol = mpmath.mpf(10) ** (-(precision // 2))
    tight = mpmath.mpf(10) ** (-precision)
    found = []
    for vec in reduced:
        ell = tuple(vec[:d])
        if not any(ell) or max(abs(x) for x in ell) > coeff_bound:
            continue
        base_res = _angle_sum(reps, ell, precision)
        if abs(base_res) >= tol:
            continue
        fine_res = _angle_sum(reps, ell, 2 * precision)
        if abs(fine_res) >= tight:
            notes.append(f"candidate {list(ell)} passed at {precision} digits but failed at {2 * precision}; discarded")
            continue
        found.append(ell)
    if not found:
        return [], notes
    return _canonical(lll_reduce(found)), notes


def relation_basis(
    angles: Sequence,
    precision: int = DEFAULT_PRECISION,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
) -> RelationLattice:
    """Basis of the integer relations ``sum l_i arccos(mu_i) = 0 mod 2 pi``.

    Equal eigenvalues are merged before the lattice is computed and lifted
    back afterwards: the lift adds ``e_i - e_j`` for every pair of equal
    angles, so the result is indexed like the input.
    """
    if not angles:
        raise ValueError("relation_basis needs at least one angle")
    angles = tuple(classify_angle(a, precision) for a in angles)
    groups: dict[object, list[int]] = {}
    for i, a in enumerate(angles):
        groups.setdefault(algebraic.value_key(a.mu), []).append(i)
    classes = tuple(tuple(ix) for ix in groups.values())
    reps = [angles[ix[0]] for ix in classes]

    structured = {a.base for a in reps if a.kind is AngleKind.STRUCTURED}
    exact = all(a.exact for a in reps) and _independent_bases(structured)
    notes: list[str] = []
    if exact:
        small = _exact_lattice(reps)
        mode = "exact"
    else:
        if all(a.exact for a in reps):
            notes.append(f"irrational bases {sorted(structured)} share a square-free part of d^2-1; independence not assumed")
        small, notes_h = _heuristic_lattice(reps, precision, coeff_bound)
        notes.extend(notes_h)
        mode = "heuristic"

    dim = len(angles)
    basis = []
    for vec in small:
        lifted = [0] * dim
        for k, ix in enumerate(classes):
            lifted[ix[0]] = vec[k]
        basis.append(tuple(lifted))
    for ix in classes:
        for j in ix[1:]:
            diff = [0] * dim
            diff[j], diff[ix[0]] = 1, -1
            basis.append(tuple(diff))
    return RelationLattice(
        angles=angles,
        basis=tuple(basis),
        mode=mode,
        precision=precision,
        coeff_bound=coeff_bound,
        complete=exact,
        classes=classes,
        notes=tuple(notes),
    )


def is_relation(lat: RelationLattice, relation: Sequence[int]) -> bool:
    """Exact membership when possible, otherwise a doubled-precision numeric test."""
    if len(relation) != len(lat.angles):
        raise ValueError("relation length does not match the angle list")
    if lat.mode == "exact":
        for b in {a.base for a in lat.angles if a.kind is AngleKind.STRUCTURED}:
            if sum(a.beta_sign * l for a, l in zip(lat.angles, relation) if a.base == b) != 0:
                return False
        total = sum((a.pi_part * l for a, l in zip(lat.angles, relation)), Fraction(0))
        return total.denominator == 1 and total.numerator % 2 == 0
    res = _angle_sum(lat.angles, relation, 2 * lat.precision)
    return res is not None and abs(res) < mpmath.mpf(10) ** (-lat.precision)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class PgstVerdict:
    outcome: str  # "Yes" | "No" | "Unknown"
    certificate: dict
    mode: str
    precision: int
    coeff_bound: int
    caveats: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "outcome": self.outcome,
            "certificate": self.certificate,
            "mode": self.mode,
            "precision": self.precision,
            "coeff_bound": self.coeff_bound,
            "caveats": list(self.caveats),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _parity(relation: Sequence[int], weights: Sequence[int]) -> int:
    return sum(int(w) * int(l) for w, l in zip(weights, relation)) % 2


def parity_verdict(lat: RelationLattice, weights: Sequence[int], caveats: Sequence[str] = ()) -> PgstVerdict:
    """Evaluate the minus-side parity functional on a lattice basis."""
    if len(weights) != len(lat.angles):
        raise ValueError(f"{len(weights)} weights for {len(lat.angles)} angles")
    weights = [int(w) % 2 for w in weights]
    odd = [b for b in lat.basis if _parity(b, weights)]
    common = dict(mode=lat.mode, precision=lat.precision, coeff_bound=lat.coeff_bound)
    caveats = tuple(caveats) + lat.notes
    angle_text = [str(a.mu) for a in lat.angles]
    if odd:
        witness = min(odd, key=lambda b: (sum(x * x for x in b), b))
        cert = {
            "type": "relation",
            "relation": list(witness),
            "weights": weights,
            "angles": angle_text,
            "parity": 1,
        }
        return PgstVerdict("No", cert, caveats=caveats, **common)
    if lat.mode == "exact":
        cert = {
            "type": "lattice",
            "basis": [list(b) for b in lat.basis],
            "weights": weights,
            "angles": angle_text,
            "parities": [0] * len(lat.basis),
        }
        return PgstVerdict("Yes", cert, caveats=caveats, **common)
    cert = {
        "type": "bounds",
        "precision": lat.precision,
        "coeff_bound": lat.coeff_bound,
        "relations_found": len(lat.basis),
    }
    return PgstVerdict("Unknown", cert, caveats=caveats, **common)


def verify_relation_certificate(verdict: PgstVerdict, lat: RelationLattice) -> bool:
    """Independent re-check of a ``No`` relation certificate."""
    cert = verdict.certificate
    if verdict.outcome != "No" or cert.get("type") != "relation":
        return False
    rel = cert["relation"]
    if len(rel) != len(lat.angles) or _parity(rel, cert["weights"]) != 1:
        return False
    return is_relation(lat, rel)


# ---------------------------------------------------------------------------
# generic decision from a spectral decomposition


def _reconstruct_graph_data(dec: SpectralDecomposition):
    if dec.discriminant is not None:
        return dec.discriminant.adjacency, dec.discriminant.degrees
    adj = (abs(dec.matrix) > 1e-12).astype(float)
    return adj, adj.sum(axis=1)


def exact_spectrum(dec: SpectralDecomposition, exact_eigenvalues: Sequence | None = None) -> tuple | None:
    """Exact value per cluster of ``dec``: from the supplied list, else by factoring."""
    if exact_eigenvalues is not None:
        out = []
        for mu in dec.eigenvalues:
            hits = {algebraic.value_key(x): x for x in exact_eigenvalues if abs(algebraic.approx_value(x) - mu) < 1e-7}
            if len(hits) != 1:
                raise ValueError(f"supplied exact eigenvalues do not match numeric eigenvalue {mu!r} ({len(hits)} matches)")
            out.append(next(iter(hits.values())))
        return tuple(out)
    adj, deg = _reconstruct_graph_data(dec)
    if (deg == 0).any():
        return None
    return algebraic.identify_spectrum(adj, deg, dec.eigenvalues, dec.multiplicities)


def decide_pgst_generic(
    dec: SpectralDecomposition,
    u: int,
    v: int,
    precision: int = DEFAULT_PRECISION,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    exact_eigenvalues: Sequence | None = None,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> PgstVerdict:
    """Decide PGST between ``u`` and ``v`` from the projectors of the discriminant."""
    if u == v:
        raise ValueError("PGST needs two distinct vertices")
    sp = sign_pattern(dec, u, v, support_tol)
    exact = exact_spectrum(dec, exact_eigenvalues)
    caveats = list(dec.caveats)
    if exact is None:
        caveats.append("exact eigenvalues unavailable; using floating-point values")

    def value(i: int):
        return exact[i] if exact is not None else dec.eigenvalues[i]

    if not sp.valid:
        i = dec.eigenvalues.index(sp.violation)
        cert = {"type": "cospectrality", "eigenvalue": sp.violation, "exact": str(value(i)) if exact is not None else None}
        return PgstVerdict("No", cert, mode="exact", precision=precision, coeff_bound=coeff_bound, caveats=tuple(caveats))

    support = [i for i, mu in enumerate(dec.eigenvalues) if mu in sp.plus_set or mu in sp.minus_set]
    angles = [classify_angle(value(i), precision) for i in support]
    weights = [1 if dec.eigenvalues[i] in sp.minus_set else 0 for i in support]
    lat = relation_basis(angles, precision, coeff_bound)
    verdict = parity_verdict(lat, weights, caveats)
    cert = dict(verdict.certificate)
    cert["minus_eigenvalues"] = [str(value(i)) for i in support if dec.eigenvalues[i] in sp.minus_set]
    return PgstVerdict(verdict.outcome, cert, verdict.mode, verdict.precision, verdict.coeff_bound, verdict.caveats)
