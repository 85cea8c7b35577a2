"""Distinct eigenvalues and orthogonal projectors of a discriminant.

Eigenvalues from ``numpy.linalg.eigh`` are grouped into clusters whose
consecutive gaps are at most ``group_tol``; each cluster becomes one
projector.  A cluster wider than ``group_tol`` end to end is ambiguous and
raises rather than being merged silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph_core import Discriminant, as_matrix

DEFAULT_GROUP_TOL = 1e-9
DEFAULT_SUPPORT_TOL = 1e-8


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]
    matrix: np.ndarray
    group_tol: float
    min_gap: float
    caveats: tuple[str, ...] = field(default=())
    discriminant: Discriminant | None = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def index_of(self, mu: float, tol: float | None = None) -> int:
        tol = self.group_tol * 10 if tol is None else tol
        i = int(np.argmin([abs(mu - x) for x in self.eigenvalues]))
        if abs(self.eigenvalues[i] - mu) > tol:
            raise KeyError(f"{mu} is not an eigenvalue (nearest {self.eigenvalues[i]})")
        return i

    def apply(self, f) -> np.ndarray:
        """``f(P) = sum f(mu) E_mu``."""
        return sum(f(mu) * E for mu, E in zip(self.eigenvalues, self.projectors))

    def residuals(self) -> dict[str, float]:
        """Max-norm residuals of the projector algebra."""
        I = np.eye(self.n)
        Es = self.projectors
        out = {
            "completeness": float(np.max(np.abs(sum(Es) - I))),
            "idempotence": max(float(np.max(np.abs(E @ E - E))) for E in Es),
            "reconstruction": float(np.max(np.abs(self.apply(lambda x: x) - self.matrix))),
        }
        ortho = 0.0
        for i in range(len(Es)):
            for j in range(i + 1, len(Es)):
                ortho = max(ortho, float(np.max(np.abs(Es[i] @ Es[j]))))
        out["orthogonality"] = ortho
        return out


def decompose(P, group_tol: float = DEFAULT_GROUP_TOL) -> SpectralDecomposition:
    if group_tol <= 0:
        raise ValueError("group_tol must be positive")
    M = as_matrix(P)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SpectralError(f"expected a square matrix, got shape {M.shape}")
    if not np.allclose(M, M.T, rtol=0, atol=1e-12):
        raise SpectralError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(M)
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    clusters: list[list[int]] = [[0]]
    for i in range(1, len(vals)):
        if vals[clusters[-1][-1]] - vals[i] <= group_tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    for c in clusters:
        if vals[c[0]] - vals[c[-1]] > group_tol:
            raise SpectralError(
                f"eigenvalue cluster [{vals[c[-1]]:.3e}, {vals[c[0]]:.3e}] spans more than group_tol={group_tol:g}"
            )
    eigenvalues = tuple(float(np.mean(vals[c])) for c in clusters)
    projectors = tuple(vecs[:, c] @ vecs[:, c].T for c in clusters)
    gaps = [eigenvalues[i] - eigenvalues[i + 1] for i in range(len(eigenvalues) - 1)]
    min_gap = min(gaps) if gaps else float("inf")
    caveats = ()
    if min_gap < 10 * group_tol:
        caveats = (f"closest distinct eigenvalues differ by {min_gap:.3e}, within 10x group_tol",)
    return SpectralDecomposition(
        eigenvalues=eigenvalues,
        projectors=projectors,
        multiplicities=tuple(len(c) for c in clusters),
        matrix=M,
        group_tol=group_tol,
        min_gap=min_gap,
        caveats=caveats,
        discriminant=P if isinstance(P, Discriminant) else None,
    )


def eigenvalue_support(dec: SpectralDecomposition, u: int, tol: float = DEFAULT_SUPPORT_TOL) -> tuple[float, ...]:
    """Eigenvalues whose projector does not annihilate ``e_u``."""
    _check_vertex(dec, u)
    return tuple(mu for mu, E in zip(dec.eigenvalues, dec.projectors) if np.linalg.norm(E[:, u]) > tol)


@dataclass(frozen=True)
class SupportPartition:
    support_u: tuple[float, ...]
    support_v: tuple[float, ...]
    plus_set: tuple[float, ...]
    minus_set: tuple[float, ...]
    valid: bool
    violation: float | None = None


def sign_pattern(dec: SpectralDecomposition, u: int, v: int, tol: float = DEFAULT_SUPPORT_TOL) -> SupportPartition:
    """Test ``E_mu e_u = +-E_mu e_v`` for every eigenvalue and split the support by sign."""
    _check_vertex(dec, u)
    _check_vertex(dec, v)
    if u == v:
        raise ValueError("sign pattern needs two distinct vertices")
    plus, minus = [], []
    violation = None
    for mu, E in zip(dec.eigenvalues, dec.projectors):
        cu, cv = E[:, u], E[:, v]
        if np.linalg.norm(cu) <= tol and np.linalg.norm(cv) <= tol:
            continue
        if np.linalg.norm(cu - cv) < tol:
            plus.append(mu)
        elif np.linalg.norm(cu + cv) < tol:
            minus.append(mu)
        elif violation is None:
            violation = mu
    return SupportPartition(
        support_u=eigenvalue_support(dec, u, tol),
        support_v=eigenvalue_support(dec, v, tol),
        plus_set=tuple(plus),
        minus_set=tuple(minus),
        valid=violation is None,
        violation=violation,
    )


def _check_vertex(dec: SpectralDecomposition, u: int) -> None:
    if not 0 <= u < dec.n:
        raise IndexError(f"vertex {u} out of range 0..{dec.n - 1}")
