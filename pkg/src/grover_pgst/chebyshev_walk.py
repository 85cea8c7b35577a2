"""Transfer fidelities through the Chebyshev recurrence.

The vertex-space quantity ``N U^m N* e_u`` equals ``T_m(P) e_u``, so every
fidelity is computed with the three-term recurrence
``x_m = 2 P x_{m-1} - x_{m-2}`` on ``n``-vectors.  Direct arc-space
evolution is kept for cross-checking and for periodicity detection.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
import scipy.sparse as sparse

from .graph_core import Graph, as_matrix, discriminant, walk_matrices

PST_THRESHOLD = 1.0 - 1e-9
DEFAULT_TAU_BOUND = 10_000
DEFAULT_TAU_MAX = 100_000


def _unit(n: int, u: int) -> np.ndarray:
    if not 0 <= u < n:
        raise IndexError(f"vertex {u} out of range 0..{n - 1}")
    e = np.zeros(n)
    e[u] = 1.0
    return e


def chebyshev_iter(P, u: int) -> Iterator[np.ndarray]:
    """Yield ``T_0(P) e_u, T_1(P) e_u, ...`` indefinitely."""
    M = as_matrix(P)
    prev = _unit(M.shape[0], u)
    yield prev
    cur = M @ prev
    while True:
        yield cur
        prev, cur = cur, 2.0 * (M @ cur) - prev


def chebyshev_vector(P, u: int, m: int) -> np.ndarray:
    if m < 0:
        raise ValueError("m must be nonnegative")
    for k, x in enumerate(chebyshev_iter(P, u)):
        if k == m:
            return x
    raise AssertionError("unreachable")


def chebyshev_matrix(P, m: int) -> np.ndarray:
    """``T_m(P)`` by the matrix recurrence."""
    M = as_matrix(P)
    prev, cur = np.eye(M.shape[0]), M.copy()
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, 2.0 * (M @ cur) - prev
    return cur


def transfer_fidelity(P, u: int, v: int, m: int) -> float:
    x = chebyshev_vector(P, u, m)
    _unit(len(x), v)
    return float(abs(x[v]))


@dataclass(frozen=True)
class FidelityTrace:
    u: int
    v: int
    tau_max: int
    max_fidelity: float
    argmax: int
    samples: tuple[tuple[int, float], ...] | None = field(default=None, repr=False)

    def to_csv(self) -> str:
        if self.samples is None:
            raise ValueError("trace was computed without samples")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tau", "fidelity"])
        for tau, f in self.samples:
            w.writerow([tau, repr(f)])
        return buf.getvalue()


def fidelity_sweep(P, u: int, v: int, tau_max: int, keep_samples: bool = False) -> FidelityTrace:
    """Stream ``|e_v^t T_tau(P) e_u|`` for ``0 <= tau <= tau_max``, tracking the running max."""
    if tau_max < 0:
        raise ValueError("tau_max must be nonnegative")
    M = as_matrix(P)
    _unit(M.shape[0], v)
    best, best_tau = -1.0, 0
    samples = [] if keep_samples else None
    for tau, x in enumerate(chebyshev_iter(M, u)):
        f = float(abs(x[v]))
        if samples is not None:
            samples.append((tau, f))
        if f > best:
            best, best_tau = f, tau
        if tau == tau_max:
            break
    return FidelityTrace(u, v, tau_max, best, best_tau, tuple(samples) if samples is not None else None)


def _dense(M) -> np.ndarray:
    return M.toarray() if sparse.issparse(M) else M


def _start(w, u: int) -> np.ndarray:
    n = w.N.shape[0]
    if not 0 <= u < n:
        raise IndexError(f"vertex {u} out of range 0..{n - 1}")
    return np.asarray(_dense(w.N[[u], :])[0], dtype=float).copy()


def vertex_state(g: Graph, u: int) -> np.ndarray:
    """Arc vector ``N* e_u``."""
    return _start(walk_matrices(g), u)


def evolve_state(g: Graph, u: int, tau: int) -> np.ndarray:
    """``U^tau N* e_u`` by repeated application of ``U``."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    w = walk_matrices(g)
    psi = _start(w, u)
    for _ in range(tau):
        psi = w.U @ psi
    return psi


def arc_fidelities(g: Graph, u: int, m_max: int) -> np.ndarray:
    """Rows ``N U^m N* e_u`` for ``m = 0..m_max`` computed in arc space."""
    w = walk_matrices(g)
    psi = _start(w, u)
    out = np.empty((m_max + 1, g.n))
    for m in range(m_max + 1):
        out[m] = w.N @ psi
        psi = w.U @ psi
    return out


def verify_intertwine(g: Graph, m: int) -> float:
    """``max |N U^m N* - T_m(P)|``."""
    if m < 1:
        raise ValueError("m must be positive")
    w = walk_matrices(g)
    N, U = _dense(w.N), _dense(w.U)
    lhs = N @ np.linalg.matrix_power(U, m) @ N.T
    return float(np.max(np.abs(lhs - chebyshev_matrix(discriminant(g), m))))


def intertwine_residuals(g: Graph, m_max: int) -> float:
    """Max residual of the intertwining identity over ``1 <= m <= m_max`` (incremental powers)."""
    w = walk_matrices(g)
    N, U = _dense(w.N), _dense(w.U)
    P = discriminant(g).P
    Um = np.eye(U.shape[0])
    prev, cur = np.eye(g.n), P.copy()
    worst = 0.0
    for m in range(1, m_max + 1):
        Um = U @ Um
        worst = max(worst, float(np.max(np.abs(N @ Um @ N.T - cur))))
        prev, cur = cur, 2.0 * (P @ cur) - prev
    return worst


def detect_period(g: Graph, tau_bound: int = DEFAULT_TAU_BOUND, tol: float = 1e-8) -> int | None:
    """Smallest ``tau <= tau_bound`` with ``max|U^tau - I| < tol``, or ``None``."""
    if tau_bound < 1:
        raise ValueError("tau_bound must be positive")
    w = walk_matrices(g)
    U = _dense(w.U)
    I = np.eye(U.shape[0])
    Ut = I
    for tau in range(1, tau_bound + 1):
        Ut = U @ Ut
        if np.max(np.abs(Ut - I)) < tol:
            return tau
    return None


@dataclass(frozen=True)
class PstResult:
    status: str  # "found" | "absent_within_period" | "inconclusive"
    tau: int | None
    fidelity: float
    period: int | None
    searched: int

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "tau": self.tau,
            "fidelity": self.fidelity,
            "period": self.period,
            "searched_up_to": self.searched,
        }


def pst_check(g: Graph, u: int, v: int, tau_bound: int = DEFAULT_TAU_BOUND) -> PstResult:
    """Search for perfect transfer ``u -> v``; definitive when a period is found."""
    if u == v:
        raise ValueError("PST check needs two distinct vertices")
    P = discriminant(g)
    _unit(g.n, v)
    period = detect_period(g, tau_bound)
    horizon = period if period is not None else tau_bound
    best, best_tau = 0.0, 0
    for tau, x in enumerate(chebyshev_iter(P, u)):
        f = float(abs(x[v]))
        if f >= PST_THRESHOLD:
            return PstResult("found", tau, f, period, tau)
        if f > best:
            best, best_tau = f, tau
        if tau == horizon:
            break
    status = "absent_within_period" if period is not None else "inconclusive"
    return PstResult(status, None, best, period, horizon)
