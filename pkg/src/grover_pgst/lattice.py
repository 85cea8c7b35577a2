"""Exact integer lattice tools: kernels and LLL reduction.

Everything works on Python ints so that no rounding can creep into an
exact-mode relation lattice.  The LLL routine is the all-integer variant
(Gram determinants ``d_i`` and scaled coefficients ``lambda_{k,j}``), which
keeps every intermediate quantity integral.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x in Z^c : A x = 0}`` via unimodular column operations.

    Columns of ``[A; I]`` are combined until the ``A`` part is in column
    echelon form; the identity part of the zero columns spans the kernel.
    """
    A = [[int(x) for x in r] for r in rows]
    c = ncols if ncols is not None else (len(A[0]) if A else 0)
    if any(len(r) != c for r in A):
        raise ValueError("ragged matrix")
    # columns stored as lists: first len(A) entries from A, then identity
    cols = [[A[i][j] for i in range(len(A))] + [1 if k == j else 0 for k in range(c)] for j in range(c)]
    pivot = 0
    for i in range(len(A)):
        # gather a gcd of row i into column `pivot` over columns pivot..c-1
        for j in range(pivot + 1, c):
            a, b = cols[pivot][i], cols[j][i]
            if b == 0:
                continue
            g, x, y = _egcd(a, b)
            pa, pb = a // g, b // g
            p_col, q_col = cols[pivot], cols[j]
            cols[pivot] = [x * s + y * t for s, t in zip(p_col, q_col)]
            cols[j] = [pa * t - pb * s for s, t in zip(p_col, q_col)]
        if cols[pivot][i] != 0:
            pivot += 1
            if pivot == c:
                break
    return [tuple(col[len(A):]) for col in cols[pivot:]]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> list[Vector]:
    """LLL-reduce linearly independent integer vectors (all-integer algorithm)."""
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n <= 1:
        return [tuple(v) for v in b]
    p, q = delta.numerator, delta.denominator
    # 1-based bookkeeping: d[0] = 1, d[i] = Gram determinant of b_1..b_i
    d = [1] + [0] * n
    lam = [[0] * (n + 1) for _ in range(n + 1)]

    def bk(i: int) -> list[int]:
        return b[i - 1]

    def redi(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l]:
            r = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k - 1] = [x - r * y for x, y in zip(bk(k), bk(l))]
            lam[k][l] -= r * d[l]
            for i in range(1, l):
                lam[k][i] -= r * lam[l][i]

    def swapi(k: int, kmax: int) -> None:
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k]
        d[k - 1] = B

    d[1] = _dot(bk(1), bk(1))
    if d[1] == 0:
        raise ValueError("zero vector in lattice basis")
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(bk(k), bk(j))
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("lattice basis vectors are linearly dependent")
                    d[k] = u
        redi(k, k - 1)
        if q * (d[k] * d[k - 2] + lam[k][k - 1] ** 2) < p * d[k - 1] ** 2:
            swapi(k, kmax)
            k = max(2, k - 1)
            continue
        for l in range(k - 2, 0, -1):
            redi(k, l)
        k += 1
    return [tuple(v) for v in b]


def content(v: Sequence[int]) -> int:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def normalize_sign(v: Sequence[int]) -> Vector:
    """Flip ``v`` so its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def in_lattice(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """Membership of ``v`` in the integer span of independent ``basis``."""
    if not basis:
        return all(x == 0 for x in v)
    dim = len(v)
    # x in span_Z(B)  <=>  kernel of [B^T | -v] contains a vector with last coord +-1
    rows = [[basis[j][i] for j in range(len(basis))] + [-int(v[i])] for i in range(dim)]
    ker = integer_kernel(rows, len(basis) + 1)
    g = content([k[-1] for k in ker])
    return g == 1
