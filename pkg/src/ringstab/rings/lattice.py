"""Integer row-style Hermite normal form with unimodular transforms."""

from __future__ import annotations

from typing import List, Sequence, Tuple

Row = List[int]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with g == s*a + t*b, g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(rows: Sequence[Sequence[int]]) -> Tuple[List[Row], List[Row]]:
    """Return (H, U) with U unimodular and U @ rows == H.

    H is in row echelon form with positive pivots, entries above each pivot
    reduced into [0, pivot), and all zero rows at the bottom.
    """
    A = [list(r) for r in rows]
    nr = len(A)
    nc = len(A[0]) if A else 0
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        for i in range(r + 1, nr):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, s, t = xgcd(a, b)
            ua, ub = a // g, b // g
            # [[s, t], [-ub, ua]] has determinant 1
            A[r], A[i] = (
                [s * x + t * y for x, y in zip(A[r], A[i])],
                [-ub * x + ua * y for x, y in zip(A[r], A[i])],
            )
            U[r], U[i] = (
                [s * x + t * y for x, y in zip(U[r], U[i])],
                [-ub * x + ua * y for x, y in zip(U[r], U[i])],
            )
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return A, U


def rank(H: Sequence[Sequence[int]]) -> int:
    return sum(1 for row in H if any(row))


def kernel(M: Sequence[Sequence[int]]) -> List[Row]:
    """Basis of the integer kernel {v : M v == 0} (columns of M index v)."""
    if not M:
        return []
    nc = len(M[0])
    Mt = [[M[i][j] for i in range(len(M))] for j in range(nc)]
    H, U = hnf(Mt)
    return [U[i] for i in range(nc) if not any(H[i])]


def solve(H: Sequence[Sequence[int]], v: Sequence[int]):
    """Integer coefficients c with sum c_i H_i == v for echelon H, or None."""
    v = list(v)
    coeffs = []
    basis = [row for row in H if any(row)]
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        coeffs.append(q)
        v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coeffs
