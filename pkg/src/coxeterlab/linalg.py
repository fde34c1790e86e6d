"""Exact dense linear algebra on lists of Python ints / Fractions.

Matrices are lists of rows.  Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polyengine import IntPoly, poly_lcm

Matrix = list[list[int]]


class SingularMatrixError(ArithmeticError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int | None = None) -> Matrix:
    return [[0] * (r if c is None else c) for _ in range(r)]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)] if A else []


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col) if a) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * x for a, x in zip(row, v) if a) for row in A]


def scale(A: Sequence[Sequence], c) -> list[list]:
    return [[c * a for a in row] for row in A]


def add(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def kron(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    rb, cb = len(B), len(B[0]) if B else 0
    out = []
    for ra in A:
        for i in range(rb):
            out.append([a * B[i][j] for a in ra for j in range(cb)])
    return out


def block(blocks: Sequence[Sequence[Sequence[Sequence]]]) -> list[list]:
    """Assemble a block matrix from a 2D grid of equally-sized-per-row blocks."""
    out = []
    for brow in blocks:
        for i in range(len(brow[0])):
            out.append([x for b in brow for x in b[i]])
    return out


def mat_pow(A: Matrix, k: int) -> Matrix:
    out = identity(len(A))
    base = A
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def is_identity(A: Sequence[Sequence]) -> bool:
    return all(a == (i == j) for i, row in enumerate(A) for j, a in enumerate(row))


def det(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse(A: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix; raises if it is not integral."""
    inv = inverse(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise SingularMatrixError("inverse is not integral (matrix not unimodular)")
        out.append([int(x) for x in row])
    return out


def rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def charpoly(A: Sequence[Sequence[int]]) -> IntPoly:
    """det(T*I - A) by similarity reduction to upper Hessenberg form over Q."""
    n = len(A)
    H = [[Fraction(x) for x in row] for row in A]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        hm = H[m][m - 1]
        for j in range(m + 1, n):
            u = H[j][m - 1] / hm
            if u == 0:
                continue
            H[j] = [x - u * y for x, y in zip(H[j], H[m])]
            for row in H:
                row[m] += u * row[j]
    # recurrence on the leading principal submatrices
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for m in range(n):
        prev = polys[m]
        nxt = [Fraction(0)] + prev  # T * p_m
        for k, c in enumerate(prev):
            nxt[k] -= H[m][m] * c
        t = Fraction(1)
        for i in range(1, m + 1):
            t *= H[m - i + 1][m - i]
            if t == 0:
                break
            coef = t * H[m - i][m]
            if coef:
                for k, c in enumerate(polys[m - i]):
                    nxt[k] -= coef * c
        polys.append(nxt)
    out = polys[n]
    if any(c.denominator != 1 for c in out):
        raise ArithmeticError("characteristic polynomial of an integer matrix must be integral")
    return IntPoly(int(c) for c in out)


def _poly_apply(p: IntPoly, A: Matrix, v: list[int]) -> list[int]:
    w = [0] * len(v)
    for c in reversed(p.coeffs):
        w = matvec(A, w)
        if c:
            w = [x + c * y for x, y in zip(w, v)]
    return w


def vector_minpoly(A: Matrix, v: Sequence[int]) -> IntPoly:
    """Monic generator of the annihilator ideal of v under A (Krylov elimination)."""
    n = len(A)
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    w = [Fraction(x) for x in v]
    for k in range(n + 1):
        vec = list(w)
        comb = [Fraction(0)] * k + [Fraction(1)]
        for piv, bvec, bcomb in basis:
            if vec[piv] != 0:
                f = vec[piv] / bvec[piv]
                vec = [x - f * y for x, y in zip(vec, bvec)]
                comb = [(comb[i] if i < len(comb) else 0) - f * (bcomb[i] if i < len(bcomb) else 0)
                        for i in range(max(len(comb), len(bcomb)))]
        piv = next((i for i, x in enumerate(vec) if x != 0), None)
        if piv is None:
            if any(c.denominator != 1 for c in comb):
                # monic rational divisor of an integral monic charpoly is integral
                raise ArithmeticError("non-integral minimal polynomial")
            return IntPoly(int(c) for c in comb)
        basis.append((piv, vec, comb))
        w = matvec(A, w)
    raise ArithmeticError("Krylov sequence did not terminate")  # unreachable for square A


def minpoly(A: Matrix) -> IntPoly:
    """Minimal polynomial as the lcm of the vector minimal polynomials of the unit vectors."""
    n = len(A)
    L = IntPoly((1,))
    for i in range(n):
        e = [int(i == j) for j in range(n)]
        if L.degree > 0 and not any(_poly_apply(L, A, e)):
            continue
        L = poly_lcm(L, vector_minpoly(A, e))
    return L
