"""Coxeter transformations, their polynomials, and the homological form.

Column convention throughout: with ``C`` the Cartan matrix whose column i is
the class of the i-th indecomposable projective, the Coxeter matrix is

    phi = -C^T C^{-1},

so ``phi @ C[:, i] = -C[i, :]`` (projectives go to minus injectives).  The
row-vector form ``-C^{-T} C`` is its transpose; both have the same
characteristic and minimal polynomials.  The matching Euler form is
``<u, v> = u^T C^{-T} v``, for which ``<x, phi y> = -<y, x>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .algebras import CartanAlgebra, ConstructionError, GroupAction, check_automorphisms
from .polyengine import (
    ONE,
    CycFactorization,
    IntPoly,
    T,
    cyclotomic_factorize,
    factorint,
    is_perfect_square,
    is_squarefree,
    lcm,
    poly_prod,
    totient,
    v_poly,
)


class CoxeterMatrix:
    """Exact Coxeter matrix with lazily cached characteristic and minimal polynomials."""

    def __init__(self, phi: Sequence[Sequence[int]], algebra: CartanAlgebra | None = None):
        self.phi = tuple(tuple(int(x) for x in row) for row in phi)
        self.algebra = algebra

    @property
    def n(self) -> int:
        return len(self.phi)

    def matrix(self) -> list[list[int]]:
        return [list(row) for row in self.phi]

    @cached_property
    def charpoly(self) -> IntPoly:
        return linalg.charpoly(self.phi)

    @cached_property
    def minpoly(self) -> IntPoly:
        return linalg.minpoly(self.matrix())

    @cached_property
    def factorization(self) -> CycFactorization:
        return cyclotomic_factorize(self.charpoly)

    def frobenius_squared(self) -> int:
        return sum(x * x for row in self.phi for x in row)

    def __repr__(self) -> str:
        return f"CoxeterMatrix(n={self.n})"


def coxeter_matrix(a: CartanAlgebra) -> CoxeterMatrix:
    C = a.matrix()
    try:
        Cinv = linalg.integer_inverse(C)
    except linalg.SingularMatrixError as exc:
        raise ConstructionError(str(exc)) from exc
    phi = linalg.scale(linalg.matmul(linalg.transpose(C), Cinv), -1)
    return CoxeterMatrix(phi, a)


def coxeter_polynomial(a: CartanAlgebra) -> IntPoly:
    return coxeter_matrix(a).charpoly


def char_poly(m: CoxeterMatrix) -> IntPoly:
    return m.charpoly


def minimal_poly(m: CoxeterMatrix) -> IntPoly:
    return m.minpoly


def is_cyclotomic_type(m: CoxeterMatrix) -> tuple[bool, CycFactorization]:
    fac = m.factorization
    return fac.is_cyclotomic, fac


@dataclass(frozen=True)
class PeriodicityReport:
    is_cyclotomic: bool
    is_diagonalizable: bool
    period: int | float  # math.inf when not periodic
    totient_lcm: int | None = None

    @property
    def is_periodic(self) -> bool:
        return self.period != math.inf

    def to_json(self) -> dict:
        return {
            "cyclotomic": self.is_cyclotomic,
            "diagonalizable": self.is_diagonalizable,
            "period": "infinity" if not self.is_periodic else int(self.period),
        }


def matrix_order(phi: Sequence[Sequence[int]], candidate: int) -> int:
    """Exact multiplicative order of phi, given a multiple ``candidate`` of it."""
    M = [list(r) for r in phi]
    if not linalg.is_identity(linalg.mat_pow(M, candidate)):
        raise ArithmeticError(f"phi^{candidate} is not the identity")
    order = candidate
    for p in factorint(candidate) if candidate > 1 else {}:
        while order % p == 0 and linalg.is_identity(linalg.mat_pow(M, order // p)):
            order //= p
    return order


def periodicity(m: CoxeterMatrix) -> PeriodicityReport:
    cyc, fac = is_cyclotomic_type(m)
    diag = is_squarefree(m.minpoly)
    if not (cyc and diag):
        return PeriodicityReport(cyc, diag, math.inf)
    bound = lcm(fac.factors)
    order = matrix_order(m.phi, bound)
    if order != bound:
        # a diagonalizable matrix with these eigenvalues has order exactly lcm(M)
        raise ArithmeticError(f"certified order {order} differs from lcm {bound}")
    return PeriodicityReport(cyc, diag, order, lcm(totient(k) for k in fac.factors))


def chi_minus_one_square(m: CoxeterMatrix) -> bool:
    return is_perfect_square(m.charpoly(-1))


# --- bilinear and quadratic forms


def _inverse_cartan(a: CartanAlgebra) -> list[list[int]]:
    return linalg.integer_inverse(a.matrix())


def euler_form(a: CartanAlgebra, u: Sequence[int], v: Sequence[int]) -> Fraction:
    """``u^T C^{-T} v`` (so that ``<[P_i], x> = x_i``)."""
    if len(u) != a.n or len(v) != a.n:
        raise ValueError(f"vectors must have length {a.n}")
    Cinv = _inverse_cartan(a)
    # u^T C^{-T} v = v^T C^{-1} u
    w = linalg.matvec(Cinv, u)
    return Fraction(sum(x * y for x, y in zip(v, w)))


def symmetrized_form(a: CartanAlgebra) -> list[list[int]]:
    Cinv = _inverse_cartan(a)
    return linalg.add(Cinv, linalg.transpose(Cinv))


@dataclass(frozen=True)
class HomFormReport:
    classification: str  # "positive-definite" | "non-negative" | "indefinite"
    radical_rank: int
    n: int

    @property
    def is_non_negative(self) -> bool:
        return self.classification in ("positive-definite", "non-negative")

    def to_json(self) -> dict:
        tag = {"positive-definite": "positive", "non-negative": "nonnegative", "indefinite": "indefinite"}
        return {"hform": tag[self.classification], "radical_rank": self.radical_rank}


def classify_symmetric(S: Sequence[Sequence]) -> tuple[str, int]:
    """Exact symmetric Gaussian reduction; returns (classification, kernel dimension).

    Pivots are taken on nonzero diagonal entries.  A negative pivot, or a zero
    diagonal entry with a nonzero row, certifies indefiniteness.
    """
    n = len(S)
    M = [[Fraction(x) for x in row] for row in S]
    active = list(range(n))
    rank = 0
    while active:
        piv = next((i for i in active if M[i][i] != 0), None)
        if piv is None:
            if any(M[i][j] != 0 for i in active for j in active):
                return "indefinite", n - linalg.rank(S)
            break
        d = M[piv][piv]
        if d < 0:
            return "indefinite", n - linalg.rank(S)
        active.remove(piv)
        rank += 1
        for i in active:
            f = M[i][piv] / d
            if f:
                for j in active:
                    M[i][j] -= f * M[piv][j]
    kernel = n - rank
    return ("positive-definite" if kernel == 0 else "non-negative"), kernel


def homological_form(a: CartanAlgebra) -> HomFormReport:
    cls, kernel = classify_symmetric(symmetrized_form(a))
    return HomFormReport(cls, kernel, a.n)


# --- symmetry factor


def burnside_orbit_count(g: GroupAction, n: int) -> Fraction:
    elems = g.elements(n)
    fixed = sum(sum(1 for i in range(n) if h[i] == i) for h in elems)
    return Fraction(fixed, len(elems))


def symmetry_factor(a: CartanAlgebra, g: GroupAction) -> tuple[IntPoly, IntPoly]:
    """Characteristic polynomial of phi on the G-invariant vectors, and its cofactor."""
    check_automorphisms(a, g)
    m = coxeter_matrix(a)
    orbits = g.orbits(a.n)
    R = [[0] * len(orbits) for _ in orbits]
    for s, orb in enumerate(orbits):
        ind = [0] * a.n
        for i in orb:
            ind[i] = 1
        image = linalg.matvec(m.phi, ind)
        for t, orb_t in enumerate(orbits):
            vals = {image[j] for j in orb_t}
            if len(vals) != 1:
                raise ConstructionError("invariant subspace is not preserved by phi")
            R[t][s] = vals.pop()
    restricted = linalg.charpoly(R)
    return restricted, m.charpoly.exact_div(restricted)


# --- stars and weights


def star_poly(weights: Sequence[int]) -> IntPoly:
    """Closed formula prod v_{p_i} * ((T+1) - T * sum v_{p_i-1}/v_{p_i}), denominators cleared."""
    ws = [int(p) for p in weights]
    if any(p < 2 for p in ws):
        raise ValueError("star weights must be at least 2")
    vs = [v_poly(p) for p in ws]
    out = (T + 1) * poly_prod(vs)
    for i, p in enumerate(ws):
        others = poly_prod(v for j, v in enumerate(vs) if j != i)
        out = out - T * v_poly(p - 1) * others
    return out


def euler_value(weights: Sequence[int]) -> Fraction:
    """prod p_i * (2 - sum (1 - 1/p_i)), the value of the star polynomial at 1."""
    ws = [int(p) for p in weights]
    return math.prod(ws) * (2 - sum(1 - Fraction(1, p) for p in ws))


def weight_classify(weights: Sequence[int]) -> str:
    if any(int(p) < 2 for p in weights):
        raise ValueError("weights must be at least 2")
    v = euler_value(weights)
    if v > 0:
        return "Dynkin"
    if v == 0:
        return "extended-Dynkin"
    return "wild"


def coxeter_report(a: CartanAlgebra) -> dict:
    """Everything the exact pipeline knows about ``a``, JSON-ready."""
    m = coxeter_matrix(a)
    per = periodicity(m)
    hf = homological_form(a)
    fac = m.factorization
    out = {
        "n": a.n,
        "charpoly": m.charpoly.to_json(),
        "factors": {str(k): e for k, e in fac.factors.items()},
        "residual": fac.residual.to_json(),
    }
    out.update(per.to_json())
    out.update(hf.to_json())
    return out


__all__ = [
    "CoxeterMatrix",
    "HomFormReport",
    "PeriodicityReport",
    "burnside_orbit_count",
    "char_poly",
    "chi_minus_one_square",
    "classify_symmetric",
    "coxeter_matrix",
    "coxeter_polynomial",
    "coxeter_report",
    "euler_form",
    "euler_value",
    "homological_form",
    "is_cyclotomic_type",
    "matrix_order",
    "minimal_poly",
    "periodicity",
    "star_poly",
    "symmetrized_form",
    "symmetry_factor",
    "weight_classify",
    "ONE",
]
