"""Numeric spectra of Coxeter polynomials: roots, radius, Mahler measure, energy.

Roots are found per squarefree factor (exact Yun split first), so a repeated
root of the input becomes a simple root of some factor and stays accurate.
Cyclotomic-type inputs never rely on floating point for their measures: the
exact factorization certifies rho = M = 1 and e = n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .coxeter import CoxeterMatrix
from .polyengine import IntPoly, PolyDomainError, squarefree_decomposition

DEFAULT_TOL = 1e-10
ASSERT_TOL = 1e-8


class RootFindingError(ArithmeticError):
    def __init__(self, msg: str, best: list[complex] | None = None):
        super().__init__(msg)
        self.best = best or []


def backward_error(p: IntPoly, z: complex) -> float:
    """|p(z)| / sum |c_i| |z|^i, the relative residual of a computed root."""
    val, scale = 0j, 0.0
    az = abs(z)
    for c in reversed(p.coeffs):
        val = val * z + c
        scale = scale * az + abs(c)
    return abs(val) / scale if scale else 0.0


def _newton(p: IntPoly, z: complex, steps: int = 3) -> complex:
    dp = p.derivative()
    for _ in range(steps):
        d = complex(dp(z)) if abs(z) < 1e100 else 0
        if d == 0:
            break
        step = complex(p(z)) / d
        z = z - step
        if abs(step) <= 1e-17 * max(1.0, abs(z)):
            break
    return z


def _roots_simple(f: IntPoly, tol: float) -> list[complex]:
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [complex(-f.coeffs[0] / f.coeffs[1])]
    coeffs = [float(c) for c in reversed(f.coeffs)]
    zs = [complex(z) for z in np.roots(coeffs)]
    try:
        zs = [_newton(f, z) for z in zs]
    except OverflowError:
        pass
    if len(zs) == f.degree and all(backward_error(f, z) < tol for z in zs):
        return zs
    # fallback: multiprecision Durand-Kerner
    best = zs
    for dps in (30, 60, 120):
        with mpmath.workdps(dps):
            try:
                mz = mpmath.polyroots([int(c) for c in reversed(f.coeffs)], maxsteps=200 + 20 * f.degree,
                                      extraprec=4 * dps)
            except mpmath.libmp.libhyper.NoConvergence:
                continue
        best = [complex(z) for z in mz]
        if all(backward_error(f, z) < tol for z in best):
            return best
    raise RootFindingError(f"roots of degree-{f.degree} factor did not converge to {tol}", best)


def numeric_roots(p: IntPoly, tol: float = DEFAULT_TOL) -> list[complex]:
    """All deg(p) complex roots, with multiplicity."""
    if p.degree < 0 or not any(p.coeffs):
        raise PolyDomainError("zero polynomial has no finite root set")
    if tol <= 0:
        raise ValueError("tol must be positive")
    out: list[complex] = []
    for f, mult in squarefree_decomposition(p):
        out.extend(_roots_simple(f, tol) * mult)
    if len(out) != p.degree:
        raise RootFindingError("root count does not match degree", out)
    return out


def mahler_measure(p: IntPoly, roots: list[complex] | None = None) -> float:
    zs = numeric_roots(p) if roots is None else roots
    return abs(p.lead) * math.prod(max(1.0, abs(z)) for z in zs)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class SpectralReport:
    n: int
    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    spectral_radius: float
    mahler: float
    energy: float
    frobenius: float          # sqrt of the exact integer sum of squared entries of phi
    eigen_norm: float         # sqrt(sum |lambda|^2); equals frobenius iff phi is normal
    tolerance: float
    certified: bool = False
    frobenius_squared: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "spectral_radius": _fmt(self.spectral_radius),
            "mahler": _fmt(self.mahler),
            "energy": _fmt(self.energy),
            "frobenius": _fmt(self.frobenius),
            "frobenius_squared": str(self.frobenius_squared),
            "eigen_norm": _fmt(self.eigen_norm),
            "roots": [[_fmt(z.real), _fmt(z.imag)] for z in self.roots],
            "tolerance": self.tolerance,
            "certified": self.certified,
        }


def measures(m: CoxeterMatrix, tol: float = DEFAULT_TOL) -> SpectralReport:
    p = m.charpoly
    zs = numeric_roots(p, tol)
    res = tuple(backward_error(p, z) for z in zs)
    fro2 = m.frobenius_squared()
    fro = math.sqrt(fro2)
    if m.factorization.is_cyclotomic:
        n = m.n
        return SpectralReport(n, tuple(zs), res, 1.0, 1.0, float(n), fro, math.sqrt(n), tol, True, fro2)
    mods = [abs(z) for z in zs]
    return SpectralReport(
        m.n, tuple(zs), res,
        spectral_radius=max(mods, default=0.0),
        mahler=mahler_measure(p, zs),
        energy=sum(mods),
        frobenius=fro,
        eigen_norm=math.sqrt(sum(x * x for x in mods)),
        tolerance=tol,
        certified=False,
        frobenius_squared=fro2,
    )


@dataclass
class ChainCheck:
    ok: bool
    failures: list[str]
    links: dict[str, tuple[float, float]]
    equalities: dict[str, bool]


def verify_inequality_chain(report: SpectralReport, cyclotomic: bool, norm: str = "frobenius",
                            tol: float = ASSERT_TOL) -> ChainCheck:
    """Check n <= e <= sqrt(n)*N <= n*rho, and that equality in a link happens iff cyclotomic.

    ``norm`` picks N: "frobenius" uses the entrywise norm of phi, "eigen" uses
    sqrt(sum |lambda|^2), which is what the Cauchy-Schwarz step actually bounds.
    """
    if norm == "frobenius":
        N = report.frobenius
    elif norm == "eigen":
        N = report.eigen_norm
    else:
        raise ValueError(f"unknown norm {norm!r}")
    n = report.n
    a, b, c, d = float(n), report.energy, math.sqrt(n) * N, n * report.spectral_radius
    links = {"n<=e": (a, b), "e<=sqrt(n)N": (b, c), "sqrt(n)N<=n*rho": (c, d)}
    failures = []
    eqs = {}
    for name, (lo, hi) in links.items():
        slack = tol * max(1.0, abs(hi))
        if lo > hi + slack:
            failures.append(f"{name} violated: {lo:.12g} > {hi:.12g}")
        eqs[name] = abs(hi - lo) <= slack
    if any(eqs.values()) != cyclotomic:
        failures.append(f"equality pattern {eqs} inconsistent with cyclotomic={cyclotomic}")
    if cyclotomic and not all(eqs.values()):
        failures.append(f"cyclotomic input but not every link is an equality: {eqs}")
    return ChainCheck(not failures, failures, links, eqs)


__all__ = [
    "ASSERT_TOL",
    "ChainCheck",
    "DEFAULT_TOL",
    "RootFindingError",
    "SpectralReport",
    "backward_error",
    "mahler_measure",
    "measures",
    "numeric_roots",
    "verify_inequality_chain",
]
