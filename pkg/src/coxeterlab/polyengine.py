"""Exact integer polynomials and cyclotomic machinery.

Polynomials are dense tuples of Python ints, constant term first.  Every
division here is exact-or-fail: a nonzero remainder raises
:class:`InexactDivisionError` instead of being dropped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, isqrt
from typing import Iterable, Mapping


class PolyDomainError(ValueError):
    """An argument lies outside the domain of a polynomial operation."""


class InexactDivisionError(ArithmeticError):
    """A polynomial division left a nonzero remainder."""


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial over the integers; ``coeffs[i]`` is the coefficient of T^i.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    # construction helpers
    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def T(cls) -> "IntPoly":
        return cls((0, 1))

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # arithmetic
    def __neg__(self) -> "IntPoly":
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other) -> "IntPoly":
        other = _as_poly(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> "IntPoly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "IntPoly":
        other = _as_poly(other)
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        if k < 0:
            raise PolyDomainError("negative exponent")
        out = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Integer long division; requires each quotient step to be integral."""
        other = _as_poly(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.lead
        if len(rem) - 1 < dq:
            return IntPoly(), self
        quot = [0] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            q, r = divmod(c, lc)
            if r:
                raise InexactDivisionError(f"leading coefficient {lc} does not divide {c}")
            quot[k - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= q * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, other: "IntPoly") -> "IntPoly":
        q, r = self.divmod(other)
        if r:
            raise InexactDivisionError(f"{other} does not divide {self}")
        return q

    def __floordiv__(self, other) -> "IntPoly":
        return self.exact_div(_as_poly(other))

    def divides(self, other: "IntPoly") -> bool:
        """True iff ``self`` divides ``other`` over the integers."""
        try:
            _, r = other.divmod(self)
        except InexactDivisionError:
            return False
        return not r

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def reversed(self) -> "IntPoly":
        """T^deg * p(1/T)."""
        return IntPoly(reversed(self.coeffs))

    def negate_variable(self) -> "IntPoly":
        """p(-T)."""
        return IntPoly(a if i % 2 == 0 else -a for i, a in enumerate(self.coeffs))

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        """Divide out the content and make the leading coefficient positive."""
        c = self.content()
        if c == 0:
            return self
        if self.lead < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                var = "T" if i == 1 else f"T^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    # serialization
    def to_json(self) -> list[str]:
        return [str(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "IntPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(a) for a in data)


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot treat {type(x).__name__} as IntPoly")


ONE = IntPoly((1,))
T = IntPoly((0, 1))


def poly_prod(polys: Iterable[IntPoly]) -> IntPoly:
    return reduce(lambda a, b: a * b, polys, ONE)


# --- gcd and squarefree decomposition over Q, returned as primitive integer polys


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] -= c * bj
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _to_primitive(fr: list[Fraction]) -> IntPoly:
    if not fr:
        return IntPoly()
    den = reduce(lambda x, y: x * y // gcd(x, y), (c.denominator for c in fr), 1)
    return IntPoly(int(c * den) for c in fr).primitive()


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor over Q, normalized to a primitive integer polynomial."""
    if not a:
        return b.primitive()
    if not b:
        return a.primitive()
    x = [Fraction(c) for c in a.primitive().coeffs]
    y = [Fraction(c) for c in b.primitive().coeffs]
    while y:
        _, r = _frac_divmod(x, y)
        # keep coefficient growth in check
        x, y = y, [Fraction(c) for c in _to_primitive(r).coeffs]
    return _to_primitive(x)


def poly_lcm(a: IntPoly, b: IntPoly) -> IntPoly:
    g = poly_gcd(a, b)
    return (a.primitive() * b.primitive()).exact_div(g).primitive()


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``p = c * prod f_i^i`` with pairwise coprime squarefree f_i.

    Returns ``[(f_i, i), ...]`` for the nonconstant f_i; the unit/content c is dropped.
    """
    if not p:
        raise PolyDomainError("zero polynomial has no squarefree decomposition")
    if p.degree < 1:
        return []
    out = []
    f = [Fraction(c) for c in p.coeffs]
    df = _frac_derivative(f)
    g = _frac_gcd(f, df)
    b = _frac_exact(f, g)
    c = _frac_exact(df, g)
    d = _frac_sub(c, _frac_derivative(b))
    i = 1
    while len(b) > 1:
        a = _frac_gcd(b, d)
        if len(a) > 1:
            out.append((_to_primitive(a), i))
        b = _frac_exact(b, a)
        c = _frac_exact(d, a)
        d = _frac_sub(c, _frac_derivative(b))
        i += 1
    return out


def _frac_derivative(a: list[Fraction]) -> list[Fraction]:
    return [i * x for i, x in enumerate(a)][1:]


def _frac_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _frac_monic(a: list[Fraction]) -> list[Fraction]:
    return [x / a[-1] for x in a] if a else a


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, _frac_monic(r)
    return _frac_monic(a)


def _frac_exact(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    q, r = _frac_divmod(a, b)
    if r:
        raise InexactDivisionError("inexact rational division")
    return q


def squarefree_part(p: IntPoly) -> IntPoly:
    """Product of the distinct irreducible factors of p (primitive)."""
    if p.degree < 1:
        return ONE
    return p.primitive().exact_div(poly_gcd(p, p.derivative())).primitive()


def is_squarefree(p: IntPoly) -> bool:
    return poly_gcd(p, p.derivative()).degree < 1


# --- number theory


def _check_positive(m: int, what: str) -> None:
    if not isinstance(m, int) or m < 1:
        raise PolyDomainError(f"{what} requires a positive integer, got {m!r}")


def factorint(m: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for the sizes used here)."""
    _check_positive(m, "factorint")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def totient(m: int) -> int:
    _check_positive(m, "totient")
    out = m
    for p in factorint(m):
        out = out // p * (p - 1)
    return out


def moebius(m: int) -> int:
    _check_positive(m, "moebius")
    f = factorint(m)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(m: int) -> list[int]:
    _check_positive(m, "divisors")
    return [d for d in range(1, m + 1) if m % d == 0]


def prime_power(m: int) -> tuple[int, int] | None:
    """(p, s) if m = p^s with s >= 1, else None."""
    if m < 2:
        return None
    f = factorint(m)
    if len(f) == 1:
        return next(iter(f.items()))
    return None


def lcm(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)


def is_perfect_square(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x


# --- v-polynomials and cyclotomic polynomials


def v_poly(n: int) -> IntPoly:
    """1 + T + ... + T^(n-1)."""
    _check_positive(n, "v_poly")
    return IntPoly((1,) * n)


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial via the Möbius product of v-polynomials.

    Numerator and denominator are accumulated separately and divided once,
    so the only division is an exact one.
    """
    _check_positive(m, "cyclotomic")
    if m == 1:
        return IntPoly((-1, 1))
    num, den = ONE, ONE
    for d in divisors(m):
        if d == m:
            continue
        mu = moebius(d)
        if mu == 1:
            num = num * v_poly(m // d)
        elif mu == -1:
            den = den * v_poly(m // d)
    return num.exact_div(den)


@dataclass(frozen=True)
class CycFactorization:
    """``prod Phi_m^factors[m] * residual``; residual carries no cyclotomic factor."""

    factors: Mapping[int, int] = field(default_factory=dict)
    residual: IntPoly = ONE

    def __post_init__(self):
        cleaned = {int(m): int(e) for m, e in sorted(dict(self.factors).items()) if e}
        for m, e in cleaned.items():
            if m < 1 or e < 0:
                raise PolyDomainError(f"invalid factor Phi_{m}^{e}")
        object.__setattr__(self, "factors", cleaned)

    @property
    def is_cyclotomic(self) -> bool:
        return self.residual == ONE

    def expand(self) -> IntPoly:
        return poly_prod(cyclotomic(m) ** e for m, e in self.factors.items()) * self.residual

    @property
    def degree(self) -> int:
        return sum(e * totient(m) for m, e in self.factors.items()) + self.residual.degree

    def __str__(self) -> str:
        parts = [f"Phi_{m}" + (f"^{e}" if e > 1 else "") for m, e in self.factors.items()]
        if self.residual != ONE:
            parts.append(f"({self.residual})")
        return "*".join(parts) or "1"

    def to_json(self) -> dict:
        return {
            "factors": {str(m): e for m, e in self.factors.items()},
            "residual": self.residual.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "CycFactorization":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            {int(m): int(e) for m, e in data["factors"].items()},
            IntPoly.from_json(data.get("residual", ["1"])),
        )


def cyclotomic_candidates(degree: int) -> list[int]:
    """All m with phi(m) <= degree, using phi(m) >= sqrt(m) for m not in {2, 6}."""
    bound = max(degree, 1) ** 2
    cands = {m for m in range(1, bound + 1)} | {2, 6}
    return sorted(m for m in cands if totient(m) <= degree)


def cyclotomic_factorize(p: IntPoly) -> CycFactorization:
    if not p:
        raise PolyDomainError("cannot factorize the zero polynomial")
    factors: dict[int, int] = {}
    rest = p
    for m in cyclotomic_candidates(p.degree):
        phi_m = cyclotomic(m)
        if phi_m.degree > rest.degree:
            continue
        while rest.degree >= phi_m.degree:
            q, r = rest.divmod(phi_m)
            if r:
                break
            factors[m] = factors.get(m, 0) + 1
            rest = q
    return CycFactorization(factors, rest)


def factorization_from_string(text: str) -> CycFactorization:
    """Parse ``"Phi_2^2*Phi_22"``-style strings (the format of ``str(CycFactorization)``)."""
    factors: dict[int, int] = {}
    text = text.strip()
    if text in ("", "1"):
        return CycFactorization()
    for part in text.split("*"):
        part = part.strip()
        if not part.startswith("Phi_"):
            raise PolyDomainError(f"cannot parse factor {part!r}")
        body = part[4:]
        m, _, e = body.partition("^")
        factors[int(m)] = factors.get(int(m), 0) + (int(e) if e else 1)
    return CycFactorization(factors)


# --- tensor product of polynomials


def companion(p: IntPoly) -> list[list[int]]:
    """Companion matrix whose characteristic polynomial is the monic p."""
    if not p.is_monic():
        raise PolyDomainError("companion matrix needs a monic polynomial")
    n = p.degree
    M = [[0] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = 1
    for i in range(n):
        M[i][n - 1] = -p[i]
    return M


def tensor_product(f: IntPoly, g: IntPoly) -> IntPoly:
    """Monic polynomial whose roots are all products a_i * b_j."""
    from .linalg import charpoly, kron

    if not f or not g or not f.is_monic() or not g.is_monic():
        raise PolyDomainError("tensor_product needs monic nonzero polynomials")
    if f.degree == 0 or g.degree == 0:
        return ONE
    return charpoly(kron(companion(f), companion(g)))


# --- special values and coefficient conditions


def cyclotomic_value_at_one(m: int) -> int:
    if m == 1:
        return 0
    pp = prime_power(m)
    return pp[0] if pp else 1


def cyclotomic_value_at_minus_one(m: int) -> int:
    if m == 1:
        return -2
    if m == 2:
        return 0
    if m % 2 == 0:
        pp = prime_power(m // 2)
        if pp:
            return pp[0]
    return 1


def special_value_formula(fac: CycFactorization, point: int) -> int:
    """chi(+1) or chi(-1) from the factor multiset alone."""
    if not fac.is_cyclotomic:
        raise PolyDomainError("special value formula needs a pure cyclotomic factorization")
    if point == 1:
        value = cyclotomic_value_at_one
    elif point == -1:
        value = cyclotomic_value_at_minus_one
    else:
        raise PolyDomainError("point must be +1 or -1")
    out = 1
    for m, e in fac.factors.items():
        out *= value(m) ** e
    return out


def minus_one_exponents(fac: CycFactorization) -> dict[int, int]:
    """f'(p): total exponent of the factors Phi_{2 p^s}, per odd or even prime p."""
    out: dict[int, int] = {}
    for m, e in fac.factors.items():
        if m % 2 == 0 and m > 2:
            pp = prime_power(m // 2)
            if pp:
                out[pp[0]] = out.get(pp[0], 0) + e
    return out


def is_self_reciprocal(p: IntPoly) -> bool:
    if not p:
        raise PolyDomainError("zero polynomial")
    return p.coeffs == tuple(reversed(p.coeffs))


@dataclass(frozen=True)
class CoefficientConditions:
    degree_sum: bool
    even_e1: bool
    moebius_sum: bool

    @property
    def all_pass(self) -> bool:
        return self.degree_sum and self.even_e1 and self.moebius_sum


def coefficient_conditions(fac: CycFactorization, n: int, a1: int) -> CoefficientConditions:
    if not fac.is_cyclotomic:
        raise PolyDomainError("coefficient conditions need a pure cyclotomic factorization")
    f = fac.factors
    return CoefficientConditions(
        degree_sum=sum(e * totient(m) for m, e in f.items()) == n,
        even_e1=f.get(1, 0) % 2 == 0,
        moebius_sum=sum(e * moebius(m) for m, e in f.items()) == -a1,
    )
