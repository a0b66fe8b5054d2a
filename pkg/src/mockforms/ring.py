"""Exact coefficient arithmetic: rational exponents and cyclotomic numbers.

Exponents of q and x are plain ``fractions.Fraction`` values (exact, totally
ordered, arbitrary precision); ``ExpRational`` is an alias.  Coefficients live
in cyclotomic fields Q(zeta_N), represented canonically as vectors of
rationals modulo the N-th cyclotomic polynomial, so equality is exact vector
equality.  All values are immutable.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import AmbientOrderTooSmall, OrderMismatch

ExpRational = Fraction


def frac(value) -> Fraction:
    """Parse a Fraction from an int, Fraction, or 'a/b' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value))


class SignVariant:
    """Sign selector for theta/Phi families: plain, alternating, or absent."""

    PLUS = "plus"
    MINUS = "minus"
    NONE = "none"


def sigma(m: int) -> str:
    """Sign variant attached to an integer level: minus for even m, plus for odd."""
    return SignVariant.MINUS if m % 2 == 0 else SignVariant.PLUS


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Exact division of integer polynomials, den monic.  Dense, low degree.
    num = list(num)
    d = len(den) - 1
    quot = [0] * max(0, len(num) - d)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            quot[i - d] = c
            for j, dc in enumerate(den):
                num[i - d + j] -= c * dc
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _context(n: int) -> tuple[int, tuple[tuple[Fraction, ...], ...]]:
    """Degree phi(n) and reduction rows expressing zeta^k, 0 <= k < 2n, in the basis."""
    poly = cyclotomic_polynomial(n)
    deg = len(poly) - 1
    rows: list[tuple[Fraction, ...]] = []
    for k in range(deg):
        rows.append(tuple(Fraction(1) if i == k else Fraction(0) for i in range(deg)))
    # zeta^deg = -(poly[0] + ... + poly[deg-1] zeta^{deg-1}); iterate upward.
    for k in range(deg, 2 * n):
        prev = rows[k - 1]
        shifted = (Fraction(0),) + prev[:-1]
        top = prev[-1]
        if top:
            shifted = tuple(
                shifted[i] - top * poly[i] for i in range(deg)
            )
        rows.append(shifted)
    return deg, tuple(rows)


class CycNumber:
    """Element of Q(zeta_N) in canonical reduced form.

    ``coeffs`` has length phi(N) and represents sum(coeffs[k] * zeta_N^k).
    Two elements of equal order are equal iff their coefficient vectors are.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: tuple[Fraction, ...]):
        deg, _ = _context(order)
        if len(coeffs) != deg:
            raise ValueError(f"expected {deg} coefficients for order {order}")
        self.order = order
        self.coeffs = coeffs

    @staticmethod
    def from_rational(value, order: int = 1) -> "CycNumber":
        deg, _ = _context(order)
        vec = [Fraction(0)] * deg
        vec[0] = frac(value)
        return CycNumber(order, tuple(vec))

    @staticmethod
    def zeta_power(order: int, k: int) -> "CycNumber":
        """Canonical representative of zeta_order^k."""
        _, rows = _context(order)
        return CycNumber(order, rows[k % order])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational value")
        return self.coeffs[0]

    def _check(self, other: "CycNumber") -> None:
        if self.order != other.order:
            raise OrderMismatch(f"orders {self.order} and {other.order}")

    def __add__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        return CycNumber(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CycNumber") -> "CycNumber":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        deg, rows = _context(self.order)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = list(conv[:deg]) + [Fraction(0)] * (deg - len(conv[:deg]))
        for k in range(deg, len(conv)):
            ck = conv[k]
            if ck:
                row = rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += ck * row[i]
        return CycNumber(self.order, tuple(out))

    def scale(self, r) -> "CycNumber":
        r = frac(r)
        return CycNumber(self.order, tuple(r * c for c in self.coeffs))

    def inverse(self) -> "CycNumber":
        """Field inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return CycNumber.from_rational(1 / self.coeffs[0], self.order)
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = list(self.coeffs)
        while a and a[-1] == 0:
            a.pop()
        # Extended gcd over Q[t]: s*a + t*phi = gcd (a nonzero mod irreducible phi
        # implies gcd is a nonzero constant).
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        t0, t1 = [Fraction(1)], [Fraction(0)]
        while r1:
            q, r = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _frac_poly_sub(s0, _frac_poly_mul(q, s1))
            t0, t1 = t1, _frac_poly_sub(t0, _frac_poly_mul(q, t1))
        assert len(r0) == 1, "cyclotomic polynomial must be irreducible"
        c = r0[0]
        deg, _ = _context(self.order)
        inv = [x / c for x in s0] + [Fraction(0)] * deg
        result = CycNumber(self.order, tuple(inv[:deg]))
        check = result * self
        assert check.is_rational() and check.rational_value() == 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNumber):
            return NotImplemented
        if self.order == other.order:
            return self.coeffs == other.coeffs
        n = lcm(self.order, other.order)
        return lift_order(self, n).coeffs == lift_order(other, n).coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        return f"Cyc(N={self.order}, {list(map(str, self.coeffs))})"

    def embed(self) -> complex:
        """Complex value under zeta_N -> exp(2*pi*i/N)."""
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * k / self.order)
             for k, c in enumerate(self.coeffs) if c),
            complex(0),
        )


def _frac_poly_divmod(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(0, len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        if num[i]:
            c = num[i] / lead
            quot[i - dn] = c
            for j, dc in enumerate(den):
                num[i - dn + j] -= c * dc
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    while out and out[-1] == 0:
        out.pop()
    return out


def _frac_poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else Fraction(0)) - (b[i] if i < len(b) else Fraction(0))
           for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def root_of_unity(a: int, b: int, ambient: int) -> CycNumber:
    """exp(2*pi*i*a/b) as an element of Q(zeta_ambient); b must divide ambient."""
    if b <= 0:
        raise ValueError("denominator must be positive")
    if ambient % b != 0:
        raise AmbientOrderTooSmall(f"{b} does not divide ambient order {ambient}")
    return CycNumber.zeta_power(ambient, (a * (ambient // b)) % ambient)


def root_from_fraction(e: Fraction, ambient: int) -> CycNumber:
    """exp(2*pi*i*e) for rational e, in Q(zeta_ambient)."""
    return root_of_unity(e.numerator, e.denominator, ambient)


def cyc_add(c: CycNumber, d: CycNumber) -> CycNumber:
    return c + d


def cyc_mul(c: CycNumber, d: CycNumber) -> CycNumber:
    return c * d


def cyc_neg(c: CycNumber) -> CycNumber:
    return -c


def cyc_is_zero(c: CycNumber) -> bool:
    return c.is_zero()


def lift_order(c: CycNumber, new_order: int) -> CycNumber:
    """Embedding-equal element of Q(zeta_new_order); order(c) must divide it."""
    if new_order % c.order != 0:
        raise OrderMismatch(f"{c.order} does not divide {new_order}")
    if new_order == c.order:
        return c
    step = new_order // c.order
    deg, rows = _context(new_order)
    out = [Fraction(0)] * deg
    for k, coeff in enumerate(c.coeffs):
        if coeff:
            row = rows[(k * step) % new_order]
            for i in range(deg):
                if row[i]:
                    out[i] += coeff * row[i]
    return CycNumber(new_order, tuple(out))


def common_order(c: CycNumber, d: CycNumber) -> tuple[CycNumber, CycNumber]:
    """Lift both operands into the lcm field."""
    if c.order == d.order:
        return c, d
    n = lcm(c.order, d.order)
    return lift_order(c, n), lift_order(d, n)


ONE = CycNumber.from_rational(1)
ZERO = CycNumber.from_rational(0)
MINUS_ONE = CycNumber.from_rational(-1)
