"""Truncated formal series in fractional powers of q with Laurent-polynomial
coefficients in fractional powers of x.

A QXSeries stores terms on an integer exponent lattice: q-exponents are
integer multiples of 1/dq and x-exponents of 1/dx.  Coefficients are exact
CycNumbers.  The truncation order ``trunc`` means coefficients of q^e for
e >= trunc are unknown (not asserted zero).  Precision bookkeeping is
conservative:

    trunc(f + g) = min(trunc f, trunc g)
    trunc(f * g) = min(trunc f + val g, trunc g + val f)

where val is the least stored q-exponent (or trunc for the empty series).
Only pure-q expansions are supported: each q-coefficient is a finite Laurent
polynomial in x, so denominators must carry nonzero q-valuation
(see ``geom_expand``).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .errors import InsufficientPrecision, NotAUnit, PoleAtQZero
from .ring import CycNumber, common_order, frac

# XPoly: one q-coefficient, as a dict x-key -> CycNumber (keys on the x lattice).


class QXSeries:
    __slots__ = ("dq", "dx", "trunc_key", "terms")

    def __init__(self, dq: int, dx: int, trunc_key: int,
                 terms: dict[int, dict[int, CycNumber]]):
        self.dq = dq
        self.dx = dx
        self.trunc_key = trunc_key
        self.terms = terms

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero(trunc, dq: int = 1, dx: int = 1) -> "QXSeries":
        trunc = frac(trunc)
        dq = lcm(dq, trunc.denominator)
        return QXSeries(dq, dx, int(trunc * dq), {})

    @staticmethod
    def monomial(coeff: CycNumber, qexp, xexp, trunc) -> "QXSeries":
        qexp, xexp, trunc = frac(qexp), frac(xexp), frac(trunc)
        dq = lcm(qexp.denominator, trunc.denominator)
        dx = xexp.denominator
        out = QXSeries(dq, dx, int(trunc * dq), {})
        if qexp < trunc and not coeff.is_zero():
            out.terms[int(qexp * dq)] = {int(xexp * dx): coeff}
        return out

    @staticmethod
    def one(trunc) -> "QXSeries":
        from .ring import ONE
        return QXSeries.monomial(ONE, 0, 0, trunc)

    @staticmethod
    def from_terms(items, trunc) -> "QXSeries":
        """Build from (coeff, qexp, xexp) triples, dropping the unknown zone."""
        trunc = frac(trunc)
        dq = trunc.denominator
        dx = 1
        cached = []
        for coeff, qexp, xexp in items:
            qexp, xexp = frac(qexp), frac(xexp)
            if qexp >= trunc or coeff.is_zero():
                continue
            dq = lcm(dq, qexp.denominator)
            dx = lcm(dx, xexp.denominator)
            cached.append((coeff, qexp, xexp))
        out = QXSeries(dq, dx, int(trunc * dq), {})
        for coeff, qexp, xexp in cached:
            xp = out.terms.setdefault(int(qexp * dq), {})
            xk = int(xexp * dx)
            if xk in xp:
                a, b = common_order(xp[xk], coeff)
                s = a + b
                if s.is_zero():
                    del xp[xk]
                else:
                    xp[xk] = s
            else:
                xp[xk] = coeff
        out._drop_empty()
        return out

    def _drop_empty(self) -> None:
        for qk in [qk for qk, xp in self.terms.items() if not xp]:
            del self.terms[qk]

    # -- basic queries -------------------------------------------------------

    @property
    def trunc(self) -> Fraction:
        return Fraction(self.trunc_key, self.dq)

    def is_zero(self) -> bool:
        return not self.terms

    def val(self) -> Fraction:
        """Least stored q-exponent; trunc if no terms are stored."""
        if not self.terms:
            return self.trunc
        return Fraction(min(self.terms), self.dq)

    def coefficient(self, qexp, xexp) -> CycNumber:
        from .ring import ZERO
        qexp, xexp = frac(qexp), frac(xexp)
        if qexp >= self.trunc:
            raise InsufficientPrecision(f"q^{qexp} beyond truncation {self.trunc}")
        qk = qexp * self.dq
        xk = xexp * self.dx
        if qk.denominator != 1 or xk.denominator != 1:
            return ZERO
        return self.terms.get(int(qk), {}).get(int(xk), ZERO)

    def support(self):
        for qk in sorted(self.terms):
            xp = self.terms[qk]
            for xk in sorted(xp):
                yield Fraction(qk, self.dq), Fraction(xk, self.dx), xp[xk]

    # -- lattice handling ----------------------------------------------------

    def rescaled(self, dq: int, dx: int) -> "QXSeries":
        if dq == self.dq and dx == self.dx:
            return self
        if dq % self.dq or dx % self.dx:
            raise ValueError("lattice refinement must be a multiple")
        fq, fx = dq // self.dq, dx // self.dx
        terms = {
            qk * fq: {xk * fx: c for xk, c in xp.items()}
            for qk, xp in self.terms.items()
        }
        return QXSeries(dq, dx, self.trunc_key * fq, terms)

    @staticmethod
    def _aligned(f: "QXSeries", g: "QXSeries"):
        dq, dx = lcm(f.dq, g.dq), lcm(f.dx, g.dx)
        return f.rescaled(dq, dx), g.rescaled(dq, dx)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "QXSeries") -> "QXSeries":
        f, g = QXSeries._aligned(self, other)
        trunc_key = min(f.trunc_key, g.trunc_key)
        terms = {qk: dict(xp) for qk, xp in f.terms.items() if qk < trunc_key}
        for qk, xp in g.terms.items():
            if qk >= trunc_key:
                continue
            dst = terms.setdefault(qk, {})
            for xk, c in xp.items():
                if xk in dst:
                    a, b = common_order(dst[xk], c)
                    s = a + b
                    if s.is_zero():
                        del dst[xk]
                    else:
                        dst[xk] = s
                else:
                    dst[xk] = c
        out = QXSeries(f.dq, f.dx, trunc_key, terms)
        out._drop_empty()
        return out

    def __neg__(self) -> "QXSeries":
        return QXSeries(
            self.dq, self.dx, self.trunc_key,
            {qk: {xk: -c for xk, c in xp.items()} for qk, xp in self.terms.items()},
        )

    def __sub__(self, other: "QXSeries") -> "QXSeries":
        return self + (-other)

    def __mul__(self, other: "QXSeries") -> "QXSeries":
        f, g = QXSeries._aligned(self, other)
        fval = min(f.terms) if f.terms else f.trunc_key
        gval = min(g.terms) if g.terms else g.trunc_key
        trunc_key = min(f.trunc_key + gval, g.trunc_key + fval)
        terms: dict[int, dict[int, CycNumber]] = {}
        gkeys = sorted(g.terms)
        for qa in sorted(f.terms):
            xpa = f.terms[qa]
            for qb in gkeys:
                qk = qa + qb
                if qk >= trunc_key:
                    break
                xpb = g.terms[qb]
                dst = terms.setdefault(qk, {})
                for xa, ca in xpa.items():
                    for xb, cb in xpb.items():
                        a, b = common_order(ca, cb)
                        prod = a * b
                        xk = xa + xb
                        if xk in dst:
                            u, v = common_order(dst[xk], prod)
                            s = u + v
                            if s.is_zero():
                                del dst[xk]
                            else:
                                dst[xk] = s
                        else:
                            dst[xk] = prod
        out = QXSeries(f.dq, f.dx, trunc_key, terms)
        out._drop_empty()
        return out

    def scale(self, coeff: CycNumber) -> "QXSeries":
        if coeff.is_zero():
            return QXSeries(self.dq, self.dx, self.trunc_key, {})
        terms = {}
        for qk, xp in self.terms.items():
            dst = {}
            for xk, c in xp.items():
                a, b = common_order(c, coeff)
                p = a * b
                if not p.is_zero():
                    dst[xk] = p
            if dst:
                terms[qk] = dst
        return QXSeries(self.dq, self.dx, self.trunc_key, terms)

    def truncate(self, new_trunc) -> "QXSeries":
        """Forget coefficients at or above new_trunc (must not exceed trunc)."""
        new_trunc = frac(new_trunc)
        if new_trunc > self.trunc:
            raise InsufficientPrecision("cannot extend a truncated series")
        dq = lcm(self.dq, new_trunc.denominator)
        f = self.rescaled(dq, self.dx)
        key = int(new_trunc * dq)
        return QXSeries(dq, f.dx, key,
                        {qk: dict(xp) for qk, xp in f.terms.items() if qk < key})

    # -- named operations ----------------------------------------------------

    def mono_scale(self, coeff: CycNumber, qshift, xshift) -> "QXSeries":
        """Multiply by coeff * q^qshift * x^xshift; trunc shifts by qshift."""
        qshift, xshift = frac(qshift), frac(xshift)
        dq = lcm(self.dq, qshift.denominator)
        dx = lcm(self.dx, xshift.denominator)
        f = self.rescaled(dq, dx)
        dqk, dxk = int(qshift * dq), int(xshift * dx)
        shifted = QXSeries(
            dq, dx, f.trunc_key + dqk,
            {qk + dqk: {xk + dxk: c for xk, c in xp.items()}
             for qk, xp in f.terms.items()},
        )
        return shifted.scale(coeff) if not _is_one(coeff) else shifted


def _is_one(c: CycNumber) -> bool:
    return c.is_rational() and c.rational_value() == 1


def add(f: QXSeries, g: QXSeries) -> QXSeries:
    return f + g


def mul(f: QXSeries, g: QXSeries) -> QXSeries:
    return f * g


def mono_scale(f: QXSeries, coeff: CycNumber, qshift, xshift) -> QXSeries:
    return f.mono_scale(coeff, qshift, xshift)


def geom_expand(sign: int, coeff: CycNumber, xexp, qexp, trunc) -> QXSeries:
    """q-adically convergent expansion of 1 / (1 - sign * coeff * x^xexp * q^qexp).

    For qexp > 0 this is sum_{n>=0} (sign*coeff)^n x^(n*xexp) q^(n*qexp); for
    qexp < 0 the factor is first rewritten against its dominant term, giving
    -sum_{n>=1} (sign*coeff)^(-n) x^(-n*xexp) q^(-n*qexp).  qexp = 0 would need
    an infinite x-series at fixed q-power and is rejected.
    """
    xexp, qexp, trunc = frac(xexp), frac(qexp), frac(trunc)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if qexp == 0:
        raise PoleAtQZero("denominator 1 - c*x^a has zero q-valuation")
    base = coeff if sign == 1 else -coeff
    items = []
    if qexp > 0:
        from .ring import ONE
        power = ONE
        n = 0
        while n * qexp < trunc:
            items.append((power, n * qexp, n * xexp))
            a, b = common_order(power, base)
            power = a * b
            n += 1
    else:
        inv = base.inverse()
        power = inv
        n = 1
        while -n * qexp < trunc:
            items.append((-power, -n * qexp, -n * xexp))
            a, b = common_order(power, inv)
            power = a * b
            n += 1
    return QXSeries.from_terms(items, trunc)


def invert_unit(f: QXSeries, trunc) -> QXSeries:
    """Multiplicative inverse g with f * g = 1 + O(q^(trunc + val f)).

    Requires the least-q coefficient of f to be a single x-monomial (a unit of
    the pure-q ring).  g is returned with truncation order trunc, reduced if
    f itself does not carry enough precision to support it.
    """
    trunc = frac(trunc)
    if f.is_zero():
        raise ZeroDivisionError("cannot invert the zero series")
    lead_qk = min(f.terms)
    lead = f.terms[lead_qk]
    if len(lead) != 1:
        raise NotAUnit("leading q-coefficient has more than one x-term")
    [(lead_xk, lead_c)] = lead.items()
    lead_val = Fraction(lead_qk, f.dq)
    lead_inv = lead_c.inverse()
    # u := f / leading_monomial - 1 has positive q-valuation.
    u = f.mono_scale(lead_inv, -lead_val, -Fraction(lead_xk, f.dx))
    u = u - QXSeries.one(u.trunc)
    # h = 1/(1+u) order by order: h_e = -sum_{0<d<=e} u_d h_{e-d}, valid as
    # far as u is known.
    target = min(trunc + lead_val, u.trunc)
    dq = lcm(u.dq, target.denominator)
    u = u.rescaled(dq, u.dx)
    dx = u.dx
    tkey = int(target * dq)
    from .ring import ONE
    h: dict[int, dict[int, CycNumber]] = {0: {0: ONE}}
    ukeys = sorted(u.terms)
    known = {0}
    queue = [0]
    idx = 0
    while idx < len(queue):
        base_qk = queue[idx]
        idx += 1
        xpa = h[base_qk]
        if not xpa:
            continue
        for dkey in ukeys:
            qk = base_qk + dkey
            if qk >= tkey:
                break
            xpb = u.terms[dkey]
            dst = h.setdefault(qk, {})
            if qk not in known:
                known.add(qk)
                queue.append(qk)
            for xa, ca in xpa.items():
                for xb, cb in xpb.items():
                    a, b = common_order(ca, cb)
                    prod = a * b
                    xk = xa + xb
                    if xk in dst:
                        p, r = common_order(dst[xk], -prod)
                        s = p + r
                        if s.is_zero():
                            del dst[xk]
                        else:
                            dst[xk] = s
                    else:
                        dst[xk] = -prod
        queue.sort()
    hseries = QXSeries(dq, dx, tkey, {qk: xp for qk, xp in h.items() if xp})
    return hseries.mono_scale(lead_inv, -lead_val, -Fraction(lead_xk, f.dx))


class SeriesMismatch:
    """Witness of the first differing coefficient in a comparison."""

    __slots__ = ("qexp", "xexp", "left", "right")

    def __init__(self, qexp: Fraction, xexp: Fraction, left: CycNumber, right: CycNumber):
        self.qexp = qexp
        self.xexp = xexp
        self.left = left
        self.right = right

    def as_dict(self) -> dict:
        return {
            "q_exponent": str(self.qexp),
            "x_exponent": str(self.xexp),
            "lhs_coefficient": _coeff_json(self.left),
            "rhs_coefficient": _coeff_json(self.right),
        }

    def __repr__(self) -> str:
        return (f"SeriesMismatch(q^{self.qexp}, x^{self.xexp}: "
                f"{self.left} != {self.right})")


def equal_up_to(f: QXSeries, g: QXSeries, qmax) -> SeriesMismatch | None:
    """None if f == g for all q-exponents < qmax, else the least discrepancy.

    qmax must not exceed either truncation order.
    """
    qmax = frac(qmax)
    if qmax > f.trunc or qmax > g.trunc:
        raise InsufficientPrecision(
            f"requested order {qmax} beyond known precision "
            f"{min(f.trunc, g.trunc)}")
    a, b = QXSeries._aligned(f, g)
    key = qmax * a.dq
    keys = sorted(set(a.terms) | set(b.terms))
    from .ring import ZERO
    for qk in keys:
        if qk >= key:
            break
        xpa = a.terms.get(qk, {})
        xpb = b.terms.get(qk, {})
        for xk in sorted(set(xpa) | set(xpb)):
            ca = xpa.get(xk, ZERO)
            cb = xpb.get(xk, ZERO)
            if ca != cb:
                return SeriesMismatch(
                    Fraction(qk, a.dq), Fraction(xk, a.dx), ca, cb)
    return None


# -- numeric evaluation ------------------------------------------------------

def evaluate(f: QXSeries, tau: complex, z: complex) -> complex:
    """Value of the truncated series at q = exp(2 pi i tau), x = exp(2 pi i z).

    Fractional powers are resolved through tau and z directly, so branches
    are consistent with the bilateral-sum definitions.
    """
    import cmath
    total = complex(0)
    for qexp, xexp, coeff in f.support():
        total += coeff.embed() * cmath.exp(
            2j * cmath.pi * (tau * float(qexp) + z * float(xexp)))
    return total


# -- serialization -----------------------------------------------------------

def _coeff_json(c: CycNumber):
    if c.is_rational():
        return str(c.rational_value())
    return [c.order, [str(v) for v in c.coeffs]]


def _coeff_from_json(obj) -> CycNumber:
    if isinstance(obj, str):
        return CycNumber.from_rational(Fraction(obj))
    order, vec = obj
    return CycNumber(order, tuple(Fraction(v) for v in vec))


def to_json_dict(f: QXSeries) -> dict:
    terms = []
    for qk in sorted(f.terms):
        xp = f.terms[qk]
        row = [[str(Fraction(xk, f.dx)), _coeff_json(xp[xk])] for xk in sorted(xp)]
        terms.append([str(Fraction(qk, f.dq)), row])
    return {"lattice": [f.dq, f.dx], "trunc": str(f.trunc), "terms": terms}


def from_json_dict(obj: dict) -> QXSeries:
    dq, dx = obj["lattice"]
    trunc = Fraction(obj["trunc"])
    out = QXSeries(dq, dx, int(trunc * dq), {})
    for qstr, row in obj["terms"]:
        qk = int(Fraction(qstr) * dq)
        out.terms[qk] = {
            int(Fraction(xstr) * dx): _coeff_from_json(c) for xstr, c in row
        }
    return out


def dumps(f: QXSeries) -> str:
    return json.dumps(to_json_dict(f), separators=(",", ":"))


def loads(text: str) -> QXSeries:
    return from_json_dict(json.loads(text))


def pretty(f: QXSeries, max_terms: int = 40) -> str:
    """Human-readable one-term-per-line rendering, capped at max_terms."""
    lines = []
    count = 0
    total = sum(len(xp) for xp in f.terms.values())
    for qexp, xexp, coeff in f.support():
        if count >= max_terms:
            lines.append(f"... (+{total - count} more)")
            break
        cs = str(coeff.rational_value()) if coeff.is_rational() else repr(coeff)
        piece = cs
        if qexp:
            piece += f" q^{qexp}"
        if xexp:
            piece += f" x^{xexp}"
        lines.append(piece)
        count += 1
    if not lines:
        lines.append("0")
    lines.append(f"+ O(q^{f.trunc})")
    return "\n".join(lines)
