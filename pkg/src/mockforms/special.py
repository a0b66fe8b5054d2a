"""Classical building blocks as exact truncated series.

Conventions (pinned by the calibration identities in tests/registry):

    theta_{j,M}(tau, z)        = sum_{k in j/2M + Z} q^(M k^2) x^(M k)
    theta^(-)_{j,M}(tau, z)    = same with sign (-1)^(k - j/2M)
    vartheta_11(tau, z)        = i   * sum_{k in 1/2+Z} (-1)^(k-1/2) q^(k^2/2) x^k
    vartheta_10(tau, z)        = 1/2 * sum_{k in 1/2+Z}              q^(k^2/2) x^k
    vartheta_01(tau, z)        =       sum_{k in Z}     (-1)^k       q^(k^2/2) x^k
    eta(tau)                   = q^(1/24) prod_{n>=1} (1 - q^n)

with q = e^(2 pi i tau), x = e^(2 pi i z).  The vartheta_10 normalization is
half the customary bilateral sum; it is the unique constant for which
vartheta_10(tau, a*tau) = q^(-a^2/2) eta(2 tau)^2 / eta(tau) holds on the
nose, which is how the function is used here.  Every constructor accepts a
tau-scale K (the modular argument is K*tau) and an affine z-argument
alpha*z + beta*tau + gamma with exact rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from math import lcm

from .errors import InvalidLevel
from .ring import CycNumber, SignVariant, frac, root_from_fraction
from .series import QXSeries

IDENTITY_Z = None  # sentinel replaced below once AffineArg exists


@dataclass(frozen=True)
class AffineArg:
    """The substitution argument alpha*z + beta*tau + gamma (gamma in units of 1)."""

    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    @staticmethod
    def of(alpha=1, beta=0, gamma=0) -> "AffineArg":
        return AffineArg(frac(alpha), frac(beta), frac(gamma))


IDENTITY_Z = AffineArg()


@dataclass(frozen=True)
class ThetaSpec:
    """One classical theta function theta^(sign)_{j,M}(K*tau, arg)."""

    j: Fraction
    level: Fraction
    sign: str = SignVariant.NONE
    tau_scale: int = 1
    arg: AffineArg = IDENTITY_Z

    @staticmethod
    def of(j, level, sign=SignVariant.NONE, tau_scale=1, arg=IDENTITY_Z) -> "ThetaSpec":
        return ThetaSpec(frac(j), frac(level), sign, tau_scale, arg)


def _quadratic_index_range(a: Fraction, b: Fraction, offset: Fraction, trunc: Fraction):
    """Integers n with a*(offset+n)^2 + b*(offset+n) < trunc, padded by 2."""
    af, bf, of, tf = float(a), float(b), float(offset), float(trunc)
    disc = bf * bf + 4.0 * af * tf
    if disc < 0:
        disc = 0.0
    lo = (-bf - math.sqrt(disc)) / (2.0 * af) - of
    hi = (-bf + math.sqrt(disc)) / (2.0 * af) - of
    return range(math.floor(lo) - 2, math.ceil(hi) + 3)


def _bilateral(j_over_2m: Fraction, sign: str, qquad: Fraction, qlin: Fraction,
               xlin: Fraction, rootlin: Fraction, extra_root: Fraction,
               extra_coeff: Fraction, trunc: Fraction) -> QXSeries:
    """sum over k = j_over_2m + n of
    extra_coeff * e^(2 pi i extra_root) * sign^n * e^(2 pi i rootlin k)
    * q^(qquad k^2 + qlin k) * x^(xlin k), truncated at q^trunc."""
    items = []
    ambient = lcm(extra_root.denominator, 4 if sign == SignVariant.MINUS else 1)
    pending = []
    for n in _quadratic_index_range(qquad, qlin, j_over_2m, trunc):
        k = j_over_2m + n
        qexp = qquad * k * k + qlin * k
        if qexp >= trunc:
            continue
        rexp = rootlin * k + extra_root
        if sign == SignVariant.MINUS and n % 2:
            rexp += Fraction(1, 2)
        ambient = lcm(ambient, rexp.denominator)
        pending.append((rexp, qexp, xlin * k))
    for rexp, qexp, xexp in pending:
        coeff = root_from_fraction(rexp % 1, ambient).scale(extra_coeff)
        items.append((coeff, qexp, xexp))
    return QXSeries.from_terms(items, trunc)


def theta(spec: ThetaSpec, trunc) -> QXSeries:
    """Level-M theta function with optional alternating sign and affine argument.

    Index periodicity theta_{j+2M} = theta_j and the reflection
    theta_{-j,M}(z) = theta_{j,M}(-z) hold by construction.
    """
    trunc = frac(trunc)
    M, K, arg = spec.level, spec.tau_scale, spec.arg
    if M <= 0:
        raise InvalidLevel(f"theta level must be positive, got {M}")
    return _bilateral(
        j_over_2m=spec.j / (2 * M),
        sign=spec.sign,
        qquad=K * M,
        qlin=M * arg.beta,
        xlin=M * arg.alpha,
        rootlin=M * arg.gamma,
        extra_root=Fraction(0),
        extra_coeff=Fraction(1),
        trunc=trunc,
    )


def theta_at_zero(spec: ThetaSpec, trunc) -> QXSeries:
    """theta with the z-coefficient forced to zero; the result is x-free."""
    return theta(replace(spec, arg=replace(spec.arg, alpha=Fraction(0))), trunc)


def theta_diff(j, level, trunc, sign=SignVariant.NONE, tau_scale=1,
               arg: AffineArg = IDENTITY_Z) -> QXSeries:
    """[theta_{j,M} - theta_{-j,M}] at a common argument."""
    a = theta(ThetaSpec.of(j, level, sign, tau_scale, arg), trunc)
    b = theta(ThetaSpec.of(-frac(j), level, sign, tau_scale, arg), trunc)
    return a - b


def vartheta(kind: str, tau_scale: int, arg: AffineArg, trunc) -> QXSeries:
    """Jacobi theta vartheta_kind(K*tau, arg) for kind in {"11", "10", "01"}."""
    trunc = frac(trunc)
    K = tau_scale
    if kind == "11":
        # i * sum_{k in 1/2+Z} (-1)^(k-1/2) ...: fold i into the root exponent.
        return _bilateral(
            Fraction(1, 2), SignVariant.MINUS, Fraction(K, 2), arg.beta,
            arg.alpha, arg.gamma, Fraction(1, 4), Fraction(1), trunc)
    if kind == "10":
        return _bilateral(
            Fraction(1, 2), SignVariant.NONE, Fraction(K, 2), arg.beta,
            arg.alpha, arg.gamma, Fraction(0), Fraction(1, 2), trunc)
    if kind == "01":
        return _bilateral(
            Fraction(0), SignVariant.MINUS, Fraction(K, 2), arg.beta,
            arg.alpha, arg.gamma, Fraction(0), Fraction(1), trunc)
    raise ValueError(f"unknown vartheta kind {kind!r}")


def eta(tau_scale: int, trunc) -> QXSeries:
    """Dedekind eta(K*tau) = q^(K/24) prod (1-q^(K n)), by the pentagonal series."""
    trunc = frac(trunc)
    K = tau_scale
    if K <= 0:
        raise InvalidLevel("eta requires a positive tau scale")
    shift = Fraction(K, 24)
    items = []
    n = 0
    while True:
        exps = [Fraction(K * n * (3 * n - 1), 2), Fraction(K * n * (3 * n + 1), 2)]
        if all(e + shift >= trunc for e in exps) and n > 0:
            break
        sign = Fraction(1) if n % 2 == 0 else Fraction(-1)
        for e, idx in zip(exps, (0, 1)):
            if n == 0 and idx == 1:
                continue  # n=0 contributes once
            if e + shift < trunc:
                items.append((CycNumber.from_rational(sign), e + shift, Fraction(0)))
        n += 1
    return QXSeries.from_terms(items, trunc)


def eta_power(tau_scale: int, power: int, trunc) -> QXSeries:
    out = eta(tau_scale, trunc)
    result = out
    for _ in range(power - 1):
        result = result * out
    return result


def euler_product(kind: str, trunc) -> QXSeries:
    """Naive truncated product prod_{n>=1}(1 -+ q^n); x-free."""
    trunc = frac(trunc)
    from .ring import MINUS_ONE, ONE
    sign_coeff = MINUS_ONE if kind == "one_minus" else ONE
    if kind not in ("one_minus", "one_plus"):
        raise ValueError(f"unknown euler product kind {kind!r}")
    result = QXSeries.one(trunc)
    n = 1
    while Fraction(n) < trunc:
        factor = QXSeries.one(trunc) + QXSeries.monomial(sign_coeff, n, 0, trunc)
        result = result * factor
        result = result.truncate(trunc) if result.trunc > trunc else result
        n += 1
    return result
