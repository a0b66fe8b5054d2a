"""Appell-type mock theta sums, symbolic (pure-q) and numeric.

The family implemented here, for level m in (1/2)N, shift s in (1/2)Z and an
optional alternating sign:

    Phi^(+-)[m,s]_1(tau, z1, z2, t) =
        e^(-2 pi i m t) * sum_{r in Z} (+-1)^r
            e^(2 pi i (m r (z1+z2) + s z1)) q^(m r^2 + s r)
            / (1 - e^(2 pi i z1) q^r)

    Phi_2(tau, z1, z2, t) = Phi_1(tau, -z2, -z1, t),   Phi = Phi_1 - Phi_2.

The second part negates and swaps both z-arguments (for s = 1/2 this equals
minus the plain swap of Phi_1); the full sum is symmetric under z1 <-> z2.

The t argument is exposed at t = 0 and t = tau/8 only; the tau/8 mode
multiplies the t = 0 series by q^(-m/8), the unique monomial factor
compatible with the a = 0 case of the elliptic shift law.  Other t values
have no second anchor here and are deliberately not offered symbolically.

Symbolic expansion works in pure-q mode: with the modular argument K*tau and
first z-argument alpha*z + beta*tau + gamma, every denominator
1 - e^(2 pi i gamma) x^alpha q^(beta + K r) needs nonzero q-valuation, i.e.
beta must not be an integer multiple of K.  The half-period specializations
used by the N=3 numerators always satisfy this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidLevel, PoleAtQZero
from .numeric import NumericPoint, phi_c
from .ring import CycNumber, SignVariant, frac, root_from_fraction
from .series import QXSeries, geom_expand
from .special import AffineArg, theta_diff

T_ZERO = "zero"
T_TAU_OVER_8 = "tau_over_8"


@dataclass(frozen=True)
class PhiParams:
    """Identifies one member of the family: level, shift, sign variant, part."""

    level: Fraction
    s: Fraction
    variant: str = SignVariant.NONE
    part: str = "full"

    @staticmethod
    def of(level, s, variant=SignVariant.NONE, part="full") -> "PhiParams":
        return PhiParams(frac(level), frac(s), variant, part)


def _check_level(level: Fraction) -> None:
    if level <= 0:
        raise InvalidLevel(f"level must be positive, got {level}")
    if (2 * level).denominator != 1:
        raise InvalidLevel(f"level must be a half-integer, got {level}")


def _phi1_symbolic(level: Fraction, s: Fraction, variant: str, K: int,
                   arg1: AffineArg, arg2: AffineArg, trunc: Fraction) -> QXSeries:
    if (arg1.beta / K).denominator == 1:
        raise PoleAtQZero(
            f"beta1 = {arg1.beta} hits a pole at q^0 (multiple of K = {K})")
    a1, b1, g1 = arg1.alpha, arg1.beta, arg1.gamma
    asum = arg1.alpha + arg2.alpha
    bsum = arg1.beta + arg2.beta
    gsum = arg1.gamma + arg2.gamma
    den_root = g1 % 1
    den_coeff = root_from_fraction(den_root, den_root.denominator)

    total = QXSeries.zero(trunc)
    for direction in (1, -1):
        r = 0 if direction == 1 else -1
        misses = 0
        prev_val = None
        while misses <= 1:
            qshift = K * (level * r * r + s * r) + level * r * bsum + s * b1
            xshift = level * r * asum + s * a1
            rootexp = (level * r * gsum + s * g1) % 1
            if variant == SignVariant.MINUS and r % 2:
                rootexp = (rootexp + Fraction(1, 2)) % 1
            den_qexp = b1 + K * r
            val = qshift + max(Fraction(0), -den_qexp)
            if val >= trunc:
                # val is convex in r, so misses only count on its rising
                # branch; before the vertex we keep scanning.
                if prev_val is None or val >= prev_val:
                    misses += 1
            else:
                misses = 0
                coeff = root_from_fraction(rootexp, rootexp.denominator)
                den = geom_expand(1, den_coeff, a1, den_qexp, trunc - qshift)
                total = total + den.mono_scale(coeff, qshift, xshift)
            prev_val = val
            r += direction
    return total.truncate(trunc) if total.trunc > trunc else total


def phi_symbolic(params: PhiParams, K: int, arg1: AffineArg, arg2: AffineArg,
                 t_mode: str, trunc) -> QXSeries:
    """Exact series for Phi^(variant)[level, s]_part(K tau, arg1, arg2, t)."""
    trunc = frac(trunc)
    _check_level(params.level)
    if t_mode not in (T_ZERO, T_TAU_OVER_8):
        raise ValueError(f"unknown t mode {t_mode!r}")
    shift = Fraction(0) if t_mode == T_ZERO else -params.level / 8
    inner = trunc - shift

    neg1 = AffineArg(-arg1.alpha, -arg1.beta, -arg1.gamma)
    neg2 = AffineArg(-arg2.alpha, -arg2.beta, -arg2.gamma)
    if params.part == "first":
        out = _phi1_symbolic(params.level, params.s, params.variant, K,
                             arg1, arg2, inner)
    elif params.part == "second":
        out = _phi1_symbolic(params.level, params.s, params.variant, K,
                             neg2, neg1, inner)
    elif params.part == "full":
        first = _phi1_symbolic(params.level, params.s, params.variant, K,
                               arg1, arg2, inner)
        second = _phi1_symbolic(params.level, params.s, params.variant, K,
                                neg2, neg1, inner)
        out = first - second
    else:
        raise ValueError(f"unknown part {params.part!r}")
    if shift:
        from .ring import ONE
        out = out.mono_scale(ONE, shift, 0)
    return out


def phi_numeric(params: PhiParams, point: NumericPoint, tol: float = 1e-9) -> complex:
    """Numeric value of the same sum at a concrete point (Im tau > 0)."""
    _check_level(params.level)
    if point.tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return phi_c(params.level, params.s, params.variant, params.part,
                 point.tau, point.z1, point.z2, point.t, tol)


def numerator(m: int, s, trunc, p: int = 0) -> QXSeries:
    """N=3 character numerator: Phi^[m/2, s](2 tau, z + tau/2 - 1/2,
    z - tau/2 + 1/2, tau/8), exact.

    For p > 0 the same series is assembled through the elliptic shift law
    (arguments shifted by +-2p tau, with the finite theta correction sum),
    which must give a p-independent result.
    """
    trunc = frac(trunc)
    s = frac(s)
    if m < 1:
        raise InvalidLevel("m must be a positive integer")
    if p < 0:
        raise ValueError("p must be nonnegative")
    level = Fraction(m, 2)
    if p == 0:
        return phi_symbolic(
            PhiParams.of(level, s), 2,
            AffineArg.of(1, Fraction(1, 2), Fraction(-1, 2)),
            AffineArg.of(1, Fraction(-1, 2), Fraction(1, 2)),
            T_TAU_OVER_8, trunc)

    drop = m * Fraction(4 * p + 1, 4) ** 2
    base = phi_symbolic(
        PhiParams.of(level, s), 2,
        AffineArg.of(1, Fraction(1, 2) + 2 * p, Fraction(-1, 2)),
        AffineArg.of(1, -Fraction(1, 2) - 2 * p, Fraction(1, 2)),
        T_ZERO, trunc + drop)
    sign = CycNumber.from_rational(1 if (m * p) % 2 == 0 else -1)
    out = base.mono_scale(sign, -drop, 0)
    for k in range(1, p * m + 1):
        shift = Fraction(k, 1) - s + Fraction(m, 4)
        qdrop = -(shift * shift) / m
        rootexp = (Fraction(k, 2) - s / 2) % 1
        coeff = root_from_fraction(rootexp, rootexp.denominator)
        corr = theta_diff(2 * (k - s), m, trunc - qdrop)
        out = out + corr.mono_scale(coeff, qdrop, 0)
    return out.truncate(trunc) if out.trunc > trunc else out
