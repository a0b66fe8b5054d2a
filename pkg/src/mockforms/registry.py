"""Catalogue of verifiable identities, the case runner, and report types.

Every case checks one identity family at concrete parameters, in one of
three modes: ``symbolic`` (exact truncated series, zero difference),
``numeric`` (seeded sample points, scale-free residual against a tolerance),
or ``spans`` (guarded elimination over truncated q-series).  Each symbolic
family also ships a mutation twin (id suffix ``-MUT``) running a
deliberately perturbed variant; the twin passes exactly when the perturbed
identity fails with a witness, guarding the engine against vacuous passes.
"""

from __future__ import annotations

import cmath
import fnmatch
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MockformsError, ModeUnsupported
from .mock import PhiParams, numerator, phi_symbolic
from .numeric import (_bilateral_sum, eta_c, inv_one_minus, phi_c, rel_residual,
                      sample_points, theta_c, vartheta11_c)
from .ring import (CycNumber, MINUS_ONE, ONE, SignVariant, frac,
                   root_of_unity, root_from_fraction, sigma)
from .series import QXSeries, equal_up_to, invert_unit
from .special import (AffineArg, ThetaSpec, eta, eta_power, euler_product,
                      theta, theta_at_zero, theta_diff, vartheta)
from .spans import (SpanProblem, build_CHnum, build_Theta, build_U, build_V,
                    decompose_in_span, span_dim, span_equal)

HALF = Fraction(1, 2)


@dataclass
class IdentityCase:
    id: str
    params: dict = field(default_factory=dict)
    trunc: Fraction | None = None
    points: int | None = None
    tol: float | None = None
    seed: int = 0
    guard: int = 4


@dataclass
class Report:
    id: str
    params: dict
    mode: str
    status: str                 # pass | fail | error
    witness: dict | None = None
    residual: float | None = None
    trunc: str | None = None
    tol: float | None = None
    seed: int | None = None
    millis: float = 0.0

    def as_dict(self) -> dict:
        out = {"id": self.id, "params": {k: str(v) for k, v in self.params.items()},
               "mode": self.mode, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.residual is not None:
            out["residual"] = self.residual
        if self.trunc is not None:
            out["trunc"] = self.trunc
        if self.tol is not None:
            out["tol"] = self.tol
        if self.seed is not None:
            out["seed"] = self.seed
        out["millis"] = self.millis
        return out


class _Fail(Exception):
    """Internal: identity check failed; carries the witness."""

    def __init__(self, witness):
        self.witness = witness


def _series_equal(lhs: QXSeries, rhs: QXSeries, qmax, label: str) -> None:
    mm = equal_up_to(lhs, rhs, min(frac(qmax), lhs.trunc, rhs.trunc))
    if mm is not None:
        w = mm.as_dict()
        w["item"] = label
        raise _Fail(w)


# -- shared symbolic builders -------------------------------------------------

def _quot(jnum, jden, m: int, trunc: Fraction) -> QXSeries:
    """theta_{jnum, m+1}(tau, z) / theta_{jden, 1}(tau, z)."""
    num = theta(ThetaSpec.of(jnum, m + 1), trunc + 2)
    den = theta(ThetaSpec.of(jden, 1), trunc + 2)
    return num * invert_unit(den, trunc + 1)


def _bracket_sum(m: int, scale: int, c1: Fraction, half_odd: bool,
                 trunc: Fraction) -> QXSeries:
    """[sum_{0<k<=mj} - sum_{mj<k<=0}] (strict for half-odd k) of
    (-1)^((m+1)j) e^(i pi k) q^(E(j,k)) [theta_{2k,m} - theta_{-2k,m}](tau,z)
    with E(j,k) = (m+1)(j + c1 + m*scale/(4(m+1)))^2 - (k + m*scale/4)^2 / m.
    """
    c = c1 + Fraction(m * scale, 4 * (m + 1))
    d = Fraction(m * scale, 4)
    collected: list[tuple[int, Fraction, Fraction, int]] = []
    for direction in (1, -1):
        j = direction
        misses = 0
        prev = None
        while misses <= 1:
            if half_odd:
                ks, kk = [], Fraction(direction, 2)
                while (kk < m * j) if direction > 0 else (kk > m * j):
                    ks.append(kk)
                    kk += direction
            else:
                if direction > 0:
                    ks = [Fraction(v) for v in range(1, m * j + 1)]
                else:
                    ks = [Fraction(v) for v in range(m * j + 1, 1)]
            emin = min((m + 1) * (j + c) ** 2 - (k + d) ** 2 / m for k in ks)
            if emin >= trunc:
                if prev is None or emin >= prev:
                    misses += 1
            else:
                misses = 0
                for k in ks:
                    e = (m + 1) * (j + c) ** 2 - (k + d) ** 2 / m
                    if e < trunc:
                        collected.append((j, k, e, direction))
            prev = emin
            j += direction
    total = QXSeries.zero(trunc)
    for j, k, e, direction in collected:
        rexp = (Fraction((m + 1) * j, 2) + k / 2) % 1
        coeff = root_from_fraction(rexp, rexp.denominator)
        if direction < 0:
            coeff = -coeff
        total = total + theta_diff(2 * k, m, trunc - e).mono_scale(coeff, e, 0)
    return total


# -- runners: numeric ---------------------------------------------------------

_TH = 1e-15


def _run_numeric(points, tol, residual_fn) -> tuple[float, int]:
    worst, arg = 0.0, -1
    for i, pt in enumerate(points):
        r = residual_fn(pt)
        if r > worst:
            worst, arg = r, i
    return worst, arg


def _kp_residual(a: int):
    def fn(pt):
        tau, z = pt.tau, pt.z1
        rhs = -1j * cmath.exp(-2j * cmath.pi * a * z) * eta_c(tau) ** 3 \
            / vartheta11_c(tau, z)
        worst = 0.0
        for part in ("first", "second"):
            lhs = phi_c(HALF, HALF, SignVariant.MINUS, part,
                        tau, z, -z + 2 * a * tau, 0j)
            worst = max(worst, rel_residual(lhs, rhs))
        return worst
    return fn


def _osp_residual():
    def fn(pt):
        tau, z1, z2 = pt.tau, pt.z1, pt.z2
        lhs = (phi_c(HALF, HALF, SignVariant.MINUS, "first", tau, z1, z2, 0j)
               + phi_c(HALF, HALF, SignVariant.MINUS, "second", tau, z1, z2, 0j))
        rhs = (1j * eta_c(tau) ** 3 * vartheta11_c(tau, z1 + z2)
               * vartheta11_c(tau, (z1 - z2) / 2)
               / (vartheta11_c(tau, z1) * vartheta11_c(tau, z2)
                  * vartheta11_c(tau, (z1 + z2) / 2)))
        return rel_residual(lhs, rhs)
    return fn


def _frearr_residual(m: Fraction, s: Fraction, part: int, z3: complex):
    mf, sf = float(m), float(s)
    shift = 0.5 if s == 0 else 0.0

    def fn(pt):
        tau, z1, z2 = pt.tau, pt.z1, pt.z2
        w3 = z3
        if part == 1:
            def lhs_j(j):
                def inner(r):
                    expo = ((mf + 0.5) * j * j + shift * j) * tau \
                        + j * (z1 - z2) / 2 - j * mf * (z1 - w3) \
                        + mf * r * (z1 - w3 - 2 * j * tau) + sf * z1 \
                        + (mf * r * r + sf * r) * tau
                    return (-1) ** j * cmath.exp(2j * cmath.pi * expo) \
                        * inv_one_minus(z1 + r * tau)
                return _bilateral_sum(inner, _TH)
            lhs = _bilateral_sum(lhs_j, _TH)
            pref = cmath.exp(-1j * cmath.pi * z1) if s == 0 else 1.0

            def rhs_k(k):
                def inner(r):
                    expo = ((mf + 0.5) * k * k - shift * k) * tau \
                        - k * (z1 - z2) / 2 + k * mf * (z1 - w3) \
                        + 0.5 * r * (z1 - z2 - 2 * k * tau) + 0.5 * z1 \
                        + (0.5 * r * r + 0.5 * r) * tau
                    return (-1) ** k * (-1) ** r * cmath.exp(2j * cmath.pi * expo) \
                        * inv_one_minus(z1 + r * tau)
                return _bilateral_sum(inner, _TH)
            rhs = pref * _bilateral_sum(rhs_k, _TH)
        else:
            def lhs_j(j):
                def inner(r):
                    w1 = w3 + 2 * j * tau
                    expo = ((mf + 0.5) * j * j + shift * j) * tau \
                        + j * (z1 - z2) / 2 - j * mf * (z1 - w3) \
                        + mf * r * (w1 - z1) + sf * w1 \
                        + (mf * r * r + sf * r) * tau
                    return (-1) ** j * cmath.exp(2j * cmath.pi * expo) \
                        * inv_one_minus(w1 + r * tau)
                return _bilateral_sum(inner, _TH)
            lhs = _bilateral_sum(lhs_j, _TH)
            pref = cmath.exp(-1j * cmath.pi * w3) if s == 0 else 1.0

            def rhs_k(k):
                def inner(r):
                    expo = ((mf + 0.5) * k * k - shift * k) * tau \
                        - k * (z1 - z2) / 2 - k * mf * (z1 - w3) \
                        + 0.5 * r * (z1 - z2 - 2 * k * tau) + 0.5 * w3 \
                        + (0.5 * r * r + 0.5 * r) * tau
                    return (-1) ** k * (-1) ** r * cmath.exp(2j * cmath.pi * expo) \
                        * inv_one_minus(w3 + r * tau)
                return _bilateral_sum(inner, _TH)
            rhs = pref * _bilateral_sum(rhs_k, _TH)
        return rel_residual(lhs, rhs)
    return fn


def _sumdiff_residual(m: Fraction, s: Fraction):
    mf, sf = float(m), float(s)
    level = m + HALF

    def fn(pt):
        tau, z1, z2 = pt.tau, pt.z1, pt.z2
        c = 1.0 / (4 * (mf + 0.5)) if s == 0 else 0.0
        pref = cmath.exp(1j * cmath.pi * mf / (mf + 0.5) * z1) if s == 0 else 1.0

        def lhs_j(j):
            jj = j - c
            base = (mf + 0.5) * jj * jj * tau + mf * jj * (z1 + z2)

            def in1(r):
                expo = base + mf * r * (z1 + z2 + 2 * j * tau) + sf * z1 \
                    + (mf * r * r + sf * r) * tau
                return (-1) ** j * cmath.exp(2j * cmath.pi * expo) \
                    * inv_one_minus(z1 + r * tau)

            def in2(r):
                w1 = -z2 - 2 * j * tau
                expo = base + mf * r * (w1 - z1) + sf * w1 \
                    + (mf * r * r + sf * r) * tau
                return (-1) ** j * cmath.exp(2j * cmath.pi * expo) \
                    * inv_one_minus(w1 + r * tau)
            return _bilateral_sum(in1, _TH) - _bilateral_sum(in2, _TH)

        lhs = pref * _bilateral_sum(lhs_j, _TH)
        w1 = z1 + z2 + (z1 - z2) / (2 * mf + 1)
        w2 = z1 + z2 + (z2 - z1) / (2 * mf + 1)
        j1 = -HALF if s == 0 else Fraction(0)
        j2 = HALF if s == 0 else Fraction(0)
        rhs = -1j * eta_c(tau) ** 3 * (
            theta_c(j1, level, SignVariant.MINUS, tau, w1) / vartheta11_c(tau, z1)
            + theta_c(j2, level, SignVariant.MINUS, tau, w2) / vartheta11_c(tau, z2))
        return rel_residual(lhs, rhs)
    return fn


def _dfactor(tau, z1, z2, mf, k, xsign):
    # e^(xsign i pi k (z1-z2)) q^(-k^2/4m) [theta_{k,m} - theta_{-k,m}](tau, z1+z2)
    w = z1 + z2
    base = -k * k / (4 * mf) * tau + xsign * k * (z1 - z2) / 2

    def term(n):
        u = k / (2 * mf) + n
        quad = mf * u * u * tau + base
        return (cmath.exp(2j * cmath.pi * (quad + mf * u * w))
                - cmath.exp(2j * cmath.pi * (quad - mf * u * w)))
    return _bilateral_sum(term, _TH)


def _phi_expl_residual(m: Fraction, s: Fraction):
    mf, sf = float(m), float(s)
    level = m + HALF
    j0 = HALF if s == 0 else Fraction(0)
    xsign = -1 if s == 0 else +1

    def fn(pt):
        tau, z1, z2 = pt.tau, pt.z1, pt.z2
        lhs = theta_c(j0, level, SignVariant.MINUS, tau,
                      mf * (z1 - z2) / (mf + 0.5)) \
            * phi_c(m, s, SignVariant.NONE, "full", tau, z1, z2, 0j, 1e-12)
        c = 1.0 / (4 * (mf + 0.5)) if s == 0 else 0.0
        zdir = (z1 - z2) if s == 0 else (z2 - z1)
        total = 0j
        for jsign in (1, -1):
            j = jsign
            smallrun, prev = 0, float("inf")
            while abs(j) < 80:
                if s == 0:
                    ks = (list(range(1, int(2 * mf * j) + 1)) if jsign > 0
                          else list(range(int(2 * mf * j) + 1, 1)))
                else:
                    ks, kk = [], 0.5 * jsign
                    while (kk < 2 * mf * j) if jsign > 0 else (kk > 2 * mf * j):
                        ks.append(kk)
                        kk += jsign
                jj = j + c
                coeff = (-1) ** j * cmath.exp(2j * cmath.pi * (
                    (mf + 0.5) * jj * jj * tau + mf * jj * zdir))
                contrib = sum(
                    (jsign * coeff * _dfactor(tau, z1, z2, mf, k, xsign)
                     for k in ks), 0j)
                total += contrib
                mag = abs(contrib)
                if mag < 1e-14 and mag <= prev:
                    smallrun += 1
                    if smallrun >= 3:
                        break
                else:
                    smallrun = 0
                prev = mag
                j += jsign
        w1 = z1 + z2 + (z1 - z2) / (2 * mf + 1)
        w2 = z1 + z2 + (z2 - z1) / (2 * mf + 1)
        j1 = -HALF if s == 0 else Fraction(0)
        j2 = HALF if s == 0 else Fraction(0)
        eterm = -1j * eta_c(tau) ** 3 * (
            theta_c(j1, level, SignVariant.MINUS, tau, w1) / vartheta11_c(tau, z1)
            + theta_c(j2, level, SignVariant.MINUS, tau, w2) / vartheta11_c(tau, z2))
        return rel_residual(lhs, total + eterm)
    return fn


def _shift_a_residual(m: int, s: Fraction, a: int, variant: str):
    mf, sf = float(m) / 2, float(s)

    def fn(pt):
        tau, z1, z2 = pt.tau, pt.z1, pt.z2
        lhs = phi_c(Fraction(m, 2), s, variant, "full",
                    2 * tau, z1 + 2 * a * tau, z2 - 2 * a * tau, 0j, 1e-12)
        sgn = -1.0 if (variant == SignVariant.MINUS and a % 2) else 1.0
        inner = phi_c(Fraction(m, 2), s, variant, "full", 2 * tau, z1, z2, 0j, 1e-12)
        corr = 0j
        for k in range(1, a * m + 1):
            ks = k - sf
            corr += cmath.exp(2j * cmath.pi * (-ks * (z1 - z2) / 2
                                               - ks * ks / m * tau)) \
                * (theta_c(2 * (Fraction(k) - s), m, variant, tau, (z1 + z2) / 2)
                   - theta_c(-2 * (Fraction(k) - s), m, variant, tau, (z1 + z2) / 2))
        rhs = sgn * cmath.exp(2j * cmath.pi * (m * a * (z1 - z2) / 2
                                               + m * a * a * tau)) * (inner - corr)
        return rel_residual(lhs, rhs)
    return fn


# -- runners: symbolic --------------------------------------------------------

def _run_theta_shift_a(params, trunc, mutate=False):
    p = int(params["p"])
    T = trunc
    flip = MINUS_ONE if mutate else ONE
    lhs = vartheta("11", 2, AffineArg.of(1, Fraction(2 * p + 1, 2), -HALF), T)
    rhs = theta(ThetaSpec.of(Fraction(2 * p - 1, 2), 1), T + 5).mono_scale(
        flip, -Fraction((2 * p + 1) ** 2, 16), -Fraction(2 * p + 1, 4))
    _series_equal(lhs, rhs, T, "half-period shift, item 1")
    lhs = vartheta("11", 2, AffineArg.of(1, -Fraction(2 * p + 1, 2), HALF), T)
    rhs = theta(ThetaSpec.of(Fraction(-2 * p + 1, 2), 1), T + 5).mono_scale(
        -flip, -Fraction((2 * p + 1) ** 2, 16), Fraction(2 * p + 1, 4))
    _series_equal(lhs, rhs, T, "half-period shift, item 2")


def _run_theta_shift_b(params, trunc, mutate=False):
    m, p = int(params["m"]), int(params["p"])
    T = trunc
    M = m + 1
    pref = root_of_unity(1, 4 * M, 4 * M)
    if mutate:
        pref = -pref
    qdrop = -Fraction((2 * p + 1) ** 2, 16 * M)
    xdrop = Fraction(2 * p + 1, 4)
    # item 1(i); item 1(ii) carries LHS index +1, matching the reflection of
    # 1(i) and the way the identity is applied downstream.
    cases = [
        (-1, AffineArg.of(1, Fraction(2 * p + 1, 2 * M), Fraction(-1, 2 * M)),
         pref, Fraction(2 * p - 1, 2), -xdrop, "1(i)"),
        (+1, AffineArg.of(1, -Fraction(2 * p + 1, 2 * M), Fraction(1, 2 * M)),
         pref, Fraction(-2 * p + 1, 2), xdrop, "1(ii)"),
    ]
    for j, arg, coeff, jr, xs, label in cases:
        lhs = theta(ThetaSpec.of(j, M, SignVariant.MINUS, 1, arg), T)
        rhs = theta(ThetaSpec.of(jr, M), T + 6).mono_scale(coeff, qdrop, xs)
        _series_equal(lhs, rhs, T, f"alternating-theta shift {label}")
    one = MINUS_ONE if mutate else ONE
    cases2 = [
        (AffineArg.of(1, Fraction(2 * p + 1, 2 * M), Fraction(-1, 2 * M)),
         Fraction(2 * p + 1, 2), -xdrop, "2(i)"),
        (AffineArg.of(1, -Fraction(2 * p + 1, 2 * M), Fraction(1, 2 * M)),
         Fraction(-2 * p - 1, 2), xdrop, "2(ii)"),
    ]
    for arg, jr, xs, label in cases2:
        lhs = theta(ThetaSpec.of(0, M, SignVariant.MINUS, 1, arg), T)
        rhs = theta(ThetaSpec.of(jr, M), T + 6).mono_scale(one, qdrop, xs)
        _series_equal(lhs, rhs, T, f"alternating-theta shift {label}")


def _run_theta_shift_c(params, trunc, mutate=False):
    m, p = int(params["m"]), int(params["p"])
    T = trunc
    M = m + 1
    sv = sigma(m)
    qdrop = -Fraction(m * m * (2 * p + 1) ** 2, 16 * M)
    arg = AffineArg.of(0, Fraction(m * (2 * p + 1), 2 * M), Fraction(-m, 2 * M))
    pref = root_of_unity(-m, 4 * M, 4 * M)
    if mutate:
        pref = -pref
    lhs = theta(ThetaSpec.of(1, M, SignVariant.MINUS, 1, arg), T)
    rhs = theta_at_zero(
        ThetaSpec.of(1 + Fraction(m * (2 * p + 1), 2), M, sv), T + 8
    ).mono_scale(pref, qdrop, 0)
    _series_equal(lhs, rhs, T, "specialization, item 1")
    one = MINUS_ONE if mutate else ONE
    lhs = theta(ThetaSpec.of(0, M, SignVariant.MINUS, 1, arg), T)
    rhs = theta_at_zero(
        ThetaSpec.of(Fraction(m * (2 * p + 1), 2), M, sv), T + 8
    ).mono_scale(one, qdrop, 0)
    _series_equal(lhs, rhs, T, "specialization, item 2")


def _run_spec(params, trunc, s_class: Fraction, mutate=False):
    m, p = int(params["m"]), int(params["p"])
    T = trunc
    sv = sigma(m)
    drop = Fraction(m * (2 * p + 1) ** 2, 16)
    if s_class == 0:
        index0 = 1 + m * (Fraction(p) + HALF)
    else:
        index0 = m * (Fraction(p) + HALF)
    th0 = theta_at_zero(ThetaSpec.of(index0, m + 1, sv), T + drop + 2)
    phi = phi_symbolic(
        PhiParams.of(Fraction(m, 2), s_class), 2,
        AffineArg.of(1, Fraction(2 * p + 1, 2), -HALF),
        AffineArg.of(1, -Fraction(2 * p + 1, 2), HALF), "zero", T + drop + 1)
    lhs = (th0 * phi).mono_scale(ONE, -drop, 0)
    e3 = eta_power(2, 3, T + 2)
    if s_class == 0:
        rhs = _bracket_sum(m, 2 * p + 1, Fraction(1, 2 * (m + 1)), False, T)
        quots = (_quot(Fraction(2 * p - 1, 2), Fraction(2 * p - 1, 2), m, T + 1)
                 - _quot(Fraction(-2 * p + 1, 2), Fraction(-2 * p + 1, 2), m, T + 1))
        eterm = quots * e3
    else:
        rhs = _bracket_sum(m, 2 * p + 1, Fraction(0), True, T)
        quots = (_quot(Fraction(2 * p + 1, 2), Fraction(2 * p - 1, 2), m, T + 1)
                 - _quot(Fraction(-2 * p - 1, 2), Fraction(-2 * p + 1, 2), m, T + 1))
        eterm = (quots * e3).scale(root_of_unity(-1, 4, 4))
    if mutate:
        eterm = -eterm
    _series_equal(lhs, rhs + eterm, T, f"specialized product formula s={s_class}")


def _run_num(params, trunc, s_class: Fraction, mutate=False):
    m, p = int(params["m"]), int(params["p"])
    T = trunc
    sv = sigma(m)
    if s_class == 0:
        index0 = 2 * p - 1 - Fraction(m, 2)
    else:
        index0 = 2 * p - Fraction(m, 2)
    th0 = theta_at_zero(ThetaSpec.of(index0, m + 1, sv), T + 4)
    lhs = th0 * numerator(m, s_class, T + 2)
    e3 = eta_power(2, 3, T + 2)
    sgnp = ONE if p % 2 == 0 else MINUS_ONE
    if s_class == 0:
        quots = (_quot(2 * p - HALF, -HALF, m, T + 1)
                 - _quot(-2 * p + HALF, HALF, m, T + 1))
        eterm = (quots * e3).scale(sgnp)
        bracket = _bracket_sum(m, 4 * p + 1, Fraction(1, 2 * (m + 1)), False, T)
    else:
        quots = (_quot(2 * p + HALF, -HALF, m, T + 1)
                 - _quot(-2 * p - HALF, HALF, m, T + 1))
        eterm = (quots * e3).scale(sgnp).scale(root_of_unity(-1, 4, 4))
        bracket = _bracket_sum(m, 4 * p + 1, Fraction(0), True, T)
    if mutate:
        eterm = -eterm
    rhs = eterm + bracket.scale(sgnp)
    corr = QXSeries.zero(T)
    for k in range(1, p * m + 1):
        ks = Fraction(k) - (Fraction(0) if s_class == 0 else HALF)
        e = -(ks + Fraction(m, 4)) ** 2 / m
        cc = ONE if k % 2 == 0 else MINUS_ONE
        corr = corr + theta_diff(2 * ks, m, T - e).mono_scale(cc, e, 0)
    tail = th0 * corr
    if s_class != 0:
        tail = tail.scale(root_of_unity(-1, 4, 4))
    rhs = rhs + tail
    _series_equal(lhs, rhs, T, f"numerator formula s={s_class}")


def _run_shift_t8(params, trunc, mutate=False):
    m = int(params["m"])
    T = trunc
    a1 = AffineArg.of(1, HALF, -HALF)
    a2 = AffineArg.of(1, -HALF, HALF)
    shift = Fraction(m, 16) if mutate else -Fraction(m, 16)
    for s in (Fraction(0), HALF):
        for variant in (SignVariant.NONE, SignVariant.MINUS):
            pp = PhiParams.of(Fraction(m, 2), s, variant)
            t8 = phi_symbolic(pp, 2, a1, a2, "tau_over_8", T)
            t0 = phi_symbolic(pp, 2, a1, a2, "zero", T - shift)
            _series_equal(t8, t0.mono_scale(ONE, shift, 0), T,
                          f"t=tau/8 prefactor s={s} variant={variant}")


def _run_shift_a_symbolic(params, trunc, mutate=False):
    m, a = int(params["m"]), int(params["a"])
    s = frac(params["s"])
    T = trunc
    for variant in (SignVariant.NONE, SignVariant.MINUS):
        lhs = phi_symbolic(PhiParams.of(Fraction(m, 2), s, variant), 2,
                           AffineArg.of(1, HALF + 2 * a, -HALF),
                           AffineArg.of(1, -HALF - 2 * a, HALF), "zero", T)
        pref_exp = Fraction(m * a, 2) + m * a * a
        inner = phi_symbolic(PhiParams.of(Fraction(m, 2), s, variant), 2,
                             AffineArg.of(1, HALF, -HALF),
                             AffineArg.of(1, -HALF, HALF), "zero", T - pref_exp)
        corr = QXSeries.zero(T - pref_exp)
        for k in range(1, a * m + 1):
            ks = Fraction(k) - s
            e = -ks / 2 - ks * ks / Fraction(m)
            rexp = (ks / 2) % 1
            cc = root_from_fraction(rexp, rexp.denominator)
            corr = corr + theta_diff(2 * ks, m, T - pref_exp - e,
                                     sign=variant).mono_scale(cc, e, 0)
        sgn = 1
        if variant == SignVariant.MINUS and a % 2:
            sgn = -sgn
        if (m * a) % 2:
            sgn = -sgn
        if mutate:
            sgn = -sgn
        rhs = (inner - corr).mono_scale(CycNumber.from_rational(sgn), pref_exp, 0)
        _series_equal(lhs, rhs, min(lhs.trunc, rhs.trunc, T),
                      f"elliptic shift variant={variant}")


def _run_theta_eval(params, trunc, mutate=False):
    T = trunc
    ev = theta(ThetaSpec.of(0, 1, SignVariant.NONE, 1, AffineArg.of(0, 1, HALF)), T)
    if not ev.is_zero():
        qe, xe, c = next(ev.support())
        raise _Fail({"item": "vanishing at the half period", "q_exponent": str(qe),
                     "x_exponent": str(xe), "lhs_coefficient": repr(c), "rhs_coefficient": "0"})
    lhs = theta(ThetaSpec.of(1, 1, SignVariant.NONE, 1, AffineArg.of(0, 1, HALF)), T)
    pref = root_of_unity(-1, 4, 4)
    if mutate:
        pref = -pref
    rhs = theta_at_zero(ThetaSpec.of(0, 1, SignVariant.MINUS), T + 1).mono_scale(
        pref, -Fraction(1, 4), 0)
    _series_equal(lhs, rhs, T, "alternating-sum value at the half period")
    lhs = vartheta("11", 1, AffineArg.of(0, 1, HALF), T)
    em = euler_product("one_minus", T + 1)
    ep = euler_product("one_plus", T + 1)
    rhs = (em * ep * ep).mono_scale(CycNumber.from_rational(-2), -Fraction(3, 8), 0)
    _series_equal(lhs, rhs, T, "product form at the half period")


def _run_theta_eval_ambiguous(reading: str, trunc):
    T = trunc
    if reading == "A":
        lhs = vartheta("11", 1, AffineArg.of(0, 1, HALF), T)
        rhs = theta_diff(1, 2, T + 1, arg=AffineArg.of(0, 1, HALF)).mono_scale(
            root_of_unity(1, 4, 4), 0, 0)
    else:
        lhs = vartheta("11", 1, AffineArg(), T)
        rhs = theta_diff(1, 2, T).mono_scale(root_of_unity(1, 4, 4), 0, 0)
    _series_equal(lhs, rhs, T, f"ambiguous evaluation, reading {reading}")


def _run_quot_close(params, trunc, mutate=False):
    m = int(params["m"])
    T = trunc
    lev = (m + 1) * (m + 2)
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    items = [
        (th0, HALF, lambda r: HALF + 2 * r, lambda r: HALF - 2 * (m + 1) * r, "0,+"),
        (th0, -HALF, lambda r: -HALF - 2 * r, lambda r: HALF - 2 * (m + 1) * r, "0,-"),
        (th1, HALF, lambda r: HALF + 2 * r + 1,
         lambda r: HALF - (2 * r + 1) * (m + 1), "1,+"),
        (th1, -HALF, lambda r: -HALF - 2 * r - 1,
         lambda r: HALF - (2 * r + 1) * (m + 1), "1,-"),
    ]
    for mult, jn, idx, idx0, label in items:
        lhs = mult * theta(ThetaSpec.of(jn, m + 1), T + 2)
        rhs = QXSeries.zero(T)
        for r in range(m + 2):
            a = theta(ThetaSpec.of(idx(r), m + 2), T + 1)
            b = theta_at_zero(ThetaSpec.of(idx0(r), lev), T + 1)
            rhs = rhs + (a * b).truncate(T)
        if mutate:
            rhs = -rhs
        _series_equal(lhs, rhs, T, f"product decomposition {label}")


# -- runners: spans -----------------------------------------------------------

def _fail_from_verdict(verdict, label):
    if not verdict.ok:
        bad = [d for d in verdict.details if not d["ok"]]
        raise _Fail({"item": label, "failures": bad[:3]})


def _run_theta_close(params, trunc, guard):
    m = int(params["m"])
    T = trunc
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    for s, mult, starget, label in (
            ("even", th0, "even", "0 * class0 in class0"),
            ("odd", th0, "odd", "0 * class1/2 in class1/2"),
            ("even", th1, "odd", "1 * class0 in class1/2"),
            ("odd", th1, "even", "1 * class1/2 in class0")):
        gens = build_Theta(m, s, T + 1)
        target_space = build_Theta(m + 1, starget, T)
        for i, g in enumerate(gens):
            prod = (mult * g).truncate(T)
            res = decompose_in_span(SpanProblem(prod, target_space, T, guard))
            if not res.ok:
                raise _Fail({"item": label, "generator": i, "witness": res.witness})


def _run_theta_tower(params, trunc, guard, mutate=False):
    m = int(params["m"])
    T = trunc
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    gm = build_Theta(m, "all", T + 1)
    rhs = [(th0 * g).truncate(T) for g in gm]
    if not mutate:
        rhs += [(th1 * g).truncate(T) for g in gm]
    lhs = build_Theta(m + 1, "all", T)
    _fail_from_verdict(span_equal(lhs, rhs, T, guard), "full tower")
    if mutate:
        return
    for sa, sb, starget in (("even", "odd", "even"), ("odd", "even", "odd")):
        ga = build_Theta(m, sa, T + 1)
        gb = build_Theta(m, sb, T + 1)
        rhs = [(th0 * g).truncate(T) for g in ga] + [(th1 * g).truncate(T) for g in gb]
        lhs = build_Theta(m + 1, starget, T)
        _fail_from_verdict(span_equal(lhs, rhs, T, guard), f"parity tower {starget}")


def _run_vu_eq(params, trunc, guard, mutate=False):
    m = int(params["m"])
    s = frac(params["s"])
    T = trunc
    v = build_V(m, s, T)
    if mutate:
        other = build_Theta(m, "even" if s == 0 else "odd", T)
        _fail_from_verdict(span_equal(v, other, T, guard), "V vs plain theta span")
        return
    u = build_U(m, s, T)
    _fail_from_verdict(span_equal(v, u, T, guard), "V = U")


def _run_quot_pindep(params, trunc, guard, mutate=False):
    m, p = int(params["m"]), int(params["p"])
    T = trunc
    for s_class, ja, jb, label in ((Fraction(0), 2 * p - HALF, -2 * p + HALF, "class 0"),
                                   (HALF, 2 * p + HALF, -2 * p - HALF, "class 1/2")):
        member = _quot(ja, -HALF, m, T + 1) - _quot(jb, HALF, m, T + 1)
        member = member.truncate(T)
        space = build_U(m, HALF - s_class if mutate else s_class, T)
        res = decompose_in_span(SpanProblem(member, space, T, guard))
        if not res.ok:
            raise _Fail({"item": f"p-shifted quotient membership {label}",
                         "witness": res.witness})


def _run_v_tower(params, trunc, guard):
    m = int(params["m"])
    T = trunc
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    v0 = build_V(m, 0, T + 1)
    vh = build_V(m, HALF, T + 1)
    rhs0 = [(th0 * g).truncate(T) for g in v0] + [(th1 * g).truncate(T) for g in vh]
    _fail_from_verdict(span_equal(build_V(m + 1, 0, T), rhs0, T, guard),
                       "tower, class 0")
    rhsh = [(th0 * g).truncate(T) for g in vh] + [(th1 * g).truncate(T) for g in v0]
    _fail_from_verdict(span_equal(build_V(m + 1, HALF, T), rhsh, T, guard),
                       "tower, class 1/2")


def _run_ch_tower(params, trunc, guard):
    m = int(params["m"])
    T = trunc
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    w = build_CHnum(m, T + 1)
    rhs = [(th0 * g).truncate(T) for g in w] + [(th1 * g).truncate(T) for g in w]
    _fail_from_verdict(span_equal(build_CHnum(m + 1, T), rhs, T, guard),
                       "numerator-level character tower")


def _run_ch_prod(params, trunc, guard):
    m, n = int(params["m"]), int(params["n"])
    for k in range(1, m + n):
        _run_ch_tower({"m": k}, trunc, guard)


def _run_ch_mono(params, trunc, guard):
    m = int(params["m"])
    T = trunc
    w = build_CHnum(m, T)
    dim = span_dim(w, T, guard)
    if dim != m + 1:
        raise _Fail({"item": "monomial span dimension",
                     "expected": m + 1, "got": dim})
    th0 = theta(ThetaSpec.of(0, 1), T + 2)
    th1 = theta(ThetaSpec.of(1, 1), T + 2)
    base = build_CHnum(1, T + m)
    monos = []
    for a in range(m):
        b = m - 1 - a
        factor = QXSeries.one(T + m)
        for _ in range(a):
            factor = factor * th1
        for _ in range(b):
            factor = factor * th0
        for g in base:
            monos.append((factor * g).truncate(T))
    _fail_from_verdict(span_equal(w, monos, T, guard), "theta-monomial span")


def _run_dim_table(params, trunc, guard):
    m = int(params["m"])
    T = trunc
    expect0 = Fraction(m, 2) if m % 2 == 0 else Fraction(m + 1, 2)
    expecth = Fraction(m, 2) + 1 if m % 2 == 0 else Fraction(m + 1, 2)
    d0 = span_dim(build_V(m, 0, T), T, guard)
    dh = span_dim(build_V(m, HALF, T), T, guard)
    if d0 != expect0 or dh != expecth:
        raise _Fail({"item": "dimension table", "m": m,
                     "got": [d0, dh], "expected": [str(expect0), str(expecth)]})
    if m >= 2:
        dt = span_dim(build_Theta(m, "all", T), T, guard)
        if dt != m - 1:
            raise _Fail({"item": "theta-difference dimension", "m": m,
                         "got": dt, "expected": m - 1})


# -- catalogue ----------------------------------------------------------------

@dataclass
class CaseSpec:
    mode: str
    doc: str
    param_domain: dict          # name -> (values tuple or range doc string)
    defaults: list[dict]        # default parameter grid for the suite
    trunc: Fraction
    points: int = 10
    tol: float = 1e-8
    zs: int = 2
    disabled: bool = False
    mutation_of: str | None = None


def _grid(**axes) -> list[dict]:
    out = [{}]
    for name, values in axes.items():
        out = [dict(d, **{name: v}) for d in out for v in values]
    return out


_MS_SMALL = (Fraction(1), Fraction(3, 2), Fraction(2))

CATALOGUE: dict[str, CaseSpec] = {
    "KP": CaseSpec("numeric", "Kac-Peterson closed form for the alternating level-1/2 sum",
                   {"a": (0, 1, 2, 3, 4)}, _grid(a=(0, 1, 2)), Fraction(0),
                   points=20, tol=1e-9, zs=1),
    "OSP-DENOM": CaseSpec("numeric", "osp(3|2)-type denominator identity",
                          {}, [{}], Fraction(0), points=20, tol=1e-9, zs=2),
    "THETA-SHIFT-A": CaseSpec("symbolic", "vartheta_11 half-period shift formulas",
                              {"p": tuple(range(-4, 5))},
                              _grid(p=range(-2, 3)), Fraction(8)),
    "THETA-SHIFT-B": CaseSpec("symbolic", "alternating-theta shift formulas",
                              {"m": tuple(range(1, 7)), "p": tuple(range(-4, 5))},
                              _grid(m=range(1, 6), p=range(-2, 3)), Fraction(8)),
    "THETA-SHIFT-C": CaseSpec("symbolic", "alternating-theta specialization at z=0",
                              {"m": tuple(range(1, 7)), "p": tuple(range(-4, 5))},
                              _grid(m=range(1, 6), p=range(-2, 3)), Fraction(8)),
    "F-REARR-0": CaseSpec("numeric", "double-sum rearrangement, plain shift",
                          {"m": _MS_SMALL + (Fraction(5, 2), Fraction(3))},
                          _grid(m=_MS_SMALL), Fraction(0), points=10, tol=1e-8),
    "F-REARR-H": CaseSpec("numeric", "double-sum rearrangement, half shift",
                          {"m": _MS_SMALL + (Fraction(5, 2), Fraction(3))},
                          _grid(m=_MS_SMALL), Fraction(0), points=10, tol=1e-8),
    "SUMDIFF-0": CaseSpec("numeric", "difference of rearrangements, closed eta form",
                          {"m": _MS_SMALL}, _grid(m=_MS_SMALL), Fraction(0),
                          points=10, tol=1e-8),
    "SUMDIFF-H": CaseSpec("numeric", "difference of rearrangements, half shift",
                          {"m": _MS_SMALL}, _grid(m=_MS_SMALL), Fraction(0),
                          points=10, tol=1e-8),
    "PHI0-EXPL": CaseSpec("numeric", "explicit two-variable formula, plain shift",
                          {"m": _MS_SMALL}, _grid(m=_MS_SMALL), Fraction(0),
                          points=10, tol=1e-8),
    "PHIH-EXPL": CaseSpec("numeric", "explicit two-variable formula, half shift",
                          {"m": _MS_SMALL}, _grid(m=_MS_SMALL), Fraction(0),
                          points=10, tol=1e-8),
    "SPEC-0": CaseSpec("symbolic", "half-period specialization formula, class 0",
                       {"m": (1, 2, 3, 4), "p": (0, 1, 2)},
                       _grid(m=(1, 2, 3, 4), p=(0, 1, 2)), Fraction(8)),
    "SPEC-H": CaseSpec("symbolic", "half-period specialization formula, class 1/2",
                       {"m": (1, 2, 3, 4), "p": (0, 1, 2)},
                       _grid(m=(1, 2, 3, 4), p=(0, 1, 2)), Fraction(8)),
    "SHIFT-A": CaseSpec("both", "elliptic shift law (numeric general, symbolic specialized)",
                        {"m": (1, 2, 3, 4), "s": (Fraction(0), HALF, Fraction(1), Fraction(3, 2)),
                         "a": (1, 2)},
                        _grid(m=(1, 2, 3), s=(Fraction(0), HALF), a=(1, 2)),
                        Fraction(8), points=6, tol=1e-8),
    "SHIFT-T8": CaseSpec("symbolic", "t = tau/8 prefactor anchor",
                         {"m": (1, 2, 3, 4)}, _grid(m=(1, 2, 3, 4)), Fraction(8)),
    "NUM-0": CaseSpec("symbolic", "numerator product formula, class 0",
                      {"m": (1, 2, 3, 4), "p": (0, 1, 2)},
                      _grid(m=(1, 2, 3, 4), p=(0, 1, 2)), Fraction(10)),
    "NUM-H": CaseSpec("symbolic", "numerator product formula, class 1/2",
                      {"m": (1, 2, 3, 4), "p": (0, 1, 2)},
                      _grid(m=(1, 2, 3, 4), p=(0, 1, 2)), Fraction(10)),
    "THETA-CLOSE": CaseSpec("spans", "theta multiplication maps parity spans upward",
                            {"m": (2, 3, 4)}, _grid(m=(2, 3, 4)), Fraction(12)),
    "THETA-EVAL": CaseSpec("symbolic", "half-period evaluations",
                           {}, [{}], Fraction(12)),
    "THETA-TOWER": CaseSpec("spans", "theta-difference span tower",
                            {"m": (2, 3, 4)}, _grid(m=(2, 3, 4)), Fraction(12)),
    "VU-EQ": CaseSpec("spans", "numerator span equals quotient span",
                      {"m": (1, 2, 3), "s": (Fraction(0), HALF)},
                      _grid(m=(1, 2, 3), s=(Fraction(0), HALF)), Fraction(12)),
    "QUOT-PINDEP": CaseSpec("spans", "p-shifted quotient membership",
                            {"m": (1, 2, 3), "p": (0, 1, 2)},
                            _grid(m=(1, 2, 3), p=(0, 1, 2)), Fraction(12)),
    "QUOT-CLOSE": CaseSpec("symbolic", "theta product decompositions",
                           {"m": (1, 2, 3)}, _grid(m=(1, 2, 3)), Fraction(12)),
    "V-TOWER": CaseSpec("spans", "numerator span tower",
                        {"m": (1, 2, 3)}, _grid(m=(1, 2, 3)), Fraction(12)),
    "CH-TOWER": CaseSpec("spans", "numerator-level character tower",
                         {"m": (1, 2, 3)}, _grid(m=(1, 2, 3)), Fraction(12)),
    "CH-PROD": CaseSpec("spans", "product-of-spaces chain via the tower",
                        {"m": (1, 2, 3), "n": (1, 2, 3)},
                        [{"m": m, "n": n} for m in (1, 2, 3) for n in (1, 2, 3)
                         if m + n <= 4], Fraction(12)),
    "CH-MONO": CaseSpec("spans", "theta-monomial basis of the numerator space",
                        {"m": (1, 2, 3)}, _grid(m=(1, 2, 3)), Fraction(12)),
    "DIM-TABLE": CaseSpec("spans", "dimension table for numerator spans",
                          {"m": (1, 2, 3, 4)}, _grid(m=(1, 2, 3, 4)), Fraction(12)),
    "THETA-EVAL-AMB-A": CaseSpec(
        "symbolic", "ambiguous half-period display, reading A (disabled)",
        {}, [{}], Fraction(12), disabled=True),
    "THETA-EVAL-AMB-B": CaseSpec(
        "symbolic", "ambiguous half-period display, reading B (disabled)",
        {}, [{}], Fraction(12), disabled=True),
}

_MUTATIONS = {
    "THETA-SHIFT-A-MUT": ("THETA-SHIFT-A", [{"p": 0}]),
    "THETA-SHIFT-B-MUT": ("THETA-SHIFT-B", [{"m": 2, "p": 0}]),
    "THETA-SHIFT-C-MUT": ("THETA-SHIFT-C", [{"m": 2, "p": 0}]),
    "SPEC-0-MUT": ("SPEC-0", [{"m": 2, "p": 0}]),
    "SPEC-H-MUT": ("SPEC-H", [{"m": 2, "p": 0}]),
    "SHIFT-T8-MUT": ("SHIFT-T8", [{"m": 2}]),
    "SHIFT-A-MUT": ("SHIFT-A", [{"m": 2, "s": HALF, "a": 1}]),
    "NUM-0-MUT": ("NUM-0", _grid(m=(1, 2, 3, 4), p=(0, 1, 2))),
    "NUM-H-MUT": ("NUM-H", _grid(m=(1, 2, 3, 4), p=(0, 1, 2))),
    "THETA-EVAL-MUT": ("THETA-EVAL", [{}]),
    "QUOT-CLOSE-MUT": ("QUOT-CLOSE", [{"m": 2}]),
    "QUOT-PINDEP-MUT": ("QUOT-PINDEP", [{"m": 2, "p": 1}]),
    "VU-EQ-MUT": ("VU-EQ", [{"m": 2, "s": Fraction(0)}]),
    "THETA-TOWER-MUT": ("THETA-TOWER", [{"m": 3}]),
}

for _mid, (_base, _grid_list) in _MUTATIONS.items():
    _bs = CATALOGUE[_base]
    CATALOGUE[_mid] = CaseSpec(
        _bs.mode, f"mutated variant of {_base}; must fail", _bs.param_domain,
        _grid_list, _bs.trunc, points=_bs.points, tol=_bs.tol, zs=_bs.zs,
        mutation_of=_base)


def case_ids(include_disabled: bool = False) -> list[str]:
    return [cid for cid, spec in CATALOGUE.items()
            if include_disabled or not spec.disabled]


def _case_seed(case: IdentityCase) -> int:
    key = case.id + "|" + "|".join(
        f"{k}={case.params[k]}" for k in sorted(case.params))
    return (case.seed * 1000003 + zlib.crc32(key.encode())) % (2 ** 31)


def _validate_params(cid: str, spec: CaseSpec, params: dict) -> dict:
    clean = {}
    for name, domain in spec.param_domain.items():
        if name not in params or params[name] is None:
            raise ValueError(
                f"case {cid} requires parameter {name} in {sorted(map(str, domain))}")
        value = frac(params[name])
        if value.denominator == 1:
            value = int(value)
        allowed = [frac(v) for v in domain]
        if frac(value) not in allowed:
            raise ValueError(
                f"case {cid}: {name}={value} outside valid range "
                f"{sorted(map(str, domain), key=str)}")
        clean[name] = value
    if cid == "CH-PROD" and clean["m"] + clean["n"] > 4:
        raise ValueError("case CH-PROD requires m + n <= 4")
    for extra in params:
        if extra not in spec.param_domain and params[extra] is not None:
            raise ValueError(f"case {cid} does not take parameter {extra}")
    return clean


def _dispatch_symbolic(cid: str, params: dict, trunc: Fraction, mutate: bool):
    if cid == "THETA-SHIFT-A":
        _run_theta_shift_a(params, trunc, mutate)
    elif cid == "THETA-SHIFT-B":
        _run_theta_shift_b(params, trunc, mutate)
    elif cid == "THETA-SHIFT-C":
        _run_theta_shift_c(params, trunc, mutate)
    elif cid == "SPEC-0":
        _run_spec(params, trunc, Fraction(0), mutate)
    elif cid == "SPEC-H":
        _run_spec(params, trunc, HALF, mutate)
    elif cid == "NUM-0":
        _run_num(params, trunc, Fraction(0), mutate)
    elif cid == "NUM-H":
        _run_num(params, trunc, HALF, mutate)
    elif cid == "SHIFT-T8":
        _run_shift_t8(params, trunc, mutate)
    elif cid == "THETA-EVAL":
        _run_theta_eval(params, trunc, mutate)
    elif cid == "THETA-EVAL-AMB-A":
        _run_theta_eval_ambiguous("A", trunc)
    elif cid == "THETA-EVAL-AMB-B":
        _run_theta_eval_ambiguous("B", trunc)
    elif cid == "QUOT-CLOSE":
        _run_quot_close(params, trunc, mutate)
    else:
        raise ModeUnsupported(f"no symbolic runner for {cid}")


def _dispatch_spans(cid: str, params: dict, trunc: Fraction, guard: int,
                    mutate: bool):
    if cid == "THETA-CLOSE":
        _run_theta_close(params, trunc, guard)
    elif cid == "THETA-TOWER":
        _run_theta_tower(params, trunc, guard, mutate)
    elif cid == "VU-EQ":
        _run_vu_eq(params, trunc, guard, mutate)
    elif cid == "QUOT-PINDEP":
        _run_quot_pindep(params, trunc, guard, mutate)
    elif cid == "V-TOWER":
        _run_v_tower(params, trunc, guard)
    elif cid == "CH-TOWER":
        _run_ch_tower(params, trunc, guard)
    elif cid == "CH-PROD":
        _run_ch_prod(params, trunc, guard)
    elif cid == "CH-MONO":
        _run_ch_mono(params, trunc, guard)
    elif cid == "DIM-TABLE":
        _run_dim_table(params, trunc, guard)
    else:
        raise ModeUnsupported(f"no spans runner for {cid}")


def run_case(case: IdentityCase) -> Report:
    """Execute one catalogue case; deterministic given (params, trunc, seed)."""
    cid = case.id
    if cid not in CATALOGUE:
        raise KeyError(f"unknown identity {cid}")
    spec = CATALOGUE[cid]
    base_id = spec.mutation_of or cid
    base_spec = CATALOGUE[base_id]
    mutate = spec.mutation_of is not None
    params = _validate_params(cid, base_spec, case.params)
    trunc = frac(case.trunc) if case.trunc is not None else base_spec.trunc
    points = case.points if case.points is not None else base_spec.points
    tol = case.tol if case.tol is not None else base_spec.tol
    seed = _case_seed(case)
    start = time.perf_counter()
    status, witness, residual = "pass", None, None
    try:
        if base_spec.mode == "symbolic":
            _dispatch_symbolic(base_id, params, trunc, mutate)
        elif base_spec.mode == "spans":
            _dispatch_spans(base_id, params, trunc, case.guard, mutate)
        elif base_spec.mode == "numeric":
            residual, witness = _run_numeric_case(base_id, params, points,
                                                  tol, seed)
            if residual >= tol:
                status = "fail"
        elif base_spec.mode == "both":
            _run_shift_a_symbolic(params, trunc, mutate)
            if not mutate:
                pts = sample_points(seed, points, zs=2)
                fn = _shift_a_residual(int(params["m"]), frac(params["s"]),
                                       int(params["a"]), SignVariant.MINUS)
                fn2 = _shift_a_residual(int(params["m"]), frac(params["s"]),
                                        int(params["a"]), SignVariant.NONE)
                residual = max(max(fn(pt) for pt in pts),
                               max(fn2(pt) for pt in pts))
                if residual >= tol:
                    status = "fail"
                    witness = {"item": "numeric elliptic shift"}
        else:
            raise ModeUnsupported(base_spec.mode)
    except _Fail as exc:
        status = "fail"
        witness = exc.witness
    except MockformsError as exc:
        status = "error"
        witness = {"error": type(exc).__name__, "message": str(exc)}
    if mutate:
        if status == "fail":
            status = "pass"
            witness = {"note": "perturbed identity failed as required",
                       "first_discrepancy": witness}
        elif status == "pass":
            status = "fail"
            witness = {"note": "perturbed identity unexpectedly verified"}
    millis = (time.perf_counter() - start) * 1000.0
    return Report(id=cid, params={k: str(v) for k, v in params.items()},
                  mode=base_spec.mode, status=status, witness=witness,
                  residual=residual,
                  trunc=str(trunc) if base_spec.mode in ("symbolic", "spans", "both") else None,
                  tol=tol if base_spec.mode in ("numeric", "both") else None,
                  seed=seed if base_spec.mode in ("numeric", "both") else None,
                  millis=round(millis, 3))


def _run_numeric_case(cid: str, params: dict, points: int, tol: float,
                      seed: int) -> tuple[float, dict | None]:
    spec = CATALOGUE[cid]
    pts = sample_points(seed, points, zs=spec.zs)
    if cid == "KP":
        fn = _kp_residual(int(params["a"]))
        worst, arg = _run_numeric(pts, tol, fn)
    elif cid == "OSP-DENOM":
        worst, arg = _run_numeric(pts, tol, _osp_residual())
    else:
        m = frac(params["m"])
        if cid in ("F-REARR-0", "F-REARR-H"):
            s = Fraction(0) if cid.endswith("0") else HALF
            extra = sample_points(seed + 1, points, zs=1)
            worst, arg = 0.0, -1
            for i, (pt, ex) in enumerate(zip(pts, extra)):
                for part in (1, 2):
                    fn = _frearr_residual(m, s, part, ex.z1)
                    r = fn(pt)
                    if r > worst:
                        worst, arg = r, i
        elif cid in ("SUMDIFF-0", "SUMDIFF-H"):
            s = Fraction(0) if cid.endswith("0") else HALF
            worst, arg = _run_numeric(pts, tol, _sumdiff_residual(m, s))
        elif cid in ("PHI0-EXPL", "PHIH-EXPL"):
            s = Fraction(0) if cid.endswith("0-EXPL") else HALF
            worst, arg = _run_numeric(pts, tol, _phi_expl_residual(m, s))
        else:
            raise ModeUnsupported(f"no numeric runner for {cid}")
    witness = None
    if worst >= tol:
        witness = {"point_index": arg, "max_residual": worst}
    return worst, witness


def default_cases(seed: int = 0, qmax: Fraction | None = None,
                  include: str = "*") -> list[IdentityCase]:
    """The default suite: every enabled catalogue id over its default grid."""
    cases = []
    for cid, spec in CATALOGUE.items():
        if spec.disabled:
            continue
        if not fnmatch.fnmatch(cid, include):
            continue
        for params in spec.defaults:
            cases.append(IdentityCase(id=cid, params=dict(params),
                                      trunc=qmax, seed=seed))
    return cases


def run_suite(filter_glob: str = "*", seed: int = 0,
              qmax: Fraction | None = None, jobs: int = 1) -> dict:
    """Run the filtered default suite; deterministic aggregate summary."""
    cases = default_cases(seed=seed, qmax=qmax, include=filter_glob)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(run_case, cases))
    else:
        reports = [run_case(c) for c in cases]
    reports.sort(key=lambda r: (r.id, sorted(r.params.items())))
    summary = {
        "total": len(reports),
        "pass": sum(r.status == "pass" for r in reports),
        "fail": sum(r.status == "fail" for r in reports),
        "error": sum(r.status == "error" for r in reports),
        "cases": [r.as_dict() for r in reports],
    }
    return summary
