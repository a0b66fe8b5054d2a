"""Linear algebra over truncated Laurent series in q^(1/D), and the span
builders for the theta-difference, numerator, and quotient spaces.

A bivariate series is viewed as a vector over its x-exponent classes, each
component a truncated q-Laurent series with cyclotomic coefficients.  Span
questions ("is the target a combination of the generators with q-series
scalars?") are decided by Gaussian elimination with pivoting on least
q-valuation, with a guard band: the last ``guard`` q-orders are withheld
from all solve/consistency decisions and used only to certify the result.
A truncated certificate is evidence for the corresponding all-orders
statement, not a proof of it; the guard band gives the falsifiable margin.

Ranks are cross-checked by an independent route: substituting an exact
rational for q^(1/D) and computing the rank over the cyclotomic field.  The
two ranks must agree, otherwise the computation reports instability instead
of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import RankUnstable
from .mock import numerator
from .ring import CycNumber, frac
from .series import QXSeries, invert_unit
from .special import ThetaSpec, theta, theta_diff

_ZERO = CycNumber.from_rational(0)


class _TS:
    """Truncated q-Laurent series on an integer key lattice (internal)."""

    __slots__ = ("dq", "prec", "terms")

    def __init__(self, dq: int, prec: int, terms: dict[int, CycNumber]):
        self.dq = dq
        self.prec = prec
        self.terms = terms

    def val(self) -> int | None:
        return min(self.terms) if self.terms else None

    def is_zero_below(self, key: int) -> bool:
        return all(k >= key for k in self.terms)

    def rescale(self, dq: int) -> "_TS":
        if dq == self.dq:
            return self
        f = dq // self.dq
        return _TS(dq, self.prec * f, {k * f: c for k, c in self.terms.items()})

    def __add__(self, other: "_TS") -> "_TS":
        prec = min(self.prec, other.prec)
        terms = {k: c for k, c in self.terms.items() if k < prec}
        for k, c in other.terms.items():
            if k >= prec:
                continue
            if k in terms:
                s = _cadd(terms[k], c)
                if s.is_zero():
                    del terms[k]
                else:
                    terms[k] = s
            else:
                terms[k] = c
        return _TS(self.dq, prec, terms)

    def __neg__(self) -> "_TS":
        return _TS(self.dq, self.prec, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "_TS") -> "_TS":
        return self + (-other)

    def __mul__(self, other: "_TS") -> "_TS":
        sval = self.val()
        oval = other.val()
        if sval is None or oval is None:
            prec = min(
                self.prec + (oval if oval is not None else other.prec),
                other.prec + (sval if sval is not None else self.prec))
            return _TS(self.dq, prec, {})
        prec = min(self.prec + oval, other.prec + sval)
        terms: dict[int, CycNumber] = {}
        okeys = sorted(other.terms)
        for ka in sorted(self.terms):
            ca = self.terms[ka]
            for kb in okeys:
                k = ka + kb
                if k >= prec:
                    break
                p = _cmul(ca, other.terms[kb])
                if k in terms:
                    s = _cadd(terms[k], p)
                    if s.is_zero():
                        del terms[k]
                    else:
                        terms[k] = s
                else:
                    terms[k] = p
        return _TS(self.dq, prec, terms)

    def inverse(self, prec_out: int) -> "_TS":
        v = self.val()
        if v is None:
            raise ZeroDivisionError("inverse of (truncation-level) zero series")
        lead = self.terms[v]
        lead_inv = lead.inverse()
        # u = self/lead_monomial - 1, positive valuation.
        u = {k - v: _cmul(c, lead_inv) for k, c in self.terms.items() if k != v}
        h = {0: CycNumber.from_rational(1)}
        limit = min(prec_out + v, self.prec - v)
        keys = sorted(u)
        queue = [0]
        seen = {0}
        idx = 0
        while idx < len(queue):
            base = queue[idx]
            idx += 1
            cb = h.get(base)
            if cb is None or cb.is_zero():
                continue
            for dk in keys:
                k = base + dk
                if k >= limit:
                    break
                p = _cmul(cb, u[dk])
                if k in h:
                    s = _cadd(h[k], -p)
                    if s.is_zero():
                        del h[k]
                    else:
                        h[k] = s
                else:
                    h[k] = -p
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
            queue.sort()
        return _TS(self.dq, limit - v,
                   {k - v: _cmul(c, lead_inv) for k, c in h.items() if not c.is_zero()})

    def __truediv__(self, other: "_TS") -> "_TS":
        inv = other.inverse(self.prec - (other.val() or 0))
        return self * inv

    def substitute(self, rho: Fraction) -> CycNumber:
        """Exact value at q^(1/dq) = rho."""
        total = _ZERO
        for k, c in self.terms.items():
            total = _cadd(total, c.scale(rho ** k))
        return total

    def to_qxseries(self) -> QXSeries:
        return QXSeries(self.dq, 1, self.prec,
                        {k: {0: c} for k, c in self.terms.items()})


def _cadd(a: CycNumber, b: CycNumber) -> CycNumber:
    if a.order != b.order:
        from .ring import common_order
        a, b = common_order(a, b)
    return a + b


def _cmul(a: CycNumber, b: CycNumber) -> CycNumber:
    if a.order != b.order:
        from .ring import common_order
        a, b = common_order(a, b)
    return a * b


def as_vector(f: QXSeries, dq: int, dx: int, prec: int) -> dict[int, _TS]:
    """Transpose a series into x-class components on the given lattice."""
    g = f.rescaled(dq, dx)
    comps: dict[int, dict[int, CycNumber]] = {}
    for qk, xp in g.terms.items():
        for xk, c in xp.items():
            comps.setdefault(xk, {})[qk] = c
    return {xk: _TS(dq, prec, terms) for xk, terms in comps.items()}


@dataclass
class SpanProblem:
    target: QXSeries
    generators: list[QXSeries]
    trunc: Fraction
    guard: int = 4

    def __post_init__(self):
        self.trunc = frac(self.trunc)
        if self.guard < 2:
            raise ValueError("guard must be at least 2 q-orders")


@dataclass
class Decomposition:
    ok: bool
    coefficients: list[QXSeries] | None = None
    checked_to: Fraction | None = None
    witness: dict | None = None
    certificate: dict = field(default_factory=dict)


def _common_lattice(series: list[QXSeries], trunc: Fraction):
    dq = trunc.denominator
    dx = 1
    for f in series:
        dq = lcm(dq, f.dq)
        dx = lcm(dx, f.dx)
    return dq, dx


def decompose_in_span(pb: SpanProblem) -> Decomposition:
    """Solve target = sum_i c_i(q) * generator_i over truncated q-series.

    Pivots and consistency use only q-orders below trunc - guard; the guard
    band enters solely through the final re-multiplication certificate.
    Underdetermined-but-consistent systems take the first consistent pivot
    set in generator order, with free coefficients set to zero.
    """
    trunc = pb.trunc
    guard_band = Fraction(pb.guard)
    limit = trunc - guard_band
    all_series = [pb.target] + list(pb.generators)
    prec = min([trunc] + [f.trunc for f in all_series])
    dq, dx = _common_lattice(all_series, trunc)
    prec_key = int(prec * dq)
    limit_key = int(limit * dq)

    cols = [as_vector(g, dq, dx, prec_key) for g in pb.generators]
    tvec = as_vector(pb.target, dq, dx, prec_key)
    rows = sorted(set().union(tvec, *cols))
    zero = _TS(dq, prec_key, {})
    matrix = {
        xk: [col.get(xk, zero) for col in cols] + [tvec.get(xk, zero)]
        for xk in rows
    }

    ncols = len(cols)
    avail = list(rows)
    pivots: list[tuple[int, int]] = []
    used_cols: set[int] = set()
    while len(used_cols) < ncols:
        best = None
        for xk in avail:
            for ci in range(ncols):
                if ci in used_cols:
                    continue
                v = matrix[xk][ci].val()
                if v is None or v >= limit_key:
                    continue
                cand = (v, ci, xk)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        _, ci, xk = best
        pivots.append((xk, ci))
        used_cols.add(ci)
        avail.remove(xk)
        prow = matrix[xk]
        for rk in avail:
            row = matrix[rk]
            entry = row[ci]
            if not entry.terms:
                continue
            factor = entry / prow[ci]
            for cj in range(ncols + 1):
                if cj == ci or (cj in used_cols and cj != ncols):
                    continue
                if prow[cj].terms or row[cj].terms:
                    row[cj] = row[cj] - factor * prow[cj]
            row[ci] = _TS(dq, row[ci].prec, {})

    # Consistency of untouched rows below the solve limit.
    for rk in avail:
        resid = matrix[rk][ncols]
        if not resid.is_zero_below(min(limit_key, resid.prec)):
            bad = min(k for k in resid.terms if k < limit_key)
            return Decomposition(ok=False, witness={
                "x_class": str(Fraction(rk, dx)),
                "q_order": str(Fraction(bad, dq)),
                "coefficient": repr(resid.terms[bad]),
            })

    # Back-substitution over the pivot rows, in reverse pivot order.
    coeff_ts: list[_TS | None] = [None] * ncols
    for xk, ci in reversed(pivots):
        row = matrix[xk]
        rhs = row[ncols]
        for cj in range(ncols):
            if cj == ci or coeff_ts[cj] is None:
                continue
            if row[cj].terms:
                rhs = rhs - row[cj] * coeff_ts[cj]
        coeff_ts[ci] = rhs / row[ci]
    for ci in range(ncols):
        if coeff_ts[ci] is None:
            coeff_ts[ci] = _TS(dq, prec_key, {})

    # Certificate: exact re-multiplication, guard band included.
    combo = QXSeries.zero(prec, dq, dx)
    for ts, gen in zip(coeff_ts, pb.generators):
        combo = combo + ts.to_qxseries() * gen
    check_to = min(prec, combo.trunc)
    diff = combo - pb.target
    bad = None
    for qe, xe, c in diff.support():
        if qe < check_to:
            bad = (qe, xe, c)
            break
    if bad is not None:
        in_guard = bad[0] >= limit
        return Decomposition(ok=False, witness={
            "x_class": str(bad[1]),
            "q_order": str(bad[0]),
            "coefficient": repr(bad[2]),
            "guard_band": in_guard,
        })
    if check_to < trunc:
        cert = {"checked_to": str(check_to), "requested": str(trunc)}
    else:
        cert = {"checked_to": str(check_to)}
    return Decomposition(ok=True,
                         coefficients=[ts.to_qxseries() for ts in coeff_ts],
                         checked_to=check_to, certificate=cert)


def _elimination_rank(gens: list[QXSeries], trunc: Fraction, guard: int) -> int:
    limit = trunc - guard
    dq, dx = _common_lattice(gens, trunc)
    prec = min([trunc] + [g.trunc for g in gens])
    prec_key, limit_key = int(prec * dq), int(limit * dq)
    rows = [as_vector(g, dq, dx, prec_key) for g in gens]
    zero = _TS(dq, prec_key, {})
    cols = sorted(set().union(*rows)) if rows else []
    rank = 0
    active = list(range(len(rows)))
    for _ in range(len(gens)):
        best = None
        for ri in active:
            for xk in cols:
                v = rows[ri].get(xk, zero).val()
                if v is None or v >= limit_key:
                    continue
                cand = (v, ri, xk)
                if best is None or cand < best:
                    best = cand
        if best is None:
            break
        _, ri, xk = best
        rank += 1
        active.remove(ri)
        prow = rows[ri]
        pentry = prow[xk]
        for rj in active:
            entry = rows[rj].get(xk, zero)
            if not entry.terms:
                continue
            factor = entry / pentry
            for ck in set(prow) | set(rows[rj]):
                a = rows[rj].get(ck, zero)
                b = prow.get(ck, zero)
                if b.terms or a.terms:
                    rows[rj][ck] = a - factor * b
            rows[rj][xk] = zero
    return rank


def _substitution_rank(gens: list[QXSeries], trunc: Fraction,
                       rho: Fraction) -> int:
    dq, dx = _common_lattice(gens, trunc)
    prec = min([trunc] + [g.trunc for g in gens])
    prec_key = int(prec * dq)
    vecs = []
    cols = set()
    for g in gens:
        comp = as_vector(g, dq, dx, prec_key)
        vec = {xk: ts.substitute(rho) for xk, ts in comp.items()}
        vecs.append(vec)
        cols.update(vec)
    order = sorted(cols)
    rank = 0
    rows = [dict(v) for v in vecs]
    for xk in order:
        pivot = None
        for ri, row in enumerate(rows):
            c = row.get(xk, _ZERO)
            if not c.is_zero():
                pivot = ri
                break
        if pivot is None:
            continue
        rank += 1
        prow = rows.pop(pivot)
        pc = prow[xk]
        pc_inv = pc.inverse()
        for row in rows:
            c = row.get(xk, _ZERO)
            if c.is_zero():
                continue
            f = _cmul(c, pc_inv)
            for ck, pv in prow.items():
                cur = row.get(ck, _ZERO)
                row[ck] = _cadd(cur, -_cmul(f, pv))
    return rank


def span_dim(gens: list[QXSeries], trunc, guard: int = 4,
             rho: Fraction = Fraction(1, 7)) -> int:
    """Rank of the generator family over truncated q-series.

    Computed by valuation-pivot elimination and cross-checked by exact rank
    after the rational substitution q^(1/D) <- rho; disagreement raises
    RankUnstable (raise the truncation order).
    """
    trunc = frac(trunc)
    if not gens:
        return 0
    r1 = _elimination_rank(gens, trunc, guard)
    r2 = _substitution_rank(gens, trunc, rho)
    if r1 != r2:
        raise RankUnstable(
            f"elimination rank {r1} != substitution rank {r2} at trunc {trunc}")
    return r1


@dataclass
class SpanVerdict:
    ok: bool
    details: list[dict]


def span_equal(a: list[QXSeries], b: list[QXSeries], trunc,
               guard: int = 4) -> SpanVerdict:
    """Mutual decomposition of every generator; verdict carries certificates."""
    trunc = frac(trunc)
    details = []
    ok = True
    for label, targets, gens in (("b_in_a", b, a), ("a_in_b", a, b)):
        for i, t in enumerate(targets):
            if not gens:
                good = t.is_zero()
                details.append({"direction": label, "index": i,
                                "ok": good, "witness": None if good else
                                {"reason": "empty generator set"}})
                ok = ok and good
                continue
            res = decompose_in_span(SpanProblem(t, gens, trunc, guard))
            details.append({"direction": label, "index": i, "ok": res.ok,
                            "witness": res.witness})
            ok = ok and res.ok
    return SpanVerdict(ok, details)


# -- builders ----------------------------------------------------------------

def build_Theta(m: int, parity: str, trunc) -> list[QXSeries]:
    """Generators [theta_{j,m} - theta_{-j,m}](tau, z), j = 1..m-1 with parity
    in {"all", "even", "odd"}."""
    trunc = frac(trunc)
    keep = {"all": (0, 1), "even": (0,), "odd": (1,)}[parity]
    return [theta_diff(j, m, trunc) for j in range(1, m) if j % 2 in keep]


def build_V(m: int, s, trunc, p: int = 0) -> list[QXSeries]:
    """Numerator-space generators: s-shifted specializations with s running
    over integers (parity class 0) or half-odds (class 1/2) in (0, (m+1)/2]."""
    trunc = frac(trunc)
    s = frac(s)
    out = []
    sv = Fraction(1) if s == 0 else Fraction(1, 2)
    while sv <= Fraction(m + 1, 2):
        out.append(numerator(m, sv, trunc, p=p))
        sv += 1
    return out


def build_U(m: int, s, trunc) -> list[QXSeries]:
    """Quotient generator plus parity theta differences.

    class 0:  theta_{-1/2,m+1}/theta_{-1/2,1} - theta_{1/2,m+1}/theta_{1/2,1}
              and [theta_{k,m} - theta_{-k,m}] for even k in 1..m-1;
    class 1/2: theta_{1/2,m+1}/theta_{-1/2,1} - theta_{-1/2,m+1}/theta_{1/2,1}
              and odd k.
    """
    trunc = frac(trunc)
    s = frac(s)
    half = Fraction(1, 2)
    pad = trunc + 1
    inv_minus = invert_unit(theta(ThetaSpec.of(-half, 1), pad + 1), pad)
    inv_plus = invert_unit(theta(ThetaSpec.of(half, 1), pad + 1), pad)
    if s == 0:
        quot = (theta(ThetaSpec.of(-half, m + 1), pad) * inv_minus
                - theta(ThetaSpec.of(half, m + 1), pad) * inv_plus)
        ks = range(2, m, 2)
    else:
        quot = (theta(ThetaSpec.of(half, m + 1), pad) * inv_minus
                - theta(ThetaSpec.of(-half, m + 1), pad) * inv_plus)
        ks = range(1, m, 2)
    gens = [quot.truncate(trunc)]
    gens.extend(theta_diff(k, m, trunc) for k in ks)
    return gens


def build_CHnum(m: int, trunc) -> list[QXSeries]:
    """Numerator-level character space: both parity classes together."""
    return build_V(m, 0, trunc) + build_V(m, Fraction(1, 2), trunc)
