"""Both sides of each q-series identity, and the verifier comparing them.

Every builder takes a truncation order N and returns an exact
:class:`~qverify.qseries.QSeries`.  Sums over n stop at the first summand
whose q-valuation exceeds N.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from math import isqrt
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .errors import BuilderPreconditionViolated, UnknownIdentity
from .qseries import PochBase, QSeries, poch_finite, poch_infinite, series_reciprocal
from .symcoeff import SymbolicCoefficient

Builder = Callable[[int], QSeries]


def tri(n: int) -> int:
    return n * (n + 1) // 2


def _sum_over_n(order: int, valuation: Callable[[int], int], summand: Callable[[int], QSeries],
                start: int = 0) -> QSeries:
    total = QSeries.zero(order)
    n = start
    while valuation(n) <= order:
        total = total + summand(n)
        n += 1
    return total


Q = PochBase.of(1, 1)            # (q; q)
MINUS_Q = PochBase.of(-1, 1)     # (-q; q)
ZQ = PochBase.of(1, 1, z=1)      # (zq; q)
BQ = PochBase.of(1, 1, b=1)      # (bq; q)


# -- the F-sum and its relatives ------------------------------------------------

def build_F(order: int, zsign: int = 1) -> QSeries:
    """sum_n (za)_n / ((q)_n (zq)_n) z^n q^(n(n+1)/2), with z replaced by zsign*z."""

    def summand(n):
        s = QSeries.term(order, tri(n), SymbolicCoefficient.term(zsign ** n, z=n))
        s = s.mul_poch(PochBase.of(zsign, 0, z=1, a=1), n)
        s = s.div_poch(Q, n)
        return s.div_poch(PochBase.of(zsign, 1, z=1), n)

    return _sum_over_n(order, tri, summand)


def _thm1_side(order: int, zsign: int) -> QSeries:
    # sum_n (za)_n (z q^{n+1})_inf / (q)_n * z^n q^{n(n+1)/2}, z -> zsign*z

    def summand(n):
        s = QSeries.term(order, tri(n), SymbolicCoefficient.term(zsign ** n, z=n))
        s = s.mul_poch(PochBase.of(zsign, 0, z=1, a=1), n)
        s = s.mul_poch(PochBase.of(zsign, n + 1, z=1))
        return s.div_poch(Q, n)

    return _sum_over_n(order, tri, summand)


def thm1_lhs(order):
    return _thm1_side(order, 1)


def thm1_rhs(order):
    return _thm1_side(order, -1)


def raw_lhs(order):
    return build_F(order).mul_poch(ZQ)


def raw_rhs(order):
    return build_F(order, zsign=-1).mul_poch(PochBase.of(-1, 1, z=1))


def raw_recip_rhs(order):
    ratio = poch_infinite(PochBase.of(-1, 1, z=1), 1, order) * series_reciprocal(poch_infinite(ZQ, 1, order))
    return ratio * build_F(order, zsign=-1)


# -- Lebesgue and the Ramanujan summation ---------------------------------------

def lebesgue_lhs(order):
    def summand(n):
        s = QSeries.term(order, tri(n))
        return s.mul_poch(PochBase.of(-1, 1, a=1), n).div_poch(Q, n)

    return _sum_over_n(order, tri, summand)


def lebesgue_rhs(order):
    num = poch_infinite(PochBase.of(-1, 2, a=1), 2, order)
    return num * series_reciprocal(poch_infinite(Q, 2, order))


RAMANUJAN_GRID = {"a=1": (1, 0), "a=q": (1, 1), "a=-q": (-1, 1)}


def _ramanujan_lhs(order, sign, alpha):
    # (-b/a)_n a^n = prod_{i<n} (a + b q^i), polynomial in a; here a = sign*q^alpha
    a_term = QSeries.term(order, alpha, sign)

    def summand(n):
        s = QSeries.term(order, tri(n))
        for i in range(n):
            s = s * (a_term + QSeries.term(order, i, SymbolicCoefficient.symbol("b")))
        return s.div_poch(Q, n).div_poch(BQ, n)

    return _sum_over_n(order, lambda n: tri(n) + alpha * n, summand)


def _ramanujan_rhs(order, sign, alpha):
    num = poch_infinite(PochBase.of(-sign, 1 + alpha), 1, order)
    return num * series_reciprocal(poch_infinite(BQ, 1, order))


# -- Corollaries of the evenness identity -----------------------------------------

def _cor_lhs(order, eps):
    # sum_n (eps q^{n+1})_inf eps^n q^{n(n+1)/2}
    def summand(n):
        return QSeries.term(order, tri(n), eps ** n).mul_poch(PochBase.of(eps, n + 1))

    return _sum_over_n(order, tri, summand)


def _cor_rhs(order, eps):
    # sum_n (eps q^{n+1})_inf (-q)_n/(q)_n eps^n q^{n(n+1)/2}
    def summand(n):
        s = QSeries.term(order, tri(n), eps ** n).mul_poch(PochBase.of(eps, n + 1))
        over = poch_finite(MINUS_Q, n, 1, order) * series_reciprocal(poch_finite(Q, n, 1, order))
        return s * over

    return _sum_over_n(order, tri, summand)


def cor1a_lhs(order):
    return _cor_lhs(order, 1)


def cor1a_rhs(order):
    return _cor_rhs(order, -1)


def cor1b_lhs(order):
    return _cor_lhs(order, -1)


def cor1b_rhs(order):
    return _cor_rhs(order, 1)


# -- Jacobi triple product and its z = -1 consequences --------------------------

def jtp_lhs(order):
    s = QSeries.zero(order)
    m = isqrt(order)
    for n in range(-m, m + 1):
        s.coeffs[n * n] = s.coeffs[n * n] + SymbolicCoefficient.symbol("z", n)
    return s


def jtp_rhs(order):
    a = poch_infinite(PochBase.of(-1, 1, z=1), 2, order)
    b = poch_infinite(PochBase.of(-1, 1, z=-1), 2, order)
    c = poch_infinite(PochBase.of(1, 2), 2, order)
    return a * b * c


def cor23_lhs(order):
    m = isqrt(order)
    return QSeries.from_dict(order, {n * n: (-1) ** n for n in range(1, m + 1)})


def cor23_rhs(order):
    def summand(n):
        s = QSeries.term(order, tri(n), (-1) ** n).div_poch(Q, n)
        return s.div_factor(-1, n)

    return _sum_over_n(order, tri, summand, start=1)


def prodratio_lhs(order):
    return poch_infinite(Q, 1, order)


def prodratio_rhs(order):
    odd = poch_infinite(Q, 2, order)
    return poch_infinite(MINUS_Q, 1, order) * odd * odd * poch_infinite(PochBase.of(1, 2), 2, order)


def positivity_series(order):
    """(-q;q)_inf sum_n (-1)^n q^(n(n+1)/2) / (-q;q)_n."""

    def summand(n):
        return QSeries.term(order, tri(n), (-1) ** n).div_poch(MINUS_Q, n)

    return _sum_over_n(order, tri, summand).mul_poch(MINUS_Q)


def sumcheck_rhs(order):
    return poch_infinite(PochBase.of(1, 2), 2, order)


# -- Heine transformation on an integer grid --------------------------------------

HEINE_GRID = [(al, be, ga, de)
              for al in (0, 1, 2) for be in (1, 2) for ga in (be + 1, be + 2) for de in (1, 2)]


def _check_heine(al, be, ga, de):
    if al < 0 or be < 1 or de < 1 or ga <= be:
        raise BuilderPreconditionViolated(
            "heine needs alpha >= 0, beta >= 1, delta >= 1, gamma > beta; got %r" % ((al, be, ga, de),))


def _qpoch_times_qpow(e: int, n: int, shift: int, order: int) -> QSeries:
    """(q^e; q)_n * q^shift for any integer e, as a series (error if a negative power survives)."""
    if e <= 0 < n + e:
        return QSeries.zero(order)  # the factor 1 - q^0 vanishes
    sign = 1
    s = QSeries.one(order)
    for i in range(n):
        v = e + i
        if v < 0:
            # 1 - q^v = -q^v (1 - q^-v)
            sign, shift = -sign, shift + v
            v = -v
        s = s.mul_factor(1, v)
    if shift < 0:
        raise BuilderPreconditionViolated("summand has negative q-valuation %d" % shift)
    return s.shift(shift) * sign


def heine_lhs(order, al, be, ga, de):
    _check_heine(al, be, ga, de)

    def summand(n):
        s = QSeries.term(order, de * n).mul_poch(PochBase.of(1, al), n).mul_poch(PochBase.of(1, be), n)
        return s.div_poch(Q, n).div_poch(PochBase.of(1, ga), n)

    return _sum_over_n(order, lambda n: de * n, summand)


def heine_rhs(order, al, be, ga, de):
    _check_heine(al, be, ga, de)
    e = al + be + de - ga

    def summand(n):
        s = _qpoch_times_qpow(e, n, (ga - be) * n, order).mul_poch(PochBase.of(1, be), n)
        return s.div_poch(Q, n).div_poch(PochBase.of(1, be + de), n)

    # when e < 0 the first -e summands may dip below (ga-be)*n; they are always included
    inner = _sum_over_n(order, lambda n: (ga - be) * n if n > -e else 0, summand)
    pref = poch_infinite(PochBase.of(1, ga - be), 1, order) * poch_infinite(PochBase.of(1, be + de), 1, order)
    pref = pref.div_poch(PochBase.of(1, ga)).div_poch(PochBase.of(1, de))
    return pref * inner


# -- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class IdentityRecord:
    id: str
    description: str
    lhs: Builder
    rhs: Optional[Builder]
    default_order: int
    source: str
    experimental: bool = False

    def build(self, side: str, order: int) -> QSeries:
        if order < 1:
            raise BuilderPreconditionViolated("order must be >= 1")
        if side == "lhs":
            return self.lhs(order)
        if side == "rhs":
            if self.rhs is None:
                raise BuilderPreconditionViolated("%s has no right-hand side" % self.id)
            return self.rhs(order)
        raise ValueError("side must be 'lhs' or 'rhs'")


def _make_registry() -> Dict[str, IdentityRecord]:
    recs = [
        IdentityRecord("thm1", "z -> -z evenness of sum (za)_n (zq^{n+1})_inf z^n q^{n(n+1)/2}/(q)_n",
                       thm1_lhs, thm1_rhs, 30, "evenness identity"),
        IdentityRecord("raw", "F(a,z,q) (zq)_inf = (-zq)_inf F(a,-z,q)",
                       raw_lhs, raw_rhs, 30, "Heine transform of F, cross-multiplied"),
        IdentityRecord("raw-recip", "F(a,z,q) = (-zq)_inf/(zq)_inf F(a,-z,q) via series reciprocal",
                       build_F, raw_recip_rhs, 30, "Heine transform of F"),
        IdentityRecord("lebesgue", "sum (-aq)_n q^{n(n+1)/2}/(q)_n = (-aq^2;q^2)_inf/(q;q^2)_inf",
                       lebesgue_lhs, lebesgue_rhs, 40, "Lebesgue identity"),
        IdentityRecord("cor1a", "sum (q^{n+1})_inf q^{T_n} = sum (-q^{n+1})_inf (-q)_n/(q)_n (-1)^n q^{T_n}",
                       cor1a_lhs, cor1a_rhs, 40, "(a,z) = (q,1) specialization"),
        IdentityRecord("cor1b", "sum (-q^{n+1})_inf (-1)^n q^{T_n} = sum (q^{n+1})_inf (-q)_n/(q)_n q^{T_n}",
                       cor1b_lhs, cor1b_rhs, 40, "(a,z) = (-q,1) specialization"),
        IdentityRecord("jtp", "sum_n z^n q^{n^2} = (-zq;q^2)_inf (-q/z;q^2)_inf (q^2;q^2)_inf",
                       jtp_lhs, jtp_rhs, 36, "Jacobi triple product"),
        IdentityRecord("cor23", "sum_{n>=1} (-1)^n q^{n^2} = sum_{n>=1} (-1)^n q^{T_n}/((q)_n (1+q^n))",
                       cor23_lhs, cor23_rhs, 100, "false theta identity from (a,z) = (1,1)"),
        IdentityRecord("prodratio", "(q)_inf = (-q)_inf (q;q^2)_inf^2 (q^2;q^2)_inf",
                       prodratio_lhs, prodratio_rhs, 100, "product rewriting of (q)_inf/(-q)_inf"),
        IdentityRecord("positivity", "(-q)_inf sum (-1)^n q^{T_n}/(-q)_n has nonnegative coefficients",
                       positivity_series, None, 200, "false theta positivity"),
        IdentityRecord("sumcheck", "sum (q^{n+1})_inf q^{T_n} = (q^2;q^2)_inf",
                       cor1a_lhs, sumcheck_rhs, 100, "closed form of the (q,1) case", experimental=True),
    ]
    for tag, (sign, alpha) in RAMANUJAN_GRID.items():
        recs.append(IdentityRecord(
            "ramanujan:" + tag,
            "sum (-b/a)_n a^n q^{T_n}/((q)_n (bq)_n) = (-aq)_inf/(bq)_inf at " + tag,
            partial(_ramanujan_lhs, sign=sign, alpha=alpha),
            partial(_ramanujan_rhs, sign=sign, alpha=alpha), 40, "Ramanujan summation"))
    for params in HEINE_GRID:
        key = "heine:%d,%d,%d,%d" % params
        recs.append(IdentityRecord(
            key, "Heine transformation at (a,b,c,z) = (q^%d,q^%d,q^%d,q^%d)" % params,
            partial(_heine_side, lhs=True, params=params),
            partial(_heine_side, lhs=False, params=params), 25, "Heine transformation"))
    return {r.id: r for r in sorted(recs, key=lambda r: r.id)}


def _heine_side(order, lhs, params):
    return heine_lhs(order, *params) if lhs else heine_rhs(order, *params)


REGISTRY: Mapping[str, IdentityRecord] = _make_registry()


def get_record(identity: str) -> IdentityRecord:
    rec = REGISTRY.get(identity)
    if rec is None:
        if identity.startswith("heine:"):
            return _adhoc_heine(identity)
        raise UnknownIdentity(identity)
    return rec


def _adhoc_heine(identity):
    try:
        params = tuple(int(p) for p in identity.split(":", 1)[1].split(","))
        if len(params) != 4:
            raise ValueError
    except ValueError:
        raise UnknownIdentity(identity) from None
    _check_heine(*params)
    return IdentityRecord(identity, "Heine transformation at exponents %r" % (params,),
                          partial(_heine_side, lhs=True, params=params),
                          partial(_heine_side, lhs=False, params=params), 25, "Heine transformation")


def build_side(identity: str, side: str, order: int) -> QSeries:
    return get_record(identity).build(side, order)


# -- verification ---------------------------------------------------------------

@dataclass
class Mismatch:
    q: int
    lhs: SymbolicCoefficient
    rhs: Optional[SymbolicCoefficient]

    def to_json(self):
        return {"q": self.q, "lhs": self.lhs.to_json(),
                "rhs": None if self.rhs is None else self.rhs.to_json()}


@dataclass
class VerificationReport:
    id: str
    order: int
    outcome: str
    first_mismatch: Optional[Mismatch] = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "order": self.order,
            "outcome": self.outcome,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_json(),
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
        }

    def summary(self) -> str:
        line = "%-18s N=%-4d %s" % (self.id, self.order, self.outcome.upper())
        if self.first_mismatch is not None:
            m = self.first_mismatch
            line += "  first mismatch at q^%d: lhs=%s rhs=%s" % (m.q, m.lhs, m.rhs)
        return line


def verify_record(rec: IdentityRecord, order: Optional[int] = None) -> VerificationReport:
    n = rec.default_order if order is None else order
    start = time.perf_counter()
    lhs = rec.build("lhs", n)
    mismatch = None
    if rec.rhs is None:
        for k, c in enumerate(lhs.coeffs):
            if not c.is_constant() or c.constant_value() < 0:
                mismatch = Mismatch(k, c, None)
                break
    else:
        rhs = rec.build("rhs", n)
        for k, (x, y) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
            if x != y:
                mismatch = Mismatch(k, x, y)
                break
    elapsed = time.perf_counter() - start
    return VerificationReport(rec.id, n, "fail" if mismatch else "pass", mismatch, elapsed)


def verify(identity: str, order: Optional[int] = None) -> VerificationReport:
    return verify_record(get_record(identity), order)


def _verify_pair(args: Tuple[str, Optional[int]]) -> VerificationReport:
    return verify(*args)


def verify_all(order_overrides: Optional[Mapping[str, int]] = None, include_experimental: bool = True,
               workers: int = 1) -> List[VerificationReport]:
    """Verify every registered identity; reports come back sorted by id."""
    overrides = dict(order_overrides or {})
    unknown = set(overrides) - set(REGISTRY)
    if unknown:
        raise UnknownIdentity(sorted(unknown)[0])
    jobs = [(i, overrides.get(i)) for i, rec in REGISTRY.items()
            if include_experimental or not rec.experimental]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_verify_pair, jobs))
    else:
        reports = [_verify_pair(j) for j in jobs]
    return sorted(reports, key=lambda r: r.id)
