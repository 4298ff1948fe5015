"""Truncated power series in q over the symbolic coefficient ring.

A :class:`QSeries` keeps the coefficients of q^0 .. q^N densely.  Arithmetic
between series of different orders is refused rather than silently
truncated to the smaller one.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence

from .errors import (IndexOutOfOrder, NonUnitConstantTerm, OrderMismatch,
                     UnboundSymbol, ZeroValuationBase)
from .symcoeff import (ZERO, SYMBOLS, SymbolicCoefficient,
                       coeff_substitute_partial, symbol_index)


def _as_coeff(c) -> SymbolicCoefficient:
    if isinstance(c, SymbolicCoefficient):
        return c
    if isinstance(c, int):
        return SymbolicCoefficient.constant(c)
    raise TypeError("expected int or SymbolicCoefficient, got %r" % type(c).__name__)


class QSeries:
    """Power series sum_{k=0}^{order} coeffs[k] * q^k."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Optional[Iterable] = None):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.order = order
        if coeffs is None:
            self.coeffs = [ZERO] * (order + 1)
        else:
            cs = [_as_coeff(c) for c in coeffs]
            if len(cs) > order + 1:
                cs = cs[:order + 1]
            cs.extend([ZERO] * (order + 1 - len(cs)))
            self.coeffs = cs

    @classmethod
    def _wrap(cls, order, coeffs):
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls(order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls.term(order, 0, 1)

    @classmethod
    def term(cls, order: int, k: int, coeff=1) -> "QSeries":
        """coeff * q^k, dropped entirely if k > order."""
        s = cls(order)
        if 0 <= k <= order:
            s.coeffs[k] = _as_coeff(coeff)
        elif k < 0:
            raise ValueError("negative q-exponent %d" % k)
        return s

    @classmethod
    def from_dict(cls, order: int, terms) -> "QSeries":
        s = cls(order)
        for k, c in terms.items():
            if k <= order:
                s.coeffs[k] = s.coeffs[k] + _as_coeff(c)
        return s

    # -- access ---------------------------------------------------------------

    def coeff(self, k: int) -> SymbolicCoefficient:
        if not 0 <= k <= self.order:
            raise IndexOutOfOrder("q^%d outside 0..%d" % (k, self.order))
        return self.coeffs[k]

    __getitem__ = coeff

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_symbol_free(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def integer_coeffs(self) -> List[int]:
        if not self.is_symbol_free():
            raise ValueError("series has symbolic coefficients")
        return [c.constant_value() for c in self.coeffs]

    def valuation(self) -> Optional[int]:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, QSeries):
            return False
        if other.order != self.order:
            raise OrderMismatch("orders %d and %d differ" % (self.order, other.order))
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return QSeries._wrap(self.order, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return QSeries._wrap(self.order, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return QSeries._wrap(self.order, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, SymbolicCoefficient)):
            c = _as_coeff(other)
            return QSeries._wrap(self.order, [x * c for x in self.coeffs])
        if not self._check(other):
            return NotImplemented
        n = self.order
        xs, ys = self.coeffs, other.coeffs
        xnz = [(i, x) for i, x in enumerate(xs) if x]
        ynz = [(j, y) for j, y in enumerate(ys) if y]
        out = [ZERO] * (n + 1)
        for i, x in xnz:
            for j, y in ynz:
                if i + j > n:
                    break
                out[i + j] = out[i + j] + x * y
        return QSeries._wrap(n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return series_reciprocal(self) ** (-e)
        result = QSeries.one(self.order)
        for _ in range(e):
            result = result * self
        return result

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        n = self.order
        if k > n:
            return QSeries.zero(n)
        return QSeries._wrap(n, [ZERO] * k + self.coeffs[:n + 1 - k])

    def mul_factor(self, c, v: int) -> "QSeries":
        """Multiply by the binomial (1 - c*q^v)."""
        c = _as_coeff(c)
        n = self.order
        if v > n or not c:
            return self
        xs = self.coeffs
        out = xs[:v]
        if c.is_signed_monomial():
            (key, sign), = c.terms.items()
            for k in range(v, n + 1):
                src = xs[k - v]
                out.append(xs[k] - src.shift(key, sign) if src else xs[k])
        else:
            for k in range(v, n + 1):
                out.append(xs[k] - c * xs[k - v])
        return QSeries._wrap(n, out)

    def div_factor(self, c, v: int) -> "QSeries":
        """Divide by the binomial (1 - c*q^v); needs v >= 1."""
        if v < 1:
            raise NonUnitConstantTerm("divisor 1 - c*q^0 is not a unit series")
        c = _as_coeff(c)
        n = self.order
        if v > n or not c:
            return self
        out = list(self.coeffs)
        if c.is_signed_monomial():
            (key, sign), = c.terms.items()
            for k in range(v, n + 1):
                src = out[k - v]
                if src:
                    out[k] = out[k] + src.shift(key, sign)
        else:
            for k in range(v, n + 1):
                out[k] = out[k] + c * out[k - v]
        return QSeries._wrap(n, out)

    def mul_poch(self, base: "PochBase", n: Optional[int] = None, step: int = 1) -> "QSeries":
        """Multiply by (base; q^step)_n, or the infinite product when n is None."""
        s = self
        for v in base.exponents(step, self.order, n):
            s = s.mul_factor(base.coefficient, v)
        return s

    def div_poch(self, base: "PochBase", n: Optional[int] = None, step: int = 1) -> "QSeries":
        """Divide by (base; q^step)_n, or the infinite product when n is None."""
        s = self
        for v in base.exponents(step, self.order, n):
            s = s.div_factor(base.coefficient, v)
        return s

    # -- coefficient maps -----------------------------------------------------------

    def map(self, fn: Callable[[SymbolicCoefficient], SymbolicCoefficient]) -> "QSeries":
        return QSeries._wrap(self.order, [fn(c) for c in self.coeffs])

    def negate_symbol(self, name: str) -> "QSeries":
        return self.map(lambda c: c.negate_symbol(name))

    def extract(self, name: str, power: int) -> "QSeries":
        """Series of the coefficients of ``name**power``."""
        return self.map(lambda c: c.coefficient_of(name, power))

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise OrderMismatch("cannot raise order %d to %d" % (self.order, order))
        return QSeries._wrap(order, self.coeffs[:order + 1])

    # -- comparison -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        return "QSeries(order=%d, %s)" % (self.order, self)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if k == 0:
                parts.append(cs)
                continue
            qk = "q" if k == 1 else "q^%d" % k
            if cs == "1":
                parts.append(qk)
            elif cs == "-1":
                parts.append("-" + qk)
            elif len(c.terms) == 1:
                parts.append("%s*%s" % (cs, qk))
            else:
                parts.append("(%s)*%s" % (cs, qk))
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        return "%s + O(q^%d)" % (body, self.order + 1)

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "terms": [{"q": k, "coeff": c.to_json()} for k, c in enumerate(self.coeffs) if c],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        s = cls(data["order"])
        for item in data["terms"]:
            s.coeffs[item["q"]] = SymbolicCoefficient.from_json(item["coeff"])
        return s

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["q", "coeff"])
        for k, c in enumerate(self.integer_coeffs()):
            writer.writerow([k, c])
        return buf.getvalue()


@dataclass(frozen=True)
class PochBase:
    """The single term ``coefficient * q**q_valuation`` inside a Pochhammer symbol."""

    coefficient: SymbolicCoefficient
    q_valuation: int = 0

    def __post_init__(self):
        if not self.coefficient.is_signed_monomial():
            raise ValueError("Pochhammer base must be +/- a monomial, got %s" % self.coefficient)
        if self.q_valuation < 0:
            raise ValueError("q-valuation must be >= 0")

    @classmethod
    def of(cls, sign: int = 1, qpow: int = 0, **exps: int) -> "PochBase":
        """``PochBase.of(-1, 1, z=1)`` is the base -z*q."""
        return cls(SymbolicCoefficient.term(sign, **exps), qpow)

    def exponents(self, step: int, order: int, n: Optional[int]) -> List[int]:
        """q-exponents of the factors that are nontrivial below ``order``."""
        if step < 1:
            raise ValueError("step must be >= 1")
        if n is None:
            if self.q_valuation < 1:
                raise ZeroValuationBase("infinite product needs a base with positive q-valuation")
            count = (order - self.q_valuation) // step + 1 if order >= self.q_valuation else 0
        else:
            if n < 0:
                raise ValueError("n must be >= 0")
            count = n
        out = []
        for i in range(count):
            v = self.q_valuation + step * i
            if v > order:
                break
            out.append(v)
        return out


def series_add(x: QSeries, y: QSeries) -> QSeries:
    return x + y


def series_sub(x: QSeries, y: QSeries) -> QSeries:
    return x - y


def series_mul(x: QSeries, y: QSeries) -> QSeries:
    return x * y


def series_reciprocal(x: QSeries) -> QSeries:
    """Inverse of a series whose constant term is the integer 1 or -1."""
    c0 = x.coeffs[0]
    if not c0.is_constant() or c0.constant_value() not in (1, -1):
        raise NonUnitConstantTerm("constant term %s is not +1 or -1" % c0)
    u = c0.constant_value()
    n = x.order
    xs = x.coeffs
    nz = [(i, xs[i]) for i in range(1, n + 1) if xs[i]]
    ys = [c0]
    for k in range(1, n + 1):
        acc = ZERO
        for i, xi in nz:
            if i > k:
                break
            yk = ys[k - i]
            if yk:
                acc = acc + xi * yk
        ys.append(acc * -u)
    return QSeries._wrap(n, ys)


def poch_finite(base: PochBase, n: int, step: int = 1, order: int = 0) -> QSeries:
    """prod_{i=0}^{n-1} (1 - base * q^(step*i)), truncated at ``order``."""
    return QSeries.one(order).mul_poch(base, n, step)


def poch_infinite(base: PochBase, step: int = 1, order: int = 0) -> QSeries:
    """prod_{i>=0} (1 - base * q^(step*i)); the base must carry a positive power of q."""
    return QSeries.one(order).mul_poch(base, None, step)


def series_specialize(x: QSeries, bindings, keep: Sequence[str] = ()) -> QSeries:
    """Substitute ``symbol -> sign * q**qpower`` and regrade by q.

    Every symbol occurring in ``x`` must be bound unless listed in ``keep``.
    Terms pushed beyond the order are dropped.
    """
    allowed = {SYMBOLS[symbol_index(s)] for s in bindings} | {SYMBOLS[symbol_index(s)] for s in keep}
    n = x.order
    out = [ZERO] * (n + 1)
    for k, c in enumerate(x.coeffs):
        if not c:
            continue
        missing = c.symbols() - allowed
        if missing:
            raise UnboundSymbol("no binding for %s" % ", ".join(sorted(missing)))
        for shift, part in coeff_substitute_partial(c, bindings):
            j = k + shift
            if j <= n:
                out[j] = out[j] + part
    return QSeries._wrap(n, out)


def series_coeff(x: QSeries, k: int) -> SymbolicCoefficient:
    return x.coeff(k)


def series_is_zero(x: QSeries) -> bool:
    return x.is_zero()


def first_mismatch(x: QSeries, y: QSeries) -> Optional[int]:
    """Smallest q-exponent where ``x`` and ``y`` differ, or None if equal."""
    if x.order != y.order:
        raise OrderMismatch("orders %d and %d differ" % (x.order, y.order))
    for k, (a, b) in enumerate(zip(x.coeffs, y.coeffs)):
        if a != b:
            return k
    return None


def series_eq(x: QSeries, y: QSeries) -> Optional[int]:
    """Alias of :func:`first_mismatch`: None means equal."""
    return first_mismatch(x, y)


def qvar(order: int) -> QSeries:
    """The series q itself."""
    return QSeries.term(order, 1, 1)

