"""Sparse Laurent polynomials in the fixed symbols a, z, b, rho with integer coefficients.

Monomials are packed into a single Python int: each of the four exponents
occupies a 32-bit field stored with a bias, so multiplying two monomials is
one integer addition.  Exponents must stay within +/- 2**31.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Mapping, Tuple

from .errors import NegativeValuation, UnboundSymbol

SYMBOLS = ("a", "z", "b", "rho")
_ALIASES = {"ρ": "rho", "r": "rho"}

_WIDTH = 32
_BIAS = 1 << (_WIDTH - 1)
_MASK = (1 << _WIDTH) - 1
ONE_KEY = sum(_BIAS << (_WIDTH * i) for i in range(len(SYMBOLS)))


def symbol_index(name: str) -> int:
    name = _ALIASES.get(name, name)
    try:
        return SYMBOLS.index(name)
    except ValueError:
        raise KeyError("unknown symbol %r (expected one of %s)" % (name, ", ".join(SYMBOLS))) from None


def monomial(**exponents: int) -> int:
    """Pack exponents into a monomial key, e.g. ``monomial(z=2, a=-1)``."""
    key = ONE_KEY
    for name, e in exponents.items():
        if not -_BIAS <= e < _BIAS:
            raise OverflowError("exponent %d out of range" % e)
        key += e << (_WIDTH * symbol_index(name))
    return key


def exponents(key: int) -> Tuple[int, ...]:
    """Unpack a monomial key into the exponent tuple (a, z, b, rho)."""
    return tuple(((key >> (_WIDTH * i)) & _MASK) - _BIAS for i in range(len(SYMBOLS)))


def _mono_str(key: int) -> str:
    parts = []
    for name, e in zip(SYMBOLS, exponents(key)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


class SymbolicCoefficient:
    """Immutable element of Z[a, z, b, rho, 1/a, 1/z, 1/b, 1/rho].

    ``terms`` maps packed monomial keys to nonzero ints; never mutate it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            self.terms = {k: c for k, c in terms.items() if c}
        else:
            self.terms = {}

    @classmethod
    def _wrap(cls, terms: Dict[int, int]) -> "SymbolicCoefficient":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, c: int) -> "SymbolicCoefficient":
        return cls._wrap({ONE_KEY: c} if c else {})

    @classmethod
    def symbol(cls, name: str, power: int = 1, coeff: int = 1) -> "SymbolicCoefficient":
        return cls._wrap({monomial(**{_ALIASES.get(name, name): power}): coeff} if coeff else {})

    @classmethod
    def term(cls, coeff: int = 1, **exps: int) -> "SymbolicCoefficient":
        return cls._wrap({monomial(**exps): coeff} if coeff else {})

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_KEY in self.terms)

    def constant_value(self) -> int:
        """Coefficient of the empty monomial."""
        return self.terms.get(ONE_KEY, 0)

    def is_signed_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    def symbols(self) -> set:
        used = set()
        for key in self.terms:
            for name, e in zip(SYMBOLS, exponents(key)):
                if e:
                    used.add(name)
        return used

    def degree(self, name: str) -> Tuple[int, int]:
        """(min, max) exponent of ``name`` over all terms; (0, 0) for zero."""
        i = symbol_index(name)
        es = [exponents(k)[i] for k in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = SymbolicCoefficient.constant(other)
        elif not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return SymbolicCoefficient._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return SymbolicCoefficient._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = SymbolicCoefficient.constant(other)
        elif not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return SymbolicCoefficient._wrap({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, SymbolicCoefficient):
            return NotImplemented
        x, y = self.terms, other.terms
        if not x or not y:
            return ZERO
        if len(x) < len(y):
            x, y = y, x
        if len(y) == 1:
            (k2, c2), = y.items()
            shift = k2 - ONE_KEY
            return SymbolicCoefficient._wrap({k + shift: c * c2 for k, c in x.items()})
        out: Dict[int, int] = {}
        get = out.get
        for k2, c2 in y.items():
            shift = k2 - ONE_KEY
            for k1, c1 in x.items():
                k = k1 + shift
                out[k] = get(k, 0) + c1 * c2
        return SymbolicCoefficient._wrap({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_signed_monomial():
                raise ValueError("only signed monomials can be inverted")
            (k, c), = self.terms.items()
            return SymbolicCoefficient._wrap({2 * ONE_KEY - k: c})._pow(-n)
        return self._pow(n)

    def _pow(self, n):
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, key: int, coeff: int = 1) -> "SymbolicCoefficient":
        """Multiply by ``coeff`` times the monomial ``key``."""
        if not coeff:
            return ZERO
        d = key - ONE_KEY
        return SymbolicCoefficient._wrap({k + d: c * coeff for k, c in self.terms.items()})

    def negate_symbol(self, name: str) -> "SymbolicCoefficient":
        """Apply ``name -> -name``."""
        i = symbol_index(name)
        out = {}
        for k, c in self.terms.items():
            out[k] = -c if (((k >> (_WIDTH * i)) & _MASK) - _BIAS) & 1 else c
        return SymbolicCoefficient._wrap(out)

    def coefficient_of(self, name: str, power: int) -> "SymbolicCoefficient":
        """Collect the terms carrying ``name**power`` and strip that factor."""
        i = symbol_index(name)
        d = power << (_WIDTH * i)
        out = {}
        for k, c in self.terms.items():
            if ((k >> (_WIDTH * i)) & _MASK) - _BIAS == power:
                out[k - d] = c
        return SymbolicCoefficient._wrap(out)

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({ONE_KEY: other} if other else {})
        if isinstance(other, SymbolicCoefficient):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> List[Tuple[Tuple[int, ...], int]]:
        return sorted((exponents(k), c) for k, c in self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for key in sorted(self.terms, key=exponents):
            c = self.terms[key]
            mono = _mono_str(key)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%d*%s" % (mag, mono)
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "SymbolicCoefficient(%s)" % self

    def to_json(self) -> list:
        return [
            {"m": {n: e for n, e in zip(SYMBOLS, exps) if e}, "c": str(c)}
            for exps, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "SymbolicCoefficient":
        return cls({monomial(**item["m"]): int(item["c"]) for item in data})


ZERO = SymbolicCoefficient._wrap({})
ONE = SymbolicCoefficient._wrap({ONE_KEY: 1})


def coeff_add(x: SymbolicCoefficient, y: SymbolicCoefficient) -> SymbolicCoefficient:
    return x + y


def coeff_mul(x: SymbolicCoefficient, y: SymbolicCoefficient) -> SymbolicCoefficient:
    return x * y


def _normalize_bindings(bindings):
    out = {}
    for name, (sign, qpower) in bindings.items():
        if sign not in (1, -1):
            raise ValueError("binding sign must be +1 or -1, got %r" % (sign,))
        if qpower < 0:
            raise ValueError("binding q-power must be >= 0, got %r" % (qpower,))
        out[symbol_index(name)] = (sign, qpower)
    return out


def coeff_substitute_partial(x: SymbolicCoefficient, bindings) -> List[Tuple[int, SymbolicCoefficient]]:
    """Substitute ``symbol -> sign * q**qpower`` for the bound symbols only.

    Unbound symbols stay symbolic.  Returns ``(q_shift, coefficient)`` pairs
    sorted by shift, with cancelled shifts dropped.
    """
    binds = _normalize_bindings(bindings)
    grouped: Dict[int, Dict[int, int]] = {}
    for key, c in x.terms.items():
        exps = exponents(key)
        shift = 0
        rest = key
        for i, (sign, qpower) in binds.items():
            e = exps[i]
            if not e:
                continue
            if e < 0 and qpower > 0:
                raise NegativeValuation(
                    "%s^%d cannot be specialized to a positive power of q" % (SYMBOLS[i], e))
            if sign < 0 and e & 1:
                c = -c
            shift += qpower * e
            rest -= e << (_WIDTH * i)
        bucket = grouped.setdefault(shift, {})
        bucket[rest] = bucket.get(rest, 0) + c
    out = []
    for shift in sorted(grouped):
        coeff = SymbolicCoefficient(grouped[shift])
        if coeff:
            out.append((shift, coeff))
    return out


def coeff_substitute(x: SymbolicCoefficient, bindings) -> List[Tuple[int, int]]:
    """Fully specialize ``x``: every symbol present must be bound.

    ``bindings`` maps a symbol name to ``(sign, qpower)``, meaning
    ``symbol -> sign * q**qpower``.  The image is returned as a list of
    ``(q_shift, integer)`` pairs.
    """
    missing = x.symbols() - {SYMBOLS[i] for i in _normalize_bindings(bindings)}
    if missing:
        raise UnboundSymbol("no binding for %s" % ", ".join(sorted(missing)))
    return [(s, c.constant_value()) for s, c in coeff_substitute_partial(x, bindings)]
