"""Partitions in frequency notation, their statistics and weights.

A partition is stored as its frequency vector ``(f_1, f_2, ...)`` with
trailing zeros trimmed.  The statistics follow these conventions:

* ``chain`` (t): length of the run f_1, ..., f_t of nonzero frequencies.
* ``p(j)``: largest part size occurring at least j times, 0 if none.
* ``r(j)``: number of part sizes occurring at least j times.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Sequence, Tuple

from .errors import ClassWeightMismatch, NotDistinct, NotInA
from .qseries import QSeries


@dataclass(frozen=True, order=True)
class Partition:
    freqs: Tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(self.freqs)
        if any(f < 0 for f in fs):
            raise ValueError("frequencies must be nonnegative")
        while fs and fs[-1] == 0:
            fs = fs[:-1]
        object.__setattr__(self, "freqs", fs)

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> "Partition":
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        fs = [0] * (max(parts) if parts else 0)
        for p in parts:
            fs[p - 1] += 1
        return cls(tuple(fs))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"(1^4,2^2,5)"``-style frequency notation; a bare part means frequency 1."""
        body = text.strip().strip("()").replace(" ", "")
        parts: List[int] = []
        for item in filter(None, body.split(",")):
            part, _, freq = item.partition("^")
            parts.extend([int(part)] * (int(freq) if freq else 1))
        return cls.from_parts(parts)

    def f(self, i: int) -> int:
        return self.freqs[i - 1] if 1 <= i <= len(self.freqs) else 0

    def parts(self) -> List[int]:
        return [i for i, f in enumerate(self.freqs, 1) for _ in range(f)]

    @property
    def size(self) -> int:
        return sum(i * f for i, f in enumerate(self.freqs, 1))

    @property
    def num_parts(self) -> int:
        return sum(self.freqs)

    @property
    def chain(self) -> int:
        t = 0
        for f in self.freqs:
            if not f:
                break
            t += 1
        return t

    def p(self, j: int) -> int:
        for i in range(len(self.freqs), 0, -1):
            if self.freqs[i - 1] >= j:
                return i
        return 0

    def r(self, j: int) -> int:
        return sum(1 for f in self.freqs if f >= j)

    @property
    def is_distinct(self) -> bool:
        return all(f <= 1 for f in self.freqs)

    @property
    def in_A(self) -> bool:
        return self.p(2) <= self.chain

    def __add__(self, other: "Partition") -> "Partition":
        n = max(len(self.freqs), len(other.freqs))
        return Partition(tuple(self.f(i) + other.f(i) for i in range(1, n + 1)))

    def __str__(self):
        return "(" + ",".join("%d^%d" % (i, f) for i, f in enumerate(self.freqs, 1) if f) + ")"


EMPTY = Partition()


def staircase(k: int) -> Partition:
    """The partition (1^1, 2^1, ..., k^1)."""
    return Partition((1,) * k)


@dataclass(frozen=True)
class PartitionStats:
    size: int
    parts: int
    chain: int
    p: Tuple[int, ...]
    r: Tuple[int, ...]

    def pj(self, j: int) -> int:
        return self.p[j - 1]

    def rj(self, j: int) -> int:
        return self.r[j - 1]


def stats(pi: Partition, max_j: int = 2) -> PartitionStats:
    if max_j < 1:
        raise ValueError("max_j must be >= 1")
    return PartitionStats(pi.size, pi.num_parts, pi.chain,
                          tuple(pi.p(j) for j in range(1, max_j + 1)),
                          tuple(pi.r(j) for j in range(1, max_j + 1)))


class PartitionClass(enum.Enum):
    ALL = "all"
    D = "d"
    A = "a"

    def contains(self, pi: Partition) -> bool:
        if self is PartitionClass.D:
            return pi.is_distinct
        if self is PartitionClass.A:
            return pi.in_A
        return True


def _freq_vectors(n: int, distinct: bool) -> Iterator[Tuple[int, ...]]:
    # ascending lexicographic order on (f_1, ..., f_n)
    fs = [0] * n

    def rec(i, remaining):
        if i > n:
            if remaining == 0:
                yield tuple(fs)
            return
        top = remaining // i
        if distinct:
            top = min(top, 1)
        for f in range(top + 1):
            rest = remaining - f * i
            # parts > i can only cover 0 or something >= i+1
            if rest and rest < i + 1:
                continue
            fs[i - 1] = f
            yield from rec(i + 1, rest)
        fs[i - 1] = 0

    yield from rec(1, n)


def enumerate_partitions(n: int, cls: PartitionClass = PartitionClass.ALL) -> List[Partition]:
    """All partitions of n in ``cls``, sorted lexicographically by frequency vector."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return [EMPTY]
    out = []
    for fs in _freq_vectors(n, cls is PartitionClass.D):
        pi = Partition(fs)
        if cls.contains(pi):
            out.append(pi)
    return out


# -- weights ---------------------------------------------------------------------

def _require_distinct(pi):
    if not pi.is_distinct:
        raise NotDistinct("%s has a repeated part" % pi)


def _require_A(pi):
    if not pi.in_A:
        raise NotInA("%s has p_2 = %d > t = %d" % (pi, pi.p(2), pi.chain))


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def weight_w(pi: Partition, i: int) -> int:
    """Weight of a distinct partition on the distinct-parts side (i = 1 or 2)."""
    _require_distinct(pi)
    t = pi.chain
    # [1 - f_1 (1 - (-1)^t)/2] (-1)^{i #(pi)}
    return (1 - pi.f(1) * (1 - _sign(t)) // 2) * _sign(i * pi.num_parts)


def weight_what(pi: Partition, i: int) -> int:
    """Weight of a partition in A (repeats confined to the initial chain)."""
    _require_A(pi)
    t, p2 = pi.chain, pi.p(2)
    return (2 ** pi.r(2) * (_sign(t) + _sign(p2)) // 2
            * _sign((i - 1) * (pi.r(1) + t + p2)))


def raw_weight_lhs(pi: Partition, eps1: int, eps2: int) -> int:
    """sum_{k=0}^{t} (-eps1)^(#pi - k) eps2^k, before simplification."""
    _require_distinct(pi)
    m = pi.num_parts
    return sum((-eps1) ** (m - k) * eps2 ** k for k in range(pi.chain + 1))


def raw_weight_rhs(pi: Partition, eps1: int, eps2: int) -> int:
    """2^{r_2} sum_{k=p_2}^{t} (-eps1)^(r_1 - t - p_2 - k) eps2^k; sign exponents taken mod 2."""
    _require_A(pi)
    t, p2, r1 = pi.chain, pi.p(2), pi.r(1)
    total = 0
    for k in range(p2, t + 1):
        e = (r1 - t - p2 - k) % 2
        total += (-eps1) ** e * eps2 ** k
    return 2 ** pi.r(2) * total


# -- decompositions and the brute-force weight oracle -----------------------------

def _minus(pi: Partition, sub: Partition):
    n = max(len(pi.freqs), len(sub.freqs))
    fs = tuple(pi.f(i) - sub.f(i) for i in range(1, n + 1))
    if any(f < 0 for f in fs):
        return None
    return Partition(fs)


def _split_at(pi: Partition, k: int) -> Tuple[Partition, Partition]:
    """(parts <= k, parts > k)."""
    low = Partition(pi.freqs[:k])
    high = Partition((0,) * k + pi.freqs[k:]) if len(pi.freqs) > k else EMPTY
    return low, high


def decompose_lhs(pi: Partition) -> List[Tuple[Partition, Partition]]:
    """All (pi_d, pi_i) with pi_i a staircase (1..k) and pi_d distinct with parts > k."""
    _require_distinct(pi)
    out = []
    for k in range(len(pi.freqs) + 1):
        rest = _minus(pi, staircase(k))
        if rest is None:
            continue
        low, high = _split_at(rest, k)
        if low == EMPTY and high.is_distinct:
            out.append((high, staircase(k)))
    return out


def decompose_rhs(pi: Partition) -> List[Tuple[Partition, Partition, Partition]]:
    """All (pi_d, pi_i, pi_o): staircase (1..k), pi_o with parts <= k, pi_d distinct with parts > k."""
    _require_A(pi)
    out = []
    for k in range(len(pi.freqs) + 1):
        rest = _minus(pi, staircase(k))
        if rest is None:
            continue
        low, high = _split_at(rest, k)
        if high.is_distinct:
            out.append((high, staircase(k), low))
    return out


def decomposition_weight_lhs(pi: Partition, eps1: int, eps2: int) -> int:
    """Weight of pi read off the pair decompositions term by term."""
    return sum((-eps1) ** d.num_parts * eps2 ** s.num_parts for d, s in decompose_lhs(pi))


def decomposition_weight_rhs(pi: Partition, eps1: int, eps2: int) -> int:
    """Same for the triples; an overpartition counts 2^(number of distinct part sizes)."""
    return sum((-eps1) ** d.num_parts * eps2 ** s.num_parts * 2 ** o.r(1)
               for d, s, o in decompose_rhs(pi))


# -- generating functions and the table ----------------------------------------------

WEIGHTS = {
    "w1": (PartitionClass.D, lambda pi: weight_w(pi, 1)),
    "w2": (PartitionClass.D, lambda pi: weight_w(pi, 2)),
    "what1": (PartitionClass.A, lambda pi: weight_what(pi, 1)),
    "what2": (PartitionClass.A, lambda pi: weight_what(pi, 2)),
}


def weighted_gf(n_max: int, cls: PartitionClass, weight: str) -> QSeries:
    """sum over partitions pi in ``cls`` with |pi| <= n_max of weight(pi) q^|pi|."""
    try:
        domain, fn = WEIGHTS[weight]
    except KeyError:
        raise ValueError("unknown weight %r (expected one of %s)" % (weight, ", ".join(WEIGHTS))) from None
    if domain is not cls:
        raise ClassWeightMismatch("weight %s is defined on class %s, not %s" % (weight, domain.name, cls.name))
    return QSeries(n_max, [sum(fn(pi) for pi in enumerate_partitions(n, cls)) for n in range(n_max + 1)])


D_COLUMNS = ("partition", "t", "w1", "w2")
A_COLUMNS = ("partition", "t", "p2", "r2", "what1", "r1", "what2")


@dataclass
class TableReport:
    n: int
    d_rows: List[Dict] = field(default_factory=list)
    a_rows: List[Dict] = field(default_factory=list)
    d_total: Dict[str, int] = field(default_factory=dict)
    a_total: Dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"n": self.n,
                "D": {"rows": self.d_rows, "total": self.d_total},
                "A": {"rows": self.a_rows, "total": self.a_total}}

    def to_text(self) -> str:
        left = [list(D_COLUMNS)] + [[str(r[c]) for c in D_COLUMNS] for r in self.d_rows]
        right = [list(A_COLUMNS)] + [[str(r[c]) for c in A_COLUMNS] for r in self.a_rows]
        left.append(["Total:", "", str(self.d_total["w1"]), str(self.d_total["w2"])])
        right_total = ["", "", "", "", str(self.a_total["what1"]), "", str(self.a_total["what2"])]
        # totals go on the last line of both halves
        body_rows = max(len(left), len(right) + 1)
        while len(left) < body_rows:
            left.insert(-1, [""] * len(D_COLUMNS))
        while len(right) < body_rows - 1:
            right.append([""] * len(A_COLUMNS))
        right.append(right_total)
        lw = [max(len(row[c]) for row in left) for c in range(len(D_COLUMNS))]
        rw = [max(len(row[c]) for row in right) for c in range(len(A_COLUMNS))]
        lines = []
        for idx, (lrow, rrow) in enumerate(zip(left, right)):
            ltxt = "  ".join(v.rjust(w) for v, w in zip(lrow, lw))
            rtxt = "  ".join(v.rjust(w) for v, w in zip(rrow, rw))
            lines.append(("%s || %s" % (ltxt, rtxt)).rstrip())
            if idx == 0 or idx == len(left) - 2:
                lines.append("-" * (sum(lw) + 2 * len(lw) + sum(rw) + 2 * len(rw) + 2))
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ("set", "partition", "t", "p2", "r2", "r1", "w1", "w2", "what1", "what2")
        writer = csv.DictWriter(buf, fieldnames=cols, restval="", lineterminator="\n")
        writer.writeheader()
        for r in self.d_rows:
            writer.writerow({"set": "D", **r})
        writer.writerow({"set": "D", "partition": "Total", **self.d_total})
        for r in self.a_rows:
            writer.writerow({"set": "A", **r})
        writer.writerow({"set": "A", "partition": "Total", **self.a_total})
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def table_report(n: int) -> TableReport:
    rep = TableReport(n)
    for pi in enumerate_partitions(n, PartitionClass.D):
        rep.d_rows.append({"partition": str(pi), "t": pi.chain,
                           "w1": weight_w(pi, 1), "w2": weight_w(pi, 2)})
    for pi in enumerate_partitions(n, PartitionClass.A):
        rep.a_rows.append({"partition": str(pi), "t": pi.chain, "p2": pi.p(2), "r2": pi.r(2),
                           "what1": weight_what(pi, 1), "r1": pi.r(1), "what2": weight_what(pi, 2)})
    rep.d_total = {k: sum(r[k] for r in rep.d_rows) for k in ("w1", "w2")}
    rep.a_total = {k: sum(r[k] for r in rep.a_rows) for k in ("what1", "what2")}
    return rep
