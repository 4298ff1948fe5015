"""The exit criteria, runnable from the CLI (``qverify suite``) and from pytest."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, List, Tuple

from . import identities as ids
from .identities import IdentityRecord, verify, verify_record
from .partitions import (PartitionClass, decomposition_weight_lhs, decomposition_weight_rhs,
                         enumerate_partitions, raw_weight_lhs, raw_weight_rhs, table_report,
                         weight_w, weight_what, weighted_gf)
from .qseries import PochBase, QSeries, poch_finite, series_specialize
from .symcoeff import SymbolicCoefficient


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0

    def line(self) -> str:
        return "[%s] %2d. %s (%.2fs) %s" % ("PASS" if self.passed else "FAIL", self.number,
                                           self.title, self.elapsed, self.detail)


def _reports(pairs) -> Tuple[bool, str]:
    reps = [verify(i, n) for i, n in pairs]
    bad = [r for r in reps if not r.passed]
    if bad:
        return False, "; ".join(r.summary() for r in bad)
    return True, "%d identities exact" % len(reps)


def c1_evenness():
    rep = verify("thm1", 30)
    ok = rep.passed and rep.elapsed < 10.0
    return ok, "%s in %.2fs (limit 10s)" % (rep.outcome, rep.elapsed)


def c2_raw():
    return _reports([("raw", 30), ("raw-recip", 30)])


def c3_lebesgue_ramanujan():
    return _reports([("lebesgue", 40)] + [("ramanujan:" + t, 40) for t in ids.RAMANUJAN_GRID])


COR_SPECIALIZATIONS = {
    # thm1 side -> corollary side it specializes to
    "cor1a": ({"a": (1, 1), "z": (1, 0)}, {"lhs": ("cor1a", "lhs"), "rhs": ("cor1a", "rhs")}),
    "cor1b": ({"a": (-1, 1), "z": (1, 0)}, {"lhs": ("cor1b", "rhs"), "rhs": ("cor1b", "lhs")}),
}


def specialization_mismatches(order: int) -> List[str]:
    out = []
    sides = {s: ids.build_side("thm1", s, order) for s in ("lhs", "rhs")}
    for bindings, targets in COR_SPECIALIZATIONS.values():
        for side, (cid, cside) in targets.items():
            if series_specialize(sides[side], bindings) != ids.build_side(cid, cside, order):
                out.append("thm1 %s at %s != %s %s" % (side, bindings, cid, cside))
    return out


def c4_corollaries():
    ok, detail = _reports([("cor1a", 40), ("cor1b", 40)])
    bad = specialization_mismatches(40)
    if bad:
        return False, "; ".join(bad)
    return ok, detail + "; specializations of both evenness sides agree"


def c5_heine():
    return _reports([("heine:%d,%d,%d,%d" % p, 25) for p in ids.HEINE_GRID])


def c6_jtp():
    return _reports([("jtp", 36), ("cor23", 100), ("prodratio", 100)])


# partition -> (t, w1, w2) and (t, p2, r2, what1, r1, what2) for n = 6
TABLE_6_D = {
    "(6^1)": (0, -1, 1),
    "(1^1,5^1)": (1, 0, 0),
    "(2^1,4^1)": (0, 1, 1),
    "(1^1,2^1,3^1)": (3, 0, 0),
}
TABLE_6_A = {
    "(6^1)": (0, 0, 0, 1, 1, -1),
    "(1^1,5^1)": (1, 0, 0, 0, 2, 0),
    "(2^1,4^1)": (0, 0, 0, 1, 2, 1),
    "(1^2,4^1)": (1, 1, 1, -2, 2, -2),
    "(1^1,2^1,3^1)": (3, 0, 0, 0, 3, 0),
    "(1^3,3^1)": (1, 1, 1, -2, 2, -2),
    "(1^4,2^1)": (2, 1, 1, 0, 2, 0),
    "(1^2,2^2)": (2, 2, 2, 4, 2, 4),
    "(1^6)": (1, 1, 1, -2, 1, 2),
}


def c7_table():
    rep = table_report(6)
    d = {r["partition"]: (r["t"], r["w1"], r["w2"]) for r in rep.d_rows}
    a = {r["partition"]: (r["t"], r["p2"], r["r2"], r["what1"], r["r1"], r["what2"]) for r in rep.a_rows}
    problems = []
    if len(rep.d_rows) != 4 or d != TABLE_6_D:
        problems.append("D rows differ: %r" % d)
    if len(rep.a_rows) != 9 or a != TABLE_6_A:
        problems.append("A rows differ: %r" % a)
    if rep.d_total != {"w1": 0, "w2": 2}:
        problems.append("D totals %r" % rep.d_total)
    if rep.a_total != {"what1": 0, "what2": 2}:
        problems.append("A totals %r" % rep.a_total)
    return not problems, "; ".join(problems) or "4 D-rows, 9 A-rows, totals 0/2 and 0/2"


BRIDGE = [
    (PartitionClass.D, "w1", "cor1a", "lhs"),
    (PartitionClass.D, "w2", "cor1b", "lhs"),
    (PartitionClass.A, "what1", "cor1a", "rhs"),
    (PartitionClass.A, "what2", "cor1b", "rhs"),
]


def c8_bridge(n_max: int = 25):
    start = time.perf_counter()
    problems = []
    for cls, w, cid, side in BRIDGE:
        gf = weighted_gf(n_max, cls, w)
        series = ids.build_side(cid, side, n_max)
        if gf != series:
            k = next(k for k in range(n_max + 1) if gf.coeffs[k] != series.coeffs[k])
            problems.append("%s vs %s %s differ at q^%d" % (w, cid, side, k))
    elapsed = time.perf_counter() - start
    if elapsed >= 60.0:
        problems.append("took %.1fs (limit 60s)" % elapsed)
    return not problems, "; ".join(problems) or "4 generating functions match up to q^%d" % n_max


def weight_counterexamples(n_max: int = 20) -> List[str]:
    """Every disagreement between closed-form, raw and decomposition weights."""
    bad = []
    checks_d: List[Tuple[str, Callable]] = [
        ("w1 = raw(+,+)", lambda p: (weight_w(p, 1), raw_weight_lhs(p, 1, 1))),
        ("w2 = raw(-,-)", lambda p: (weight_w(p, 2), raw_weight_lhs(p, -1, -1))),
        ("raw(+,+) = pairs", lambda p: (raw_weight_lhs(p, 1, 1), decomposition_weight_lhs(p, 1, 1))),
        ("raw(-,-) = pairs", lambda p: (raw_weight_lhs(p, -1, -1), decomposition_weight_lhs(p, -1, -1))),
    ]
    checks_a: List[Tuple[str, Callable]] = [
        ("what1 = raw(-,-)", lambda p: (weight_what(p, 1), raw_weight_rhs(p, -1, -1))),
        ("what2 = raw(+,+)", lambda p: (weight_what(p, 2), raw_weight_rhs(p, 1, 1))),
        ("raw(-,-) = triples", lambda p: (raw_weight_rhs(p, -1, -1), decomposition_weight_rhs(p, -1, -1))),
        ("raw(+,+) = triples", lambda p: (raw_weight_rhs(p, 1, 1), decomposition_weight_rhs(p, 1, 1))),
    ]
    for n in range(n_max + 1):
        for cls, checks in ((PartitionClass.D, checks_d), (PartitionClass.A, checks_a)):
            for pi in enumerate_partitions(n, cls):
                for name, fn in checks:
                    x, y = fn(pi)
                    if x != y:
                        bad.append("%s fails at %s: %d != %d" % (name, pi, x, y))
    return bad


def c9_weights():
    bad = weight_counterexamples(20)
    return not bad, "; ".join(bad[:5]) or "all partitions of n <= 20 agree"


def c10_positivity():
    for n in range(31):
        for pi in enumerate_partitions(n, PartitionClass.D):
            w1, w2 = weight_w(pi, 1), weight_w(pi, 2)
            if w2 != abs(w1) or w2 < 0:
                return False, "w2 != |w1| at %s" % pi
    rep = verify("positivity", 200)
    if not rep.passed:
        return False, rep.summary()
    return True, "w2 = |w1| for |pi| <= 30; coefficients >= 0 up to q^200"


def rho_limit_failures(n_max: int = 8) -> List[int]:
    """n for which the rho^n part of (rho; q)_n is not (-1)^n q^(n(n-1)/2)."""
    bad = []
    for n in range(n_max + 1):
        top = n * (n - 1) // 2
        order = top + 4
        lead = poch_finite(PochBase.of(1, 0, rho=1), n, 1, order).extract("rho", n)
        if lead != QSeries.term(order, top, (-1) ** n):
            bad.append(n)
    return bad


def c11_rho_limit():
    bad = rho_limit_failures(8)
    return not bad, "fails for n = %s" % bad if bad else "n = 0..8 exact"


def mutant_thm1_rhs(order: int) -> QSeries:
    """Evenness right side with (-z)^n replaced by z^n: must NOT match."""

    def summand(n):
        s = QSeries.term(order, ids.tri(n), SymbolicCoefficient.term(1, z=n))
        s = s.mul_poch(PochBase.of(-1, 0, z=1, a=1), n)
        s = s.mul_poch(PochBase.of(-1, n + 1, z=1))
        return s.div_poch(ids.Q, n)

    return ids._sum_over_n(order, ids.tri, summand)


MUTANT = IdentityRecord("thm1-mutant", "sign-flipped evenness right side",
                        ids.thm1_lhs, mutant_thm1_rhs, 30, "mutation fixture")


def c12_mutation():
    rep = verify_record(MUTANT)
    ok = rep.outcome == "fail" and rep.first_mismatch is not None
    where = "q^%d" % rep.first_mismatch.q if rep.first_mismatch else "nowhere"
    return ok, "mutant %s, first mismatch at %s" % (rep.outcome, where)


CRITERIA = [
    (1, "evenness identity symbolic in a, z to q^30", c1_evenness),
    (2, "cross-multiplied transformed identity to q^30", c2_raw),
    (3, "Lebesgue (symbolic a) and Ramanujan grid (symbolic b) to q^40", c3_lebesgue_ramanujan),
    (4, "(q,1) and (-q,1) specializations to q^40", c4_corollaries),
    (5, "Heine transformation on 24 grid points to q^25", c5_heine),
    (6, "triple product to q^36; false theta and product step to q^100", c6_jtp),
    (7, "n = 6 weight table", c7_table),
    (8, "weighted generating functions = series sides to q^25", c8_bridge),
    (9, "closed-form = raw = decomposition weights, n <= 20", c9_weights),
    (10, "w2 = |w1| >= 0 and positivity to q^200", c10_positivity),
    (11, "leading rho coefficient of (rho;q)_n, n <= 8", c11_rho_limit),
    (12, "mutation sensitivity of the comparison", c12_mutation),
]


def run_criterion(number: int) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            ok, detail = fn()
            return CriterionResult(num, title, bool(ok), detail, time.perf_counter() - start)
    raise KeyError(number)


def run_suite() -> List[CriterionResult]:
    return [run_criterion(num) for num, _, _ in CRITERIA]
