import json

import pytest
from hypothesis import given, settings, strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from qverify.errors import ClassWeightMismatch, NotDistinct, NotInA
from qverify.identities import build_side
from qverify.partitions import (EMPTY, Partition, PartitionClass, decompose_lhs, decompose_rhs,
                                decomposition_weight_lhs, decomposition_weight_rhs, enumerate_partitions,
                                raw_weight_lhs, raw_weight_rhs, staircase, stats, table_report, weight_w,
                                weight_what, weighted_gf)

P = Partition.parse
D, A, ALL = PartitionClass.D, PartitionClass.A, PartitionClass.ALL


def oracle_partitions(n):
    """All partitions of n from sympy, as Partition objects."""
    if n == 0:
        return [EMPTY]
    out = []
    for d in sympy_partitions(n):
        parts = [k for k, m in d.items() for _ in range(m)]
        out.append(Partition.from_parts(parts))
    return out


@pytest.mark.parametrize("n", range(0, 19))
def test_enumeration_matches_sympy(n):
    ref = oracle_partitions(n)
    assert sorted(enumerate_partitions(n, ALL)) == sorted(ref)
    assert len(set(enumerate_partitions(n, ALL))) == len(ref)
    assert set(enumerate_partitions(n, D)) == {p for p in ref if max(p.freqs, default=0) <= 1}
    assert set(enumerate_partitions(n, A)) == {p for p in ref if p.p(2) <= p.chain}


def test_enumeration_order_is_lexicographic():
    for n in range(1, 12):
        for cls in PartitionClass:
            vecs = [p.freqs + (0,) * (n - len(p.freqs)) for p in enumerate_partitions(n, cls)]
            assert vecs == sorted(vecs)


def test_six_distinct():
    assert set(enumerate_partitions(6, D)) == {P("(6^1)"), P("(1^1,5^1)"), P("(2^1,4^1)"), P("(1^1,2^1,3^1)")}


def test_six_in_A():
    got = enumerate_partitions(6, A)
    assert len(got) == 9
    assert P("(1^2,2^2)") in got and P("(1^6)") in got
    assert P("(2^3)") not in got and P("(3^2)") not in got


def test_zero():
    for cls in PartitionClass:
        assert enumerate_partitions(0, cls) == [EMPTY]


def test_distinct_subset_of_A():
    for n in range(21):
        ds = enumerate_partitions(n, D)
        assert all(p.in_A for p in ds)
        assert set(ds) <= set(enumerate_partitions(n, A))


def test_parse_and_str():
    p = P("(1^4,2^2,3^4,5^1,6^1)")
    assert p.freqs == (4, 2, 4, 0, 1, 1)
    assert str(p) == "(1^4,2^2,3^4,5^1,6^1)"
    assert P("(5, 1)") == Partition.from_parts([1, 5])
    assert str(EMPTY) == "()"
    assert Partition((1, 0, 0)) == Partition((1,))


class TestStats:
    def test_worked_example(self):
        s = stats(P("(1^4,2^2,3^4,5^1,6^1)"), 5)
        assert (s.size, s.parts, s.chain) == (31, 12, 3)
        assert s.p == (6, 3, 3, 3, 0)
        assert s.r == (5, 3, 2, 2, 0)

    def test_empty(self):
        s = stats(EMPTY, 3)
        assert (s.size, s.parts, s.chain, s.p, s.r) == (0, 0, 0, (0, 0, 0), (0, 0, 0))

    def test_single_six(self):
        s = stats(P("(6^1)"), 2)
        assert (s.chain, s.pj(1), s.pj(2), s.rj(1), s.rj(2)) == (0, 6, 0, 1, 0)


partitions_st = st.lists(st.integers(0, 4), max_size=8).map(Partition)


@settings(max_examples=300, deadline=None)
@given(partitions_st)
def test_stat_invariants(p):
    s = stats(p, 6)
    for j in range(5):
        assert s.p[j + 1] <= s.p[j]
        assert s.r[j + 1] <= s.r[j]
    assert s.chain <= s.pj(1)
    assert s.rj(1) <= s.parts


class TestWeights:
    @pytest.mark.parametrize("text, w1, w2", [("(6^1)", -1, 1), ("(1^1,5^1)", 0, 0), ("(2^1,4^1)", 1, 1),
                                              ("(1^1,2^1,3^1)", 0, 0), ("()", 1, 1)])
    def test_w(self, text, w1, w2):
        assert (weight_w(P(text), 1), weight_w(P(text), 2)) == (w1, w2)

    @pytest.mark.parametrize("text, w1, w2", [("(1^2,2^2)", 4, 4), ("(1^6)", -2, 2), ("(1^4,2^1)", 0, 0),
                                              ("(6^1)", 1, -1), ("(1^2,4^1)", -2, -2)])
    def test_what(self, text, w1, w2):
        assert (weight_what(P(text), 1), weight_what(P(text), 2)) == (w1, w2)

    def test_domain_errors(self):
        with pytest.raises(NotDistinct):
            weight_w(P("(1^2)"), 1)
        with pytest.raises(NotInA):
            weight_what(P("(2^2)"), 1)
        with pytest.raises(NotDistinct):
            raw_weight_lhs(P("(3^2)"), 1, 1)
        with pytest.raises(NotInA):
            raw_weight_rhs(P("(3^2)"), 1, 1)

    def test_raw_lhs_examples(self):
        assert raw_weight_lhs(P("(6^1)"), 1, 1) == -1 == weight_w(P("(6^1)"), 1)
        assert raw_weight_lhs(P("(1^1,5^1)"), 1, 1) == (-1) ** 2 + (-1) ** 1
        assert raw_weight_lhs(EMPTY, 1, -1) == raw_weight_lhs(EMPTY, -1, 1) == 1

    def test_raw_rhs_examples(self):
        assert raw_weight_rhs(P("(1^2,2^2)"), -1, -1) == 4
        assert raw_weight_rhs(P("(1^1,5^1)"), -1, -1) == 1 - 1
        assert raw_weight_rhs(P("(6^1)"), 1, 1) == -1 == weight_what(P("(6^1)"), 2)

    def test_key_observation(self):
        for n in range(25):
            for p in enumerate_partitions(n, D):
                assert weight_w(p, 2) == abs(weight_w(p, 1)) >= 0


def test_closed_form_equals_raw_equals_decomposition():
    for n in range(16):
        for p in enumerate_partitions(n, D):
            assert weight_w(p, 1) == raw_weight_lhs(p, 1, 1) == decomposition_weight_lhs(p, 1, 1)
            assert weight_w(p, 2) == raw_weight_lhs(p, -1, -1) == decomposition_weight_lhs(p, -1, -1)
        for p in enumerate_partitions(n, A):
            assert weight_what(p, 1) == raw_weight_rhs(p, -1, -1) == decomposition_weight_rhs(p, -1, -1)
            assert weight_what(p, 2) == raw_weight_rhs(p, 1, 1) == decomposition_weight_rhs(p, 1, 1)


class TestDecompose:
    def test_staircase_pairs(self):
        pairs = decompose_lhs(P("(1^1,2^1,3^1)"))
        assert [s for _, s in pairs] == [staircase(k) for k in range(4)]

    def test_single_pair(self):
        assert decompose_lhs(P("(6^1)")) == [(P("(6^1)"), EMPTY)]
        assert decompose_lhs(EMPTY) == [(EMPTY, EMPTY)]

    def test_rhs_examples(self):
        assert decompose_rhs(P("(1^2,2^2)")) == [(EMPTY, P("(1,2)"), P("(1,2)"))]
        assert decompose_rhs(P("(6^1)")) == [(P("(6^1)"), EMPTY, EMPTY)]
        assert len(decompose_rhs(P("(1^1,5^1)"))) == 2

    def test_lhs_completeness(self):
        for n in range(21):
            for p in enumerate_partitions(n, D):
                pairs = decompose_lhs(p)
                assert len(pairs) == p.chain + 1
                assert all(d + s == p for d, s in pairs)

    def test_rhs_range(self):
        for n in range(16):
            for p in enumerate_partitions(n, A):
                ks = [s.num_parts for _, s, _ in decompose_rhs(p)]
                assert ks == list(range(p.p(2), p.chain + 1))

    def test_rhs_exhaustive(self):
        # every (k, distinct pi_d with parts > k, pi_o with parts <= k) summing to pi
        for n in range(11):
            for p in enumerate_partitions(n, A):
                expected = set()
                for k in range(n + 1):
                    rest = n - k * (k + 1) // 2
                    if rest < 0:
                        break
                    for m in range(rest + 1):
                        dists = [EMPTY] if m == 0 else [q for q in oracle_partitions(m)
                                                        if q.is_distinct and min(q.parts()) > k]
                        overs = [EMPTY] if rest - m == 0 else [q for q in oracle_partitions(rest - m)
                                                               if max(q.parts()) <= k]
                        for d in dists:
                            for ov in overs:
                                if d + staircase(k) + ov == p:
                                    expected.add((d, staircase(k), ov))
                assert set(decompose_rhs(p)) == expected, p


class TestGeneratingFunctions:
    def test_table_slots(self):
        assert weighted_gf(6, D, "w1")[6] == 0
        assert weighted_gf(6, D, "w2")[6] == 2
        assert weighted_gf(6, A, "what1")[6] == 0
        assert weighted_gf(6, A, "what2")[6] == 2

    def test_mismatch(self):
        with pytest.raises(ClassWeightMismatch):
            weighted_gf(5, A, "w1")
        with pytest.raises(ClassWeightMismatch):
            weighted_gf(5, ALL, "what2")
        with pytest.raises(ValueError):
            weighted_gf(5, D, "w3")

    @pytest.mark.parametrize("cls, w, cid, side", [(D, "w1", "cor1a", "lhs"), (D, "w2", "cor1b", "lhs"),
                                                   (A, "what1", "cor1a", "rhs"), (A, "what2", "cor1b", "rhs")])
    def test_bridge(self, cls, w, cid, side):
        assert weighted_gf(18, cls, w) == build_side(cid, side, 18)

    def test_positivity_bridge(self):
        gf = weighted_gf(30, D, "w2")
        assert min(gf.integer_coeffs()) >= 0
        assert gf == build_side("positivity", "lhs", 30)


class TestTable:
    def test_six(self):
        rep = table_report(6)
        assert len(rep.d_rows) == 4 and len(rep.a_rows) == 9
        assert rep.d_total == {"w1": 0, "w2": 2}
        assert rep.a_total == {"what1": 0, "what2": 2}
        row = next(r for r in rep.a_rows if r["partition"] == "(1^2,2^2)")
        assert row == {"partition": "(1^2,2^2)", "t": 2, "p2": 2, "r2": 2, "what1": 4, "r1": 2, "what2": 4}

    def test_zero(self):
        rep = table_report(0)
        assert len(rep.d_rows) == len(rep.a_rows) == 1
        assert rep.d_total == {"w1": 1, "w2": 1} and rep.a_total == {"what1": 1, "what2": 1}

    def test_one_matches_series(self):
        rep = table_report(1)
        assert rep.d_rows == [{"partition": "(1^1)", "t": 1, "w1": 0, "w2": 0}]
        assert [r["what1"] for r in rep.a_rows] == [0] and rep.a_total == {"what1": 0, "what2": 0}
        assert build_side("cor1a", "lhs", 1)[1] == 0

    def test_formats(self):
        rep = table_report(6)
        data = json.loads(rep.render("json"))
        assert data["D"]["total"] == {"w1": 0, "w2": 2}
        assert len(data["A"]["rows"]) == 9
        csv_lines = rep.render("csv").splitlines()
        assert csv_lines[0] == "set,partition,t,p2,r2,r1,w1,w2,what1,what2"
        assert len(csv_lines) == 1 + 4 + 1 + 9 + 1
        text = rep.render("text")
        assert "(1^1,2^1,3^1)" in text and "Total:" in text
        assert len({len(line) for line in text.splitlines() if "||" in line}) == 1
