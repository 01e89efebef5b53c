import pytest
from hypothesis import given

from lincbo.context import FormalContext, closure_downup, gen_contranominal, gen_random
from lincbo.dgbasis import (AlgorithmId, BasisResult, ClosureKind, compute_basis, lincbo,
                            lincbo1, nextclosure_basis, verify_basis)
from lincbo.enumeration import cbo_closed_sets, lectic_less, sort_lectic
from lincbo.implications import Theory
from lincbo.oracle import dg_basis_bruteforce, intents_bruteforce, pseudo_intents_bruteforce

from conftest import S, T, contexts, random_corpus

ALGORITHMS = list(AlgorithmId)


def k1_basis():
    return {(S(4), S(2, 3, 4)), (S(2, 3), S(2, 3, 4))}


class TestAlgorithmId:
    @pytest.mark.parametrize("text,expect", [
        ("lincbo", AlgorithmId.LINCBO), ("LinCbO1", AlgorithmId.LINCBO1),
        ("nc2", AlgorithmId.NC2), ("nc+3", AlgorithmId.NCP3), ("NC-1", AlgorithmId.NC1),
        ("ncp1", AlgorithmId.NCP1),
    ])
    def test_parse(self, text, expect):
        assert AlgorithmId.parse(text) is expect

    def test_parse_unknown(self):
        with pytest.raises(ValueError):
            AlgorithmId.parse("attinc")


class TestExamples:
    @pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda a: a.value)
    def test_k1(self, k1, algo):
        res = compute_basis(k1, algo)
        assert res.basis.as_set() == k1_basis()
        assert (res.intent_count, res.pseudo_intent_count) == (8, 2)
        assert res.algorithm == algo.value

    @pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda a: a.value)
    def test_empty_premise(self, algo):
        ctx = FormalContext.from_rows([S(1), S(1, 2)], 2)
        res = compute_basis(ctx, algo)
        assert list(res.basis) == [(0, S(1))]
        assert res.intent_count == 2

    @pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda a: a.value)
    def test_contranominal(self, algo):
        res = compute_basis(gen_contranominal(5), algo)
        assert len(res.basis) == 0 and res.intent_count == 32

    @pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda a: a.value)
    def test_no_attributes(self, algo):
        res = compute_basis(FormalContext.from_rows([0, 0, 0], 0), algo)
        assert (len(res.basis), res.intent_count) == (0, 1)

    @pytest.mark.parametrize("algo", ALGORITHMS, ids=lambda a: a.value)
    def test_no_objects(self, algo):
        # every set of attributes is valid, so ∅ => Y is the whole basis
        res = compute_basis(FormalContext.from_rows([], 3), algo)
        assert list(res.basis) == [(0, 0b111)]
        assert res.intent_count == 1

    def test_summary(self, k1):
        s = lincbo(k1).summary()
        assert set(s) == {"algorithm", "intents", "pseudo_intents", "closure_calls", "ms"}
        assert (s["algorithm"], s["intents"], s["pseudo_intents"]) == ("lincbo", 8, 2)
        assert s["closure_calls"] > 0


def visited(fn, ctx, *args):
    seq = []
    res = fn(ctx, *args, visit=seq.append)
    return res, seq


class TestAgreement:
    @given(contexts(max_objects=12, max_attributes=7))
    def test_all_algorithms_match_oracle(self, ctx):
        oracle = dg_basis_bruteforce(ctx).as_set()
        n_int = len(intents_bruteforce(ctx))
        for algo in ALGORITHMS:
            res = compute_basis(ctx, algo)
            assert res.basis.as_set() == oracle, algo
            assert res.intent_count == n_int, algo
            assert res.pseudo_intent_count == len(res.basis) == len(oracle)

    def test_corpus_with_checked_counters(self):
        for ctx in random_corpus(40):
            res = lincbo(ctx, check=True)
            assert res.basis.as_set() == dg_basis_bruteforce(ctx).as_set()
            assert res.checked_calls == res.closure_calls

    def test_medium_random(self):
        ctx = gen_random(60, 20, 4, seed=3)
        ref = lincbo(ctx)
        for algo in ALGORITHMS[1:]:
            res = compute_basis(ctx, algo)
            assert res.basis.as_set() == ref.basis.as_set(), algo
            assert res.intent_count == ref.intent_count

    def test_intent_count_matches_cbo(self):
        ctx = gen_random(40, 16, 5, seed=11)
        n = sum(1 for _ in cbo_closed_sets(lambda s: closure_downup(ctx, s), 16))
        assert lincbo(ctx).intent_count == n


class TestVisitOrder:
    @given(contexts(max_objects=12, max_attributes=7))
    def test_visits_int_and_p_in_lectic_order(self, ctx):
        n = ctx.n_attributes
        expect = sort_lectic(intents_bruteforce(ctx) + pseudo_intents_bruteforce(ctx), n)
        for fn in (lincbo, lincbo1):
            res, seq = visited(fn, ctx)
            assert seq == expect
        for kind in ClosureKind:
            for plus in (False, True):
                res, seq = visited(nextclosure_basis, ctx, kind, plus)
                assert seq == expect

    def test_k1_visits(self, k1):
        _, seq = visited(lincbo, k1)
        assert seq == [0, S(4), S(3), S(2), S(2, 3), S(2, 3, 4), S(1), S(1, 3), S(1, 2),
                       S(1, 2, 3, 4)]

    @given(contexts(max_objects=12, max_attributes=7))
    def test_premises_lectic_increasing(self, ctx):
        prem = lincbo(ctx).basis.premises
        assert all(lectic_less(a, b) for a, b in zip(prem, prem[1:]))


class TestPseudoIntentProperties:
    @given(contexts(max_objects=12, max_attributes=8))
    def test_conditions(self, ctx):
        basis = lincbo(ctx).basis
        pairs = list(basis)
        for p, c in pairs:
            assert c == closure_downup(ctx, p) and c != p
        for p0, c0 in pairs:
            for p, _ in pairs:
                if p0 & ~p == 0 and p0 != p:
                    assert c0 & ~p == 0 and c0 != p
        assert len(set(basis.premises)) == len(basis)


class TestVerify:
    def test_k1_passes(self, k1):
        report = verify_basis(k1, lincbo(k1).basis)
        assert report.ok
        assert all(report[name] for name in
                   ("soundness", "completeness", "non-redundancy", "pseudo-intent count"))

    def test_missing_implication(self, k1):
        basis = lincbo(k1).basis
        report = verify_basis(k1, basis.without(0))
        assert report["soundness"] and not report["completeness"]
        assert not report.ok

    def test_empty_theory_on_contranominal(self):
        report = verify_basis(gen_contranominal(4), Theory(4))
        assert report.ok and report["completeness"]

    def test_redundant_and_unsound(self, k1):
        basis = lincbo(k1).basis
        basis.add((S(2, 3, 4), S(2, 3, 4)))
        report = verify_basis(k1, basis)
        assert report["completeness"] and not report["non-redundancy"]
        bad = T(4, ((1,), (1, 2)))
        assert not verify_basis(k1, bad)["soundness"]

    def test_large_context_skips(self):
        ctx = gen_random(30, 14, 4, seed=1)
        report = verify_basis(ctx, lincbo(ctx).basis, exhaustive_limit=12)
        assert report["soundness"] and report["completeness"] is None
        assert report.ok
        assert "skip" in report.format()

    @given(contexts(max_objects=12, max_attributes=7))
    def test_computed_bases_verify(self, ctx):
        assert verify_basis(ctx, lincbo(ctx).basis).ok

    def test_result_type(self, k1):
        assert isinstance(lincbo1(k1), BasisResult)
