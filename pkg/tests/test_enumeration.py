import itertools

import pytest
from hypothesis import given, strategies as st

from lincbo.context import closure_downup, gen_contranominal
from lincbo.enumeration import (all_closed_subsets_naive, canonicity, cbo_closed_sets,
                                lectic_key, lectic_less, next_closure, next_closure_sequence,
                                sort_lectic, subsets_in_lectic_order)

from conftest import S, contexts


def lectic_by_vectors(a, b, n):
    # compare characteristic vectors, attribute 1 being the most significant digit
    va = "".join("1" if a >> i & 1 else "0" for i in range(n))
    vb = "".join("1" if b >> i & 1 else "0" for i in range(n))
    return va < vb


def K1_SEQUENCE():
    return [0, S(3), S(2), S(2, 3, 4), S(1), S(1, 3), S(1, 2), S(1, 2, 3, 4)]


class TestLectic:
    def test_examples(self):
        assert lectic_less(0, S(4))
        assert lectic_less(S(3, 4), S(2))
        assert not lectic_less(S(2), S(3, 4))
        assert not lectic_less(S(2), S(2))

    def test_matches_binary_numbers(self):
        n = 5
        for a, b in itertools.product(range(1 << n), repeat=2):
            assert lectic_less(a, b) == lectic_by_vectors(a, b, n)

    def test_subsets_in_order(self):
        seq = list(subsets_in_lectic_order(4))
        assert len(set(seq)) == 16
        assert all(lectic_less(x, y) for x, y in zip(seq, seq[1:]))
        assert seq[:3] == [0, S(4), S(3)]

    def test_key_sorts(self):
        assert sort_lectic([S(2), S(3, 4), 0, S(4)], 4) == [0, S(4), S(3, 4), S(2)]
        assert lectic_key(0, 0) == 0

    @given(st.integers(0, 255), st.integers(0, 255))
    def test_extends_inclusion(self, a, b):
        if a & ~b == 0 and a != b:
            assert lectic_less(a, b)

    @given(st.integers(0, 255), st.integers(0, 255), st.integers(0, 255))
    def test_strict_total_order(self, a, b, c):
        assert (a == b) + lectic_less(a, b) + lectic_less(b, a) == 1
        if lectic_less(a, b) and lectic_less(b, c):
            assert lectic_less(a, c)


class TestCanonicity:
    def test_k1(self, k1):
        assert not canonicity(0, closure_downup(k1, S(4)), 3)
        assert canonicity(0, closure_downup(k1, S(1)), 0)
        assert canonicity(S(2, 3), S(2, 3), 2)

    def test_definition(self):
        for b, d in itertools.product(range(16), repeat=2):
            for i in range(5):
                low = {a for a in range(i)}
                expect = {a for a in low if d >> a & 1} == {a for a in low if b >> a & 1}
                assert canonicity(b, d, i) == expect


class TestCbO:
    def test_k1_sequence(self, k1):
        assert list(cbo_closed_sets(lambda s: closure_downup(k1, s), 4)) == K1_SEQUENCE()

    def test_contranominal_3(self):
        ctx = gen_contranominal(3)
        seq = list(cbo_closed_sets(lambda s: closure_downup(ctx, s), 3))
        assert seq == list(subsets_in_lectic_order(3))

    def test_identity(self):
        assert list(cbo_closed_sets(lambda s: s, 3)) == list(subsets_in_lectic_order(3))

    def test_constant(self):
        assert list(cbo_closed_sets(lambda s: 0b111, 3)) == [0b111]

    def test_deep_attribute_set(self):
        # closed sets are the prefixes {0..i}: a single branch 300 levels deep
        n = 300
        seq = list(cbo_closed_sets(lambda s: (1 << s.bit_length()) - 1, n))
        assert seq == [(1 << i) - 1 for i in range(n + 1)]

    @given(contexts(max_objects=12, max_attributes=8))
    def test_equals_naive_oracle(self, ctx):
        n = ctx.n_attributes
        calls = []

        def c(s):
            calls.append(s)
            return closure_downup(ctx, s)

        seq = list(cbo_closed_sets(c, n))
        assert set(seq) == all_closed_subsets_naive(lambda s: closure_downup(ctx, s), n)
        assert len(seq) == len(set(seq))
        assert all(lectic_less(x, y) for x, y in zip(seq, seq[1:]))
        assert seq[-1] == (1 << n) - 1
        assert len(calls) <= 1 + n * len(seq)

    @given(contexts(max_objects=12, max_attributes=8))
    def test_next_closure_same_sequence(self, ctx):
        n = ctx.n_attributes
        c = lambda s: closure_downup(ctx, s)
        assert list(next_closure_sequence(c, n)) == list(cbo_closed_sets(c, n))


class TestNextClosure:
    def test_k1(self, k1):
        c = lambda s: closure_downup(k1, s)
        assert next_closure(c, 0, 4) == S(3)
        assert next_closure(c, S(1, 2, 3, 4), 4) == S(1, 2, 3, 4)
        assert next_closure(c, S(2), 4) == S(2, 3, 4)


class TestNaive:
    def test_examples(self, k1):
        assert all_closed_subsets_naive(lambda s: s, 2) == {0, 1, 2, 3}
        assert len(all_closed_subsets_naive(lambda s: closure_downup(k1, s), 4)) == 8
        assert all_closed_subsets_naive(lambda s: 0b111, 3) == {0b111}

    def test_limit(self):
        with pytest.raises(ValueError):
            all_closed_subsets_naive(lambda s: s, 21)
