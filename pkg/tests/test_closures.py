import random

from hypothesis import given, strategies as st

from lincbo.bitset import prefix_mask
from lincbo.closures import lin_closure, lin_closure_es, lin_closure_rc, wild_closure
from lincbo.implications import Theory, naive_closure

from conftest import S, T, theories

ALL = (naive_closure, lin_closure, wild_closure, lambda th, b: lin_closure_es(th, b, 0))


def Y(k):
    """0-based ``y`` for a 1-based attribute number."""
    return k - 1


def t234():
    return T(4, ((4,), (2, 3, 4)), ((2, 3), (2, 3, 4)))


class TestExamples:
    def test_lin_closure_counter_fires(self):
        assert lin_closure(T(3, ((1, 2), (3,))), S(1, 2)) == S(1, 2, 3)

    def test_empty_premise(self):
        th = T(1, ((), (1,)))
        for f in (lin_closure, wild_closure, naive_closure):
            assert f(th, 0) == S(1)

    def test_two_implications(self):
        assert lin_closure(t234(), S(2, 3)) == S(2, 3, 4)
        assert wild_closure(t234(), S(4)) == S(2, 3, 4)
        assert wild_closure(Theory(4), S(1, 3)) == S(1, 3)

    def test_es_fail_below_y(self):
        th = T(4, ((4,), (2, 3, 4)))
        assert lin_closure_es(th, S(3, 4), Y(3)) is None
        assert lin_closure_es(th, S(4), Y(4)) is None

    def test_es_empty_theory(self):
        assert lin_closure_es(Theory(4), S(2), Y(2)) == S(2)

    def test_es_fail_iff_prefix_changes(self):
        th = T(4, ((4,), (2, 3, 4)))
        full = lin_closure(th, S(3, 4))
        assert full & prefix_mask(Y(3)) != S(3, 4) & prefix_mask(Y(3))

    def test_rc_zero_counter_fires(self):
        # no counters at {2}, then {2,4} => {5} is added and {2,4} is closed
        th = Theory(5)
        d0, c0 = lin_closure_rc(th, S(2), Y(2), S(2), [])
        assert (d0, c0) == (S(2), [])
        th.add((S(2, 4), S(5)))
        d, counts = lin_closure_rc(th, S(2, 4), Y(4), S(4), c0)
        assert (d, counts) == (S(2, 4, 5), [0])
        assert d == lin_closure(th, S(2, 4))

    def test_rc_empty_state_is_es(self):
        th = t234()
        for b in range(16):
            for y in range(-1, 4):
                res = lin_closure_rc(th, b, y, b, [])
                es = lin_closure_es(th, b, y)
                assert (res and res[0]) == es or (res is None and es is None)

    def test_rc_early_stop(self):
        th = T(4, ((4,), (1,)))
        assert lin_closure_rc(th, S(4), Y(4), S(4), [1]) is None


class TestAgreement:
    @given(theories())
    def test_all_closures_agree(self, th):
        for b in range(1 << th.n_attributes):
            res = {f(th, b) for f in ALL}
            assert len(res) == 1

    @given(theories(max_size=20), st.data())
    def test_es_sound(self, th, data):
        n = th.n_attributes
        b = data.draw(st.integers(0, (1 << n) - 1))
        y = data.draw(st.integers(-1, n - 1))
        full = naive_closure(th, b)
        pm = prefix_mask(y)
        res = lin_closure_es(th, b, y)
        if full & pm & ~b:
            assert res is None
        else:
            assert res == full

    @given(theories(allow_empty_premise=False))
    def test_closure_properties(self, th):
        n = th.n_attributes
        for b in range(1 << n):
            d = lin_closure(th, b)
            assert b & ~d == 0
            assert lin_closure(th, d) == d
            for a in range(n):
                assert lin_closure(th, b | (d & (1 << a))) == d

    @given(theories(allow_empty_premise=False))
    def test_each_attribute_dequeued_once(self, th):
        for b in range(1 << th.n_attributes):
            trace = []
            d = lin_closure(th, b, trace)
            assert sorted(trace) == [a for a in range(th.n_attributes) if d >> a & 1]


def recount(theory, d):
    return [(p & ~d).bit_count() for p in theory.premises]


class TestCounterReuse:
    @given(theories(n=7, max_size=15, allow_empty_premise=False), st.data())
    def test_postcondition(self, th, data):
        b = data.draw(st.integers(0, 127))
        out = lin_closure_rc(th, b, 0, b, [])
        d, counts = out
        assert d == naive_closure(th, b)
        assert counts == recount(th, d)

    @given(st.integers(0, 10_000))
    def test_chain_matches_fresh(self, seed):
        rng = random.Random(seed)
        n = 8
        th = Theory(n)
        b, prev = 0, []
        d, prev = lin_closure_rc(th, 0, 0, 0, prev)
        for _ in range(12):
            # grow the theory a little, then extend the closed set by fresh attributes
            for _ in range(rng.randint(0, 3)):
                p = rng.randrange(1, 1 << n)
                th.add((p, p | rng.randrange(1 << n)))
            outside = [a for a in range(n) if not d >> a & 1]
            if not outside:
                break
            znew = sum(1 << a for a in rng.sample(outside, rng.randint(1, len(outside))))
            y = max(a for a in range(n) if znew >> a & 1)
            b = d | znew
            res = lin_closure_rc(th, b, y, znew, prev)
            fresh = lin_closure_es(th, b, y)
            if res is None:
                assert fresh is None
                break
            d, prev = res
            assert d == fresh
            assert prev == recount(th, d)
