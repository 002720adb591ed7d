import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.stats import norm

from rmrll.gf2 import BitVector
from rmrll.rll import RLLConstraint, satisfies, satisfies_batch
from rmrll.rm_code import GuardError, RMCode, all_codewords, binom_le, eval_monomial, plotkin_split
from rmrll.subcode import (
    SubcodeSpec,
    build_subcode,
    largest_rll_subcode_bruteforce,
    plotkin_filter_count,
    plotkin_filter_passes,
    q_function,
    q_inverse,
    rate_degree,
    shift_for,
    subcode_rate,
)


class TestQInverse:
    def test_half(self):
        assert q_inverse(0.5) == 0.0

    def test_one_sigma(self):
        assert abs(q_inverse(q_function(1.0)) - 1.0) < 1e-9
        assert abs(q_function(1.0) - 0.158655) < 1e-6

    @pytest.mark.parametrize("p", [1e-9, 1e-4, 0.01, 0.2, 0.37, 0.63, 0.9, 0.999])
    def test_against_scipy(self, p):
        assert q_inverse(p) == pytest.approx(norm.isf(p), abs=1e-9)

    def test_domain(self):
        with pytest.raises(ValueError):
            q_inverse(0.0)


class TestRateDegree:
    def test_half_rate(self):
        for m in range(1, 40):
            assert rate_degree(m, 0.5) == m // 2

    def test_m9(self):
        assert rate_degree(9, 0.5) == 4

    def test_clamped(self):
        for m in range(1, 30):
            for R in (0.01, 0.3, 0.99):
                assert 0 <= rate_degree(m, R) <= m

    def test_formula(self):
        for m in (10, 25, 64):
            for R in (0.2, 0.7):
                t = m / 2 + math.sqrt(m) / 2 * norm.isf(1 - R)
                assert rate_degree(m, R) == min(max(math.floor(t), 0), m)


class TestShift:
    @pytest.mark.parametrize("d,z", [(0, 0), (1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)])
    def test_values(self, d, z):
        assert shift_for(d) == z
        if d:
            assert (1 << z) - 1 >= d > (1 << (z - 1)) - 1


class TestEncoder:
    def test_zero_message(self):
        s = build_subcode(5, 0.5, 1)
        assert s.encode(BitVector.zeros(s.message_bits)) == BitVector.zeros(32)

    def test_m3(self):
        s = build_subcode(3, 0.5, 1)
        assert (s.r_m, s.message_bits) == (1, 1)
        image = {tuple(s.encode(BitVector([b]))) for b in (0, 1)}
        assert image == {(0,) * 8, tuple(eval_monomial((3,), 3))}

    def test_m4_all_pass(self):
        s = build_subcode(4, 0.5, 1)
        assert (s.r_m, s.message_bits) == (2, 4)
        for v in range(16):
            assert satisfies(s.encode(BitVector.from_int(v, 4)), RLLConstraint(1))

    def test_generator_matches_encoder(self, rng):
        s = build_subcode(8, 0.5, 3)
        G = s.generator.to_array().astype(np.int64)
        for _ in range(20):
            msg = rng.integers(0, 2, s.message_bits, dtype=np.uint8)
            assert np.array_equal(s.encode(BitVector(msg)).to_array(), msg.astype(np.int64) @ G % 2)

    def test_codewords_are_in_parent_and_products(self, rng):
        # every codeword is h*g, hence vanishes off the support and lies in RM(m, r_m)
        for d in (1, 2, 3):
            s = build_subcode(7, 0.5, d)
            off = np.setdiff1d(np.arange(s.n), s.support_positions)
            for _ in range(10):
                c = s.encode(BitVector(rng.integers(0, 2, s.message_bits, dtype=np.uint8)))
                assert s.parent.contains(c)
                assert not c.to_array()[off].any()

    def test_empty_subcode(self):
        s = SubcodeSpec(d=7, m=3, R=0.1)
        assert s.message_bits == 0
        assert s.encode(BitVector([])) == BitVector.zeros(8)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            build_subcode(5, 0.5, 1).encode(BitVector("1"))


@pytest.mark.parametrize("d", [1, 2, 3, 4, 7])
def test_constraint_validity_small(d):
    c = RLLConstraint(d)
    for m in range(shift_for(d) + 1, 10):
        s = build_subcode(m, 0.5, d)
        if s.message_bits == 0 or s.message_bits > 16:
            continue
        words = all_codewords(s.generator)
        assert satisfies_batch(words, c).all()


class TestRate:
    @pytest.mark.parametrize("d,asym", [(1, 0.25), (3, 0.125), (2, 0.125)])
    def test_asymptote(self, d, asym):
        assert subcode_rate(20, 0.5, d).asymptote == asym

    def test_exact_value(self):
        m, d = 12, 1
        s = build_subcode(m, 0.5, d)
        assert subcode_rate(m, 0.5, d).exact == Fraction(binom_le(m - 1, s.r_m - 1), 1 << m)

    def test_matches_dimension(self):
        for m in range(3, 11):
            s = build_subcode(m, 0.5, 1)
            assert s.generator.rows == s.message_bits == round(subcode_rate(m, 0.5, 1).value * 2**m)

    def test_large_m_is_exact(self):
        r = subcode_rate(200, 0.5, 1)
        assert isinstance(r.exact, Fraction) and r.exact.denominator <= 1 << 200
        assert abs(r.value - 0.25) < 0.02

    def test_unconstrained_row(self):
        assert subcode_rate(10, 0.5, 0).value == RMCode(10, rate_degree(10, 0.5)).rate


class TestBruteForce:
    def test_rm21(self):
        res = largest_rll_subcode_bruteforce(RMCode(2, 1), RLLConstraint(1))
        assert res.count == 4
        assert {tuple(w) for w in res.listing} == {(0, 0, 0, 0), (0, 1, 0, 1), (1, 0, 1, 0), (1, 0, 0, 1)}

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_repetition(self, m):
        assert largest_rll_subcode_bruteforce(RMCode(m, 0), RLLConstraint(1)).count == 1

    def test_unconstrained(self):
        assert largest_rll_subcode_bruteforce(RMCode(4, 2), RLLConstraint(0)).count == 1 << 11

    def test_guard(self):
        with pytest.raises(GuardError):
            largest_rll_subcode_bruteforce(RMCode(6, 3), RLLConstraint(1), guard=20)

    def test_contains_construction(self):
        # the product construction is one (d, inf) subcode, so never beats the largest
        for m, d in [(4, 1), (5, 1), (5, 3)]:
            s = build_subcode(m, 0.5, d)
            best = largest_rll_subcode_bruteforce(s.parent, RLLConstraint(d))
            assert best.count >= 1 << s.message_bits


class TestPlotkinFilter:
    @pytest.mark.parametrize("m,r", [(2, 1), (3, 1), (4, 2), (3, 2)])
    def test_upper_bounds_constrained(self, m, r):
        code = RMCode(m, r)
        filt = plotkin_filter_count(code)
        words = all_codewords(code)
        brute = sum(plotkin_filter_passes(BitVector(w)) for w in words)
        assert filt == brute
        assert filt >= largest_rll_subcode_bruteforce(code, RLLConstraint(1)).count >= 1

    def test_rm21_at_least_four(self):
        assert plotkin_filter_count(RMCode(2, 1)) >= 4

    def test_g_zero_words_pass(self):
        code = RMCode(3, 1)
        words = all_codewords(code)
        zero_g = [w for w in words if not plotkin_split(BitVector(w))[0].weight()]
        assert len(zero_g) == 1 << RMCode(2, 0).dim
        assert all(plotkin_filter_passes(BitVector(w)) for w in zero_g)
        assert plotkin_filter_count(code) >= len(zero_g)
