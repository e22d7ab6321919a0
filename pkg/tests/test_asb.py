import math

import numpy as np
import pytest

from cvdj.asb import SignAssignment, balanced_assignments, signed_sum, verify_asb_dominance
from cvdj.bitstrings import asb_pair

X = np.linspace(-math.pi / 2, math.pi / 2, 401)


def angles4(x):
    return 3 * x / 4, x / 4


class TestSignAssignment:
    def test_unbalanced_rejected(self):
        with pytest.raises(ValueError, match="not balanced"):
            SignAssignment((1, 1, 1, -1))

    def test_bits_roundtrip(self):
        g = SignAssignment.from_bits("0110")
        assert g.g == (1, -1, -1, 1) and str(g.to_bits()) == "0110" and g.m == 2


class TestSignedSum:
    def test_asb_sine_sum_form(self):
        p1, p2 = angles4(X)
        got = np.abs(signed_sum(SignAssignment.from_bits("0011"), X))
        np.testing.assert_allclose(got, 2 * np.abs(np.sin(p1) + np.sin(p2)), atol=1e-14)

    def test_cosine_difference_form(self):
        # phasor order (phi1, phi2, -phi2, -phi1): the palindrome 0110 gives the real sum
        p1, p2 = angles4(X)
        got = np.abs(signed_sum(SignAssignment.from_bits("0110"), X))
        np.testing.assert_allclose(got, 2 * np.abs(np.cos(p1) - np.cos(p2)), atol=1e-14)

    def test_sine_difference_form(self):
        p1, p2 = angles4(X)
        got = np.abs(signed_sum(SignAssignment.from_bits("0101"), X))
        np.testing.assert_allclose(got, 2 * np.abs(np.sin(p1) - np.sin(p2)), atol=1e-14)

    @pytest.mark.parametrize("N", [2, 4, 6, 8])
    def test_zero_at_origin(self, N):
        for g in balanced_assignments(N):
            assert signed_sum(g, 0.0) == 0

    @pytest.mark.parametrize("N", [4, 6])
    def test_symmetries(self, N):
        for g in balanced_assignments(N):
            neg = SignAssignment(tuple(-v for v in g.g))
            np.testing.assert_allclose(np.abs(signed_sum(neg, X)), np.abs(signed_sum(g, X)), atol=1e-14)
            np.testing.assert_allclose(np.abs(signed_sum(g, -X)), np.abs(signed_sum(g, X)), atol=1e-14)

    @pytest.mark.parametrize("N", [2, 4, 8, 12])
    def test_asb_is_sine_sum(self, N):
        g = SignAssignment.from_bits(asb_pair(N)[0])
        x = np.linspace(0, math.pi / 2, 201)[1:]
        j = np.arange(1, N // 2 + 1)
        phi = np.multiply.outer(x, (N - (2 * j - 1)) / N)
        expected = np.abs(2 * np.sin(phi).sum(axis=1))
        got = np.abs(signed_sum(g, x))
        np.testing.assert_allclose(got, expected, atol=1e-13)
        assert np.all(got > 0)

    def test_domain(self):
        with pytest.raises(ValueError):
            signed_sum(SignAssignment.from_bits("01"), 2.0)


class TestVerifyDominance:
    def test_n2_trivial(self):
        r = verify_asb_dominance(2)
        assert r.holds and r.worst_margin == 0.0 and r.witness is None and r.strings_checked == 2

    def test_n4_orderings(self):
        r = verify_asb_dominance(4)
        assert r.holds and r.strings_checked == 6
        x = np.linspace(0, math.pi / 2, 2001)
        s1, s2, s3 = (np.abs(signed_sum(SignAssignment.from_bits(z), x)) for z in ("0011", "0110", "0101"))
        assert np.all(s1 >= s2) and np.all(s1 >= s3)
        assert np.all(s1[1:] > s3[1:])

    @pytest.mark.parametrize("N", [4, 6, 8])
    def test_positive_interior_margin(self, N):
        r = verify_asb_dominance(N, grid=2001)
        assert r.holds and r.worst_margin > 0

    def test_brute_force_loop_agrees(self):
        # independent route: per-assignment signed_sum, no matrix batching
        N = 6
        x = np.linspace(0, math.pi / 2, 2001)
        ref = np.abs(signed_sum(SignAssignment.from_bits(asb_pair(N)[0]), x))
        worst = min(
            (ref - np.abs(signed_sum(g, x)))[1:].min()
            for g in balanced_assignments(N)
            if abs(sum(g.g[: N // 2])) != N // 2
        )
        assert verify_asb_dominance(N).worst_margin == pytest.approx(worst, abs=1e-14)

    def test_workers_deterministic(self):
        a = verify_asb_dominance(12, grid=257, workers=1)
        b = verify_asb_dominance(12, grid=257, workers=4)
        assert a == b

    def test_cap(self):
        with pytest.raises(ValueError, match="cap"):
            verify_asb_dominance(18)
        with pytest.raises(ValueError):
            verify_asb_dominance(5)
