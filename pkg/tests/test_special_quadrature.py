import math

import mpmath
import numpy as np
import pytest
from scipy.special import sici

from cvdj.quadrature import QuadratureError, adaptive_simpson
from cvdj.special import sine_integral


def si_oracle(t):
    """Si by high-precision adaptive quadrature of sin(u)/u."""
    with mpmath.workdps(30):
        return float(mpmath.quad(lambda u: mpmath.sin(u) / u, [0, t]))


class TestSineIntegral:
    def test_zero(self):
        assert sine_integral(0.0) == 0.0

    def test_pi_frozen(self):
        assert sine_integral(math.pi) == pytest.approx(1.85193705198246617, abs=1e-12)

    @pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
    def test_odd(self, t):
        assert sine_integral(-t) == -sine_integral(t)

    @pytest.mark.parametrize(
        "t", [1e-8, 0.1, 0.5, 1.0, math.pi / 2, math.pi, 5.0, 7.99, 8.0, 8.01, 12.0, 25.0, 60.0, 100.0]
    )
    def test_against_quadrature_oracle(self, t):
        assert abs(sine_integral(t) - si_oracle(t)) <= 1e-12

    def test_dense_against_scipy(self):
        t = np.linspace(-50, 50, 20001)
        assert np.max(np.abs(sine_integral(t) - sici(t)[0])) <= 1e-12

    def test_monotone_on_zero_pi(self):
        t = np.linspace(0, math.pi, 2001)
        assert np.all(np.diff(sine_integral(t)) > 0)

    def test_large_limit(self):
        assert sine_integral(1e8) == pytest.approx(math.pi / 2, abs=1e-8)
        assert sine_integral(math.inf) == math.pi / 2


class TestAdaptiveSimpson:
    def test_polynomial_exact(self):
        assert adaptive_simpson(lambda x: x**3 - x, 0, 2) == pytest.approx(2.0, abs=1e-13)

    def test_reversed_limits(self):
        assert adaptive_simpson(np.cos, 1, 0) == pytest.approx(-math.sin(1), abs=1e-12)

    def test_empty(self):
        assert adaptive_simpson(np.cos, 1.5, 1.5) == 0.0

    def test_oscillatory_with_breakpoints(self):
        f = lambda x: np.sinc(x / np.pi) ** 2
        nodes = np.arange(-31, 32) * np.pi
        got = adaptive_simpson(f, -100, 100, tol=1e-11, breakpoints=nodes)
        with mpmath.workdps(25):
            ref = float(mpmath.quad(lambda x: mpmath.sinc(x) ** 2, [-100] + [float(n) for n in nodes] + [100]))
        assert got == pytest.approx(ref, abs=1e-10)

    def test_discontinuity_at_breakpoint(self):
        f = lambda x: np.where(x < 0.3, 1.0, -2.0)
        assert adaptive_simpson(f, 0, 1, breakpoints=[0.3]) == pytest.approx(0.3 - 1.4, abs=1e-14)

    def test_nonconvergence_raises(self):
        with pytest.raises(QuadratureError):
            adaptive_simpson(lambda x: 1 / np.sqrt(np.abs(x - 0.3)), 0, 1, tol=1e-14, max_depth=8)
