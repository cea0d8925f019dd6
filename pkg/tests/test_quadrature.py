import math

import pytest

from divbounds.errors import QuadratureError
from divbounds.quadrature import gauss_kronrod_15, integrate_adaptive


def test_polynomial_is_near_exact():
    # K15 integrates polynomials up to degree 22 exactly
    val, err = integrate_adaptive(lambda x: x**6 - 2 * x**3 + 1, 0.0, 2.0)
    exact = 2.0**7 / 7 - 2 * 2.0**4 / 4 + 2.0
    assert val == pytest.approx(exact, abs=1e-12)
    assert err <= 1e-10


def test_gaussian_mass():
    pdf = lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi)
    val, _ = integrate_adaptive(pdf, -10.0, 10.0, abs_tol=1e-12)
    assert val == pytest.approx(1.0, abs=1e-11)


def test_empty_interval():
    assert integrate_adaptive(math.sin, 1.0, 1.0) == (0.0, 0.0)


def test_inverted_interval_rejected():
    with pytest.raises(ValueError):
        integrate_adaptive(math.sin, 1.0, 0.0)


def test_single_panel_matches_adaptive_on_smooth():
    f = lambda x: math.exp(-x) * math.cos(3 * x)
    panel, _ = gauss_kronrod_15(f, 0.0, 1.0)
    adaptive, _ = integrate_adaptive(f, 0.0, 1.0, abs_tol=1e-13)
    assert panel == pytest.approx(adaptive, abs=1e-10)


def test_nonconvergence_raises_with_estimate():
    # rapidly oscillating integrand with a far-too-small interval budget
    f = lambda x: math.sin(1000.0 * x)
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(f, 0.0, 50.0, abs_tol=1e-14, max_intervals=4)
    assert info.value.achieved_error > 1e-14
