import numpy as np
import pytest

from lamlab.fits import extrapolation_check, fit, fits_polynomial, relative_residual


def test_exact_line():
    xs = np.arange(1, 8)
    ok, r = fits_polynomial(xs, 3 * xs + 3, 1)
    assert ok and r < 1e-9


def test_cubic_recovers_coefficients():
    xs = np.arange(0, 10)
    m = fit(xs, 2 * xs ** 3 - xs + 5, 3)
    assert np.allclose(m.coefficients, [2, 0, -1, 5])


def test_exponential_is_not_cubic():
    xs = np.arange(2, 12)
    ok, r = fits_polynomial(xs, 2.0 ** xs, 3)
    assert not ok and r > 0.05


def test_extrapolation_check():
    xs = np.arange(2, 9)
    ok, pred, obs = extrapolation_check(xs, xs ** 2 + 1.0, 3, train=5)
    assert ok
    ok, _, _ = extrapolation_check(xs, 3 * 2.0 ** xs + 1, 3, train=5)
    assert not ok


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        fit([1, 2], [1, 2], 3)
    with pytest.raises(ValueError):
        relative_residual([1, 2, 3], [0, 1, 2], fit([1, 2, 3], [0, 1, 2], 1))
