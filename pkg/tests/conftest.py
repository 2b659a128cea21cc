import json
import pathlib

import mpmath
import pytest

GOLDENS = pathlib.Path(__file__).with_name("goldens.json")


@pytest.fixture(scope="session")
def goldens():
    return json.loads(GOLDENS.read_text())


def mp_sigma(alpha, beta, n, dps=40):
    """Gamma-quotient coefficient in arbitrary precision."""
    with mpmath.workdps(dps):
        a, b = mpmath.mpc(alpha), mpmath.mpc(beta)
        val = (-1) ** n * mpmath.gamma(1 - 2 * a) * mpmath.rgamma(-a + b + 1 - n) * mpmath.rgamma(-a - b + 1 + n)
        return complex(val)


def mp_single_factor_coeff(alpha, beta, theta0, n, dps=20):
    """Coefficient of one factor by tanh-sinh quadrature of its closed form.

    Around the singular point the factor is ``(2 sin(y/2))^{-2 alpha}`` times
    ``e^{i beta (y - pi)}`` at ``theta0 + y`` and ``e^{i beta (pi - y)}`` at
    ``theta0 - y``, ``0 < y < pi``.  The substitution ``y = u^p`` with
    ``p = 1/(1 - 2 Re alpha)`` removes the endpoint singularity.
    """
    with mpmath.workdps(dps):
        a, b = mpmath.mpc(alpha), mpmath.mpc(beta)
        pi = mpmath.pi
        p = 1 / (1 - 2 * mpmath.re(a))

        def g(u):
            y = u**p
            w = (2 * mpmath.sin(y / 2)) ** (-2 * a) * p * u ** (p - 1)
            up = mpmath.exp(1j * b * (y - pi) - 1j * n * (theta0 + y))
            down = mpmath.exp(1j * b * (pi - y) - 1j * n * (theta0 - y))
            return w * (up + down)

        return complex(mpmath.quad(g, [0, pi ** (1 / p)]) / (2 * pi))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for text in mod.summary_lines():
        terminalreporter.write_line(text)
