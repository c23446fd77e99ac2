from fractions import Fraction

import pytest
import sympy

from pseudosplines.laurent import BivariateLaurent, UnivariateLaurent

Z, Z1, Z2 = sympy.symbols("z z1 z2")


def _coefficients(expr):
    expr = sympy.expand(expr)
    for term, coeff in expr.as_coefficients_dict().items():
        yield term.as_powers_dict(), Fraction(int(coeff.p), int(coeff.q))


def sympy_univariate(expr) -> UnivariateLaurent:
    """Expand a rational expression in ``z`` with monomial denominators into a Laurent polynomial."""
    out = {}
    for powers, c in _coefficients(expr):
        e = int(powers.get(Z, 0))
        out[e] = out.get(e, 0) + c
    return UnivariateLaurent(out)


def sympy_bivariate(expr) -> BivariateLaurent:
    out = {}
    for powers, c in _coefficients(expr):
        e = (int(powers.get(Z1, 0)), int(powers.get(Z2, 0)))
        out[e] = out.get(e, 0) + c
    return BivariateLaurent(out)


def sym_sigma(z):
    return (1 + z) ** 2 / (4 * z)


def sym_delta(z):
    return -((1 - z) ** 2) / (4 * z)


_acceptance_lines: list[str] = []


def pytest_runtest_logreport(report):
    if report.when != "call" or "acceptance" not in report.keywords:
        return
    doc = getattr(report, "criterion", None) or report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else "FAIL"
    _acceptance_lines.append(f"[{status}] {doc}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") and item.function.__doc__:
        rep.criterion = item.function.__doc__.strip().splitlines()[0]


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
