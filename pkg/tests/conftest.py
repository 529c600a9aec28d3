"""Independent reference implementations used as oracles."""

import json
from math import isqrt
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"

P_SMALL = [5, 13, 29, 37, 53, 61, 101, 109]


def naive_lucas(t, n):
    """(F_n, L_n) by stepping the recurrence X^2 = tX + 1 in either direction."""
    f0, f1 = 0, 1
    if n >= 0:
        for _ in range(n):
            f0, f1 = f1, t * f1 + f0
    else:
        for _ in range(-n):
            f0, f1 = f1 - t * f0, f0
    return f0, 2 * f1 - t * f0


def naive_unit(p, b_max=10**5):
    """Least b >= 1 with b^2 p - 4 a square: the norm -1 unit of (1+sqrt p)/2 type."""
    for b in range(1, b_max):
        s = b * b * p - 4
        t = isqrt(s)
        if t * t == s:
            return t, b
    raise AssertionError("no unit in range")


def naive_roots(coeffs, F):
    """Roots of an integer polynomial (leading first) by trying every element."""
    out = []
    for x in F.elements():
        acc = F.zero
        for c in coeffs:
            acc = F.add(F.mul(acc, x), F.elem(c))
        if not any(acc):
            out.append(x)
    return sorted(out)


def naive_two_squares(p):
    for A in range(-isqrt(p), isqrt(p) + 1):
        B2 = p - A * A
        B = isqrt(B2)
        if B * B == B2 and A % 4 == 3 and B % 2 == 0:
            yield A, B
            yield A, -B


@pytest.fixture(scope="session")
def golden_tables():
    return json.loads((GOLDEN / "tables.json").read_text())


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    """``record(n, passed, detail)`` prints one line per acceptance criterion."""

    def _record(number, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(line)
        request.config._acceptance_lines.append(line)

    return _record
