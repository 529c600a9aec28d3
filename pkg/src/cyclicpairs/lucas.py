"""The Lucas pair ``F_n``, ``L_n`` attached to ``X^2 - t X - 1``.

``F_0 = 0, F_1 = 1, L_0 = 2, L_1 = t`` and both obey ``x_{n+2} = t x_{n+1} + x_n``
for every integer ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

from .arith import factor, jacobi_symbol, lcm
from .errors import DomainError, ResourceError

Which = Literal["F", "L"]

LINEAR_SCAN_CAP = 10**7


@dataclass(frozen=True)
class LucasPair:
    t: int
    n: int
    F: int
    L: int


def _pair_nonneg(t: int, n: int, mod: int | None = None) -> tuple[int, int]:
    """Return ``(F_n, F_{n+1})`` for ``n >= 0`` by fast doubling."""
    a, b = 0, 1  # F_k, F_{k+1} with k = 0
    for bit in bin(n)[2:]:
        # k -> 2k
        a, b = a * (2 * b - t * a), a * a + b * b
        if mod is not None:
            a, b = a % mod, b % mod
        if bit == "1":
            a, b = b, t * b + a
            if mod is not None:
                b %= mod
    return a, b


def _exact(t: int, n: int) -> tuple[int, int]:
    k = abs(n)
    f, f1 = _pair_nonneg(t, k)
    L = 2 * f1 - t * f
    if n < 0:
        # F_{-k} = (-1)^{k+1} F_k, L_{-k} = (-1)^k L_k
        if k % 2 == 0:
            f = -f
        else:
            L = -L
    return f, L


def lucas_pair(t: int, n: int) -> LucasPair:
    """Exact ``(F_n, L_n)``; negative ``n`` allowed."""
    f, L = _exact(t, n)
    return LucasPair(t=t, n=n, F=f, L=L)


def lucas_pair_mod(t: int, n: int, m: int) -> tuple[int, int]:
    """``(F_n mod m, L_n mod m)`` in O(log |n|) ring operations."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}", check="m>=2")
    k = abs(n)
    f, f1 = _pair_nonneg(t, k, m)
    L = (2 * f1 - t * f) % m
    if n < 0:
        if k % 2 == 0:
            f = -f % m
        else:
            L = -L % m
    return f, L


class LucasTable:
    """Exact values over an index window ``[lo, hi]``, computed once."""

    def __init__(self, t: int, lo: int, hi: int):
        self.t, self.lo, self.hi = t, lo, hi
        F = [0] * (hi - lo + 1)
        L = [0] * (hi - lo + 1)
        F[0], L[0] = _exact(t, lo)
        if hi > lo:
            F[1], L[1] = _exact(t, lo + 1)
        for i in range(2, hi - lo + 1):
            F[i] = t * F[i - 1] + F[i - 2]
            L[i] = t * L[i - 1] + L[i - 2]
        self._F, self._L = F, L

    def F(self, n: int) -> int:
        return self._F[n - self.lo]

    def L(self, n: int) -> int:
        return self._L[n - self.lo]


# ---------------------------------------------------------------- periods


@dataclass(frozen=True)
class PeriodResult:
    modulus: int
    sequence: str
    period: int


def _period_bound(t: int, m: int) -> int:
    """A multiple of the order of ``[[t, 1], [1, 0]]`` modulo ``m``."""
    d = t * t + 4
    bound = 1
    for ell, e in factor(m).items():
        if ell == 2:
            base = 6
        elif d % ell == 0:
            base = ell * (ell - 1)
        else:
            # u^(ell-1) = 1 when d is a square mod ell, u^(ell+1) = N(u) = -1 otherwise
            base = lcm(ell - 1, 2 * (ell + 1))
        bound = lcm(bound, base * ell ** (e - 1))
    return bound


def _state(t: int, n: int, m: int, which: Which) -> tuple[int, int]:
    f, f1 = _pair_nonneg(t, n, m)
    if which == "F":
        return f, f1
    f2 = (t * f1 + f) % m
    return (2 * f1 - t * f) % m, (2 * f2 - t * f1) % m


def period(t: int, m: int, which: Which = "F") -> PeriodResult:
    """Least ``pi > 0`` with ``x_{n+pi} = x_n (mod m)`` for all ``n``."""
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}", check="m>=2")
    if which not in ("F", "L"):
        raise DomainError(f"sequence must be 'F' or 'L', got {which!r}")
    start = _state(t, 0, m, which)
    bound = _period_bound(t, m)
    if _state(t, bound, m, which) == start:
        pi = bound
        for r in factor(bound):
            while pi % r == 0 and _state(t, pi // r, m, which) == start:
                pi //= r
        return PeriodResult(modulus=m, sequence=which, period=pi)

    # not expected to be reached; kept as a bounded safety net
    state = start
    a, b = state
    for n in range(1, LINEAR_SCAN_CAP + 1):
        a, b = b, (t * b + a) % m
        if (a, b) == start:
            return PeriodResult(modulus=m, sequence=which, period=n)
    raise ResourceError(f"no period found within {LINEAR_SCAN_CAP} steps (m={m})")


# ------------------------------------------------------- identity checks


@dataclass
class IdentityReport:
    t: int
    b: int
    p: int
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, name: str, holds: bool, **where) -> None:
        self.checked += 1
        if not holds:
            self.violations.append(f"{name} fails at {where}")


def identity_suite(
    t: int, b: int, p: int, n_range: Iterable[int], m_range: Iterable[int]
) -> IdentityReport:
    """Check the norm relation, the addition laws and the squared-index
    identities exactly over the given index ranges."""
    ns, ms = list(n_range), list(m_range)
    span = max([abs(x) for x in ns + ms] + [0])
    tab = LucasTable(t, -2 * span - 2, 2 * span + 3)
    F, L = tab.F, tab.L
    d = b * b * p
    rep = IdentityReport(t=t, b=b, p=p)

    for n in ns:
        sign = -1 if n % 2 else 1
        rep.record("sign law F", F(-n) == -sign * F(n), n=n)
        rep.record("sign law L", L(-n) == sign * L(n), n=n)
        rep.record("norm relation", L(n) ** 2 - d * F(n) ** 2 == 4 * sign, n=n)
        rep.record("F(2n+1) = F(n+1)^2 + F(n)^2", F(2 * n + 1) == F(n + 1) ** 2 + F(n) ** 2, n=n)
        rep.record(
            "F(n)^2 - F(n+1)^2",
            d * (F(n) ** 2 - F(n + 1) ** 2) == -t * L(2 * n + 1) - 4 * sign,
            n=n,
        )
        rep.record("F(n)F(n+1)", d * F(n) * F(n + 1) == L(2 * n + 1) - sign * t, n=n)
        for m in ms:
            rep.record(
                "F(n+m) addition law",
                F(n + m) == F(n) * F(m + 1) + F(n - 1) * F(m),
                n=n,
                m=m,
            )
            rep.record(
                "L(n+m) - (-1)^m L(n-m)",
                L(n + m) - (1 - 2 * (m % 2)) * L(n - m) == d * F(n) * F(m),
                n=n,
                m=m,
            )
    return rep


def valuation_law_check(t: int, p: int, nu: int, n: int) -> bool:
    """Whether ``p**nu`` divides ``F_n`` given that it divides ``n``."""
    if nu < 1:
        raise DomainError(f"exponent must be >= 1, got {nu}")
    if n % p**nu:
        raise DomainError(f"{p}^{nu} does not divide n={n}", check="p^nu | n")
    f, _ = lucas_pair_mod(t, n, p**nu)
    return f == 0


def period_divisibility(t: int, b: int, p: int, qs: Iterable[int]) -> IdentityReport:
    """Check the period bounds: mod p^2, F has period dividing p^2(p-1) and L
    dividing p(p-1); mod q both divide q-1 or 2(q+1) by the symbol (p/q)."""
    rep = IdentityReport(t=t, b=b, p=p)
    p2 = p * p
    piF, piL = period(t, p2, "F").period, period(t, p2, "L").period
    rep.record("F period mod p^2 | p^2(p-1)", (p2 * (p - 1)) % piF == 0, period=piF)
    rep.record("L period mod p^2 | p(p-1)", (p * (p - 1)) % piL == 0, period=piL)
    for q in qs:
        if (2 * b * p) % q == 0:
            continue
        bound = q - 1 if jacobi_symbol(p, q) == 1 else 2 * (q + 1)
        for which in ("F", "L"):
            pi = period(t, q, which).period
            rep.record(f"{which} period mod q divides {bound}", bound % pi == 0, q=q, period=pi)
    return rep
