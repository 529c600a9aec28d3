"""Fundamental unit of Q(sqrt p) for primes p = 5 (mod 8)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .arith import is_prime
from .errors import DomainError, InternalError


@dataclass(frozen=True)
class FundamentalUnit:
    """``u_p = (t + b*sqrt(p)) / 2`` with ``t, b > 0`` and norm -1."""

    p: int
    t: int
    b: int

    def __post_init__(self):
        if self.t <= 0 or self.b <= 0 or self.t**2 + 4 != self.b**2 * self.p:
            raise DomainError(f"not a norm -1 unit: {self}", check="t^2 + 4 = b^2 p")


def _check_p(p: int) -> None:
    if p < 2 or p % 8 != 5 or not is_prime(p):
        raise DomainError(f"p must be a prime congruent to 5 mod 8, got {p}", check="p = 5 mod 8")


def fundamental_unit(p: int) -> FundamentalUnit:
    """Expand ``omega = (1 + sqrt p)/2`` as a continued fraction.

    The first convergent ``h/k`` with ``N(h - k*omega) = +-1`` gives the
    fundamental unit of the maximal order; since ``p = 1 (mod 4)`` its norm
    is -1, and ``t = 2h - k``, ``b = k``.
    """
    _check_p(p)
    root = isqrt(p)
    quarter = (p - 1) // 4
    # state (P, Q) for (P + sqrt p)/Q, Q | p - P^2
    P, Q = 1, 2
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    seen = set()
    while (P, Q) not in seen:
        seen.add((P, Q))
        a = (P + root) // Q
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        norm = h * h - h * k - quarter * k * k
        if norm in (1, -1):
            if norm == 1:
                raise InternalError(f"unit of norm +1 found first for p={p}")
            return FundamentalUnit(p=p, t=2 * h - k, b=k)
        P = a * Q - P
        Q = (p - P * P) // Q
    raise InternalError(f"continued fraction period ended without a unit for p={p}")
