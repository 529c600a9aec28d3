"""Exact integer helpers: primality, Jacobi symbols, sums of two squares
and square-free parts."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import sympy

from .errors import DomainError, InternalError, UnfactoredError

# Above this the brute-force two-squares search is replaced by Cornacchia.
BRUTE_FORCE_LIMIT = 10**6
DEFAULT_TRIAL_BOUND = 10**6


def is_prime(n: int) -> bool:
    """Primality test, deterministic for ``n < 2**64``.

    Larger inputs go through BPSW (no known counterexample, not a proof).
    """
    if n < 2:
        raise DomainError(f"is_prime needs n >= 2, got {n}", check="n>=2")
    return bool(sympy.isprime(n))


def jacobi_symbol(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive n, got {n}", check="n odd")
    return int(sympy.jacobi_symbol(a % n, n))


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def factor(n: int) -> dict[int, int]:
    """Prime factorisation of a positive integer (small inputs only)."""
    if n < 1:
        raise DomainError(f"factor needs n >= 1, got {n}")
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def divisors(n: int) -> list[int]:
    return sorted(int(d) for d in sympy.divisors(n))


@dataclass(frozen=True)
class TwoSquares:
    """``p = A^2 + B^2`` normalised so that ``A = -1 (mod 4)`` and ``p | A t + 2B``.

    ``x0``/``y0`` satisfy ``2p x0^2 = bp + (At+2B)``, ``2p y0^2 = bp - (At+2B)``
    and ``x0 y0 = (Bt - 2A) / 2p``.
    """

    p: int
    A: int
    B: int
    x0: int
    y0: int
    t: int
    b: int

    def check(self) -> None:
        p, A, B, t, b = self.p, self.A, self.B, self.t, self.b
        s = A * t + 2 * B
        ok = (
            A * A + B * B == p
            and A % 4 == 3
            and B % 2 == 0
            and s % p == 0
            and 2 * p * self.x0**2 == b * p + s
            and 2 * p * self.y0**2 == b * p - s
            and 2 * p * self.x0 * self.y0 == B * t - 2 * A
        )
        if not ok:
            raise InternalError(f"TwoSquares invariants violated: {self}")


def _two_squares_brute(p: int) -> tuple[int, int]:
    for a in range(1, isqrt(p) + 1, 2):
        r = p - a * a
        c = isqrt(r)
        if c * c == r:
            return a, c
    raise InternalError(f"no two-squares representation found for {p}")


def _two_squares_cornacchia(p: int) -> tuple[int, int]:
    # (odd, even) with odd^2 + even^2 = p, via Euclid on a square root of -1.
    r = int(sympy.sqrt_mod(-1, p))
    a, b = p, r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c2 = p - b * b
    c = isqrt(c2)
    if c * c != c2:
        raise InternalError(f"Cornacchia failed for {p}")
    return (b, c) if b % 2 else (c, b)


def two_squares(p: int, t: int) -> TwoSquares:
    """Decompose ``p`` as a sum of two squares with the sign conventions
    fixed by the trace ``t`` of the fundamental unit of Q(sqrt p)."""
    if p % 8 != 5:
        raise DomainError(f"p must be 5 mod 8, got {p}", check="p = 5 mod 8")
    if (t * t + 4) % p:
        raise DomainError(f"t^2 + 4 must be divisible by p (t={t}, p={p})", check="t^2+4 = 0 mod p")
    b2 = (t * t + 4) // p
    b = isqrt(b2)
    if b * b != b2:
        raise DomainError(f"(t^2 + 4)/p is not a square for t={t}, p={p}", check="t^2+4 = b^2 p")

    odd, even = _two_squares_brute(p) if p < BRUTE_FORCE_LIMIT else _two_squares_cornacchia(p)
    A = odd if odd % 4 == 3 else -odd
    candidates = [B for B in {even, -even} if (A * t + 2 * B) % p == 0]
    if len(candidates) != 1:
        raise InternalError(f"expected exactly one sign of B for p={p}, got {candidates}")
    B = candidates[0]

    s = A * t + 2 * B
    x2, rx = divmod(b * p + s, 2 * p)
    y2, ry = divmod(b * p - s, 2 * p)
    if rx or ry or not (is_square(x2) and is_square(y2)):
        raise InternalError(f"x0, y0 not integral for p={p}")
    x0, y0 = isqrt(x2), isqrt(y2)
    # kappa = +1 when Bt - 2A = 0 (sign is then irrelevant)
    if B * t - 2 * A < 0:
        y0 = -y0
    result = TwoSquares(p=p, A=A, B=B, x0=x0, y0=y0, t=t, b=b)
    result.check()
    return result


@dataclass(frozen=True)
class SquarefreeDecomp:
    """``value = s * A**2`` with ``s`` square-free and ``A > 0``."""

    s: int
    A: int


def squarefree_part(a: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> SquarefreeDecomp:
    """Split ``a`` into square-free part and square.

    Trial division runs up to ``trial_bound``; the leftover cofactor must be
    1, a prime, or the square of a prime, otherwise UnfactoredError is raised.
    """
    if a == 0:
        raise DomainError("squarefree_part of 0 is undefined", check="a != 0")
    sign = -1 if a < 0 else 1
    n = abs(a)
    s, root = 1, 1

    def take(d: int) -> None:
        nonlocal n, s, root
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        root *= d ** (e // 2)
        if e % 2:
            s *= d

    take(2)
    d = 3
    while d <= trial_bound and d * d <= n:
        if n % d == 0:
            take(d)
        d += 2

    if n > 1:
        if d * d > n or sympy.isprime(n):
            s *= n
        else:
            r = isqrt(n)
            if r * r == n and sympy.isprime(r):
                root *= r
            else:
                raise UnfactoredError(
                    f"cofactor {n} of {a} is composite beyond trial bound {trial_bound}"
                )
    return SquarefreeDecomp(s=sign * s, A=root)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
