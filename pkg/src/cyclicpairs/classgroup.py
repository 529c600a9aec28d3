"""Class numbers of imaginary quadratic fields at small discriminant.

``class_number`` counts reduced binary quadratic forms; ``class_number_analytic``
evaluates the finite character-sum formula and serves as an independent check.
Only quadratic fields are handled: class numbers of the higher-degree fields
``k0(sqrt D)`` are out of reach here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

import numpy as np

from .arith import squarefree_part
from .errors import DomainError, UnfactoredError
from .family import D_value

CLASS_NUMBER_LIMIT = 10**9


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1 if d == 2 else 2
    return True


def is_fundamental(disc: int) -> bool:
    if disc in (0, 1):
        return False
    if disc % 4 == 1:
        return _squarefree(disc)
    if disc % 4 == 0:
        m = disc // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_discriminant(D: int) -> int:
    """Discriminant of ``Q(sqrt D)``."""
    s = squarefree_part(D).s
    if s == 1:
        raise DomainError(f"{D} is a square; Q(sqrt {D}) is not a quadratic field", check="non-square")
    return s if s % 4 == 1 else 4 * s


def _check_disc(disc: int) -> None:
    if disc >= 0 or not is_fundamental(disc):
        raise DomainError(f"{disc} is not a negative fundamental discriminant", check="fundamental")
    if -disc > CLASS_NUMBER_LIMIT:
        raise DomainError(f"|{disc}| exceeds {CLASS_NUMBER_LIMIT}", check="size")


def class_number(disc: int) -> int:
    """Number of reduced forms ``(a, b, c)`` of discriminant ``disc``."""
    _check_disc(disc)
    N = -disc
    h = 0
    for a in range(1, isqrt(N // 3) + 1):
        b = np.arange(-a + 1, a + 1, dtype=np.int64)
        b = b[(b - disc) % 2 == 0]
        num = b * b + N
        ok = num % (4 * a) == 0
        b, c = b[ok], num[ok] // (4 * a)
        keep = (c > a) | ((c == a) & (b >= 0))
        h += int(keep.sum())
    return h


@lru_cache(maxsize=1)
def _spf_table(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for d in range(2, isqrt(limit) + 1):
        if spf[d] == 0:
            block = spf[d * d :: d]
            block[block == 0] = d
    rest = np.arange(limit + 1)
    spf[spf == 0] = rest[spf == 0]
    return spf


def _kronecker_prime(disc: int, primes: np.ndarray) -> np.ndarray:
    """``(disc / l)`` for each prime ``l``, vectorized."""
    out = np.zeros(primes.shape, dtype=np.int64)
    odd = primes != 2
    ell = primes[odd]
    base = disc % ell
    e = (ell - 1) // 2
    acc = np.ones_like(ell)
    while e.any():
        acc = np.where(e & 1, acc * base % ell, acc)
        base = base * base % ell
        e >>= 1
    out[odd] = np.where(acc == 1, 1, np.where(acc == 0, 0, -1))
    if disc % 2 == 0:
        out[~odd] = 0
    else:
        out[~odd] = 1 if disc % 8 in (1, 7) else -1
    return out


def kronecker_table(disc: int) -> np.ndarray:
    """``chi_disc(a)`` for ``0 <= a < |disc|``."""
    N = abs(disc)
    spf = _spf_table(max(N, 1 << 14))[:N]
    a = np.arange(N)
    chi = np.ones(N, dtype=np.int64)
    chi[0] = 0
    x = a.copy()
    x[0] = 1
    primes = np.unique(spf[2:])
    chi_p = dict(zip(primes.tolist(), _kronecker_prime(disc, primes).tolist()))
    lookup = np.zeros(N, dtype=np.int64)
    lookup[primes] = [chi_p[int(p)] for p in primes]
    while (x > 1).any():
        active = x > 1
        f = spf[x[active]]
        chi[active] *= lookup[f]
        x[active] //= f
    return chi


def class_number_analytic(disc: int) -> int:
    """``h = w / (2|D|) * |sum_a chi_D(a) a|`` for negative fundamental ``D``."""
    _check_disc(disc)
    N = -disc
    w = 6 if disc == -3 else 4 if disc == -4 else 2
    total = abs(int((kronecker_table(disc) * np.arange(N)).sum()))
    h, rem = divmod(w * total, 2 * N)
    if rem:
        raise ArithmeticError(f"character sum for {disc} is not an integer multiple")
    return h


@dataclass(frozen=True)
class ImagQuadField:
    D_input: int
    fundamental_discriminant: int | None
    class_number: int | None
    status: str  # divisible / not_divisible / infeasible
    reason: str = ""


def imag_quad_field(D: int, p: int, budget: int = CLASS_NUMBER_LIMIT) -> ImagQuadField:
    if D >= 0:
        return ImagQuadField(D, None, None, "infeasible", "not imaginary")
    try:
        disc = fundamental_discriminant(D)
    except UnfactoredError:
        return ImagQuadField(D, None, None, "infeasible", "discriminant not factored")
    if -disc > min(budget, CLASS_NUMBER_LIMIT):
        return ImagQuadField(D, disc, None, "infeasible", "discriminant over budget")
    h = class_number(disc)
    return ImagQuadField(D, disc, h, "divisible" if h % p == 0 else "not_divisible")


@dataclass(frozen=True)
class DivisibilityProbe:
    p: int
    m: int
    n: int
    D: ImagQuadField
    pD: ImagQuadField

    @property
    def status(self) -> str:
        states = {self.D.status, self.pD.status}
        if "infeasible" in states:
            return "infeasible"
        return "divisible" if states == {"divisible"} else "not_divisible"


def divisibility_probe(p: int, t: int, b: int, m: int, n: int,
                       budget: int = CLASS_NUMBER_LIMIT, trial_bound: int = 10**6) -> DivisibilityProbe:
    """Whether ``p`` divides the class numbers of ``Q(sqrt D)`` and ``Q(sqrt pD)``.

    These are the quadratic subfields only; their class numbers need not be
    divisible by ``p``, so a ``not_divisible`` result is not a counterexample
    to anything.
    """
    D = D_value(t, b, m, n)
    return DivisibilityProbe(p, m, n, imag_quad_field(D, p, budget), imag_quad_field(p * D, p, budget))
