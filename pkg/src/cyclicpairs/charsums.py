"""Quartic-character sums modulo p.

Jacobi sums are exact in Z[i]; Gauss sums are evaluated in floating point."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from sympy import primitive_root

from .arith import TwoSquares, is_prime
from .errors import DomainError, InternalError, ResourceError
from .lucas import lucas_pair

GAUSS_SUM_LIMIT = 10**4


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"


# powers of i as Gaussian integers
_I_POWERS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


@dataclass(frozen=True)
class IotaChoice:
    p: int
    t: int
    iota: int
    index: tuple[int, ...] = field(repr=False, compare=False, default=())

    def chi(self, a: int) -> int:
        """Exponent ``k`` with ``chi(a) = i^k``; the character sends iota to i."""
        return self.index[a % self.p] % 4


def _check_p(p: int) -> None:
    if p % 8 != 5 or not is_prime(p):
        raise DomainError(f"p must be a prime = 5 (mod 8), got {p}", check="p = 5 mod 8")


def choose_iota(p: int, t: int) -> IotaChoice:
    """Least primitive root ``iota`` with ``t = -2 iota^((p-1)/4) (mod p)``."""
    _check_p(p)
    if (t * t + 4) % p:
        raise DomainError(f"t^2 + 4 is not divisible by {p}", check="t^2 = -4 mod p")
    g = primitive_root(p)
    # primitive roots are g^k with gcd(k, p-1) = 1
    roots = sorted(pow(g, k, p) for k in range(1, p - 1) if math.gcd(k, p - 1) == 1)
    for iota in roots:
        if (t + 2 * pow(iota, (p - 1) // 4, p)) % p == 0:
            break
    else:  # one of iota, -iota always qualifies
        raise InternalError(f"no primitive root normalizes t={t} mod {p}")
    index = [0] * p
    x = 1
    for k in range(p - 1):
        index[x] = k
        x = x * iota % p
    return IotaChoice(p, t, iota, tuple(index))


def jacobi_sum(p: int, iota: IotaChoice) -> GaussianInt:
    """``J(chi, chi) = sum_a chi(a) chi(1 - a)`` computed exactly."""
    total = [0, 0, 0, 0]
    for a in range(2, p):
        total[(iota.chi(a) + iota.chi(1 - a)) % 4] += 1
    return GaussianInt(total[0] - total[2], total[1] - total[3])


@dataclass
class GaussSumReport:
    p: int
    A: int
    B: int
    G: complex
    G_bar: complex
    tolerance: float
    errors: dict[str, float]

    @property
    def violations(self) -> list[str]:
        return [name for name, err in self.errors.items() if not err <= self.tolerance]

    @property
    def ok(self) -> bool:
        return not self.violations


def gauss_sum_report(p: int, iota: IotaChoice, A: int | None = None, B: int | None = None) -> GaussSumReport:
    """Evaluate ``G(chi)`` and ``G(conj chi)`` numerically and check the five
    closed forms in terms of ``sqrt(p)``, ``A`` and ``B``.

    ``A + Bi`` defaults to the exact Jacobi sum.
    """
    if p > GAUSS_SUM_LIMIT:
        raise ResourceError(f"p={p} exceeds the floating Gauss-sum limit {GAUSS_SUM_LIMIT}")
    if A is None or B is None:
        J = jacobi_sum(p, iota)
        A, B = J.re, J.im
    ipow = (1, 1j, -1, -1j)
    G = Gb = 0j
    for a in range(1, p):
        z = cmath.exp(2j * math.pi * a / p)
        k = iota.chi(a)
        G += ipow[k] * z
        Gb += ipow[-k % 4] * z
    rp = math.sqrt(p)
    targets = {
        "G*G_bar = -p": (G * Gb, -p),
        "G^2 = sqrt(p)(A+iB)": (G * G, rp * complex(A, B)),
        "G_bar^2 = sqrt(p)(A-iB)": (Gb * Gb, rp * complex(A, -B)),
        "(G+G_bar)^2 = 2sqrt(p)A-2p": ((G + Gb) ** 2, 2 * rp * A - 2 * p),
        "(G-G_bar)^2 = 2sqrt(p)A+2p": ((G - Gb) ** 2, 2 * rp * A + 2 * p),
    }
    errors = {name: abs(got - want) for name, (got, want) in targets.items()}
    return GaussSumReport(p, A, B, G, Gb, 1e-9 * p, errors)


def lambda_mu_squares(p: int, t: int, b: int, A: int, B: int, m: int, n: int) -> tuple[int, int]:
    """The integers ``lambda^2`` and ``mu^2``:

        -1/2 (F_n L_m - 2F_m) b p L_m (b p F_n -+ L_n A - 2B)
    """
    if m % 2 == 0 or n % 2 == 0:
        raise DomainError("m and n must be odd", check="parity")
    Fm, Lm = lucas_pair(t, m).F, lucas_pair(t, m).L
    Fn, Ln = lucas_pair(t, n).F, lucas_pair(t, n).L
    head = (Fn * Lm - 2 * Fm) * b * p * Lm
    lam = head * (b * p * Fn - Ln * A - 2 * B)
    mu = head * (b * p * Fn + Ln * A - 2 * B)
    if lam % 2 or mu % 2:
        raise InternalError(f"odd product for lambda/mu at m={m}, n={n}")
    return -lam // 2, -mu // 2


def lemma47_check(p: int, t: int, b: int, ts: TwoSquares, n: int) -> bool:
    """``b p F_{4n+-1} -+ L_{4n+-1} A - 2B == 2p (x0 F_{2n} +- y0 F_{2n+-1})^2`` for both signs."""
    F2n = lucas_pair(t, 2 * n).F
    for s in (1, -1):
        k = lucas_pair(t, 4 * n + s)
        lhs = b * p * k.F - s * k.L * ts.A - 2 * ts.B
        rhs = 2 * p * (ts.x0 * F2n + s * ts.y0 * lucas_pair(t, 2 * n + s).F) ** 2
        if lhs != rhs:
            return False
    return True
