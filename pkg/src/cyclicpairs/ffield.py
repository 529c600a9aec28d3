"""Finite fields F_q, F_{q^2}, F_{q^4}: a canonical tower, quartic roots
and p-th power residue tests.

Polynomials over F_q are coefficient tuples, constant term first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .arith import factor, is_prime
from .errors import DomainError, InternalError

# ------------------------------------------------------ F_q[X] arithmetic


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, q):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % q for c in out])


def _pdivmod(a, b, q):
    a = list(a)
    inv = pow(b[-1], -1, q)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % q
        if c:
            quot[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % q
    return _trim(quot), _trim(a[:db])


def _pmod(a, b, q):
    return _pdivmod(a, b, q)[1]


def _pgcd(a, b, q):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def _ppowmod(base, e, mod, q):
    result = [1]
    base = _pmod(base, mod, q)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, q), mod, q)
        e >>= 1
        if e:
            base = _pmod(_pmul(base, base, q), mod, q)
    return result


def _frobenius_power(f, q, k):
    """``X^(q^k) mod f`` over F_q."""
    h = _pmod([0, 1], f, q)
    for _ in range(k):
        h = _ppowmod(h, q, f, q)
    return h


def is_irreducible(f: Sequence[int], q: int) -> bool:
    """Rabin's test for a monic polynomial over F_q."""
    f = _trim([c % q for c in f])
    d = len(f) - 1
    if d < 1 or f[-1] != 1:
        raise DomainError("is_irreducible expects a monic polynomial of degree >= 1")
    if d == 1:
        return True
    x = [0, 1]
    for r in factor(d):
        h = _frobenius_power(f, q, d // r)
        diff = _trim([(a - b) % q for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(f, diff, q)) != 1:
            return False
    h = _frobenius_power(f, q, d)
    return _trim(list(h)) == x


@lru_cache(maxsize=None)
def least_irreducible(q: int, d: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``d`` over F_q, comparing the
    non-leading coefficients lexicographically from the constant term."""
    for lower in itertools.product(range(q), repeat=d):
        f = lower + (1,)
        if d > 1 and lower[0] == 0:
            continue
        if is_irreducible(f, q):
            return f
    raise InternalError(f"no irreducible of degree {d} over F_{q}")


# ------------------------------------------------------------ the field


@dataclass(frozen=True, order=True)
class FieldElem:
    """An element of F_{q^level} as a coefficient vector over F_q."""

    level: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.level:
            raise DomainError(f"level {self.level} element needs {self.level} coefficients")

    def __int__(self):
        if any(self.coeffs[1:]):
            raise TypeError(f"{self} does not lie in the prime field")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        if self.level == 1:
            return str(self.coeffs[0])
        return "[" + ",".join(map(str, self.coeffs)) + "]"


class GF:
    """F_q[y]/(modulus) with elements stored as tuples of length ``degree``."""

    def __init__(self, q: int, modulus: Sequence[int]):
        self.q = q
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1
        self.order = q**self.degree
        self.zero = (0,) * self.degree
        self.one = (1,) + (0,) * (self.degree - 1)

    def __repr__(self):
        return f"GF({self.q}^{self.degree}, modulus={self.modulus})"

    def elem(self, value) -> tuple[int, ...]:
        if isinstance(value, FieldElem):
            value = value.coeffs
        if isinstance(value, int):
            return ((value % self.q),) + (0,) * (self.degree - 1)
        v = tuple(c % self.q for c in value)
        if len(v) != self.degree:
            raise DomainError(f"expected {self.degree} coefficients, got {len(v)}")
        return v

    def wrap(self, x: tuple[int, ...]) -> FieldElem:
        return FieldElem(self.degree, tuple(x))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements in canonical order (lexicographic, constant first)."""
        return itertools.product(range(self.q), repeat=self.degree)

    def add(self, x, y):
        q = self.q
        return tuple((a + b) % q for a, b in zip(x, y))

    def sub(self, x, y):
        q = self.q
        return tuple((a - b) % q for a, b in zip(x, y))

    def neg(self, x):
        q = self.q
        return tuple(-a % q for a in x)

    def mul(self, x, y):
        q, d = self.q, self.degree
        if d == 1:
            return (x[0] * y[0] % q,)
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        m = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % q
            if c:
                for j in range(d):
                    prod[k - d + j] -= c * m[j]
        return tuple(c % q for c in prod[:d])

    def pow(self, x, e: int):
        if e < 0:
            x, e = self.inv(x), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, x)
            e >>= 1
            if e:
                x = self.mul(x, x)
        return result

    def inv(self, x):
        if not any(x):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.order - 2)

    def is_zero(self, x) -> bool:
        return not any(x)

    def multiplicative_order(self, x) -> int:
        n = self.order - 1
        order = n
        for r in factor(n):
            while order % r == 0 and self.pow(x, order // r) == self.one:
                order //= r
        return order


# ----------------------------------------------- polynomials over a GF


def _gtrim(F: GF, a: list) -> list:
    while a and not any(a[-1]):
        a.pop()
    return a


def _gmul(F: GF, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if any(x):
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _gtrim(F, out)


def _gdivmod(F: GF, a, b):
    a = list(a)
    inv = F.inv(b[-1])
    db = len(b) - 1
    quot = [F.zero] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = F.mul(a[k], inv)
        if any(c):
            quot[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = F.sub(a[k - db + j], F.mul(c, b[j]))
    return _gtrim(F, quot), _gtrim(F, a[:db])


def _gmonic(F: GF, a):
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def _ggcd(F: GF, a, b):
    a, b = _gtrim(F, list(a)), _gtrim(F, list(b))
    while b:
        a, b = b, _gdivmod(F, a, b)[1]
    return _gmonic(F, a) if a else a


def _gpowmod(F: GF, base, e, mod):
    result = [F.one]
    base = _gdivmod(F, base, mod)[1]
    while e:
        if e & 1:
            result = _gdivmod(F, _gmul(F, result, base), mod)[1]
        e >>= 1
        if e:
            base = _gdivmod(F, _gmul(F, base, base), mod)[1]
    return result


def _split_linear(F: GF, g) -> list[tuple[int, ...]]:
    """Roots of a monic product of distinct linear factors over F."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [F.neg(g[0])]
    half = (F.order - 1) // 2
    for delta in F.elements():
        h = list(_gpowmod(F, [delta, F.one], half, g)) or [F.zero]
        h[0] = F.sub(h[0], F.one)
        d = _ggcd(F, g, _gtrim(F, h))
        if 1 < len(d) < len(g):
            rest = _gdivmod(F, g, d)[0]
            return _split_linear(F, d) + _split_linear(F, _gmonic(F, rest))
    raise InternalError("equal-degree splitting failed")


def poly_roots(coeffs: Sequence[int], q: int, F: GF) -> list[tuple[int, ...]]:
    """Distinct roots in ``F`` of an integer polynomial (highest degree
    first), sorted canonically."""
    low_first = [c % q for c in reversed(coeffs)]
    f = _trim(list(low_first))
    if not f:
        raise DomainError("polynomial vanishes identically mod q", check="degenerate")
    if len(f) != len(low_first):
        raise DomainError("leading coefficient vanishes mod q", check="degenerate")
    if len(f) == 1:
        return []
    inv = pow(f[-1], -1, q)
    f = [c * inv % q for c in f]
    # product of the F_q-irreducible factors whose degree divides [F : F_q]
    h = _frobenius_power(f, q, F.degree)
    diff = _trim([(a - b) % q for a, b in itertools.zip_longest(h, [0, 1], fillvalue=0)])
    g = _pgcd(f, diff, q) if diff else f
    lifted = [F.elem(c) for c in g]
    roots = _split_linear(F, lifted)
    return sorted(roots)


# ------------------------------------------------------------ the tower


@dataclass(frozen=True)
class FieldTower:
    """F_q ⊂ F_{q^2} ⊂ F_{q^4} with canonical defining polynomials.

    ``theta`` is the image in F_{q^4} of the generator of F_{q^2}.
    """

    q: int
    f2: tuple[int, ...]
    f4: tuple[int, ...]
    theta: tuple[int, ...]
    _fields: dict = field(default_factory=dict, compare=False, repr=False)

    def field(self, i: int) -> GF:
        if i not in (1, 2, 4):
            raise DomainError(f"tower level must be 1, 2 or 4, got {i}")
        if i not in self._fields:
            modulus = {1: (0, 1), 2: self.f2, 4: self.f4}[i]
            self._fields[i] = GF(self.q, modulus)
        return self._fields[i]

    def embed(self, a: FieldElem, level: int) -> FieldElem:
        """Image of ``a`` in F_{q^level}."""
        if level < a.level or level % a.level:
            raise DomainError(f"cannot embed level {a.level} into level {level}")
        if level == a.level:
            return a
        if a.level == 1:
            return FieldElem(level, (a.coeffs[0],) + (0,) * (level - 1))
        F4 = self.field(4)
        c0, c1 = a.coeffs
        img = F4.add(F4.elem(c0), F4.mul(F4.elem(c1), self.theta))
        return FieldElem(4, img)

    def eval_poly(self, coeffs: Sequence[int], a: FieldElem):
        """Evaluate an integer polynomial (highest degree first) at ``a``."""
        F = self.field(a.level)
        acc = F.zero
        for c in coeffs:
            acc = F.add(F.mul(acc, a.coeffs), F.elem(c))
        return FieldElem(a.level, acc)


def _check_odd_prime(q: int) -> None:
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise DomainError(f"q must be an odd prime, got {q}", check="q odd prime")


@lru_cache(maxsize=256)
def make_tower(q: int) -> FieldTower:
    _check_odd_prime(q)
    f2 = least_irreducible(q, 2)
    f4 = least_irreducible(q, 4)
    F4 = GF(q, f4)
    roots = poly_roots(tuple(reversed(f2)), q, F4)
    if len(roots) != 2:
        raise InternalError(f"degree-2 modulus does not split in F_{q}^4: {roots}")
    theta = roots[0]
    # the generator's minimal polynomial evaluated at its image must vanish
    check = F4.add(F4.add(F4.mul(theta, theta), F4.mul(F4.elem(f2[1]), theta)), F4.elem(f2[0]))
    if any(check):
        raise InternalError("stored embedding is not a root of the degree-2 modulus")
    return FieldTower(q=q, f2=f2, f4=f4, theta=theta)


# ------------------------------------------------------------ operations


def quartic_roots(coeffs: Sequence[int], tower: FieldTower, i: int) -> list[FieldElem]:
    """Distinct roots in F_{q^i} of ``coeffs`` (five integers, leading first)."""
    if len(coeffs) != 5:
        raise DomainError(f"quartic needs 5 coefficients, got {len(coeffs)}")
    F = tower.field(i)
    return [F.wrap(r) for r in poly_roots(coeffs, tower.q, F)]


def is_pth_power(a: FieldElem, p: int, tower: FieldTower, i: int | None = None) -> bool:
    """Whether ``a`` lies in the subgroup of p-th powers of F_{q^i}^x."""
    i = a.level if i is None else i
    if a.level != i:
        raise DomainError(f"element has level {a.level}, expected {i}")
    if a.is_zero():
        raise DomainError("zero is not in the multiplicative group", check="a != 0")
    F = tower.field(i)
    n = F.order - 1
    if n % p:
        return True
    return F.pow(a.coeffs, n // p) == F.one


def pth_power_subgroup(q: int, p: int) -> list[int]:
    """Sorted residues forming ``(F_q^x)^p``."""
    if not is_prime(q):
        raise DomainError(f"q must be prime, got {q}", check="q prime")
    return sorted({pow(x, p, q) for x in range(1, q)})


def generator(q: int, r: int = 1) -> FieldElem:
    """Least multiplicative generator of F_{q^r} in canonical order."""
    _check_odd_prime(q)
    if r < 1:
        raise DomainError(f"degree must be >= 1, got {r}")
    modulus = (0, 1) if r == 1 else least_irreducible(q, r)
    F = GF(q, modulus)
    n = F.order - 1
    primes = list(factor(n))
    for x in F.elements():
        if not any(x):
            continue
        if all(F.pow(x, n // ell) != F.one for ell in primes):
            return F.wrap(x)
    raise InternalError(f"no generator found for F_{q}^{r}")
