"""Exhaustive checks over small fields F_{q^r} for the set

    Y = {(g^m - g^-m) g^n - (g^m + g^-m) : m, n odd}

and the curves ``Z^2 = h_k(X)`` used to show ``Y`` is the whole field.

Field elements are encoded as integers ``sum c_j q^j`` over the canonical
basis, and multiplication goes through discrete-log tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factor
from .errors import DomainError, ResourceError
from .ffield import GF, FieldElem, generator as least_generator, least_irreducible

FIELD_BUDGET = 10**5


class SmallField:
    """``F_{q^r}`` with vectorized arithmetic on integer codes."""

    def __init__(self, q: int, r: int, gen: FieldElem | None = None):
        if len(factor(q)) != 1 or q % 2 == 0 or q < 3:
            raise DomainError(f"q must be an odd prime, got {q}", check="q prime")
        if r < 1:
            raise DomainError(f"degree must be >= 1, got {r}")
        if q**r > FIELD_BUDGET:
            raise ResourceError(f"q^r = {q**r} exceeds the enumeration budget {FIELD_BUDGET}")
        self.q, self.r, self.order = q, r, q**r
        self.F = GF(q, (0, 1) if r == 1 else least_irreducible(q, r))
        gen = gen if gen is not None else least_generator(q, r)
        self.gen_coeffs = tuple(gen.coeffs)
        self._pw = q ** np.arange(r, dtype=np.int64)

        n = self.order - 1
        exp = np.empty(n, dtype=np.int64)
        x = self.F.one
        g = self.F.elem(self.gen_coeffs)
        for k in range(n):
            exp[k] = self.encode(x)
            x = self.F.mul(x, g)
        if x != self.F.one or len(set(exp.tolist())) != n:
            raise DomainError(f"{gen} does not generate F_{q}^{r}", check="generator")
        log = np.full(self.order, -1, dtype=np.int64)
        log[exp] = np.arange(n)
        self.exp, self.log = exp, log
        self.g = int(exp[1 % n])

    def encode(self, x) -> int:
        return sum(int(c) * self.q**j for j, c in enumerate(x))

    def decode(self, code: int) -> tuple[int, ...]:
        return tuple((code // self.q**j) % self.q for j in range(self.r))

    def _digits(self, a):
        return (np.asarray(a)[..., None] // self._pw) % self.q

    def add(self, a, b):
        return ((self._digits(a) + self._digits(b)) % self.q) @ self._pw

    def neg(self, a):
        return ((-self._digits(a)) % self.q) @ self._pw

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a, b = np.asarray(a), np.asarray(b)
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.order - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def power(self, a, e: int):
        a = np.asarray(a)
        la = self.log[a]
        out = self.exp[(la * e) % (self.order - 1)]
        if e == 0:
            return np.ones_like(out)
        return np.where(la < 0, 0, out)

    def g_pow(self, e):
        return self.exp[np.asarray(e) % (self.order - 1)]

    def is_nonzero_square(self, a):
        la = self.log[np.asarray(a)]
        return (la >= 0) & (la % 2 == 0)

    def const(self, c: int) -> int:
        """Code of the prime-field constant ``c``."""
        return c % self.q


@lru_cache(maxsize=64)
def small_field(q: int, r: int, gen: tuple[int, ...] | None = None) -> SmallField:
    return SmallField(q, r, None if gen is None else FieldElem(r, gen))


def _as_code(K: SmallField, k) -> int:
    if isinstance(k, FieldElem):
        if len(k.coeffs) > K.r:
            raise DomainError(f"{k} does not lie in F_{K.q}^{K.r}")
        return K.encode(k.coeffs)
    return K.const(int(k))


def y_set(q: int, r: int, generator: FieldElem | None = None, stop_when_full: bool = True) -> np.ndarray:
    """Boolean mask over codes of the elements reached by the odd-index map."""
    K = small_field(q, r, None if generator is None else tuple(generator.coeffs))
    n = K.order - 1
    odd = np.arange(1, n, 2)
    nonsquares = K.g_pow(odd)
    hit = np.zeros(K.order, dtype=bool)
    for m in range(1, n, 2):
        gm, gmi = K.g_pow(m), K.g_pow(-m)
        A = int(K.sub(gm, gmi))
        B = int(K.add(gm, gmi))
        hit[K.sub(K.mul(A, nonsquares), B)] = True
        if stop_when_full and hit.all():
            break
    return hit


def y_set_is_full(q: int, r: int, generator: FieldElem | None = None) -> bool:
    """Whether every element of F_{q^r} is ``(g^m - g^-m) g^n - (g^m + g^-m)``
    for some odd ``m`` and ``n``."""
    return bool(y_set(q, r, generator).all())


@dataclass(frozen=True)
class CurveCount:
    q: int
    r: int
    k: tuple[int, ...]
    curve: str  # "octic" for Z^2 = h_k(X), "quartic" for Z^2 = g^3 X^4 - g
    affine_points: int
    xz_nonzero_points: int
    s_k_size: int
    bound: float
    bound_xz: float

    @property
    def s_k_nonempty(self) -> bool:
        return self.s_k_size > 0

    @property
    def bound_ok(self) -> bool:
        return self.affine_points >= self.bound and self.xz_nonzero_points >= self.bound_xz


def _sweep(K: SmallField, ks: np.ndarray) -> dict[str, np.ndarray]:
    """Point counts for each ``k`` in ``ks`` (rows) over all ``X`` (columns)."""
    X = np.arange(K.order)[None, :]
    ks = ks[:, None]
    g = K.g
    X2, X4 = K.power(X, 2), K.power(X, 4)
    g3X4_g = K.sub(K.mul(K.power(g, 3), X4), g)

    # h_k(X) = g^5 X^8 - g + k (g^4 X^6 - g^2 X^2)
    P = K.sub(K.mul(K.power(g, 5), K.power(X, 8)), g)
    R = K.sub(K.mul(K.power(g, 4), K.power(X, 6)), K.mul(K.power(g, 2), X2))
    h = K.add(P, K.mul(ks, R))
    quartic = np.broadcast_to(g3X4_g, h.shape)
    two = K.const(2)
    special = (ks == two) | (ks == K.neg(two))
    rhs_curve = np.where(special, quartic, h)

    sq = K.is_nonzero_square(rhs_curve)
    zero = rhs_curve == 0
    affine = (2 * sq + zero).sum(axis=1)
    xz = (2 * sq * (X != 0)).sum(axis=1)

    # S_k straight from f(X, Y) = (g^3 X^4 - g) Y^2 - (g^2 X^4 + k g X^2 + 1), X Y != 0
    rhs = K.add(K.add(K.mul(K.power(g, 2), X4), K.mul(K.mul(ks, g), X2)), 1)
    c = np.broadcast_to(g3X4_g, rhs.shape)
    ratio_sq = K.is_nonzero_square(K.mul(rhs, K.power(np.where(c == 0, 1, c), -1)))
    per_x = np.where(c == 0, np.where(rhs == 0, K.order - 1, 0), 2 * ratio_sq)
    s_k = (per_x * (X != 0)).sum(axis=1)
    return {"affine": affine, "xz": xz, "s_k": s_k, "special": special[:, 0]}


def _bounds(Q: int, special: bool) -> tuple[float, float]:
    root = math.sqrt(Q)
    if special:
        b = Q + 1 - 2 * root
        return b, b - 4
    b = Q + 1 - 6 * root
    return b, b - 6


def curve_count(q: int, r: int, k, generator: FieldElem | None = None) -> CurveCount:
    K = small_field(q, r, None if generator is None else tuple(generator.coeffs))
    code = _as_code(K, k)
    res = _sweep(K, np.array([code]))
    special = bool(res["special"][0])
    bound, bound_xz = _bounds(K.order, special)
    return CurveCount(
        q=q, r=r, k=K.decode(code), curve="quartic" if special else "octic",
        affine_points=int(res["affine"][0]), xz_nonzero_points=int(res["xz"][0]),
        s_k_size=int(res["s_k"][0]), bound=bound, bound_xz=bound_xz,
    )


@dataclass
class CurveSweep:
    q: int
    r: int
    full: bool
    counts: list[CurveCount]

    @property
    def violations(self) -> list[CurveCount]:
        return [c for c in self.counts if not (c.bound_ok and c.s_k_nonempty)]


def sweep_all_k(q: int, r: int, generator: FieldElem | None = None, chunk: int = 512) -> CurveSweep:
    """``y_set_is_full`` plus ``curve_count`` for every ``k`` in F_{q^r}."""
    K = small_field(q, r, None if generator is None else tuple(generator.coeffs))
    counts = []
    for lo in range(0, K.order, chunk):
        ks = np.arange(lo, min(lo + chunk, K.order))
        res = _sweep(K, ks)
        for j, code in enumerate(ks.tolist()):
            special = bool(res["special"][j])
            bound, bound_xz = _bounds(K.order, special)
            counts.append(CurveCount(
                q=q, r=r, k=K.decode(code), curve="quartic" if special else "octic",
                affine_points=int(res["affine"][j]), xz_nonzero_points=int(res["xz"][j]),
                s_k_size=int(res["s_k"][j]), bound=bound, bound_xz=bound_xz,
            ))
    return CurveSweep(q, r, y_set_is_full(q, r, generator), counts)


def odd_prime_powers(lo: int, hi: int) -> list[tuple[int, int]]:
    """``(q, r)`` with ``q`` an odd prime and ``lo < q^r <= hi``, sorted by ``q^r``."""
    out = []
    for Q in range(max(lo + 1, 3), hi + 1):
        f = factor(Q)
        if len(f) == 1:
            (q, r), = f.items()
            if q != 2:
                out.append((q, r))
    return out
