"""The quartic attached to alpha(m, n) and the search for residue classes
(m0, n0) satisfying conditions (i) and (ii) for an auxiliary prime q.

Throughout, ``alpha(m, n) = (L_n L_m + (L_m F_n - 2 F_m) b sqrt(p)) / 2``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, NamedTuple, Sequence

from .arith import is_prime, is_square, jacobi_symbol, lcm
from .errors import DomainError, InternalError, ResourceError
from .ffield import FieldElem, FieldTower, is_pth_power, make_tower, quartic_roots
from .lucas import lucas_pair, lucas_pair_mod, period
from .realquad import fundamental_unit

DEGREES = (1, 2, 4)
DEFAULT_SCAN_BOUND = 10**7


def _require_odd(**indices: int) -> None:
    for name, v in indices.items():
        if v % 2 == 0:
            raise DomainError(f"{name} must be odd, got {v}", check="parity")


# -------------------------------------------------------------- alpha


@dataclass(frozen=True)
class AlphaParams:
    p: int
    t: int
    b: int
    m: int
    n: int
    T: int
    N: int
    in_Ok_not_Z: bool
    alpha2_minus_4_not_square: bool

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        """Coefficients of ``X^4 - T X^3 + (N+2) X^2 - T X + 1``, leading first."""
        return (1, -self.T, self.N + 2, -self.T, 1)

    def reduced(self, q: int) -> tuple[int, ...]:
        return tuple(c % q for c in self.coeffs)

    @property
    def irreducible_over_Q(self) -> bool:
        return self.in_Ok_not_Z and self.alpha2_minus_4_not_square


def _alpha_parts(t: int, b: int, m: int, n: int) -> tuple[int, int]:
    """``(X, Y)`` with ``alpha = (X + Y b sqrt p) / 2``."""
    Fm, Lm = lucas_pair(t, m).F, lucas_pair(t, m).L
    Fn, Ln = lucas_pair(t, n).F, lucas_pair(t, n).L
    return Ln * Lm, Lm * Fn - 2 * Fm


def alpha_params(p: int, t: int, b: int, m: int, n: int) -> AlphaParams:
    _require_odd(m=m, n=n)
    X, Y = _alpha_parts(t, b, m, n)
    c = Y * b
    N4 = X * X - c * c * p
    if N4 % 4:
        raise DomainError("alpha is not an algebraic integer for these inputs")
    # alpha^2 - 4 = ((X^2 + c^2 p - 16) + 2 X c sqrt p) / 4
    if X * c != 0:
        not_square = True
    else:
        num = X * X + c * c * p - 16
        not_square = not (num % 4 == 0 and is_square(num // 4))
    return AlphaParams(
        p=p, t=t, b=b, m=m, n=n, T=X, N=N4 // 4,
        in_Ok_not_Z=c != 0,
        alpha2_minus_4_not_square=not_square,
    )


def _quartic_mod(p, b, q, Fm, Lm, Fn, Ln) -> tuple[int, ...]:
    # valid for odd m: N = F_m b^2 p (L_m F_n - 2 F_m) + 4
    T = Ln * Lm % q
    N = (Fm * b * b * p * (Lm * Fn - 2 * Fm) + 4) % q
    return (1, -T % q, (N + 2) % q, -T % q, 1)


def D_value(t: int, b: int, m: int, n: int) -> int:
    """``D_{m,n} = L_m (2 F_m - F_n L_m) b``."""
    _require_odd(m=m, n=n)
    pm, pn = lucas_pair(t, m), lucas_pair(t, n)
    return pm.L * (2 * pm.F - pn.F * pm.L) * b


def Nq_value(p: int, q: int, t: int, b: int) -> int:
    if not is_prime(q):
        raise DomainError(f"q must be prime, got {q}", check="q prime")
    if (2 * b * p) % q == 0:
        raise DomainError(f"q={q} divides 2bp", check="q does not divide 2bp")
    base = p * p * (p - 1)
    if jacobi_symbol(p, q) == 1:
        return lcm(base, q - 1)
    return lcm(base, 2 * (q + 1))


# --------------------------------------------------------- conditions


class ConditionI(NamedTuple):
    holds: bool
    residue: int


class ConditionII(NamedTuple):
    i: int
    a: FieldElem
    roots: tuple[FieldElem, ...]


def check_condition_i(p: int, t: int, b: int, m0: int, n0: int) -> ConditionI:
    """Whether ``(L_{m0} F_{n0} - 2 F_{m0}) b = 0 (mod p^2)``.

    By the identity ``(N+4)^2 - 4T^2 = L_m^2 b^2 p (L_m F_n - 2F_m)^2`` this is
    the same as ``(N+4)^2 - 4T^2 = 0 (mod p^5)`` for odd indices.
    """
    _require_odd(m0=m0, n0=n0)
    mod = p * p
    Fm, Lm = lucas_pair_mod(t, m0, mod)
    Fn, _ = lucas_pair_mod(t, n0, mod)
    residue = (Lm * Fn - 2 * Fm) * b % mod
    return ConditionI(residue == 0, residue)


def _sign_surd(a: int, c: int, p: int) -> int:
    """Sign of ``a + c sqrt(p)``."""
    if c == 0 or a == 0 or (a > 0) == (c > 0):
        return (a > 0) - (a < 0) if a else (c > 0) - (c < 0)
    # opposite signs: compare a^2 with c^2 p
    diff = a * a - c * c * p
    return ((a > 0) - (a < 0)) * ((diff > 0) - (diff < 0))


def check_condition_A1(p: int, t: int, b: int, m: int, n: int) -> bool:
    """``alpha^2 - 4 > 0`` and ``(N+4)^2 - 4T^2`` lies in ``p Q^2`` (nonzero)."""
    _require_odd(m=m, n=n)
    X, Y = _alpha_parts(t, b, m, n)
    c = Y * b
    positive = _sign_surd(X - 4, c, p) * _sign_surd(X + 4, c, p) > 0
    ap = alpha_params(p, t, b, m, n)
    V = (ap.N + 4) ** 2 - 4 * ap.T**2
    return positive and V > 0 and is_square(V * p)


def _condition_ii_from_quartic(coeffs, p: int, tower: FieldTower, degrees=DEGREES):
    for i in degrees:
        roots = quartic_roots(coeffs, tower, i)
        for a in roots:
            if not a.is_zero() and not is_pth_power(a, p, tower, i):
                return ConditionII(i, a, tuple(roots))
    return None


def check_condition_ii(
    p: int, t: int, b: int, m0: int, n0: int, q: int,
    tower: FieldTower | None = None, degrees: Sequence[int] = DEGREES,
) -> ConditionII | None:
    """Least ``i`` and least root ``a`` of ``f_{alpha0} mod q`` in F_{q^i}
    that is not a p-th power, or None."""
    _require_odd(m0=m0, n0=n0)
    if (2 * b * p) % q == 0:
        raise DomainError(f"q={q} divides 2bp", check="q does not divide 2bp")
    tower = tower or make_tower(q)
    Fm, Lm = lucas_pair_mod(t, m0, q)
    Fn, Ln = lucas_pair_mod(t, n0, q)
    return _condition_ii_from_quartic(_quartic_mod(p, b, q, Fm, Lm, Fn, Ln), p, tower, degrees)


# -------------------------------------------------------- certificates


@dataclass(frozen=True)
class Certificate:
    """Witness that ``(p, q, m0, n0)`` meets conditions (i) and (ii)."""

    p: int
    t: int
    b: int
    q: int
    m0: int
    n0: int
    Nq: int
    i: int | None
    a: FieldElem | None
    roots: tuple[FieldElem, ...]
    quartic_mod_q: tuple[int, ...]
    condition_i_witness: int
    condition_i: bool
    pth_power_check: bool
    parity_check: bool
    failed_check: str | None = None

    @property
    def passed(self) -> bool:
        return self.failed_check is None


def certify(
    p: int, m0: int, n0: int, q: int,
    tower: FieldTower | None = None, degrees: Sequence[int] = DEGREES,
) -> Certificate:
    """Check both conditions; the result names the first failed check."""
    unit = fundamental_unit(p)
    t, b = unit.t, unit.b
    if not is_prime(q):
        raise DomainError(f"q must be prime, got {q}", check="q prime")
    Nq = Nq_value(p, q, t, b)
    tower = tower or make_tower(q)

    Fm, Lm = lucas_pair_mod(t, m0, q)
    Fn, Ln = lucas_pair_mod(t, n0, q)
    quartic = _quartic_mod(p, b, q, Fm, Lm, Fn, Ln)
    parity = m0 % 2 == 1 and n0 % 2 == 1

    mod = p * p
    Fm2, Lm2 = lucas_pair_mod(t, m0, mod)
    Fn2, _ = lucas_pair_mod(t, n0, mod)
    residue = (Lm2 * Fn2 - 2 * Fm2) * b % mod

    found = _condition_ii_from_quartic(quartic, p, tower, degrees) if parity else None
    failed = None
    if not parity:
        failed = "parity"
    elif residue:
        failed = "condition_i"
    elif found is None:
        failed = "condition_ii"
    return Certificate(
        p=p, t=t, b=b, q=q, m0=m0, n0=n0, Nq=Nq,
        i=found.i if found else None,
        a=found.a if found else None,
        roots=found.roots if found else (),
        quartic_mod_q=quartic,
        condition_i_witness=residue,
        condition_i=residue == 0,
        pth_power_check=found is not None,
        parity_check=parity,
        failed_check=failed,
    )


def verify_certificate(cert: Certificate) -> dict[str, bool]:
    """Recompute every check from the certificate's own fields."""
    checks = {}
    unit = fundamental_unit(cert.p)
    checks["unit"] = (unit.t, unit.b) == (cert.t, cert.b)
    checks["parity"] = (cert.m0 % 2 == 1 and cert.n0 % 2 == 1) == cert.parity_check
    checks["Nq"] = Nq_value(cert.p, cert.q, cert.t, cert.b) == cert.Nq
    mod = cert.p**2
    Fm2, Lm2 = lucas_pair_mod(cert.t, cert.m0, mod)
    Fn2, _ = lucas_pair_mod(cert.t, cert.n0, mod)
    residue = (Lm2 * Fn2 - 2 * Fm2) * cert.b % mod
    checks["condition_i_witness"] = residue == cert.condition_i_witness
    checks["condition_i"] = (residue == 0) == cert.condition_i
    Fm, Lm = lucas_pair_mod(cert.t, cert.m0, cert.q)
    Fn, Ln = lucas_pair_mod(cert.t, cert.n0, cert.q)
    quartic = _quartic_mod(cert.p, cert.b, cert.q, Fm, Lm, Fn, Ln)
    checks["quartic"] = quartic == tuple(cert.quartic_mod_q)
    if cert.a is not None:
        tower = make_tower(cert.q)
        checks["root"] = tower.eval_poly(quartic, cert.a).is_zero()
        checks["roots"] = all(tower.eval_poly(quartic, r).is_zero() for r in cert.roots)
        checks["not_pth_power"] = (
            not cert.a.is_zero() and not is_pth_power(cert.a, cert.p, tower, cert.i)
        ) == cert.pth_power_check
    else:
        checks["not_pth_power"] = not cert.pth_power_check
    expected_fail = (
        "parity" if not cert.parity_check
        else "condition_i" if not cert.condition_i
        else "condition_ii" if not cert.pth_power_check
        else None
    )
    checks["verdict"] = expected_fail == cert.failed_check
    return checks


# -------------------------------------------------------- field pairs


@dataclass(frozen=True)
class FieldPairLabel:
    """Which of ``Q(sqrt D)`` / ``Q(sqrt pD)`` is the field ``K`` and which ``K'``."""

    n_mod_4: int
    K: str
    K_prime: str


def field_pair_label(n: int) -> FieldPairLabel:
    _require_odd(n=n)
    if n % 4 == 1:
        return FieldPairLabel(1, "D", "pD")
    return FieldPairLabel(3, "pD", "D")


# ------------------------------------------------------------- search


@dataclass(frozen=True)
class Grid:
    """Residue-class granularity used for one auxiliary prime ``q``.

    ``m_modulus``/``n_modulus`` are the least even periods of everything the
    two conditions read from ``m`` resp. ``n``; ``slice_modulus`` is the
    period of the pair ``(F, L) mod q`` alone.
    """

    q: int
    Nq: int
    m_modulus: int
    n_modulus: int
    slice_modulus: int
    p2_modulus: int


@dataclass(frozen=True)
class SearchHit:
    q: int
    m0: int
    n0: int
    m_modulus: int
    n_modulus: int
    slice: tuple[int, int]
    m_witness: int  # 2 F_m L_m^{-1} mod p^2
    n_witness: int  # F_n mod p^2
    certificate: Certificate

    @property
    def key(self):
        return (self.q, self.m0, self.n0)


@dataclass
class SearchResult:
    p: int
    t: int
    b: int
    grids: list[Grid] = field(default_factory=list)
    hits: list[SearchHit] = field(default_factory=list)

    def pairs(self, q: int | None = None) -> list[tuple[int, int]]:
        return [(h.m0, h.n0) for h in self.hits if q is None or h.q == q]

    def slices(self, q: int) -> dict[tuple[int, int], list[SearchHit]]:
        out: dict[tuple[int, int], list[SearchHit]] = defaultdict(list)
        for h in self.hits:
            if h.q == q:
                out[h.slice].append(h)
        return dict(sorted(out.items()))

    def grid(self, q: int) -> Grid:
        return next(g for g in self.grids if g.q == q)


def _least_period(values: list, base: int) -> int:
    """Least divisor ``d`` of ``base`` with ``values[k + d] == values[k]`` cyclically."""
    from .arith import factor

    pi = base
    for r in factor(base) if base > 1 else {}:
        while pi % r == 0 and all(values[(k + pi // r) % base] == values[k] for k in range(base)):
            pi //= r
    return pi


def _grid_for(p: int, t: int, b: int, q: int) -> tuple[Grid, dict]:
    Nq = Nq_value(p, q, t, b)
    p2 = p * p // gcd(b, p * p)
    per_q = lcm(period(t, q, "F").period, period(t, q, "L").period)
    per_p2 = 1 if p2 == 1 else lcm(period(t, p2, "F").period, period(t, p2, "L").period)
    base = lcm(per_q, per_p2)

    def fl(n, mod):
        return lucas_pair_mod(t, n, mod) if mod > 1 else (0, 0)

    g_vals, h_vals = [], []
    for k in range(base):
        Fq, Lq = fl(k, q)
        Fp, Lp = fl(k, p2)
        ratio = 2 * Fp * pow(Lp, -1, p2) % p2 if p2 > 1 else 0
        g_vals.append((ratio, Fq, Lq))
        h_vals.append((Fp, Fq, Lq))
    m_mod = lcm(_least_period(g_vals, base), 2)
    n_mod = lcm(_least_period(h_vals, base), 2)
    grid = Grid(q=q, Nq=Nq, m_modulus=m_mod, n_modulus=n_mod,
                slice_modulus=lcm(per_q, 2), p2_modulus=p2)
    return grid, {"g": g_vals, "h": h_vals, "base": base}


def search(
    p: int,
    q_candidates: Iterable[int],
    scan_bound: int = DEFAULT_SCAN_BOUND,
    m0_classes: Iterable[int] | None = None,
    anchor: tuple[int, int] | None = None,
    degrees: Sequence[int] = DEGREES,
) -> SearchResult:
    """Enumerate every odd residue class ``(m0, n0)`` meeting both conditions.

    For each ``q`` the classes are taken modulo the least even periods of the
    data the conditions depend on, so the listing is complete and free of
    duplicates.  ``m0_classes`` keeps only the given ``m0`` residues;
    ``anchor`` keeps only the classes whose ``(F, L) mod q`` slice contains
    the given pair.
    """
    qs = sorted(set(q_candidates))
    if not qs:
        raise DomainError("search needs at least one candidate q", check="q_candidates")
    unit = fundamental_unit(p)
    t, b = unit.t, unit.b
    result = SearchResult(p=p, t=t, b=b)

    for q in qs:
        if not is_prime(q) or q == 2:
            raise DomainError(f"candidate q={q} is not an odd prime", check="q prime")
        grid, data = _grid_for(p, t, b, q)
        result.grids.append(grid)
        cells = (grid.m_modulus // 2) * (grid.n_modulus // 2)
        if cells > scan_bound:
            raise ResourceError(f"grid for q={q} has {cells} cells, over scan bound {scan_bound}")
        tower = make_tower(q)
        g, h, base = data["g"], data["h"], data["base"]
        wanted_m = None if m0_classes is None else {x % grid.m_modulus for x in m0_classes}

        by_F = defaultdict(list)
        for n0 in range(1, grid.n_modulus, 2):
            by_F[h[n0 % base][0]].append(n0)

        cache: dict[tuple, ConditionII | None] = {}
        sm = grid.slice_modulus
        for m0 in range(1, grid.m_modulus, 2):
            if wanted_m is not None and m0 not in wanted_m:
                continue
            ratio, Fm, Lm = g[m0 % base]
            for n0 in by_F.get(ratio, ()):
                if anchor is not None and (
                    (m0 - anchor[0]) % sm or (n0 - anchor[1]) % sm
                ):
                    continue
                _, Fn, Ln = h[n0 % base]
                quartic = _quartic_mod(p, b, q, Fm, Lm, Fn, Ln)
                if quartic not in cache:
                    cache[quartic] = _condition_ii_from_quartic(quartic, p, tower, degrees)
                if cache[quartic] is None:
                    continue
                cert = certify(p, m0, n0, q, tower=tower, degrees=degrees)
                result.hits.append(SearchHit(
                    q=q, m0=m0, n0=n0,
                    m_modulus=grid.m_modulus, n_modulus=grid.n_modulus,
                    slice=(m0 % sm, n0 % sm),
                    m_witness=ratio, n_witness=h[n0 % base][0],
                    certificate=cert,
                ))
    result.hits.sort(key=lambda hit: hit.key)
    return result


@dataclass(frozen=True)
class ResidueTables:
    """One ``(F, L) mod q`` slice of a search, laid out row by row."""

    q: int
    slice: tuple[int, int]
    slice_modulus: int
    m_modulus: int
    n_modulus: int
    p2_modulus: int
    pairs: tuple[tuple[int, int], ...]
    m_witness: tuple[tuple[int, int], ...]
    n_witness: tuple[tuple[int, int], ...]


def residue_tables(result: SearchResult, q: int) -> list[ResidueTables]:
    grid = result.grid(q)
    out = []
    for key, hits in result.slices(q).items():
        hits = sorted(hits, key=lambda h: (h.m0, h.n0))
        out.append(ResidueTables(
            q=q, slice=key, slice_modulus=grid.slice_modulus,
            m_modulus=grid.m_modulus, n_modulus=grid.n_modulus, p2_modulus=grid.p2_modulus,
            pairs=tuple((h.m0, h.n0) for h in hits),
            m_witness=tuple(sorted({(h.m0, h.m_witness) for h in hits})),
            n_witness=tuple(sorted({(h.n0, h.n_witness) for h in hits})),
        ))
    return out


def classes_mod_Nq(result: SearchResult, q: int) -> list[tuple[int, int]]:
    """The hits of ``q`` lifted to residue classes modulo ``N_q``."""
    grid = result.grid(q)
    Nq = grid.Nq
    if Nq % grid.m_modulus or Nq % grid.n_modulus:
        raise InternalError(f"grid moduli do not divide N_q={Nq}")
    out = []
    for h in result.hits:
        if h.q != q:
            continue
        for m in range(h.m0, Nq, grid.m_modulus):
            for n in range(h.n0, Nq, grid.n_modulus):
                out.append((m, n))
    return sorted(out)
