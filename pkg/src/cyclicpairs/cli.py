"""Command-line interface: ``cyclicpairs <command> ...``.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Any, Sequence

from . import __version__
from .arith import two_squares
from .charsums import choose_iota, gauss_sum_report, jacobi_sum, lemma47_check
from .errors import DomainError, ResourceError, UnfactoredError
from .family import (
    Certificate,
    D_value,
    certify,
    classes_mod_Nq,
    field_pair_label,
    residue_tables,
    search,
    verify_certificate,
)
from .ffield import FieldElem, make_tower
from .lucas import identity_suite, period_divisibility
from .realquad import fundamental_unit

SCHEMA_VERSION = "1"
JSON_SAFE = 2**53


def big(x: int) -> int | str:
    """Integers too large for a double are written as decimal strings."""
    return str(x) if abs(x) > JSON_SAFE else x


def unbig(x: int | str) -> int:
    return int(x)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def load_schema() -> dict:
    text = resources.files("cyclicpairs").joinpath("schema/certificate-v1.json").read_text()
    return json.loads(text)


# ------------------------------------------------------ certificates


def certificate_document(cert: Certificate) -> dict:
    tower = make_tower(cert.q)
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {
            "name": "cyclicpairs",
            "version": __version__,
            "tower": {
                "q": cert.q,
                "f2": list(tower.f2),
                "f4": list(tower.f4),
                "theta": list(tower.theta),
            },
        },
        "certificate": {
            "p": cert.p,
            "t": big(cert.t),
            "b": big(cert.b),
            "q": cert.q,
            "m0": big(cert.m0),
            "n0": big(cert.n0),
            "Nq": big(cert.Nq),
            "i": cert.i,
            "a": None if cert.a is None else list(cert.a.coeffs),
            "roots": [list(r.coeffs) for r in cert.roots],
            "quartic_mod_q": list(cert.quartic_mod_q),
            "condition_i_witness": cert.condition_i_witness,
            "condition_i": cert.condition_i,
            "pth_power_check": cert.pth_power_check,
            "parity_check": cert.parity_check,
            "passed": cert.passed,
            "failed_check": cert.failed_check,
        },
    }


def certificate_from_document(doc: dict) -> Certificate:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DomainError(f"unsupported schema_version {doc.get('schema_version')!r}", check="schema_version")
    c = doc["certificate"]
    i = c["i"]
    a = None if c["a"] is None else FieldElem(i, tuple(c["a"]))
    return Certificate(
        p=c["p"], t=unbig(c["t"]), b=unbig(c["b"]), q=c["q"],
        m0=unbig(c["m0"]), n0=unbig(c["n0"]), Nq=unbig(c["Nq"]),
        i=i, a=a,
        roots=tuple(FieldElem(len(r), tuple(r)) for r in c["roots"]),
        quartic_mod_q=tuple(c["quartic_mod_q"]),
        condition_i_witness=c["condition_i_witness"],
        condition_i=c["condition_i"],
        pth_power_check=c["pth_power_check"],
        parity_check=c["parity_check"],
        failed_check=c["failed_check"],
    )


def check_document(doc: dict) -> dict:
    cert = certificate_from_document(doc)
    checks = verify_certificate(cert)
    tower = make_tower(cert.q)
    t = doc["tool"]["tower"]
    checks["tower"] = (tuple(t["f2"]), tuple(t["f4"]), tuple(t["theta"])) == (tower.f2, tower.f4, tower.theta)
    checks["passed_flag"] = doc["certificate"]["passed"] == cert.passed
    return {"consistent": all(checks.values()), "passed": cert.passed, "checks": checks}


# ------------------------------------------------------- commands


def cmd_unit(args) -> int:
    u = fundamental_unit(args.p)
    print(dumps({"p": u.p, "t": big(u.t), "b": big(u.b)}))
    return 0


def _row(label: str, values: Sequence[int], width: int) -> str:
    return f"{label:<{width}} | " + " ".join(f"{v:>4}" for v in values)


def format_tables(result, q: int) -> str:
    p = result.p
    out = []
    for tab in residue_tables(result, q):
        sm = tab.slice_modulus
        head = f"p={p} q={q}  m0 = {tab.slice[0]} (mod {sm}), n0 = {tab.slice[1]} (mod {sm})"
        labels = [
            f"m0 mod {tab.m_modulus}", f"n0 mod {tab.n_modulus}",
            f"2F_m L_m^-1 mod {tab.p2_modulus}", f"F_n mod {tab.p2_modulus}",
        ]
        w = max(map(len, labels))
        ms, ns = zip(*tab.pairs)
        out += [
            head,
            _row(labels[0], ms, w),
            _row(labels[1], ns, w),
            "",
            _row(labels[0], [m for m, _ in tab.m_witness], w),
            _row(labels[2], [v for _, v in tab.m_witness], w),
            "",
            _row(labels[1], [n for n, _ in tab.n_witness], w),
            _row(labels[3], [v for _, v in tab.n_witness], w),
            "",
        ]
    return "\n".join(out).rstrip()


def cmd_search(args) -> int:
    result = search(
        args.p, args.q, scan_bound=args.scan_bound, m0_classes=args.m0,
        anchor=tuple(args.anchor) if args.anchor else None, degrees=tuple(args.degrees),
    )
    if args.emit_tables:
        print("\n\n".join(format_tables(result, q) for q in sorted({g.q for g in result.grids})))
        return 0
    doc = {
        "p": result.p, "t": big(result.t), "b": big(result.b),
        "grids": [
            {"q": g.q, "Nq": g.Nq, "m_modulus": g.m_modulus, "n_modulus": g.n_modulus,
             "slice_modulus": g.slice_modulus}
            for g in result.grids
        ],
        "classes": [
            {"q": h.q, "m0": h.m0, "n0": h.n0, "m_modulus": h.m_modulus, "n_modulus": h.n_modulus,
             "slice": list(h.slice), "i": h.certificate.i, "a": list(h.certificate.a.coeffs)}
            for h in result.hits
        ],
    }
    if args.mod_nq:
        doc["classes_mod_Nq"] = {str(g.q): [list(c) for c in classes_mod_Nq(result, g.q)] for g in result.grids}
    print(dumps(doc))
    return 0


def cmd_certify(args) -> int:
    cert = certify(args.p, args.m0, args.n0, args.q)
    doc = certificate_document(cert)
    text = dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if cert.passed else 1


def cmd_check_cert(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        doc = json.load(fh)
    report = check_document(doc)
    print(dumps(report))
    return 0 if report["consistent"] and report["passed"] else 1


def _suite(args) -> tuple[int, list[str]]:
    p = args.p
    u = fundamental_unit(p)
    R = args.range
    if args.suite == "identities":
        rep = identity_suite(u.t, u.b, p, range(-R, R + 1), range(-R, R + 1))
        return rep.checked, rep.violations
    if args.suite == "lemma47":
        ts = two_squares(p, u.t)
        bad = [f"n={n}" for n in range(-R, R + 1) if not lemma47_check(p, u.t, u.b, ts, n)]
        return 2 * R + 1, bad
    if args.suite == "periods":
        rep = period_divisibility(u.t, u.b, p, args.q or (11, 53, 61))
        return rep.checked, rep.violations
    if args.suite == "gauss":
        iota = choose_iota(p, u.t)
        J = jacobi_sum(p, iota)
        ts = two_squares(p, u.t)
        bad = [] if (J.re, J.im) == (ts.A, ts.B) else [f"jacobi sum {J} != {ts.A} + {ts.B}i"]
        rep = gauss_sum_report(p, iota, ts.A, ts.B)
        bad += [f"{name}: error {rep.errors[name]:.3g}" for name in rep.violations]
        return 1 + len(rep.errors), bad
    if args.suite == "curves":
        from .curves import odd_prime_powers, sweep_all_k

        checked, bad = 0, []
        for q, r in odd_prime_powers(45, args.max_field):
            sw = sweep_all_k(q, r)
            checked += 1 + len(sw.counts)
            if not sw.full:
                bad.append(f"Y not full for q={q} r={r}")
            bad += [f"q={q} r={r} k={c.k}: affine {c.affine_points}, S_k {c.s_k_size}" for c in sw.violations]
        return checked, bad
    raise DomainError(f"unknown suite {args.suite!r}")


def cmd_verify(args) -> int:
    checked, bad = _suite(args)
    if args.json:
        print(dumps({"suite": args.suite, "p": args.p, "checked": checked, "violations": bad}))
    else:
        print(f"{args.suite} p={args.p}: {checked} checks, {len(bad)} violations")
        for line in bad:
            print(f"  {line}")
    return 0 if not bad else 1


def small_factors(n: int, bound: int) -> tuple[dict[int, int], int]:
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d <= bound and d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if 1 < n <= bound:
        out[n] = out.get(n, 0) + 1
        n = 1
    return out, n


def cmd_disc(args) -> int:
    u = fundamental_unit(args.p)
    D = D_value(u.t, u.b, args.m, args.n)
    factors, cofactor = small_factors(D, args.trial_bound)
    label = field_pair_label(args.n)
    print(dumps({
        "p": args.p, "t": big(u.t), "b": big(u.b), "m": args.m, "n": args.n,
        "D": big(D), "digits": len(str(abs(D))),
        "small_factors": {str(k): v for k, v in sorted(factors.items())},
        "cofactor": big(cofactor),
        "K": label.K, "K_prime": label.K_prime,
    }))
    return 0


# --------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclicpairs", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("unit", help="fundamental unit (t + b sqrt p)/2")
    s.add_argument("p", type=int)
    s.set_defaults(func=cmd_unit)

    s = sub.add_parser("search", help="residue classes (m0, n0) meeting both conditions")
    s.add_argument("p", type=int)
    s.add_argument("--q", type=int, nargs="+", required=True)
    s.add_argument("--emit-tables", action="store_true", help="aligned tables, one per (F, L) mod q slice")
    s.add_argument("--m0", type=int, nargs="+", help="keep only these m0 residues")
    s.add_argument("--anchor", type=int, nargs=2, metavar=("M", "N"),
                   help="keep only the slice containing (M, N)")
    s.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 4], choices=[1, 2, 4])
    s.add_argument("--scan-bound", type=int, default=10**7)
    s.add_argument("--mod-nq", action="store_true", help="also list the classes modulo N_q")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("certify", help="certificate for (p, m0, n0, q)")
    for name in ("p", "m0", "n0", "q"):
        s.add_argument(name, type=int)
    s.add_argument("--out", help="also write the document to this file")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("check-cert", help="re-verify a certificate document")
    s.add_argument("file")
    s.set_defaults(func=cmd_check_cert)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("p", type=int)
    s.add_argument("--suite", required=True, choices=["identities", "gauss", "lemma47", "curves", "periods"])
    s.add_argument("--range", type=int, default=50, help="index bound for identity suites")
    s.add_argument("--q", type=int, nargs="+", help="moduli for the periods suite")
    s.add_argument("--max-field", type=int, default=2000, help="largest q^r for the curves suite")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("disc", help="D_{m,n} and its small prime factors")
    for name in ("p", "m", "n"):
        s.add_argument(name, type=int)
    s.add_argument("--trial-bound", type=int, default=10**4)
    s.set_defaults(func=cmd_disc)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ResourceError, UnfactoredError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
