"""Command-line surface: symbolic eigenvalues, verification suites, numeric
tables from ingested elliptic eigenvalue data, machine-readable reports.

Exit codes: 0 = success / all checks pass, 1 = check failed or data error,
2 = usage error.  With ``--no-timestamp`` every command is byte-identical
across reruns and thread counts.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .ikeda import (
    CheckFailed,
    CheckRecord,
    EigenvaluePoly,
    IkedaContext,
    eigenvalue_closed_form,
    eigenvalue_via_oracle,
    evaluate_numeric,
    is_prime,
    lemma_vanishing_check,
    next_prime,
    pc_identity_check,
    positivity_scan,
    positivity_threshold,
    primes_above,
    verify_bounds,
)
from .qcomb import enumerate_deltas, gaussian_multinomial, inversion_sum
from .spherical import SphericalPoint, omega_T_pr, weyl_transform

SOFT_N_CLOSED = 4   # term count blows up as C(r+2n, 2n)
SOFT_N_ORACLE = 3   # (2n)! permutations per tuple
SOFT_R = 3


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class ApTable:
    """Elliptic Hecke-eigenvalue data: weight and (prime, a_p) rows."""

    k: int
    entries: tuple[tuple[int, int], ...]
    warnings: tuple[str, ...] = ()


def load_ap_table(path: str) -> ApTable:
    """Parse the plain-text a_p format.

    First non-comment line is ``k <weight>``; each following line is
    ``<prime> <a_p>``.  ``#`` starts a comment, blank lines are skipped.
    Primes must be strictly increasing.  Entries breaking the Ramanujan
    bound |a_p| <= 2 p^((k-1)/2) produce warnings, not errors.
    """
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.readlines()

    weight = None
    entries: list[tuple[int, int]] = []
    seen: dict[int, int] = {}
    warnings: list[str] = []
    last = None
    for lineno, line in enumerate(raw, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        if weight is None:
            if len(fields) != 2 or fields[0] != "k":
                raise ParseError(
                    f"line {lineno}: expected header 'k <weight>'", lineno
                )
            try:
                weight = int(fields[1])
            except ValueError:
                raise ParseError(f"line {lineno}: bad weight {fields[1]!r}", lineno)
            if weight < 1:
                raise ParseError(f"line {lineno}: weight must be >= 1", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(
                f"line {lineno}: expected '<prime> <a_p>', got {text!r}", lineno
            )
        try:
            p, ap = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry {text!r}", lineno)
        if p in seen:
            raise ParseError(
                f"line {lineno}: duplicate prime {p} (first at line {seen[p]})",
                lineno,
            )
        if not is_prime(p):
            raise ParseError(f"line {lineno}: {p} is not prime", lineno)
        if last is not None and p < last:
            raise ParseError(
                f"line {lineno}: primes must be strictly increasing", lineno
            )
        if ap * ap > 4 * p ** (weight - 1):
            warnings.append(
                f"line {lineno}: |a_p| exceeds the Ramanujan bound at p={p}"
            )
        seen[p] = lineno
        entries.append((p, ap))
        last = p
    if weight is None:
        raise ParseError("missing 'k <weight>' header")
    return ApTable(k=weight, entries=tuple(entries), warnings=tuple(warnings))


# -- report plumbing ---------------------------------------------------------


def _meta(command: str, params: dict, args) -> dict:
    meta = {
        "command": command,
        "params": params,
        "version": f"ikeda-hecke {__version__}",
    }
    if not args.no_timestamp:
        meta["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    return meta


def _records_json(records: list[CheckRecord]) -> list[dict]:
    return [
        {"name": rec.name, "status": rec.status, "witness": rec.witness}
        for rec in records
    ]


def _use_color() -> bool:
    return sys.stdout.isatty() and not os.environ.get("NO_COLOR")


def _status_tag(status: str) -> str:
    tag = status.upper()
    if _use_color():
        color = {"PASS": "\x1b[32m", "FAIL": "\x1b[31m"}.get(tag, "")
        if color:
            return f"{color}{tag}\x1b[0m"
    return tag


def _emit_report(doc: dict, records: list[CheckRecord], args) -> int:
    failed = any(rec.status == "fail" for rec in records)
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for rec in records:
            print(f"{_status_tag(rec.status):<4}  {rec.name}")
        npass = sum(1 for rec in records if rec.status == "pass")
        ninfo = sum(1 for rec in records if rec.status == "info")
        print(f"{npass} pass, {ninfo} info, "
              f"{sum(1 for r in records if r.status == 'fail')} fail")
    return 1 if failed else 0


def _usage_error(message: str) -> int:
    print(f"usage error: {message}", file=sys.stderr)
    return 2


# -- symbolic term lists ------------------------------------------------------


def _term_list(ep: EigenvaluePoly) -> list[dict]:
    """Flatten lam~ into {"q","a","coeff"} dicts, (q desc, a desc)."""
    flat = []
    for a_exp, qpoly in ep.poly.terms.items():
        for q_exp, coeff in qpoly.terms.items():
            flat.append((q_exp, a_exp, coeff))
    flat.sort(key=lambda t: (-t[0], -t[1]))
    return [{"q": q, "a": a, "coeff": str(c)} for q, a, c in flat]


def _terms_to_text(terms: list[dict]) -> str:
    if not terms:
        return "0"
    chunks = []
    for term in terms:
        coeff = Fraction(term["coeff"])
        body = []
        if term["q"]:
            body.append("q" if term["q"] == 1 else f"q^{term['q']}")
        if term["a"]:
            body.append("a" if term["a"] == 1 else f"a^{term['a']}")
        mag = abs(coeff)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = "*".join(body)
        else:
            text = "*".join([str(mag)] + body)
        chunks.append((coeff < 0, text))
    neg, text = chunks[0]
    out = f"-{text}" if neg else text
    for neg, text in chunks[1:]:
        out += f" - {text}" if neg else f" + {text}"
    return out


# -- subcommand handlers ------------------------------------------------------


def _cmd_eigenvalue(args) -> int:
    if args.n < 1 or args.r < 0:
        return _usage_error("need n >= 1 and r >= 0")
    if args.n > SOFT_N_CLOSED and not args.force:
        return _usage_error(
            f"n={args.n} exceeds the soft limit {SOFT_N_CLOSED}; "
            "pass --force to override"
        )
    ep = eigenvalue_closed_form(IkedaContext(n=args.n, r=args.r))
    terms = _term_list(ep)
    if args.format == "json":
        doc = {
            "meta": _meta("eigenvalue", {"n": args.n, "r": args.r}, args),
            "terms": terms,
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "csv":
        print("q,a,coeff")
        for term in terms:
            print(f"{term['q']},{term['a']},{term['coeff']}")
    else:
        print(_terms_to_text(terms))
    return 0


def _suite_vanishing(n: int) -> list[CheckRecord]:
    try:
        return lemma_vanishing_check(n)
    except CheckFailed as exc:
        return [CheckRecord(name=str(exc), status="fail", witness=exc.witness)]


def _suite_pc_identity(n: int, r: int) -> list[CheckRecord]:
    records = []
    for delta in enumerate_deltas(2 * n, r):
        ok = pc_identity_check(n, delta)
        records.append(
            CheckRecord(
                name=f"P*c identity delta={delta}",
                status="pass" if ok else "fail",
                witness={"delta": list(delta)},
            )
        )
    return records


def _suite_gaussian(n: int, r: int) -> list[CheckRecord]:
    m = 2 * n
    records = []
    for delta in enumerate_deltas(m, r):
        gm = gaussian_multinomial(delta)
        ok = gm == inversion_sum(delta)
        ok = ok and gm.coefficient(0) == 1
        for exp, coeff in gm.terms.items():
            j = -exp // 2
            ok = ok and coeff.denominator == 1 and 0 <= coeff <= m**j
        records.append(
            CheckRecord(
                name=f"Gaussian multinomial delta={delta}",
                status="pass" if ok else "fail",
                witness={"delta": list(delta), "polynomial": str(gm)},
            )
        )
    return records


def _suite_oracle(n: int, r: int) -> list[CheckRecord]:
    closed = eigenvalue_closed_form(IkedaContext(n=n, r=r))
    brute = eigenvalue_via_oracle(IkedaContext(n=n, r=r))
    ok = closed.poly == brute.poly
    return [
        CheckRecord(
            name=f"closed form vs brute force (n={n}, r={r})",
            status="pass" if ok else "fail",
            witness={
                "closed_form": _term_list(closed),
                "brute_force": _term_list(brute),
            },
        )
    ]


def _suite_bounds(n: int, r: int) -> list[CheckRecord]:
    try:
        return verify_bounds(IkedaContext(n=n, r=r))
    except CheckFailed as exc:
        return [CheckRecord(name=str(exc), status="fail", witness=exc.witness)]


def _random_point(rank: int, rng: random.Random) -> SphericalPoint:
    # Coordinates > 1 and pairwise distinct, so every tau-transform also has
    # pairwise-distinct coordinates (inverses drop below 1).
    values: list[Fraction] = []
    while len(values) < rank:
        v = Fraction(rng.randint(3, 400), rng.randint(1, 3))
        if v > 1 and v not in values:
            values.append(v)
    return SphericalPoint(
        p=Fraction(rng.randint(2, 17)),
        xs=tuple(values),
        x0=Fraction(rng.randint(2, 40)),
    )


def _suite_weyl(n: int, r: int, seed: int, points: int = 5) -> list[CheckRecord]:
    rank = n
    rng = random.Random(seed)
    records = []
    for idx in range(points):
        point = _random_point(rank, rng)
        direct = omega_T_pr(r, point, "direct")
        via_gl = omega_T_pr(r, point, "via-gl")
        records.append(
            CheckRecord(
                name=f"route agreement point {idx}",
                status="pass" if direct == via_gl else "fail",
                witness={"xs": [str(x) for x in point.xs], "value": str(direct)},
            )
        )
        generators = list(range(1, rank + 1))
        swaps = [
            tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, rank))
            for i in range(rank - 1)
        ]
        for gen in swaps + generators:
            moved = weyl_transform(point, gen)
            label = f"tau_{gen}" if isinstance(gen, int) else f"swap{gen}"
            records.append(
                CheckRecord(
                    name=f"Weyl invariance {label} point {idx}",
                    status="pass" if omega_T_pr(r, moved) == direct else "fail",
                    witness={
                        "generator": label,
                        "xs": [str(x) for x in point.xs],
                    },
                )
            )
    return records


_SUITES = ("vanishing", "pc-identity", "gaussian", "oracle", "bounds", "weyl", "all")


def _cmd_verify(args) -> int:
    if args.format == "csv":
        return _usage_error("verify has no csv form; use text or json")
    if args.n < 1 or args.r < 0:
        return _usage_error("need n >= 1 and r >= 0")
    wants = (
        ["vanishing", "pc-identity", "gaussian", "oracle", "bounds", "weyl"]
        if args.suite == "all"
        else [args.suite]
    )
    if not args.force:
        if any(s in wants for s in ("vanishing", "oracle")) and args.n > SOFT_N_ORACLE:
            return _usage_error(
                f"suite needs n <= {SOFT_N_ORACLE} (factorial blow-up); "
                "pass --force to override"
            )
        if args.n > SOFT_N_CLOSED or args.r > SOFT_R:
            return _usage_error(
                f"n <= {SOFT_N_CLOSED} and r <= {SOFT_R} unless --force is given"
            )
    records: list[CheckRecord] = []
    for suite in wants:
        if suite == "vanishing":
            records += _suite_vanishing(args.n)
        elif suite == "pc-identity":
            records += _suite_pc_identity(args.n, args.r)
        elif suite == "gaussian":
            records += _suite_gaussian(args.n, args.r)
        elif suite == "oracle":
            records += _suite_oracle(args.n, args.r)
        elif suite == "bounds":
            records += _suite_bounds(args.n, args.r)
        elif suite == "weyl":
            records += _suite_weyl(args.n, args.r, args.seed)
    doc = {
        "meta": _meta(
            "verify",
            {"suite": args.suite, "n": args.n, "r": args.r, "seed": args.seed},
            args,
        ),
        "checks": _records_json(records),
    }
    return _emit_report(doc, records, args)


def _cmd_threshold(args) -> int:
    if args.format == "csv":
        return _usage_error("threshold has no csv form; use text or json")
    if args.r < 1:
        return _usage_error("threshold requires r >= 1")
    if args.n < 1:
        return _usage_error("need n >= 1")
    bound = positivity_threshold(IkedaContext(n=args.n, r=args.r))
    first = next_prime(bound)
    if args.format == "json":
        doc = {
            "meta": _meta("threshold", {"n": args.n, "r": args.r}, args),
            "checks": [
                {
                    "name": "positivity-threshold",
                    "status": "info",
                    "witness": {"bound": bound, "first_prime": first},
                }
            ],
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(f"threshold: {bound}")
        print(f"first prime above threshold: {first}")
    return 0


def _cmd_table(args) -> int:
    if args.n < 1 or args.r_max < 1:
        return _usage_error("need n >= 1 and r-max >= 1")
    try:
        table = load_ap_table(args.ap_file)
    except OSError as exc:
        print(f"error: cannot read {args.ap_file}: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    k = table.k
    records: list[CheckRecord] = [
        CheckRecord(name=warning, status="info", witness={"kind": "warning"})
        for warning in table.warnings
    ]
    polys = {
        r: eigenvalue_closed_form(IkedaContext(n=args.n, r=r, k=k))
        for r in range(1, args.r_max + 1)
    }
    rows = []
    for p, ap in table.entries:
        t = ap * math.exp(-0.5 * (k - 1) * math.log(p))
        for r in range(1, args.r_max + 1):
            tilde = evaluate_numeric(polys[r], p, t, check_domain=False)
            row = {
                "p": p,
                "r": r,
                "t": repr(t),
                "lambda_tilde": repr(tilde.value),
                "err": repr(tilde.error_bound),
            }
            if not args.normalized:
                full = evaluate_numeric(
                    polys[r], p, t, normalized=False, check_domain=False
                )
                row["lambda"] = repr(full.value)
                row["lambda_err"] = repr(full.error_bound)
            rows.append(row)
            records.append(
                CheckRecord(name=f"p={p} r={r}", status="info", witness=row)
            )
    if args.format == "json":
        doc = {
            "meta": _meta(
                "table",
                {
                    "n": args.n,
                    "r_max": args.r_max,
                    "k": k,
                    "normalized": bool(args.normalized),
                },
                args,
            ),
            "checks": _records_json(records),
        }
        print(json.dumps(doc, indent=2, sort_keys=True))
    elif args.format == "csv":
        cols = ["p", "r", "t", "lambda_tilde", "err"]
        if not args.normalized:
            cols += ["lambda", "lambda_err"]
        print(",".join(cols))
        for row in rows:
            print(",".join(str(row[c]) for c in cols))
    else:
        for warning in table.warnings:
            print(f"warning: {warning}")
        for row in rows:
            line = (
                f"p={row['p']} r={row['r']} t={row['t']} "
                f"lambda~={row['lambda_tilde']} err={row['err']}"
            )
            if not args.normalized:
                line += f" lambda={row['lambda']}"
            print(line)
    return 0


def _cmd_positivity(args) -> int:
    if args.format == "csv":
        return _usage_error("positivity has no csv form; use text or json")
    if args.r < 1:
        return _usage_error("positivity requires r >= 1")
    if args.n < 1:
        return _usage_error("need n >= 1")
    if args.grid < 3:
        return _usage_error("grid must have at least 3 points")
    if args.primes < 1:
        return _usage_error("need at least one prime")
    ctx = IkedaContext(n=args.n, r=args.r)
    bound = positivity_threshold(ctx)
    primes = primes_above(bound, args.primes)
    try:
        records = positivity_scan(
            ctx, primes, t_grid_size=args.grid, threads=args.threads
        )
    except CheckFailed as exc:
        records = [CheckRecord(name=str(exc), status="fail", witness=exc.witness)]
    doc = {
        "meta": _meta(
            "positivity",
            {
                "n": args.n,
                "r": args.r,
                "threshold": bound,
                "primes": primes,
                "grid": args.grid,
            },
            args,
        ),
        "checks": _records_json(records),
    }
    return _emit_report(doc, records, args)


# -- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json", "csv"), default="text",
        help="output format (csv only where tabular)",
    )
    common.add_argument(
        "--no-timestamp", action="store_true",
        help="omit the timestamp for byte-identical reruns",
    )
    common.add_argument("--threads", type=int, default=1, metavar="N")
    common.add_argument(
        "--force", action="store_true", help="override the soft size limits"
    )

    parser = argparse.ArgumentParser(
        prog="ikeda-hecke",
        description="Exact Hecke eigenvalues of Ikeda lifts and their checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eig = sub.add_parser(
        "eigenvalue", parents=[common],
        help="print the normalized eigenvalue as a (q, a) polynomial",
    )
    p_eig.add_argument("--n", type=int, required=True, help="half-genus")
    p_eig.add_argument("--r", type=int, required=True, help="Hecke exponent")
    p_eig.set_defaults(func=_cmd_eigenvalue)

    p_ver = sub.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    p_ver.add_argument("suite", choices=_SUITES)
    p_ver.add_argument("--n", type=int, required=True)
    p_ver.add_argument("--r", type=int, default=2)
    p_ver.add_argument("--seed", type=int, default=0, help="seed for random points")
    p_ver.set_defaults(func=_cmd_verify)

    p_thr = sub.add_parser(
        "threshold", parents=[common],
        help="print the positivity threshold and the first prime above it",
    )
    p_thr.add_argument("--n", type=int, required=True)
    p_thr.add_argument("--r", type=int, required=True)
    p_thr.set_defaults(func=_cmd_threshold)

    p_tab = sub.add_parser(
        "table", parents=[common],
        help="numeric eigenvalue table from an a_p file",
    )
    p_tab.add_argument("--n", type=int, required=True)
    p_tab.add_argument("--r-max", type=int, default=1)
    p_tab.add_argument("--ap-file", required=True)
    p_tab.add_argument(
        "--normalized", action="store_true",
        help="emit only the normalized eigenvalue",
    )
    p_tab.set_defaults(func=_cmd_table)

    p_pos = sub.add_parser(
        "positivity", parents=[common],
        help="scan eigenvalue signs above the positivity threshold",
    )
    p_pos.add_argument("--n", type=int, required=True)
    p_pos.add_argument("--r", type=int, required=True)
    p_pos.add_argument("--primes", type=int, default=3,
                       help="how many primes above the threshold")
    p_pos.add_argument("--grid", type=int, default=401)
    p_pos.set_defaults(func=_cmd_positivity)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    return args.func(args)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
