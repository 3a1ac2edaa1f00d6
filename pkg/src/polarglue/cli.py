"""Command-line interface: check / scan / local / obstruct.

Exit codes: 0 existence (or obstruction established), 1 non-existence,
2 inconclusive, 64 usage error, 65 validation error, 66 output I/O error.
JSON records follow schemas/output.v1.json; scans are byte-deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__, enumeration, gluing, localalg, weil

EXIT_EXISTS = 0
EXIT_NO_PP = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_VALIDATION = 65
EXIT_IO = 66

SCHEMA_VERSION = "1"

_VALIDATION_ERRORS = (
    weil.ValidationError,
    localalg.CharacteristicPrime,
    localalg.ReducibleField,
    gluing.NotASquare,
    gluing.NotOrdinary,
    gluing.SquareField,
    gluing.SmallPrime,
    gluing.InseparableInput,
    gluing.NotGeometricallySimple,
    gluing.ReducibleEllipticInput,
    gluing.HypothesisViolated,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _provenance(deterministic: bool) -> dict:
    return {
        "tool": "polarglue",
        "version": __version__,
        "generated_at": None
        if deterministic
        else datetime.now(timezone.utc).isoformat(),
    }


def _record(command: str, query: dict, deterministic: bool = False, **extra) -> dict:
    rec = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "query": query,
        "h_b": None,
        "flags": None,
        "verdict": None,
        "local_report": None,
        "obstruction": None,
        "provenance": _provenance(deterministic),
    }
    rec.update(extra)
    return rec


def _verdict_payload(v: gluing.GluingVerdict) -> dict:
    return {
        "kind": v.kind.value,
        "witness_ell": v.witness_ell,
        "branch": v.branch.value if v.branch else None,
        "reason": v.reason.value if v.reason else None,
        "failures": [
            {"ell": f.ell, "reasons": list(f.reasons)} for f in v.failures
        ],
        "jacobian_text": v.jacobian_text,
    }


def _verdict_exit(v: gluing.GluingVerdict) -> int:
    return {
        gluing.VerdictKind.IRREDUCIBLE_PP_EXISTS: EXIT_EXISTS,
        gluing.VerdictKind.NO_IRREDUCIBLE_PP: EXIT_NO_PP,
        gluing.VerdictKind.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[v.kind]


def _emit(obj, pretty_lines: list[str] | None, pretty: bool):
    if pretty and pretty_lines is not None:
        print("\n".join(pretty_lines))
    else:
        print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_check(args) -> int:
    field = weil.field_param(args.q)
    A = weil.make_surface(field, args.a1, args.a2)
    B = weil.make_elliptic(field, args.b)
    verdict = gluing.decide(A, B)
    h_b = weil.eval_real(weil.real_weil(A), args.b)
    rec = _record(
        "check",
        {"q": args.q, "a1": args.a1, "a2": args.a2, "b": args.b},
        h_b=h_b,
        flags=_row_flags(
            weil.classify_p_rank(A), weil.classify_p_rank(B),
            weil.is_geometrically_simple(A)[0], (),
        ),
        verdict=_verdict_payload(verdict),
    )
    lines = [f"h(b) = {h_b}", f"verdict: {verdict.kind.value}"]
    if verdict.witness_ell is not None:
        lines.append(f"witness ell = {verdict.witness_ell} ({verdict.branch.value})")
        lines.append(verdict.jacobian_text)
    if verdict.reason is not None:
        lines.append(f"reason: {verdict.reason.value}")
    for f in verdict.failures:
        lines.append(f"ell = {f.ell} fails: " + "; ".join(f.reasons))
    _emit(rec, lines, args.pretty)
    return _verdict_exit(verdict)


def _row_flags(surface_rank, elliptic_rank, simple, exceptional) -> dict:
    return {
        "surface_p_rank": surface_rank.value,
        "elliptic_p_rank": elliptic_rank.value,
        "geometrically_simple": "true" if simple else "false",
        "exceptional_primes": "|".join(str(e) for e in exceptional),
    }


def _scan_records(rows: list[enumeration.ScanRow]) -> list[dict]:
    out = []
    for row in rows:
        out.append(
            _record(
                "scan-row",
                {
                    "q": row.surface.q,
                    "a1": row.surface.a1,
                    "a2": row.surface.a2,
                    "b": row.elliptic.b,
                },
                deterministic=True,
                h_b=row.h_b,
                flags=_row_flags(
                    row.surface_p_rank, row.elliptic_p_rank,
                    row.geometrically_simple, row.exceptional_primes,
                ),
                verdict=_verdict_payload(row.verdict) if row.verdict else None,
            )
        )
    return out


def _scan_csv(rows: list[enumeration.ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["a1", "a2", "b", "h_b", "verdict", "witness_ell", "branch", "flags"]
    )
    for row in rows:
        flags = _row_flags(
            row.surface_p_rank, row.elliptic_p_rank,
            row.geometrically_simple, row.exceptional_primes,
        )
        flag_str = ";".join(f"{k}={v}" for k, v in flags.items())
        if row.verdict is None:
            verdict_str, ell, branch = "error", "", ""
        else:
            verdict_str = row.verdict.kind.value
            ell = "" if row.verdict.witness_ell is None else row.verdict.witness_ell
            branch = row.verdict.branch.value if row.verdict.branch else ""
        writer.writerow(
            [row.surface.a1, row.surface.a2, row.elliptic.b, row.h_b,
             verdict_str, ell, branch, flag_str]
        )
    return buf.getvalue()


def cmd_scan(args) -> int:
    field = weil.field_param(args.q)
    rows = enumeration.scan_pairs(field, jobs=args.jobs)
    if args.format == "csv":
        payload = _scan_csv(rows)
    else:
        payload = json.dumps(_scan_records(rows), indent=2, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(payload)
    return 0


def cmd_local(args) -> int:
    field = weil.field_param(args.q)
    A = weil.make_surface(field, args.a1, args.a2)
    report = localalg.classify_prime_ideals(A, args.ell)
    exceptional, witness = localalg.is_exceptional(A, args.ell)
    rec = _record(
        "local",
        {"q": args.q, "a1": args.a1, "a2": args.a2, "ell": args.ell},
        local_report={
            "ell": report.ell,
            "f_factors": [
                {"coefficients": list(g), "multiplicity": m}
                for g, m in report.factor_pattern.factors
            ],
            "h_factors": [
                {"coefficients": list(g), "multiplicity": m}
                for g, m in report.h_pattern.factors
            ],
            "ideals": [
                {
                    "factor": list(r.factor),
                    "multiplicity": r.multiplicity,
                    "symmetric": r.symmetric,
                    "generating": r.generating,
                    "maximal_at": r.maximal_at,
                    "exceptional": r.exceptional,
                    "conjugate_partner": list(r.conjugate_partner)
                    if r.conjugate_partner
                    else None,
                }
                for r in report.ideals
            ],
            "exceptional": exceptional,
            "exceptional_witness": list(witness) if witness else None,
        },
    )
    _emit(rec, None, False)
    return 0


_OBSTRUCTED_TEXT = (
    "no abelian variety in the isogeny class carries an "
    "irreducible principal polarization"
)


def cmd_obstruct(args) -> int:
    field = weil.field_param(args.q)
    A = weil.make_surface(field, args.a1, args.a2)
    if args.ss_surface:
        if args.s is not None or args.n is not None:
            raise gluing.SquareField("--ss-surface excludes --s/--n")
        status = gluing.hl2_obstruction(A, strict=args.hl2_strict)
        mode = "hl2"
        h_val = None
    else:
        if args.s is None:
            raise gluing.NotASquare("square q needs --s (and optionally --n)")
        n = args.n if args.n is not None else 1
        status = gluing.hl_obstruction(A, args.s, n)
        mode = "hl"
        h_val = weil.eval_real(weil.real_weil(A), 2 * args.s)
    obstructed = status is gluing.Obstruction.OBSTRUCTED
    rec = _record(
        "obstruct",
        {
            "q": args.q,
            "a1": args.a1,
            "a2": args.a2,
            "s": args.s,
            "n": args.n,
            "mode": mode,
        },
        obstruction={
            "mode": mode,
            "status": status.value,
            "statement": _OBSTRUCTED_TEXT if obstructed else None,
            "h_at_2s": h_val,
        },
    )
    _emit(rec, None, False)
    return EXIT_EXISTS if obstructed else EXIT_INCONCLUSIVE


def _load_config() -> dict:
    path = os.environ.get("POLARGLUE_CONFIG")
    if not path or not os.path.exists(path):
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def build_parser(config: dict | None = None) -> argparse.ArgumentParser:
    config = config or {}
    parser = _Parser(prog="polarglue", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide one surface x elliptic pair")
    check.add_argument("--q", type=int, required=True)
    check.add_argument("--a1", type=int, required=True)
    check.add_argument("--a2", type=int, required=True)
    check.add_argument("--b", type=int, required=True)
    check.add_argument("--pretty", action="store_true",
                       default=config.get("pretty", "").lower() == "true")
    check.set_defaults(func=cmd_check)

    scan = sub.add_parser("scan", help="decide every admissible pair over F_q")
    scan.add_argument("--q", type=int, required=True)
    scan.add_argument("--out", default=config.get("out"))
    scan.add_argument("--format", choices=("json", "csv"),
                      default=config.get("format", "json"))
    scan.add_argument("--jobs", type=int,
                      default=int(config.get("jobs", os.cpu_count() or 1)))
    scan.set_defaults(func=cmd_scan)

    local = sub.add_parser("local", help="per-prime ideal classification report")
    local.add_argument("--q", type=int, required=True)
    local.add_argument("--a1", type=int, required=True)
    local.add_argument("--a2", type=int, required=True)
    local.add_argument("--ell", type=int, required=True)
    local.set_defaults(func=cmd_local)

    obstruct = sub.add_parser(
        "obstruct", help="ordinary x supersingular non-existence tests"
    )
    obstruct.add_argument("--q", type=int, required=True)
    obstruct.add_argument("--a1", type=int, required=True)
    obstruct.add_argument("--a2", type=int, required=True)
    obstruct.add_argument("--s", type=int, default=None)
    obstruct.add_argument("--n", type=int, default=None)
    obstruct.add_argument("--ss-surface", action="store_true")
    obstruct.add_argument("--hl2-strict", action="store_true",
                          default=config.get("hl2_strict", "").lower() == "true")
    obstruct.set_defaults(func=cmd_obstruct)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser(_load_config())
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"polarglue: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
