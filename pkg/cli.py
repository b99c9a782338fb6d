"""Command-line surface: bounds, cascades, resistant pairs, families, verification and sweeps."""
import argparse
import csv
import io
import json
import logging
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple

from analysis import family_stats
from bounds import evaluate_bound, general_pairs, uniform_pairs
from cascade import cascade_form, derive_TS, resistant_sequence
from config import settings
from constructions import build_family
from exceptions import (EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE, ExtremalError, ParameterRangeError,
                        UsageError, handle_extremal_exception)
from export import write_scan_csv, write_scan_workbook
from models import (BoundKind, BoundRequest, CertificateStatus, CharSet, Command, ConstructionKind,
                    ConstructionSpec, Ground, OutputFormat, ResistantPair, SetFamily, Verb,
                    VerificationCertificate, to_json_value)
from oracle import enumerate_maximal_intersecting, lex_scan_optimum, verify_theorem
from store import CertificateStore, write_certificate

logger = logging.getLogger(__name__)

BOUND_PARAMS = ("n", "k", "gamma", "delta", "a", "b", "j", "weight", "alpha", "u", "i", "s", "t")


class CommandParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().rstrip()}")


def _int_list(raw: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {raw!r}")


def _int_range(raw: str) -> Tuple[int, int]:
    lo, sep, hi = raw.partition(":")
    try:
        if not sep:
            return int(lo), int(lo)
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {raw!r}")


def build_parser() -> CommandParser:
    common = CommandParser(add_help=False)
    common.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--stable", action="store_true", help="report elapsed_ms as 0")
    common.add_argument("--log-level", dest="log_level")

    parser = CommandParser(prog="extremal", description="Exact toolkit for intersecting families")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CommandParser)

    bound = verbs.add_parser(Verb.BOUND.value, parents=[common])
    bound.add_argument("--kind", required=True, choices=[k.value for k in BoundKind])
    bound.add_argument("--n", type=int, required=True)
    bound.add_argument("--k", type=int)
    bound.add_argument("--gamma", type=int)
    bound.add_argument("--delta", type=int)
    bound.add_argument("--a", type=int)
    bound.add_argument("--b", type=int)
    bound.add_argument("--j", type=int)
    bound.add_argument("--bsize", type=int)
    bound.add_argument("--weight", type=Fraction)
    bound.add_argument("--alpha", type=float)
    bound.add_argument("--u", type=int)
    bound.add_argument("--i", type=int)
    bound.add_argument("--s", type=int)
    bound.add_argument("--t", type=int)
    bound.add_argument("--variant")

    cascade = verbs.add_parser(Verb.CASCADE.value, parents=[common])
    cascade.add_argument("--gamma", type=int, required=True)
    cascade.add_argument("--n", type=int, required=True)
    cascade.add_argument("--k", type=int, required=True)

    resistant = verbs.add_parser(Verb.RESISTANT.value, parents=[common])
    resistant.add_argument("--n", type=int, required=True)
    resistant.add_argument("--k", type=int, required=True)
    resistant.add_argument("--pairs", action="store_true")
    resistant.add_argument("--ab", type=_int_list)

    family = verbs.add_parser(Verb.FAMILY.value, parents=[common])
    family.add_argument("--kind", required=True, choices=[k.value for k in ConstructionKind])
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--k", type=int, required=True)
    family.add_argument("--i", type=int)
    family.add_argument("--u", type=int)
    family.add_argument("--l", type=int)
    family.add_argument("--s", type=int)
    family.add_argument("--center", type=int, default=1)
    family.add_argument("--S", type=_int_list, dest="S")
    family.add_argument("--T", type=_int_list, dest="T")
    family.add_argument("--G", dest="G", help="JSON list of k-sets avoiding the centre")
    family.add_argument("--stats", action="store_true")
    family.add_argument("--deep", action="store_true", help="also compute nu and tau")
    family.add_argument("--t", type=int)

    verify = verbs.add_parser(Verb.VERIFY.value, parents=[common])
    verify.add_argument("--thm", required=True)
    verify.add_argument("--n", type=int, required=True)
    verify.add_argument("--k", type=int, required=True)
    _verifier_options(verify)

    scan = verbs.add_parser(Verb.SCAN.value, parents=[common])
    scan.add_argument("--thm", required=True)
    scan.add_argument("--n-range", dest="n_range", type=_int_range, required=True)
    scan.add_argument("--k-range", dest="k_range", type=_int_range, required=True)
    scan.add_argument("--csv", required=True)
    scan.add_argument("--xlsx")
    _verifier_options(scan)

    oracle = verbs.add_parser(Verb.ORACLE.value, parents=[common])
    oracle.add_argument("--mode", required=True, choices=["maximal-intersecting", "lex-scan"])
    oracle.add_argument("--n", type=int, required=True)
    oracle.add_argument("--k", type=int, required=True)
    oracle.add_argument("--a", type=int)
    oracle.add_argument("--b", type=int)
    oracle.add_argument("--bsize", type=int)
    oracle.add_argument("--weight", type=Fraction)
    oracle.add_argument("--ground", choices=[g.value for g in Ground], default=Ground.FULL.value)
    oracle.add_argument("--anchored", action="store_true")
    return parser


def _verifier_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t", type=int)
    parser.add_argument("--a", type=int)
    parser.add_argument("--b", type=int)
    parser.add_argument("--s", type=int)
    parser.add_argument("--weight")
    parser.add_argument("--part")
    parser.add_argument("--mode", choices=["lex-scan", "enumerate"])


def _command(args: argparse.Namespace) -> Command:
    options = {key: value for key, value in vars(args).items()
               if key not in ("verb", "format") and value is not None}
    return Command(verb=Verb(args.verb), options=options, output_format=OutputFormat(args.format))


# -- rendering ---------------------------------------------------------------

def render(payload: Dict[str, Any], fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return json.dumps(payload, ensure_ascii=False, indent=2)
    if fmt is OutputFormat.TEXT:
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, ensure_ascii=False)
            lines.append(f"{key}: {value}")
        return "\n".join(lines)
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    rows = payload.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        headers = list(rows[0])
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_csv_cell(row.get(h)) for h in headers])
    else:
        writer.writerow(["key", "value"])
        for key, value in payload.items():
            writer.writerow([key, _csv_cell(value)])
    return output.getvalue().rstrip("\n")


def _csv_cell(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False)
    if value is None:
        return ""
    return str(value)


def emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        logger.info(f"wrote output to {out}")
    else:
        sys.stdout.write(text + "\n")


def _stable(cert: VerificationCertificate, stable: bool) -> VerificationCertificate:
    return cert.model_copy(update={"elapsed_ms": 0}) if stable else cert


def _pair_row(pair: ResistantPair) -> Dict[str, Any]:
    return {
        "l": pair.index,
        "S": list(pair.S.elements),
        "T": list(pair.T.elements),
        "size_a": str(pair.size_a),
        "size_b": str(pair.size_b),
        "sum": str(pair.total),
        "sentinel": pair.sentinel,
    }


# -- verbs -------------------------------------------------------------------

def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name, None) is None]
    if missing:
        raise UsageError(f"{args.verb}: missing {', '.join(missing)}")


def cmd_bound(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    kind = BoundKind(args.kind)
    params = {name: getattr(args, name) for name in BOUND_PARAMS if getattr(args, name) is not None}
    # cross bounds also take the B size as --gamma
    b_size = args.bsize if args.bsize is not None else args.gamma
    if kind is BoundKind.CROSS and b_size is not None:
        params["b_size"] = b_size
    result = evaluate_bound(BoundRequest(kind=kind, variant=args.variant, params=params))
    return result.to_json_dict(), EXIT_OK


def cmd_cascade(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    cf = cascade_form(args.gamma, args.n, args.k)
    T, S = derive_TS(cf)
    payload = {
        "gamma": str(cf.value),
        "n": cf.n,
        "k": cf.k,
        "terms": [list(term) for term in cf.terms],
        "T": list(T.elements),
        "S": list(S.elements),
    }
    return payload, EXIT_OK


def cmd_resistant(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    if args.ab is not None:
        if len(args.ab) != 2:
            raise UsageError("resistant --ab expects A,B")
        a, b = args.ab
        pairs = general_pairs(args.n, a, b) if b != a + 1 else uniform_pairs(args.n, b)
        return {"n": args.n, "a": a, "b": b, "rows": [_pair_row(p) for p in pairs]}, EXIT_OK
    payload: Dict[str, Any] = {
        "n": args.n,
        "k": args.k,
        "resistant_numbers": [str(x) for x in resistant_sequence(args.n, args.k)],
    }
    if args.pairs:
        payload["rows"] = [_pair_row(p) for p in uniform_pairs(args.n, args.k)]
    return payload, EXIT_OK


def cmd_family(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    spec_fields: Dict[str, Any] = {
        "kind": ConstructionKind(args.kind), "n": args.n, "k": args.k,
        "u": args.u, "i": args.i, "l": args.l, "s": args.s, "center": args.center,
    }
    if args.S is not None:
        spec_fields["S"] = CharSet.of(args.S, args.n)
    if args.T is not None:
        spec_fields["T"] = CharSet.of(args.T, args.n)
    if args.G is not None:
        try:
            sets = json.loads(args.G)
        except json.JSONDecodeError as e:
            raise UsageError(f"family --G: invalid JSON ({e})")
        spec_fields["G"] = SetFamily.from_sets(args.n, args.k, sets)
    F = build_family(ConstructionSpec(**spec_fields))
    payload = {"kind": args.kind, "family": F.to_json_dict()}
    if args.stats:
        payload["stats"] = family_stats(F, t=args.t, deep=args.deep).to_json_dict()
    return payload, EXIT_OK


def _verifier_params(args: argparse.Namespace, n: int, k: int) -> Dict[str, Any]:
    params: Dict[str, Any] = {"n": n, "k": k}
    for name in ("t", "a", "b", "s", "weight", "part", "mode"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    return params


def cmd_verify(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    cert = _stable(verify_theorem(args.thm, _verifier_params(args, args.n, args.k)), args.stable)
    code = EXIT_COUNTEREXAMPLE if cert.status is CertificateStatus.COUNTEREXAMPLE else EXIT_OK
    return cert.to_json_dict(), code


def _scan_one(thm: str, params: Dict[str, Any], stable: bool) -> VerificationCertificate:
    try:
        cert = verify_theorem(thm, params)
    except ParameterRangeError as e:
        logger.info(f"{thm} {params}: outside the theorem's range ({e})")
        cert = VerificationCertificate(theorem_id=thm, params=params, status=CertificateStatus.SKIPPED,
                                       witness={"reason": str(e)})
    return _stable(cert, stable)


def cmd_scan(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    (n_lo, n_hi), (k_lo, k_hi) = args.n_range, args.k_range
    if n_lo > n_hi or k_lo > k_hi:
        raise UsageError("scan: empty range")
    grid = [(n, k) for n in range(n_lo, n_hi + 1) for k in range(k_lo, k_hi + 1)]
    store = CertificateStore()
    with ThreadPoolExecutor(max_workers=settings.threads) as pool:
        futures = [pool.submit(_scan_one, args.thm, _verifier_params(args, n, k), args.stable) for n, k in grid]
        for future in futures:
            store.add(future.result())

    certificates = store.get_all()
    write_scan_csv(args.csv, certificates)
    if args.xlsx:
        write_scan_workbook(args.xlsx, certificates)
    grouped = store.by_status()
    payload = {
        "theorem": args.thm,
        "rows": len(certificates),
        "csv": args.csv,
        **{status: len(items) for status, items in grouped.items()},
    }
    code = EXIT_COUNTEREXAMPLE if store.has_counterexample() else EXIT_OK
    return payload, code


def cmd_oracle(args: argparse.Namespace) -> Tuple[Dict[str, Any], int]:
    if args.mode == "lex-scan":
        _require(args, "a", "b", "bsize")
        value, (A, B) = lex_scan_optimum(args.n, args.a, args.b, args.bsize, weight=args.weight,
                                         ground=Ground(args.ground))
        return {"mode": args.mode, "value": to_json_value(value), "A": A.to_json_dict(),
                "B": B.to_json_dict()}, EXIT_OK

    sizes: Counter = Counter()
    best, best_nontrivial = 0, 0
    for F in enumerate_maximal_intersecting(args.n, args.k, anchored=args.anchored):
        stats = family_stats(F)
        sizes[stats.size] += 1
        best = max(best, stats.size)
        if not stats.trivial:
            best_nontrivial = max(best_nontrivial, stats.size)
    payload = {
        "mode": args.mode,
        "n": args.n,
        "k": args.k,
        "anchored": bool(args.anchored),
        "count": str(sum(sizes.values())),
        "sizes": {str(size): str(count) for size, count in sorted(sizes.items())},
        "max_size": str(best),
        "max_nontrivial_size": str(best_nontrivial),
    }
    return payload, EXIT_OK


HANDLERS = {
    Verb.BOUND: cmd_bound,
    Verb.CASCADE: cmd_cascade,
    Verb.RESISTANT: cmd_resistant,
    Verb.FAMILY: cmd_family,
    Verb.VERIFY: cmd_verify,
    Verb.SCAN: cmd_scan,
    Verb.ORACLE: cmd_oracle,
}


def _configure(args: argparse.Namespace) -> None:
    level = (args.log_level or settings.log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    settings.override(threads=args.threads, seed=args.seed)


@handle_extremal_exception
def _dispatch(argv: Sequence[str]) -> int:
    args = build_parser().parse_args(list(argv))
    _configure(args)
    command = _command(args)
    logger.info(f"running {command.verb.value} with {command.options}")
    try:
        payload, code = HANDLERS[command.verb](args)
    except ExtremalError:
        raise
    except ValueError as e:
        # pydantic validation of user-supplied sets
        raise UsageError(str(e))
    if command.verb is Verb.VERIFY and command.output_format is OutputFormat.JSON and args.out:
        write_certificate(args.out, VerificationCertificate.model_validate(payload))
    else:
        emit(render(payload, command.output_format), args.out)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code"""
    argv = sys.argv[1:] if argv is None else argv
    try:
        return _dispatch(argv)
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
