"""
cli.py
Command line: enumerate families, run the bijection, verify claims, inspect tables and report history.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from bijection import PartitionPair, conservation_summary, phi_inverse_steps, phi_steps
from colour import (DeltaGammaTable, Metric, PartitionsError, TableError, Variant, build_delta_matrix,
                    build_variant_matrix, builtin_delta_gamma, require_valid, validate_delta_gamma)
from database import ReportStore
from frobenius import enumerate_frobenius
from partition import ColouredPartition, MembershipSpec, enumerate_partitions
from qseries import Dilation
from verifier import CLAIMS, ClaimVerifier, Settings

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FAMILIES = ["pn", "cn", "p0", "variant", "frobenius"]


def load_table(source: str, n: Optional[int] = None, store: Optional[ReportStore] = None) -> DeltaGammaTable:
    """
    Resolve a delta/gamma table from a built-in name, a JSON file or a saved table.

    Args:
        source: "mp", "alt", a path to {n, delta, gamma} JSON, or the name of a stored table
        n: Colour count; required for built-in names, checked against files
        store: Report store searched for saved tables

    Returns:
        DeltaGammaTable: validated table
    """
    builtin = {v.value: v for v in Variant}
    if source in builtin:
        if n is None:
            raise TableError(f"built-in table {source!r} needs --n")
        return builtin_delta_gamma(builtin[source], n)

    path = Path(source)
    if path.is_file():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise TableError(f"{path}: not valid JSON ({e})") from e
        table = DeltaGammaTable.from_dict(data, name=path.stem)
    elif store is not None and (saved := store.load_table(source)) is not None:
        table = saved
    else:
        raise TableError(f"no built-in, file or saved table called {source!r}")

    if n is not None and table.n != n:
        raise TableError(f"table {table.name} is for n={table.n}, not n={n}")
    return require_valid(table)


def parse_dilation(text: str, n: int) -> Dilation:
    """"principal", "capparelli", "primc", "identity" or "scale:s0,s1,..."."""
    if text == "principal":
        return Dilation.principal(n)
    if text == "capparelli":
        return Dilation.capparelli()
    if text == "primc":
        return Dilation.primc()
    if text == "identity":
        return Dilation.identity(n)
    scale, sep, shifts = text.partition(":")
    try:
        if not sep:
            raise ValueError(text)
        return Dilation(int(scale), tuple(int(s) for s in shifts.split(",")))
    except ValueError:
        raise PartitionsError(f"cannot parse dilation {text!r}; use principal, capparelli, primc, identity "
                              f"or scale:shift0,shift1,...") from None


def parse_classical(text: str) -> ColouredPartition:
    """Sizes like "8+8+7" or "8,8,7"; coloured input such as "8[a0b0]" is accepted too."""
    if "[" in text:
        return ColouredPartition.parse(text)
    tokens = [t for t in text.replace(",", "+").split("+") if t.strip()]
    if not all(t.strip().isdigit() for t in tokens):
        raise PartitionsError(f"cannot parse classical partition {text!r}")
    return ColouredPartition.classical(int(t) for t in tokens if int(t) > 0)


def _emit(payload, fmt: str, text_lines: List[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# ===== COMMANDS =====

def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.max_weight < 0:
        raise PartitionsError("--max-weight must be non-negative")
    if args.family == "frobenius":
        items = list(enumerate_frobenius(args.n, args.max_weight))
        _emit({"family": "frobenius", "n": args.n, "max_weight": args.max_weight,
               "count": len(items), "items": [f.to_dict() for f in items]},
              args.format, [f"{f.weight}\t{f}" for f in items] + [f"# {len(items)} symbols"])
        return EXIT_PASS

    if args.family == "pn":
        spec = MembershipSpec.pn(args.n)
    elif args.family == "p0":
        spec = MembershipSpec.p0()
    elif args.family == "variant":
        names = {v.value: v for v in Variant}
        if (args.table or "mp") not in names:
            raise PartitionsError(f"the variant family takes --table mp or alt, got {args.table!r}")
        spec = MembershipSpec.difference_variant(names[args.table or "mp"], args.n)
    else:
        spec = MembershipSpec.cn(load_table(args.table or "mp", args.n, _store(args)))

    dilation = parse_dilation(args.dilation, spec.n) if args.dilation else None
    items = list(enumerate_partitions(spec, args.max_weight, dilation))
    weight = (lambda p: sum(dilation.part_weight(x.size, x.colour) for x in p)) if dilation else (lambda p: p.weight)
    _emit({"family": spec.describe(), "n": spec.n, "max_weight": args.max_weight,
           "dilation": args.dilation, "count": len(items),
           "items": [{"weight": weight(p), "parts": p.to_dict()} for p in items]},
          args.format, [f"{weight(p)}\t{p or '0'}" for p in items] + [f"# {len(items)} partitions in {spec.describe()}"])
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    settings = Settings.from_env()
    verifier = ClaimVerifier(settings)
    verifier.set_force(args.force)
    n = args.n if args.n is not None else CLAIMS[args.claim].default_n
    table = load_table(args.table, n, _store(args)) if args.table else None
    report = verifier.run(args.claim, n=args.n, order=args.order, table=table,
                          corrupt=args.corrupt, light=args.light)
    if args.save:
        report_id = _store(args).save_report(report)
        logger.info("report stored as #%d", report_id)
    _emit(report.to_dict(), args.format, [report.to_text()])
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_claims(args: argparse.Namespace) -> int:
    rows = [{"claim": c.claim_id, "default_n": c.default_n, "default_order": c.default_order,
             "description": c.description} for c in CLAIMS.values()]
    _emit(rows, args.format, [f"{r['claim']:<22} {r['description']}" for r in rows])
    return EXIT_PASS


def cmd_biject(args: argparse.Namespace) -> int:
    table = load_table(args.table, args.n, _store(args))
    if args.inverse:
        pair = PartitionPair(ColouredPartition.parse(args.partition), parse_classical(args.nu or ""))
        steps = phi_inverse_steps(pair, table)
        result = steps[-1].mu
        summary = conservation_summary(result, pair)
        payload = {"input": pair.to_dict(), "image": result.to_dict()}
        lines = [f"{pair} -> {result or '0'}"]
    else:
        lam = ColouredPartition.parse(args.partition)
        steps = phi_steps(lam, table)
        image = PartitionPair(steps[-1].mu, steps[-1].nu)
        summary = conservation_summary(lam, image)
        payload = {"input": lam.to_dict(), "image": image.to_dict()}
        lines = [f"{lam or '0'} -> {image}"]
    if args.trace:
        payload["steps"] = [{"name": s.name, "mu": str(s.mu), "nu": str(s.nu)} for s in steps]
        lines += [f"  {s.name}: ({s.mu or '0'}, {s.nu or '0'})" for s in steps]
    payload["conservation"] = summary
    lines.append(f"  weight {summary['weight'][0]}, parts {summary['parts'][0]}, "
                 f"conserved: {'yes' if summary['preserved'] else 'no'}")
    _emit(payload, args.format, lines)
    return EXIT_PASS


def cmd_table(args: argparse.Namespace) -> int:
    store = _store(args)
    if args.action == "list":
        rows = store.get_all_tables()
        _emit(rows, args.format, [f"{r['name']}\tn={r['n']}\t{r['created_at']}" for r in rows] or ["no saved tables"])
        return EXIT_PASS

    if args.action == "validate":
        data = json.loads(Path(args.source).read_text())
        table = DeltaGammaTable.from_dict(data, name=Path(args.source).stem)
        violations = validate_delta_gamma(table)
        _emit({"table": table.name, "valid": not violations, "violations": [str(v) for v in violations]},
              args.format, [f"{table.name}: valid"] if not violations else [str(v) for v in violations])
        return EXIT_PASS if not violations else EXIT_FAIL

    table = load_table(args.source, args.n, store)
    if args.action == "save":
        if args.name:
            table.name = args.name
        store.save_table(table)
        print(f"saved table {table.name} (n={table.n})")
        return EXIT_PASS

    lines = [f"table {table.name}, n={table.n}", "delta:"]
    lines += [f"  {k} -> {v}" for k, v in table.to_dict()["delta"].items()]
    lines.append("gamma:")
    lines += [f"  {k} -> {v}" for k, v in table.to_dict()["gamma"].items()]
    _emit(table.to_dict(), args.format, lines)
    return EXIT_PASS


def cmd_matrix(args: argparse.Namespace) -> int:
    if args.variant:
        colours, matrix = build_variant_matrix(Variant(args.variant), args.n)
    else:
        colours, matrix = build_delta_matrix(args.n, Metric(args.metric))
    names = [str(c) for c in colours]
    df = pd.DataFrame(matrix, index=names, columns=names)
    _emit({"colours": names, "matrix": df.values.tolist()}, args.format, [df.to_string()])
    return EXIT_PASS


def cmd_history(args: argparse.Namespace) -> int:
    store = _store(args)
    if args.action == "stats":
        stats = store.get_report_statistics(args.claim)
        _emit(stats, args.format, [f"{k}: {v}" for k, v in stats.items()])
    elif args.action == "export":
        if not args.output:
            raise PartitionsError("history export needs --output")
        df = store.export_reports_to_csv(args.claim)
        df.to_csv(args.output, index=False)
        print(f"exported {len(df)} reports to {args.output}")
    elif args.action == "clear":
        count = store.delete_all_reports(args.claim)
        print(f"deleted {count} reports")
    else:
        rows = store.get_reports_by_claim(args.claim) if args.claim else store.get_all_reports(args.limit)
        _emit(rows, args.format,
              [f"#{r['id']}\t{r['claim']}\tn={r['n']}\torder={r['order']}\t{r['status']}\t{r['created_at']}"
               for r in rows] or ["no stored reports"])
    return EXIT_PASS


def _store(args: argparse.Namespace) -> ReportStore:
    if getattr(args, "_store", None) is None:
        args._store = ReportStore(args.db or Settings.from_env().db_path)
    return args._store


# ===== PARSER =====

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partitions",
                                     description="Exact enumeration and identity checks for n^2-coloured partitions.")
    parser.add_argument("--log-level", default=None, help="logging level (default from PARTITIONS_LOG_LEVEL)")
    parser.add_argument("--db", default=None, help="SQLite file for reports and saved tables")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list the members of a family up to a weight")
    p.add_argument("--family", choices=FAMILIES, default="pn")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--table", help="mp, alt, a JSON file or a saved table (cn); mp or alt (variant)")
    p.add_argument("--dilation", help="principal, capparelli, primc, identity or scale:shift0,shift1,...")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="check one claim coefficient by coefficient")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--table", default=None)
    p.add_argument("--save", action="store_true", help="store the report in the history database")
    p.add_argument("--force", action="store_true", help="run even when over the enumeration budget")
    p.add_argument("--corrupt", action="store_true", help="perturb one expected coefficient")
    p.add_argument("--light", action="store_true", help="smaller grids where a claim has them")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("claims", help="list registered claims")
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("biject", help="map a partition to its (mu, nu) pair, or back with --inverse")
    p.add_argument("partition", help='e.g. "3[a1b0]+2[a0b0]"; with --inverse this is mu')
    p.add_argument("--nu", default=None, help="classical partition for --inverse, e.g. 4+1+1")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--table", default="mp")
    p.add_argument("--trace", action="store_true", help="show (mu, nu) after every step")
    p.set_defaults(func=cmd_biject)

    p = sub.add_parser("table", help="show, validate, save or list delta/gamma tables")
    p.add_argument("action", choices=["show", "validate", "save", "list"])
    p.add_argument("source", nargs="?", default="mp")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--name", default=None, help="name to save the table under")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("matrix", help="print a minimal-difference matrix")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--metric", choices=[m.value for m in Metric], default=Metric.DELTA.value)
    p.add_argument("--variant", choices=[v.value for v in Variant], default=None)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("history", help="stored verification reports")
    p.add_argument("action", nargs="?", choices=["list", "stats", "export", "clear"], default="list")
    p.add_argument("--claim", default=None)
    p.add_argument("--limit", type=int, default=20)
    p.add_argument("--output", default=None, help="CSV path for export")
    p.set_defaults(func=cmd_history)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS

    level = (args.log_level or Settings.from_env().log_level).upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PartitionsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
