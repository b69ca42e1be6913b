"""Command-line reports over the catalogs.

Subcommands:

* ``validate``          load and strictly check the catalogs;
* ``enumerate MODE``    full records for one mode (or ``emb`` for all
                        three numeric clauses);
* ``betti-list MODE``   the distinct (b2, b3) pairs for one mode;
* ``table1``            per-b2 summary of the numeric-clause enumeration:
                        pair count and sorted b3 values for b2 = 2..18;
* ``crosscheck``        run every internal identity: the fixed-curve
                        recomputation for all involution classes and the
                        closed-form-vs-gluing identity for all records.

Data rows go to stdout, diagnostics to stderr.  Exit status: 0 success,
1 validation/identity failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Sequence

from .building_blocks import euler_crosscheck
from .catalog import (
    FANO_FILENAME,
    JOYCE_FILENAME,
    NIKULIN_FILENAME,
    CatalogError,
    FanoCatalog,
    JoyceCatalog,
    NikulinCatalog,
    default_data_dir,
    load_fano,
    load_joyce,
    load_nikulin,
)
from .enumerator import (
    EMB_A,
    EMB_B,
    EMB_C,
    G2Record,
    compare_joyce,
    count_matched_pairs,
    distinct_betti,
    enumerate_emb,
    enumerate_large_rank,
    enumerate_mirror,
    enumerate_seq,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

_MODE_CHOICES = ("emb", "emb_a", "emb_b", "emb_c", "mirror", "seq", "large_rank")


class _IOFailure(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nikulin", metavar="PATH", help="involution triple catalog")
    common.add_argument("--fano", metavar="PATH", help="Fano family catalog")
    common.add_argument("--joyce", metavar="PATH", help="comparison Betti-pair catalog")
    common.add_argument(
        "--format",
        choices=("csv", "json", "text"),
        default="text",
        help="output format (default: text)",
    )

    parser = argparse.ArgumentParser(
        prog="g2sum",
        description="Betti-number enumeration for twisted-connected-sum 7-manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check catalog invariants")
    p_enum = sub.add_parser("enumerate", parents=[common], help="emit full records")
    p_enum.add_argument("mode", type=_normalize_mode, help="|".join(_MODE_CHOICES))
    p_list = sub.add_parser(
        "betti-list", parents=[common], help="emit distinct (b2, b3) pairs"
    )
    p_list.add_argument("mode", type=_normalize_mode, help="|".join(_MODE_CHOICES))
    sub.add_parser("table1", parents=[common], help="per-b2 summary of emb records")
    sub.add_parser("crosscheck", parents=[common], help="run all internal identities")
    return parser


def _normalize_mode(raw: str) -> str:
    mode = raw.strip().lower().replace("-", "_")
    if mode not in _MODE_CHOICES:
        raise argparse.ArgumentTypeError(
            f"unknown mode {raw!r} (choose from {', '.join(_MODE_CHOICES)})"
        )
    return mode


def _resolve(explicit: str | None, filename: str) -> Path:
    if explicit:
        return Path(explicit)
    return default_data_dir() / filename


def _load_catalogs(
    args: argparse.Namespace,
) -> tuple[NikulinCatalog, FanoCatalog, JoyceCatalog | None]:
    nik_path = _resolve(args.nikulin, NIKULIN_FILENAME)
    fan_path = _resolve(args.fano, FANO_FILENAME)
    if not nik_path.is_file():
        raise _IOFailure(f"catalog not found: {nik_path}")
    if not fan_path.is_file():
        raise _IOFailure(f"catalog not found: {fan_path}")
    nikulin = load_nikulin(nik_path)
    fano = load_fano(fan_path)
    if args.joyce:
        joyce_path = Path(args.joyce)
        if not joyce_path.is_file():
            raise _IOFailure(f"catalog not found: {joyce_path}")
        joyce = load_joyce(joyce_path)
    else:
        joyce = load_joyce(default_data_dir() / JOYCE_FILENAME)
    return nikulin, fano, joyce


def _banner(
    nikulin: NikulinCatalog, fano: FanoCatalog, joyce: JoyceCatalog | None
) -> None:
    nik_status = "complete" if nikulin.complete else "INCOMPLETE"
    fan_status = "rank-1 complete" if fano.complete_rank_1 else "rank-1 INCOMPLETE"
    if joyce is None:
        joyce_note = "joyce absent (comparison reports skipped)"
    else:
        joyce_note = f"joyce {len(joyce)} rows ({'complete' if joyce.complete else 'INCOMPLETE'})"
    print(
        f"# data: nikulin {len(nikulin)} rows ({nik_status}); "
        f"fano {len(fano)} rows ({fan_status}); {joyce_note}",
        file=sys.stderr,
    )


def _write_rows(rows: list[dict], fieldnames: Sequence[str], fmt: str) -> None:
    if fmt == "json":
        json.dump({"rows": rows}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    flat = [
        {k: " ".join(map(str, v)) if isinstance(v, (list, tuple)) else v for k, v in row.items()}
        for row in rows
    ]
    if fmt == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=list(fieldnames))
        writer.writeheader()
        writer.writerows(flat)
        return
    widths = {f: max([len(f)] + [len(str(r.get(f, ""))) for r in flat]) for f in fieldnames}
    print("  ".join(f.ljust(widths[f]) for f in fieldnames))
    for row in flat:
        print("  ".join(str(row.get(f, "")).ljust(widths[f]) for f in fieldnames))


def _record_rows(records: Sequence[G2Record]) -> list[dict]:
    return [
        {
            "b2": r.b2,
            "b3": r.b3,
            "mode": r.mode,
            "n": r.n,
            "condition": r.certificate.condition,
            "block1": r.blocks[0].label,
            "block2": r.blocks[1].label,
            "simply_connected": r.simply_connected,
            "flags": list(r.flags),
        }
        for r in records
    ]


def _mode_records(
    mode: str, nikulin: NikulinCatalog, fano: FanoCatalog
) -> list[G2Record]:
    if mode == "mirror":
        return enumerate_mirror(nikulin)
    if mode == "seq":
        return enumerate_seq(fano, nikulin)
    if mode == "large_rank":
        return enumerate_large_rank(fano, nikulin)
    records = enumerate_emb(fano, nikulin)
    if mode == "emb":
        return records
    wanted = {"emb_a": EMB_A, "emb_b": EMB_B, "emb_c": EMB_C}[mode]
    return [r for r in records if r.mode == wanted]


def _cmd_validate(
    args: argparse.Namespace,
    nikulin: NikulinCatalog,
    fano: FanoCatalog,
    joyce: JoyceCatalog | None,
) -> int:
    rows = [
        {
            "catalog": "nikulin",
            "rows": len(nikulin),
            "status": "complete" if nikulin.complete else "incomplete",
        },
        {
            "catalog": "fano",
            "rows": len(fano),
            "status": "rank-1 complete" if fano.complete_rank_1 else "rank-1 incomplete",
        },
        {
            "catalog": "joyce",
            "rows": 0 if joyce is None else len(joyce),
            "status": "absent"
            if joyce is None
            else ("complete" if joyce.complete else "incomplete"),
        },
    ]
    _write_rows(rows, ("catalog", "rows", "status"), args.format)
    return EXIT_OK


def _cmd_enumerate(
    args: argparse.Namespace, nikulin: NikulinCatalog, fano: FanoCatalog
) -> int:
    records = _mode_records(args.mode, nikulin, fano)
    fields = (
        "b2",
        "b3",
        "mode",
        "n",
        "condition",
        "block1",
        "block2",
        "simply_connected",
        "flags",
    )
    _write_rows(_record_rows(records), fields, args.format)
    return EXIT_OK


def _cmd_betti_list(
    args: argparse.Namespace, nikulin: NikulinCatalog, fano: FanoCatalog
) -> int:
    records = _mode_records(args.mode, nikulin, fano)
    rows = [{"b2": b2, "b3": b3} for b2, b3 in distinct_betti(records)]
    _write_rows(rows, ("b2", "b3"), args.format)
    return EXIT_OK


def _cmd_table1(
    args: argparse.Namespace, nikulin: NikulinCatalog, fano: FanoCatalog
) -> int:
    records = enumerate_emb(fano, nikulin)
    rows = []
    for b2 in range(2, 19, 2):
        values = sorted({r.b3 for r in records if r.b2 == b2})
        rows.append({"b2": b2, "count": len(values), "b3_values": values})
    _write_rows(rows, ("b2", "count", "b3_values"), args.format)
    return EXIT_OK


def _cmd_crosscheck(
    args: argparse.Namespace,
    nikulin: NikulinCatalog,
    fano: FanoCatalog,
    joyce: JoyceCatalog | None,
) -> int:
    failures: list[str] = []
    checked = 0
    for t in nikulin:
        if t.key == (10, 10, 0):
            continue
        checked += 1
        result = euler_crosscheck(t)
        if not result.ok:
            failures.append(
                f"fixed-curve recomputation disagrees for {t.key}: "
                f"h11 {result.h11} vs b2 {result.b2_bar}, h12 {result.h12} vs b3/2"
            )
    rows = [
        {
            "check": "euler_crosscheck",
            "items": checked,
            "status": "FAIL" if failures else "OK",
        }
    ]

    emb_records = enumerate_emb(fano, nikulin)
    all_records = (
        list(emb_records)
        + enumerate_mirror(nikulin)
        + enumerate_seq(fano, nikulin)
        + enumerate_large_rank(fano, nikulin)
    )
    rows.append({"check": "closed_vs_glue", "items": len(all_records), "status": "OK"})

    counts = count_matched_pairs(emb_records)
    rows.append(
        {
            "check": "pair_totals",
            "items": counts.unordered_with_self,
            "status": f"a={counts.clause_a} b={counts.clause_b} c={counts.clause_c} "
            f"diagonal={counts.diagonal} ordered={counts.ordered} "
            f"no_self={counts.unordered_no_self}",
        }
    )
    rows.append(
        {
            "check": "distinct_betti",
            "items": len(distinct_betti(all_records)),
            "status": f"emb={len(distinct_betti(emb_records))}",
        }
    )
    comparison = compare_joyce(emb_records, joyce)
    if comparison is None:
        rows.append({"check": "joyce_comparison", "items": 0, "status": "NOT_AVAILABLE"})
    else:
        rows.append(
            {
                "check": "joyce_comparison",
                "items": len(joyce) if joyce else 0,
                "status": f"overlap={comparison.overlap_count} new={comparison.new_count} "
                f"mod4_violations={comparison.mod4_violations}",
            }
        )

    _write_rows(rows, ("check", "items", "status"), args.format)
    for failure in failures:
        print(f"crosscheck failure: {failure}", file=sys.stderr)
    return EXIT_VALIDATION if failures else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        nikulin, fano, joyce = _load_catalogs(args)
    except _IOFailure as exc:
        print(f"g2sum: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"g2sum: {exc}", file=sys.stderr)
        return EXIT_IO
    except CatalogError as exc:
        print(f"g2sum: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _banner(nikulin, fano, joyce)
    try:
        if args.command == "validate":
            return _cmd_validate(args, nikulin, fano, joyce)
        if args.command == "enumerate":
            return _cmd_enumerate(args, nikulin, fano)
        if args.command == "betti-list":
            return _cmd_betti_list(args, nikulin, fano)
        if args.command == "table1":
            return _cmd_table1(args, nikulin, fano)
        if args.command == "crosscheck":
            return _cmd_crosscheck(args, nikulin, fano, joyce)
    except (CatalogError, AssertionError) as exc:
        print(f"g2sum: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
