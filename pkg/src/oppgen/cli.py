"""Batch-mode command line driver.

Every subcommand is a thin wrapper over the engine; nothing here holds
pipeline logic. Exit codes: 0 success, 1 user error (bad input, unknown
ids, usage), 2 internal or provider failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .config import EngineConfig, load_config
from .engine import ProjectEngine, deterministic_clock
from .errors import USER_ERROR_CODES, OppgenError, UnknownProject
from .evaluation import (
    compare_rating_sets,
    compare_three_groups,
    read_ratings_csv,
    write_ratings_csv,
)
from .generation import GenerationRequest
from .store import ProjectStore


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage problems exit 1, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="oppgen", description="Opportunity discovery and generation pipeline")
    parser.add_argument("--store", default="./oppgen-projects", help="project store directory")
    parser.add_argument("--config", default=None, help="JSON config file for new projects")
    parser.add_argument("--seed", type=int, default=None, help="override config seed")
    parser.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="create/extend a project from files and process them")
    p.add_argument("--project", required=True)
    p.add_argument("files", nargs="+")

    p = sub.add_parser("discover", help="discover opportunity spaces at all granularities")
    p.add_argument("--project", required=True)

    p = sub.add_parser("describe", help="generate labels and descriptions for spaces")
    p.add_argument("--project", required=True)
    p.add_argument("--granularity", choices=("broad", "typical", "narrow"), default=None)

    p = sub.add_parser("generate", help="generate ten opportunities from a space")
    p.add_argument("--project", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--kind", required=True, choices=("policy", "business", "technical_design"))
    p.add_argument("--novelty", required=True)
    p.add_argument("--qualities", default="", help="comma-separated, up to three")
    p.add_argument("--custom", default="", help="custom steering text")

    p = sub.add_parser("pivot", help="generate ten variations of an opportunity")
    p.add_argument("--project", required=True)
    p.add_argument("--opportunity", required=True)
    p.add_argument("--spaces", required=True, help="one or two space ids, comma-separated")
    p.add_argument("--kind", required=True, choices=("policy", "business", "technical_design"))
    p.add_argument("--novelty", required=True)
    p.add_argument("--qualities", default="")
    p.add_argument("--custom", default="")

    p = sub.add_parser("rate", help="rate opportunities for novelty and usefulness")
    p.add_argument("--project", required=True)
    p.add_argument("--challenge", required=True)
    p.add_argument("--kind", required=True, choices=("policy", "business", "technical_design"))
    p.add_argument("--ids", default="", help="comma-separated opportunity ids")
    p.add_argument("--depth", type=int, default=None, help="filter by pivot depth")
    p.add_argument("--space", default=None, help="filter by source space")
    p.add_argument("--out", default=None, help="also write ratings to this CSV")

    p = sub.add_parser("compare", help="compare rating CSVs (two sets or three groups)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", default=None)
    p.add_argument("--metric", choices=("novelty", "usefulness", "both"), default="both")

    p = sub.add_parser("baseline", help="run the three-space baseline protocol")
    p.add_argument("--project", required=True)
    p.add_argument("--spaces", required=True, help="exactly three space ids, comma-separated")
    p.add_argument("--custom", required=True)

    p = sub.add_parser("export", help="export a project as a zip archive")
    p.add_argument("--project", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("import", help="import a project archive")
    p.add_argument("--archive", required=True)
    p.add_argument("--as-id", default=None, dest="as_id")

    return parser


def _emit(args, payload: dict | list, table_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _engine(args) -> ProjectEngine:
    store = ProjectStore(args.store)
    if args.seed is not None:
        # seeded runs trade real timestamps for byte-reproducible output
        return ProjectEngine(store, clock=deterministic_clock(args.seed))
    return ProjectEngine(store)


def _project_config(args) -> EngineConfig:
    config = load_config(args.config)
    if args.seed is not None:
        config.seed = args.seed
    return config.validate()


def _split_csv(raw: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in raw.split(",") if x.strip())


def _cmd_ingest(args) -> None:
    engine = _engine(args)
    try:
        engine.store.get_project(args.project)
    except UnknownProject:
        engine.create_project(args.project, _project_config(args))
    uploaded = []
    for file_path in args.files:
        data = Path(file_path).read_bytes()
        uploaded.append(engine.upload_asset(args.project, Path(file_path).name, data))
    summary = engine.process_assets(args.project)
    _emit(
        args,
        {"uploaded": uploaded, "summary": summary},
        [f"{a['asset_id']}  {a['media_kind']:11s}  {a['title']}" for a in uploaded]
        + [f"chunks: {summary['total_chunks']}"],
    )


def _cmd_discover(args) -> None:
    summary = _engine(args).discover(args.project)
    lines = [
        f"{g:8s}  {info['spaces']:3d} spaces"
        + ("  (unreachable)" if info["unreachable"] else "")
        for g, info in summary.items()
    ]
    _emit(args, summary, lines)


def _cmd_describe(args) -> None:
    summary = _engine(args).describe_spaces(args.project, args.granularity)
    _emit(args, summary, [f"described {summary['described']} spaces"])


def _batch_lines(batch: dict) -> list[str]:
    return [
        f"batch {batch['batch_id']}  (retries: {batch['retry_count']})"
    ] + [
        f"  {o['opportunity_id']}  d{o['pivot_depth']}  {o['title']}"
        for o in batch["opportunities"]
    ]


def _cmd_generate(args) -> None:
    request = GenerationRequest(
        kind=args.kind,
        space_ids=(args.space,),
        novelty_level=args.novelty,
        qualities=_split_csv(args.qualities),
        custom_text=args.custom,
    )
    batch = _engine(args).generate(args.project, request)
    _emit(args, batch, _batch_lines(batch))


def _cmd_pivot(args) -> None:
    spaces = _split_csv(args.spaces)
    request = GenerationRequest(
        kind=args.kind,
        space_ids=spaces if len(spaces) == 2 else (spaces[0],),
        novelty_level=args.novelty,
        qualities=_split_csv(args.qualities),
        custom_text=args.custom,
    )
    batch = _engine(args).pivot(args.project, args.opportunity, request)
    _emit(args, batch, _batch_lines(batch))


def _cmd_rate(args) -> None:
    engine = _engine(args)
    if args.ids:
        ids = list(_split_csv(args.ids))
    else:
        opportunities = engine.store.list_opportunities(
            args.project, kind=args.kind, depth=args.depth, space_id=args.space
        )
        ids = [o.opportunity_id for o in opportunities]
    record = engine.rate(args.project, ids, args.challenge, args.kind)
    if args.out:
        from .evaluation import RatingPair

        write_ratings_csv(args.out, [RatingPair.from_dict(r) for r in record["ratings"]])
    lines = [f"rated {len(record['ratings'])} opportunities as {record['rater_tag']}"]
    if args.out:
        lines.append(f"wrote {args.out}")
    _emit(args, record, lines)


def _report_lines(report: dict) -> list[str]:
    if report["test"] == "mann_whitney":
        return [
            f"{report['metric']:11s}  U={report['statistic']:.1f}  z={report['z']:.4f}  "
            f"p(two-sided)={report['p_value']:.5f}  p(one-sided)={report['p_one_sided']:.5f}"
        ]
    return [
        f"{report['metric']:11s}  H={report['statistic']:.4f}  df={report['df']}  "
        f"p={report['p_value']:.5f}"
    ]


def _cmd_compare(args) -> None:
    a = read_ratings_csv(args.a)
    b = read_ratings_csv(args.b)
    reports = []
    if args.c:
        c = read_ratings_csv(args.c)
        for metric in ("novelty", "usefulness"):
            if args.metric not in ("both", metric):
                continue
            groups = [
                [getattr(r, metric) for r in group] for group in (a, b, c)
            ]
            reports.append(compare_three_groups(groups, metric).to_dict())
    else:
        for report in compare_rating_sets(
            [r.novelty for r in a],
            [r.usefulness for r in a],
            [r.novelty for r in b],
            [r.usefulness for r in b],
        ):
            if args.metric in ("both", report.metric):
                reports.append(report.to_dict())
    lines: list[str] = []
    for report in reports:
        lines.extend(_report_lines(report))
    _emit(args, {"reports": reports}, lines)


def _cmd_baseline(args) -> None:
    spaces = _split_csv(args.spaces)
    manifest = _engine(args).run_baseline_protocol(args.project, spaces, args.custom)
    lines = [
        f"baseline {manifest['baseline_id']}: {manifest['completed_runs']}/9 runs, "
        f"{manifest['opportunity_count']} opportunities"
    ] + [
        f"  {r['space_id']}  {r['kind']:17s}  {r['status']}"
        for r in manifest["runs"]
    ]
    _emit(args, manifest, lines)


def _cmd_export(args) -> None:
    payload = _engine(args).export(args.project)
    Path(args.out).write_bytes(payload)
    _emit(args, {"written": args.out, "bytes": len(payload)}, [f"wrote {args.out}"])


def _cmd_import(args) -> None:
    data = Path(args.archive).read_bytes()
    project_id = _engine(args).import_archive(data, args.as_id)
    _emit(args, {"project_id": project_id}, [f"imported as {project_id}"])


_COMMANDS = {
    "ingest": _cmd_ingest,
    "discover": _cmd_discover,
    "describe": _cmd_describe,
    "generate": _cmd_generate,
    "pivot": _cmd_pivot,
    "rate": _cmd_rate,
    "compare": _cmd_compare,
    "baseline": _cmd_baseline,
    "export": _cmd_export,
    "import": _cmd_import,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args)
        return 0
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OppgenError as exc:
        print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1 if exc.code in USER_ERROR_CODES else 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # provider/internal failures
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
