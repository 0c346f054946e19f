"""Command-line entry points.

    claimcourt run-case --claim "..." [--store DIR]
    claimcourt serve --store DIR [--host H] [--port P]
    claimcourt bench --task hearsay --data rows.tsv [--out DIR]
    claimcourt ablate --task hearsay --data rows.tsv --grid cr-uae|beta
    claimcourt record-fixtures --claim "..." --fixtures DIR
    claimcourt dump-graph --case-id ID --store DIR [--out FILE]

Configuration comes from --config, then the CLAIMCOURT_CONFIG environment
variable, then ./claimcourt.json, then built-in defaults. A handful of
flags override the file for quick experiments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from claimcourt.agents import AgentError
from claimcourt.backends import BackendError
from claimcourt.bench import (
    TASKS,
    BenchError,
    MetricsReport,
    beta_grid,
    cr_uae_grid,
    load_task,
    run_benchmark,
)
from claimcourt.canonical import canonical_json
from claimcourt.contestation import ContestationError
from claimcourt.pipeline import ConfigError, PipelineConfig, PipelineError, run_case
from claimcourt.qbaf import GraphError, Stance
from claimcourt.retrieval import RetrievalError
from claimcourt.store import CaseStore, StoreError

DEFAULT_CONFIG_FILE = "claimcourt.json"
CONFIG_ENV_VAR = "CLAIMCOURT_CONFIG"


def discover_config(explicit: str | None) -> PipelineConfig:
    path = explicit or os.environ.get(CONFIG_ENV_VAR)
    if path:
        target = Path(path)
        if not target.exists():
            raise ConfigError(f"config file not found: {target}")
        return PipelineConfig.from_doc(json.loads(target.read_text(encoding="utf-8")))
    fallback = Path(DEFAULT_CONFIG_FILE)
    if fallback.exists():
        return PipelineConfig.from_doc(json.loads(fallback.read_text(encoding="utf-8")))
    return PipelineConfig()


def _apply_overrides(config: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    if getattr(args, "relation_mode", None):
        config = replace(config, relation_mode=args.relation_mode)
    if getattr(args, "no_clash_resolution", False):
        config = replace(config, clash_resolution_enabled=False)
    if getattr(args, "no_uae", False):
        config = replace(config, decision=replace(config.decision, uae_enabled=False))
    if getattr(args, "corpus_dir", None):
        config = replace(config, corpus_dir=args.corpus_dir)
    return config


# ---------------------------------------------------------------- handlers


def _cmd_run_case(args: argparse.Namespace) -> int:
    config = _apply_overrides(discover_config(args.config), args)
    store = CaseStore(args.store) if args.store else None
    record = run_case(
        args.claim,
        config,
        task_id=args.task_id,
        store=store,
    )
    if args.json:
        print(canonical_json(record.to_doc()))
        return 0
    decision = record.decision
    supports = sum(1 for a in record.graph.arguments if a.stance is Stance.SUPPORT)
    attacks = len(record.graph.arguments) - supports
    print(f"case {record.case_id}")
    print(
        f"decision: {decision.answer.value}"
        f" (claim strength {record.strengths.claim_strength():.4f},"
        f" decided by {decision.decided_by.value},"
        f" {'escalated' if decision.escalated else 'not escalated'})"
    )
    print(f"arguments: {supports} support / {attacks} attack;"
          f" edges: {len(record.graph.edges)}")
    if store is not None:
        print(f"stored under {store.case_path(record.case_id)}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from claimcourt.service import create_app

    config = _apply_overrides(discover_config(args.config), args)
    app = create_app(CaseStore(args.store), config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _print_reports(reports: Sequence[MetricsReport]) -> None:
    width = max(len(r.label or "-") for r in reports)
    header = f"{'grid point'.ljust(width)}  acc     macro-F1  abstained"
    print(header)
    print("-" * len(header))
    for r in reports:
        print(
            f"{(r.label or '-').ljust(width)}  "
            f"{r.accuracy:<7.4f} {r.macro_f1:<9.4f} {r.n_abstained}"
        )


def _cmd_bench(args: argparse.Namespace) -> int:
    config = _apply_overrides(discover_config(args.config), args)
    spec = TASKS[args.task]
    examples = load_task(args.data, spec)
    if args.limit:
        examples = examples[: args.limit]
    if not examples:
        print("no examples to evaluate", file=sys.stderr)
        return 1
    reports = run_benchmark(examples, spec, [("default", config)], out_dir=args.out)
    _print_reports(reports)
    return 0


def _cmd_ablate(args: argparse.Namespace) -> int:
    config = _apply_overrides(discover_config(args.config), args)
    spec = TASKS[args.task]
    examples = load_task(args.data, spec)
    if args.limit:
        examples = examples[: args.limit]
    if not examples:
        print("no examples to evaluate", file=sys.stderr)
        return 1
    grid = cr_uae_grid(config) if args.grid == "cr-uae" else beta_grid(config)
    reports = run_benchmark(examples, spec, grid, out_dir=args.out)
    _print_reports(reports)
    return 0


def _cmd_record_fixtures(args: argparse.Namespace) -> int:
    config = discover_config(args.config)
    wrapped: dict[str, Any] = {
        name: {"kind": "record", "inner": dict(doc), "fixtures_dir": args.fixtures}
        for name, doc in config.backends.items()
    }
    record = run_case(
        args.claim,
        replace(config, backends=wrapped),
        task_id=args.task_id,
    )
    count = len(list(Path(args.fixtures).glob("*.json")))
    print(f"case {record.case_id}: {count} fixture(s) under {args.fixtures}")
    return 0


def _cmd_dump_graph(args: argparse.Namespace) -> int:
    store = CaseStore(args.store)
    record = store.load_case(args.case_id)
    doc = {"graph": record.graph.to_doc(), "strengths": record.strengths.to_doc()}
    text = canonical_json(doc)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text)
    return 0


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--config",
        help=f"config JSON path (default: ${CONFIG_ENV_VAR}, then ./{DEFAULT_CONFIG_FILE})",
    )

    overrides = argparse.ArgumentParser(add_help=False)
    overrides.add_argument(
        "--relation-mode", choices=("model", "heuristic"), help="override relation stage mode"
    )
    overrides.add_argument(
        "--no-clash-resolution", action="store_true", help="skip the clash arena"
    )
    overrides.add_argument(
        "--no-uae", action="store_true", help="disable borderline escalation to the judge"
    )

    parser = argparse.ArgumentParser(
        prog="claimcourt",
        description="Argue, score, decide, and contest legal claims.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "run-case", parents=[shared, overrides], help="run one claim through the pipeline"
    )
    p.add_argument("--claim", required=True, help="the claim to adjudicate")
    p.add_argument("--task-id", default="case", help="task identifier for the record")
    p.add_argument("--corpus-dir", help="directory of .txt/.md evidence documents")
    p.add_argument("--store", help="persist the case record under this store root")
    p.add_argument("--json", action="store_true", help="print the full case record as JSON")
    p.set_defaults(handler=_cmd_run_case)

    p = sub.add_parser("serve", parents=[shared, overrides], help="start the HTTP service")
    p.add_argument("--store", required=True, help="store root for cases and sessions")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8734)
    p.set_defaults(handler=_cmd_serve)

    p = sub.add_parser(
        "bench", parents=[shared, overrides], help="evaluate one config on a labeled task"
    )
    p.add_argument("--task", required=True, choices=sorted(TASKS))
    p.add_argument("--data", required=True, help="TSV (text<TAB>label) or JSON examples")
    p.add_argument("--out", help="directory for per-example predictions and metrics")
    p.add_argument("--limit", type=int, help="evaluate only the first N examples")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser(
        "ablate", parents=[shared, overrides], help="sweep a component grid on a labeled task"
    )
    p.add_argument("--task", required=True, choices=sorted(TASKS))
    p.add_argument("--data", required=True)
    p.add_argument("--grid", required=True, choices=("cr-uae", "beta"))
    p.add_argument("--out", help="directory for per-example predictions and metrics")
    p.add_argument("--limit", type=int, help="evaluate only the first N examples")
    p.set_defaults(handler=_cmd_ablate)

    p = sub.add_parser(
        "record-fixtures",
        parents=[shared],
        help="run a case while recording every backend exchange",
    )
    p.add_argument("--claim", required=True)
    p.add_argument("--task-id", default="case")
    p.add_argument("--fixtures", required=True, help="directory to write fixtures into")
    p.set_defaults(handler=_cmd_record_fixtures)

    p = sub.add_parser(
        "dump-graph", parents=[shared], help="print a stored case's graph and strengths"
    )
    p.add_argument("--case-id", required=True)
    p.add_argument("--store", required=True)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(handler=_cmd_dump_graph)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except (
        AgentError,
        BackendError,
        BenchError,
        ConfigError,
        ContestationError,
        GraphError,
        PipelineError,
        RetrievalError,
        StoreError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
