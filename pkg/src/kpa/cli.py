"""Command line entry points: headless simulation runs and the API server."""

from __future__ import annotations

import argparse
import json
import sys

from .config import SimConfig
from .ran.sim import Simulator
from .service.app import serve
from .service.auth import AuthTable
from .service.context import ServiceConfig


def add_sim_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="simulation config file (JSON)")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--ues", type=int, help="number of UEs")
    parser.add_argument("--gnbs", type=int, help="number of auto-placed gNBs")
    parser.add_argument("--cells-per-gnb", type=int, help="cells per gNB")
    parser.add_argument("--tick-ms", type=int, help="tick duration in milliseconds")


def build_sim_config(args: argparse.Namespace) -> SimConfig:
    cfg = SimConfig.from_file(args.config) if args.config else SimConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.ues is not None:
        cfg.ue_count = args.ues
    if args.gnbs is not None:
        cfg.gnbs = args.gnbs
    if getattr(args, "cells_per_gnb", None) is not None:
        cfg.cells_per_gnb = args.cells_per_gnb
    if getattr(args, "tick_ms", None) is not None:
        cfg.tick_duration_ms = args.tick_ms
    cfg.validate()
    return cfg


def load_scenario(sim: Simulator, path: str) -> None:
    """Scenario files are JSONL commands: {"at_tick": t, "op": ..., ...}."""
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            tick = int(record.pop("at_tick"))
            sim.add_scheduled(tick, record)


def run_headless(args: argparse.Namespace) -> int:
    cfg = build_sim_config(args)
    sim = Simulator(cfg)
    if args.scenario:
        load_scenario(sim, args.scenario)
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for _ in range(args.ticks):
            for event in sim.step():
                out.write(json.dumps(event.to_record(), sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def run_serve(args: argparse.Namespace) -> int:
    sim_config = build_sim_config(args)
    auth = AuthTable.from_file(args.auth_table) if args.auth_table else AuthTable()
    service_config = ServiceConfig(
        manual_tick=args.manual_tick,
        persist_dir=args.persist,
        auth=auth,
    )
    serve(sim_config, service_config, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="kpa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim_parser = sub.add_parser("sim", help="headless simulation run, events to stdout")
    add_sim_flags(sim_parser)
    sim_parser.add_argument("--ticks", type=int, default=100, help="ticks to run")
    sim_parser.add_argument("--scenario", help="scenario command file (JSONL)")
    sim_parser.add_argument("--out", help="event log path (default stdout)")
    sim_parser.set_defaults(func=run_headless)

    serve_parser = sub.add_parser("serve", help="run the knowledge API server")
    add_sim_flags(serve_parser)
    serve_parser.add_argument("--host", default="127.0.0.1")
    serve_parser.add_argument("--port", type=int, default=8000)
    serve_parser.add_argument(
        "--manual-tick",
        action="store_true",
        help="disable the clock; ticks advance only via POST /sim/tick",
    )
    serve_parser.add_argument("--persist", help="directory for append-only persistence")
    serve_parser.add_argument("--auth-table", help="principal table file (JSON)")
    serve_parser.set_defaults(func=run_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
