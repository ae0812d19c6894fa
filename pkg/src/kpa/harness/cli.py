"""kpa-harness: run scripted scenarios against a knowledge server."""

from __future__ import annotations

import argparse
import json
import sys

from .scenarios import SCENARIOS, apply_setup, run_scenario


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="kpa-harness", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run one scenario and print its transcript")
    run_parser.add_argument("--scenario", required=True, choices=sorted(SCENARIOS))
    run_parser.add_argument("--server", required=True, help="base URL of the knowledge API")
    run_parser.add_argument("--token", required=True, help="bearer token")
    run_parser.add_argument(
        "--setup-ticks",
        type=int,
        default=0,
        help="advance a --manual-tick server this many ticks first",
    )
    run_parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=JSON",
        help="override a scenario parameter, value parsed as JSON",
    )
    run_parser.add_argument(
        "--llm-provider",
        help="external completion provider command (opt-in; scripted mode is the default)",
    )

    list_parser = sub.add_parser("list", help="list scenario ids")

    args = parser.parse_args(argv)
    if args.command == "list":
        for scenario in SCENARIOS.values():
            print(f"{scenario.id}\t{scenario.description}")
        return 0

    params = {}
    for override in args.param:
        key, _, raw = override.partition("=")
        try:
            params[key] = json.loads(raw)
        except json.JSONDecodeError:
            params[key] = raw

    if args.setup_ticks:
        apply_setup(args.server, args.token, args.setup_ticks)
    transcript = run_scenario(args.scenario, args.server, args.token, params)
    json.dump(transcript.to_dict(), sys.stdout, indent=2, sort_keys=True)
    print()
    return 0 if transcript.verdict_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
