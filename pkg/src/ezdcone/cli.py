"""Command-line entry point: ``ezdcone {check-ezd,verify,series,tor} --input JOB``."""

import argparse
import json
import sys

from .errors import EzdError
from .jobs import EXIT_CODES, build_job, load_job, run_job


def make_parser():
    p = argparse.ArgumentParser(prog="ezdcone", description=__doc__)
    p.add_argument("command", choices=["check-ezd", "verify", "series", "tor"])
    p.add_argument("--input", required=True, help="job file (JSON), or - for stdin")
    p.add_argument("--cap", type=int, default=None, help="resolution degree cap (default 8)")
    p.add_argument("--seed", type=int, default=None, help="seed for representative choices")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    p.add_argument("--tasks", default=None, help="comma-separated task ids")
    return p


def format_text(report):
    lines = [f"{report['command']}: {report['status']} (cap {report['cap']}, seed {report['seed']})"]
    for t in report["tasks"]:
        lines.append(f"[{t['id']}]")
        for r in t["results"]:
            window = f" window<={r['window']}" if "window" in r and r["window"] >= 0 else ""
            lines.append(f"  {r['check']:<12} {r['status']}{window}")
            if r.get("reason"):
                lines.append(f"    {r['reason']}")
            for k, v in sorted(r.get("details", {}).items()):
                lines.append(f"    {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines)


def format_machine(report):
    return json.dumps(report, sort_keys=True, indent=2)


def main(argv=None):
    args = make_parser().parse_args(argv)
    fmt = format_machine if args.format == "machine" else format_text
    try:
        if args.input == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(args.input, "rb") as fh:
                raw = fh.read()
        job = build_job(load_job(raw), args.cap, args.seed)
        tasks = args.tasks.split(",") if args.tasks else None
        report = run_job(job, args.command, tasks)
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_CODES["input-error"]
    except EzdError as e:
        report = {"command": args.command, "status": "input-error", "cap": args.cap,
                  "seed": args.seed, "tasks": [],
                  "error": {"kind": e.kind, "message": str(e)}}
        if e.kind == "theorem-violation":
            report["status"] = "theorem-violation"
        print(fmt(report) if args.format == "machine" else f"{e.kind} error: {e}")
        return EXIT_CODES[report["status"]]
    print(fmt(report))
    return EXIT_CODES[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
