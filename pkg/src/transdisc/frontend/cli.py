"""``transdisc`` command line."""
from __future__ import annotations

import argparse
import sys

from ..errors import BudgetExhausted, HypothesisError, ParseError, TransdiscError
from .commands import COMMANDS, RunOptions, run
from .jobspec import JobSpec, parse_job
from .report import render_json, render_text

EXIT_OK, EXIT_HYPOTHESIS, EXIT_BUDGET, EXIT_PARSE = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transdisc", description="Discriminant of transversal type for Z in X.")
    p.add_argument("--input", metavar="FILE", help="job file (use - for stdin)")
    p.add_argument("--command", choices=COMMANDS, help="override the job's COMMAND")
    p.add_argument("--order", choices=("lex", "grevlex", "wgrevlex"), help="monomial order for gb")
    p.add_argument("--trunc", type=int, metavar="D", help="truncation cap for presentation determinants")
    p.add_argument("--budget", type=int, metavar="N", help="S-pair budget per Groebner basis")
    p.add_argument("--case", help="corpus: run only cases whose name contains this")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--verbose", action="store_true", help="include intermediate data")
    return p


def _error_report(command, kind, exc, as_json):
    import json

    if as_json:
        body = {"command": command, "error": kind, "message": str(exc)}
        if isinstance(exc, HypothesisError):
            body["hypothesis"] = exc.hypothesis
            body["hypotheses"] = [{"name": exc.hypothesis, "status": "violated"}]
        return json.dumps(body, indent=2, sort_keys=True) + "\n"
    if isinstance(exc, HypothesisError):
        return f"command: {command}\nhypothesis violated: {exc.hypothesis}\n  {exc}\n"
    return f"command: {command}\n{kind}: {exc}\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    job = JobSpec()
    try:
        if args.input:
            text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
            job = parse_job(text)
        if args.command:
            job.command = args.command
        if args.case:
            job.options["case"] = args.case
        if job.command is None:
            raise ParseError("no command: give --command or a COMMAND section", None, "")
        rep = run(job, RunOptions(args.order, args.trunc, args.budget, args.verbose))
    except ParseError as exc:
        out.write(_error_report(args.command or job.command, "parse error", exc, args.json))
        return EXIT_PARSE
    except HypothesisError as exc:
        out.write(_error_report(job.command, "hypothesis violated", exc, args.json))
        return EXIT_HYPOTHESIS
    except BudgetExhausted as exc:
        out.write(_error_report(job.command, "budget exhausted", exc, args.json))
        return EXIT_BUDGET
    except OSError as exc:
        out.write(f"cannot read input: {exc}\n")
        return EXIT_PARSE
    except TransdiscError as exc:
        out.write(_error_report(job.command, "error", exc, args.json))
        return EXIT_HYPOTHESIS
    out.write(render_json(rep) if args.json else render_text(rep))
    if rep.command == "corpus" and rep.result["passed"] != rep.result["total"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
