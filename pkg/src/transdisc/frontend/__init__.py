"""Job files, command dispatch, reports and the regression corpus."""
from .commands import COMMANDS, Report, RunOptions, run
from .jobspec import JobSpec, parse_job
from .report import render_json, render_text

__all__ = ["COMMANDS", "JobSpec", "Report", "RunOptions", "parse_job", "render_json", "render_text", "run"]
