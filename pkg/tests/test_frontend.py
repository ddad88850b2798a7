import json

import pytest

from transdisc.errors import ParseError
from transdisc.frontend import cli
from transdisc.frontend.commands import COMMANDS, RunOptions, run
from transdisc.frontend.corpus import CASES, corpus_run, corrupted, run_case
from transdisc.frontend.jobspec import parse_job
from transdisc.frontend.report import render_json, render_text

W = "RING\nx y z\nZ\nx, y\nX\nx^2*z - y^2\n"
JOBS = {
    "gb": W, "leadform": W, "conormal": W, "sci-check": W, "mult-seq": W, "crit": W, "ordinary-check": W,
    "db-support": W, "db-mult": W, "db-equation": W + "OPTIONS\npoint = z:0\n", "db-report": W,
    "pullback-check": W + "PHI\nz = z^2\n",
    "family-degrees": "RING\nx y z t\nZ\nx, y\nX\nx^2*(z - t) - y^2\nOPTIONS\nparam = t\nsamples = 1\n",
    "milnor": "RING\nx y\nWEIGHTS\n1 1\nOPTIONS\ndegrees = 3\n",
    "mu-pair": "RING\nx y z\nWEIGHTS\n1 1 1\nOPTIONS\ndegrees = 2 3\n",
    "poincare-mu": "RING\nx y z\nWEIGHTS\n1 1 1\nOPTIONS\ndegrees = 2 2\n",
    "monomial-support": "RING\nx y\nWEIGHTS\n1 1\nOPTIONS\ndegrees = 3\nmonomials = 1:1; 1:x; 1:y\n",
    "classical-disc": "RING\nu v a b c\nX\na*u^2 + b*u*v + c*v^2\nOPTIONS\nfiber = u v\n",
    "classical-mult": "RING\ny s\nX\ny^3 + s\nOPTIONS\nfiber = y\n",
    "corpus": "OPTIONS\ncase = gb-lex-golden\n",
}


def job_file(tmp_path, text, name="job.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_sections():
    job = parse_job("# umbrella\nRING\nx y z\nZ\nx\ny\nX\nx^2*z^q - y^2\nPARAMS\nq = 3\n"
                    "COMMAND\ndb-report\nOPTIONS\npoint = z:0\n")
    assert job.variables == ("x", "y", "z") and job.command == "db-report"
    assert [str(g) for g in job.z_gens()] == ["x", "y"]
    assert [str(g) for g in job.x_gens()] == ["x^2*z^3 - y^2"]
    assert job.point(("z",)) == {"z": 0}


@pytest.mark.parametrize("text", [
    "RING\nx y\nX\nx +* y\nCOMMAND\ngb\n",
    "RING\nx y\nX\nx + w\nCOMMAND\ngb\n",
    "RING\nx y\nBOGUS\n1\n",
    "RING\nx 1\nX\nx\n",
    "x + y\n",
    "RING\nx y\nPARAMS\nq = two\n",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_job(text).x_gens()


def test_whitney_report(capsys, tmp_path):
    code = cli.main(["--input", job_file(tmp_path, W + "COMMAND\ndb-report\n"), "--json"])
    body = json.loads(capsys.readouterr().out)
    assert code == 0
    assert set(body) == {"command", "hypotheses", "result", "certificates"}
    assert all(set(h) == {"name", "status"} for h in body["hypotheses"])
    assert body["result"]["support"] == ["z"] and body["result"]["multiplicities"] == {"z=0": 1}


def test_sci_check_command(capsys, tmp_path):
    text = "RING\nx1 x2\nZ\nx1^2, x2^2\nX\nx1^3 + x2^3\nCOMMAND\nsci-check\n"
    assert cli.main(["--input", job_file(tmp_path, text), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["is_sci"] is False


def test_command_override_and_text_output(capsys, tmp_path):
    path = job_file(tmp_path, JOBS["milnor"] + "COMMAND\ngb\n")
    assert cli.main(["--input", path, "--command", "milnor"]) == 0
    out = capsys.readouterr().out
    assert "milnor" in out and "4" in out


def test_exit_hypothesis(capsys, tmp_path):
    path = job_file(tmp_path, W + "PHI\nx = x^2\nCOMMAND\npullback-check\n")
    assert cli.main(["--input", path, "--json"]) == 2
    body = json.loads(capsys.readouterr().out)
    assert body["hypotheses"] == [{"name": "reduced pullback", "status": "violated"}]


def test_exit_budget(capsys, tmp_path):
    text = "RING\nx y z w\nX\nw^2*x^2 + z*y^3, w*x*y + z^3\nCOMMAND\ngb\n"
    assert cli.main(["--input", job_file(tmp_path, text), "--order", "lex", "--budget", "1"]) == 3
    assert "budget" in capsys.readouterr().out


def test_exit_parse(capsys, tmp_path):
    assert cli.main(["--input", job_file(tmp_path, "RING\nx\nX\nx^^2\nCOMMAND\ngb\n")]) == 4
    assert cli.main(["--input", str(tmp_path / "missing.txt")]) == 4
    assert cli.main([]) == 4
    capsys.readouterr()


def test_stdin_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(JOBS["poincare-mu"] + "COMMAND\npoincare-mu\n"))
    assert cli.main(["--input", "-", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["mu"] == 5


@pytest.mark.parametrize("command", COMMANDS)
def test_every_command_runs_deterministically(command):
    job = parse_job(JOBS[command] + f"COMMAND\n{command}\n")
    a = run(job, RunOptions())
    b = run(parse_job(JOBS[command] + f"COMMAND\n{command}\n"), RunOptions())
    assert a.command == command
    assert render_json(a) == render_json(b)
    assert render_text(a) == render_text(b)
    json.loads(render_json(a))


def test_verbose_and_trunc_flags(capsys, tmp_path):
    path = job_file(tmp_path, W + "COMMAND\ndb-equation\nOPTIONS\npoint = z:0\n")
    assert cli.main(["--input", path, "--json", "--trunc", "6", "--verbose"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["result"]["determinant"] == "z"


def test_corpus_single_case_filter(capsys):
    rows = corpus_run("gb-lex-golden")
    assert len(rows) == 1 and rows[0].ok
    assert cli.main(["--command", "corpus", "--case", "gb-lex-golden"]) == 0
    lines = [l.strip() for l in capsys.readouterr().out.splitlines() if l.strip().startswith(("PASS", "FAIL"))]
    assert len(lines) == 1 and "Ex.ci.whose.PT" in lines[0]


def test_corpus_corrupted_value_is_reported(capsys):
    case = next(c for c in CASES if c.name == "whitney-q2")
    bad = run_case(corrupted(case, "multiplicities", {"z=0": 3}))
    assert not bad.ok and any("expected" in m and "3" in m for m in bad.mismatches)
    assert cli.main(["--command", "corpus", "--case", "whitney-q2-splitting"]) == 0
    capsys.readouterr()


def test_corpus_cases_cite_sources():
    assert all(c.source for c in CASES)
    assert len({c.name for c in CASES}) == len(CASES)


def test_full_corpus_passes():
    rows = corpus_run()
    assert len(rows) == len(CASES)
    assert [r.name for r in rows if not r.ok] == []


JOB_DIR = __import__("pathlib").Path(__file__).resolve().parent.parent / "jobs"


@pytest.mark.parametrize("path", sorted(JOB_DIR.glob("*.job")), ids=lambda p: p.name)
def test_sample_jobs_run(path, capsys):
    assert cli.main(["--input", str(path), "--json"]) == 0
    json.loads(capsys.readouterr().out)
