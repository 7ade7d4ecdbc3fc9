import json
import os

import pytest

from perronpf import cli
from perronpf.errors import Indeterminate

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")


@pytest.fixture(autouse=True)
def no_ambient_cache(monkeypatch):
    monkeypatch.delenv("PERRONPF_CACHE_DIR", raising=False)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _golden(name):
    with open(os.path.join(GOLDEN_DIR, name)) as fh:
        return json.load(fh)


# -- exit codes -----------------------------------------------------------------

def test_analyze_ok(capsys):
    code, out, _ = run_cli(capsys, "analyze", "-1,-1,1")
    assert code == cli.EXIT_OK
    report = json.loads(out)
    assert report["command"] == "analyze"
    assert report["result"]["analysis"]["is_perron"] is True


def test_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "analyze", "-1,-1,2")
    assert code == cli.EXIT_PARSE
    assert out == ""
    assert "leading coefficient" in err


def test_usage_error_exit_code(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2
    assert run_cli(capsys)[0] == 2


def test_budget_exit_code(capsys):
    code, _, err = run_cli(capsys, "realize", "1,-3,1", "--n", "3",
                           "--entry-bound", "2", "--budget", "5")
    assert code == cli.EXIT_BUDGET
    assert "budget" in err


def test_indeterminate_exit_code(capsys, monkeypatch):
    def raiser(req):
        raise Indeterminate("disks overlap")

    monkeypatch.setitem(cli._HANDLERS, "analyze", raiser)
    code, _, err = run_cli(capsys, "analyze", "-1,-1,1")
    assert code == cli.EXIT_INDETERMINATE
    assert "indeterminate" in err


def test_toolkit_error_exit_code(capsys):
    # repeated roots: domain error, not a parse error
    code, _, err = run_cli(capsys, "analyze", "1,-2,1")
    assert code == cli.EXIT_ERROR
    assert "error" in err


# -- negative coefficient lists as positionals -----------------------------------

def test_negative_leading_coefficient_positional(capsys):
    code, out, _ = run_cli(capsys, "analyze", "-46,-15,3,1")
    assert code == cli.EXIT_OK
    assert json.loads(out)["result"]["analysis"]["is_totally_real"] is True


# -- output formats ----------------------------------------------------------------

def test_pretty_output(capsys):
    code, out, _ = run_cli(capsys, "family", "1/2", "--pretty")
    assert code == cli.EXIT_OK
    assert "\n" in out.strip()
    report = json.loads(out)
    assert report["result"]["family"]["c"] == 88


def test_compact_output_is_single_line(capsys):
    _, out, _ = run_cli(capsys, "analyze", "-1,-1,1")
    assert out.strip().count("\n") == 0


# -- golden reports ------------------------------------------------------------------

def test_golden_negative_trace_cubic(capsys):
    _, out, _ = run_cli(capsys, "analyze", "-46,-15,3,1")
    assert json.loads(out)["result"] == _golden("analyze_negative_trace_cubic.json")


def test_golden_counterexample_cubic(capsys):
    _, out, _ = run_cli(capsys, "analyze", "-126,65,-13,1")
    assert json.loads(out)["result"] == _golden("analyze_counterexample_cubic.json")


def test_golden_quadratic_realize(capsys):
    _, out, _ = run_cli(capsys, "realize", "1,-3,1", "--n", "2",
                        "--entry-bound", "2")
    assert json.loads(out)["result"] == _golden("realize_quadratic_unit.json")


def test_reports_are_byte_stable(capsys):
    _, first, _ = run_cli(capsys, "analyze", "-126,65,-13,1")
    _, second, _ = run_cli(capsys, "analyze", "-126,65,-13,1")
    a, b = json.loads(first), json.loads(second)
    a.pop("timing_ms"), b.pop("timing_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


# -- caching ------------------------------------------------------------------------

def test_cache_hit_flag(capsys, tmp_path):
    cache = str(tmp_path)
    _, first, _ = run_cli(capsys, "analyze", "-1,-1,1", "--cache-dir", cache)
    assert json.loads(first)["cache_hit"] is False
    _, second, _ = run_cli(capsys, "analyze", "-1,-1,1", "--cache-dir", cache)
    report = json.loads(second)
    assert report["cache_hit"] is True
    assert report["result"] == json.loads(first)["result"]


def test_cache_distinguishes_inputs(capsys, tmp_path):
    cache = str(tmp_path)
    run_cli(capsys, "analyze", "-1,-1,1", "--cache-dir", cache)
    _, out, _ = run_cli(capsys, "analyze", "1,-3,1", "--cache-dir", cache)
    assert json.loads(out)["cache_hit"] is False


def test_cache_env_default(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PERRONPF_CACHE_DIR", str(tmp_path))
    run_cli(capsys, "analyze", "-1,-1,1")
    _, out, _ = run_cli(capsys, "analyze", "-1,-1,1")
    assert json.loads(out)["cache_hit"] is True


# -- verify subcommand (output shape only; the criteria run in the acceptance suite)

def test_verify_line_format(capsys, monkeypatch):
    rows = [("alpha", True, "fine", 0.01), ("beta", False, "broke", 0.02)]
    monkeypatch.setattr("perronpf.verify.run_all", lambda: rows)
    code, out, _ = run_cli(capsys, "verify")
    assert code == cli.EXIT_ERROR
    lines = out.strip().splitlines()
    assert lines[0].startswith("PASS alpha (0.01s): fine")
    assert lines[1].startswith("FAIL beta (0.02s): broke")

    monkeypatch.setattr("perronpf.verify.run_all", lambda: rows[:1])
    assert run_cli(capsys, "verify")[0] == cli.EXIT_OK
