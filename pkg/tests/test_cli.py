import json
import subprocess
import sys

import pytest

from involution_lab.cli import main
from involution_lab.report import emit_report, list_catalog, to_json
from involution_lab.suites import SuiteConfig, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_lists_every_builtin(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ("q8 ", "q8ext ", "extraspecial3", "es3_c2", "q8ext_c3c3"):
        assert name in out
    assert "admissible kernel orders" in out
    assert list_catalog() == out


def test_passing_suite_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "involution-axioms", "--group", "q8ext_c3")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass" and data["counts"]["fail"] == 0


def test_failing_suite_exits_one(capsys):
    # the literal strong index exceeds t_nil on this case
    code, out, _ = run(capsys, "verify", "thm-q8-strong", "--group", "q8ext_c3")
    data = json.loads(out)
    assert code == 1
    failed = [c["case"] for c in data["cases"] if c["status"] == "fail"]
    assert failed == ["q8ext_c3/strong-index-at-most-tnil"]


def test_cap_exceeded_is_inconclusive(capsys):
    code, out, _ = run(capsys, "verify", "span-equalities", "--group", "q8ext_c9", "--cap-order", "100")
    assert code == 2 and json.loads(out)["status"] == "inconclusive"
    code, _, _ = run(capsys, "verify", "span-equalities", "--group", "q8ext_c9", "--cap-order", "100",
                     "--allow-inconclusive")
    assert code == 0


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("INVOLUTION_LAB_CAP_ORDER", "40")
    code, _, _ = run(capsys, "verify", "span-equalities", "--group", "q8ext_c3")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["verify", "nosuch", "--group", "q8"],
    ["verify", "span-equalities"],
    ["verify", "span-equalities", "--group", "q8", "--char", "4"],
    ["verify", "span-equalities", "--group", "q8", "--char", "2"],
    ["verify", "span-equalities", "--group", "nosuch(q8"],
    ["verify", "span-equalities", "--group", "q8ext", "--kernel", "x"],
    ["frobnicate"],
])
def test_usage_errors_exit_three(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3


def test_unwritable_output_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "span-equalities", "--group", "c3", "--output",
                       str(tmp_path / "missing" / "r.json"))
    assert code == 3 and "cannot write" in err


def test_json_is_byte_stable_and_round_trips(tmp_path):
    cfg = SuiteConfig("unit-class", "q8ext_c3", seed=7)
    first = to_json(run_suite(cfg))
    second = to_json(run_suite(SuiteConfig("unit-class", "q8ext_c3", seed=7)))
    assert first == second
    assert json.dumps(json.loads(first), indent=2, sort_keys=True) + "\n" == first
    path = tmp_path / "r.json"
    emit_report(run_suite(cfg), "json", path)
    assert path.read_text() == first


def test_markdown_summary_columns(capsys):
    code, out, _ = run(capsys, "verify", "bounds-q8", "--group", "q8ext_c3", "--format", "md")
    header = out.splitlines()[2]
    cells = [c.strip() for c in header.strip("|").split(" | ")]
    assert cells == ["group", "p", "\\|G'\\|", "t", "tL", "t_nil", "cl", "verdict"]
    row = [c.strip() for c in out.splitlines()[4].strip("|").split(" | ")]
    assert row == ["q8ext_c3", "3", "2", "3", "4", "3", "2", "Lie nilpotent"]


def test_converse_direction_verdict(capsys):
    code, out, _ = run(capsys, "verify", "thm-q8-strong", "--group", "q8_c4", "--format", "md")
    assert code == 0 and "not Lie nilpotent" in out


def test_overrides_do_not_reuse_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "span-equalities", "--group", "q8ext_c3", "--char", "0")
    data = json.loads(out)
    assert data["summary"]["group"] == "q8ext_c3@char0"
    assert not any(c["source"] == "oracle fixture" for c in data["cases"])


def test_timings_flag_adds_runtime(capsys):
    _, out, _ = run(capsys, "verify", "span-equalities", "--group", "c3", "--timings")
    assert all("runtime" in c for c in json.loads(out)["cases"])


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "involution_lab.cli", "catalog"], capture_output=True, text=True)
    assert res.returncode == 0 and "q8ext" in res.stdout
