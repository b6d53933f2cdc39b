import json
import subprocess
import sys

import pytest

from cosetvoa import cache as memo
from cosetvoa.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_RESOURCE, SCHEMA, main


@pytest.fixture(autouse=True)
def tmp_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(memo.ENV_VAR, str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "machine")
    return code, json.loads(out), err


def test_verify_l1_passes(capsys):
    code, rep, _ = machine(capsys, "verify", "--l", "1")
    assert code == EXIT_OK
    assert rep["schema"] == SCHEMA and rep["summary"]["ok"]
    assert rep["config"] == {"l": 1, "n": "symbolic", "check": None}
    assert rep["limitations"]


def test_verify_l2_reports_printed_display(capsys):
    code, rep, _ = machine(capsys, "verify", "--l", "2", "--check", "omega1W-expansion")
    assert code == EXIT_FAIL
    failed = {r["check_id"] for r in rep["results"] if r["status"] == "fail"}
    assert failed == {"omega1W-expansion"}


def test_text_output(capsys):
    code, out, _ = run(capsys, "verify", "--l", "1", "--check", "WaWa")
    assert code == EXIT_OK and out.startswith("# verify") and "PASS" in out and "summary:" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "-2"],
    ["verify", "--l", "3", "--n", "-2"],
    ["verify", "--n", "abc"],
    ["verify", "--l", "0"],
    ["pair", "--l", "2", "--n", "-3/2"],
    ["brst", "--level", "-2"],
    ["brst", "--algebra", "sl4"],
    ["coset-dims", "--level", "1/2"],
    ["generation", "--level", "0"],
    ["nonsense"],
])
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG


def test_resource_exit(capsys):
    code, _, err = run(capsys, "coset-dims", "--m", "4", "--level", "1", "--max-weight", "9", "--no-cache")
    assert code == EXIT_RESOURCE and "resource limit" in err


def test_pair(capsys):
    code, rep, _ = machine(capsys, "pair", "--l", "2")
    assert code == EXIT_OK and rep["summary"]["ok"]


def test_brst_sl2(capsys):
    code, rep, _ = machine(capsys, "brst")
    assert code == EXIT_OK
    assert rep["cohomology"]["H0"] == [1, 0, 1, 1, 2]
    assert rep["config"]["window"] == [0, 3] and rep["config"]["max_weight"] == 4


def test_coset_dims_and_generation(capsys):
    code, rep, _ = machine(capsys, "coset-dims", "--level", "3")
    assert code == EXIT_OK and rep["dims"] == [1, 0, 1, 2, 3, 4, 7]
    code, rep, _ = machine(capsys, "generation", "--max-weight", "5")
    assert code == EXIT_OK


def test_machine_output_deterministic_and_cache_transparent(capsys, tmp_cache):
    memo.clear()
    code1, cold, err1 = run(capsys, "verify", "--l", "2", "--check", "WaWb", "--format", "machine", "--stats")
    assert memo.stats()["entries"] > 0
    code2, warm, err2 = run(capsys, "verify", "--l", "2", "--check", "WaWb", "--format", "machine", "--stats")
    assert code1 == code2 == EXIT_OK and cold == warm
    assert "cache entries loaded=0" in err1 and "cache entries loaded=0" not in err2
    code3, nocache, _ = run(capsys, "verify", "--l", "2", "--check", "WaWb", "--format", "machine", "--no-cache")
    assert nocache == cold


def test_corrupt_cache_is_rebuilt(capsys, tmp_cache, caplog):
    run(capsys, "verify", "--l", "1", "--check", "WaWa")
    (f,) = tmp_cache.glob("memo-*.pkl")
    f.write_bytes(b"not a pickle")
    code, out, _ = run(capsys, "verify", "--l", "1", "--check", "WaWa")
    assert code == EXIT_OK
    assert any("unreadable" in r.message for r in caplog.records)
    assert memo.stats()["entries"] > 0


def test_cache_stats_and_clear(capsys, tmp_cache):
    run(capsys, "verify", "--l", "1", "--check", "WaWa")
    code, rep, _ = machine(capsys, "cache", "stats")
    assert code == EXIT_OK and rep["entries"] > 0 and rep["path"] == str(tmp_cache)
    code, rep, _ = machine(capsys, "cache", "clear")
    assert rep["removed"] == 1
    _, rep, _ = machine(capsys, "cache", "stats")
    assert rep["entries"] == 0


def test_module_entry_point(tmp_cache):
    p = subprocess.run([sys.executable, "-m", "cosetvoa", "verify", "--l", "1", "--check", "WaWa-top",
                        "--format", "machine"], capture_output=True, text=True,
                       env={**__import__("os").environ, memo.ENV_VAR: str(tmp_cache)})
    assert p.returncode == 0 and json.loads(p.stdout)["summary"]["ok"]
