import json
import subprocess
import sys

import pytest

from drinfeld_braiding.cli import main
from drinfeld_braiding.suites import RunConfig, resolve_suites

SAMPLES = "samples"


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dump_R_trivial(capsys):
    code, out, _ = run_cli(["dump", "R", "--instance", "trivial", "-N", "3"], capsys)
    assert code == 0 and out.strip() == "1⊗1"


def test_dump_R_first_order(capsys):
    _, out, _ = run_cli(["dump", "R", "-N", "2"], capsys)
    assert out.strip() == "1⊗1 + h·(E⊗F + 1/4·H⊗H)"
    _, out, _ = run_cli(["dump", "R", "-N", "2", "--canonical"], capsys)
    assert out.splitlines() == [
        "F^0 H^0 E^0 | F^0 H^0 E^0 : 1",
        "F^0 H^0 E^1 | F^1 H^0 E^0 : h",
        "F^0 H^1 E^0 | F^0 H^1 E^0 : 1/4*h",
    ]


def test_dump_delta_starts_at_h2(capsys):
    # δ_2(hE) = h(E⊗K - E⊗1) = h^2/2 E⊗H + O(h^3)
    _, out, _ = run_cli(["dump", "delta", "-N", "3", "--element", "hE"], capsys)
    assert out.strip() == "h^2·1/2·E⊗H"


def test_dump_unknown_label(capsys):
    code, _, err = run_cli(["dump", "delta", "--element", "nope"], capsys)
    assert code == 2 and "nope" in err


def test_braid_command(tmp_path, capsys):
    path = tmp_path / "x.txt"
    path.write_text("@ x rank=3\nF^0 H^0 E^1 | F^1 H^0 E^0 | F^0 H^1 E^0 : 1\n")
    code, out, _ = run_cli(["braid", "-N", "3", "--word", "1,-1", "--input", str(path)], capsys)
    assert code == 0 and out.strip() == "F^0 H^0 E^1 | F^1 H^0 E^0 | F^0 H^1 E^0 : 1"
    code, a, _ = run_cli(["braid", "-N", "3", "--word", "1,2,1", "--input", str(path)], capsys)
    code, b, _ = run_cli(["braid", "-N", "3", "--word", "2,1,2", "--input", str(path)], capsys)
    assert a == b
    code, _, err = run_cli(["braid", "-N", "3", "--word", "3", "--input", str(path)], capsys)
    assert code == 2


def test_shipped_sample_files(capsys):
    code, _, _ = run_cli(["verify", "theorem21", "-N", "4", "--samples", f"{SAMPLES}/rank2.txt"], capsys)
    assert code == 0
    code, out, _ = run_cli(["braid", "-N", "3", "--word", "1", "--input", f"{SAMPLES}/rank3.txt", "--pretty"], capsys)
    assert code == 0 and out.startswith("F⊗E⊗H")


def test_exit_codes(tmp_path, capsys):
    assert main(["verify", "lemma33", "-N", "3"]) == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("@ bad rank=2\nF^0 H^0 E^1 | F^0 H^0 E^0 : 1\n")
    assert main(["verify", "theorem21", "-N", "3", "--samples", str(bad)]) == 1
    assert main(["verify", "theorem21", "-N", "3", "--samples", str(tmp_path / "missing")]) == 2
    assert main(["verify", "hopf", "-N", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_aliases():
    assert resolve_suites(["braided"]) == ("braid",)
    assert resolve_suites(["combinatorics"]) == ("lemma33", "eprime")
    assert resolve_suites(["lemma33", "all"])[0] == "hopf"
    with pytest.raises(ValueError):
        RunConfig(order=1)


def test_json_written_to_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "--suite", "combinatorics", "-N", "3", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["overall"] is True
    assert [s["suite"] for s in data["suites"]] == ["lemma33", "eprime"]
    assert "timing" not in json.dumps(data)
    capsys.readouterr()


def test_timing_opt_in(capsys):
    main(["verify", "lemma33", "--json", "-", "--include-timing"])
    data = json.loads(capsys.readouterr().out)
    assert "seconds" in json.dumps(data)


def test_env_override():
    env = {"DRINFELD_BRAIDING_ORDER": "3", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run(
        [sys.executable, "-m", "drinfeld_braiding", "verify", "lemma33", "--json", "-"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert json.loads(proc.stdout)["config"]["order"] == 3
    env["DRINFELD_BRAIDING_ORDER"] = "three"
    proc = subprocess.run([sys.executable, "-m", "drinfeld_braiding", "dump", "R"], capture_output=True, env=env)
    assert proc.returncode != 0


def test_byte_identical_json(tmp_path, capsys):
    args = ["run", "--suite", "hopf", "--suite", "lemma32", "--suite", "classical", "-N", "4"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(args + ["--json", str(a)])
    main(args + ["--json", str(b)])
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
