import json
import subprocess
import sys

import pytest

from sullivan.cli import main
from sullivan.io import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_bundled(capsys):
    code, out, _ = run(capsys, "validate", "--model", "heisenberg.sm")
    assert code == 0
    assert "validate heisenberg: PASS" in out


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_exit_codes(capsys, name):
    expected_code, text = FIXTURES[name]
    code, out, err = run(capsys, "validate", "--model", f"fixtures/{name}")
    assert code == expected_code
    assert text in out + err


def test_positioned_error(capsys):
    code, _, err = run(capsys, "validate", "--model", "fixtures/minimality.sm")
    assert code == 2
    assert "minimality.sm:4: word length 1 violates minimality" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify", "--model", "/nonexistent/file.sm")
    assert code == 2 and "no such file" in err


def test_bounds_heisenberg_json(capsys):
    code, out, _ = run(capsys, "bounds", "--model", "heisenberg.sm", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["classification"] == "2-step nilpotent, coformal"
    assert doc["data"]["upper_exponent"] == "3n"
    assert doc["data"]["lower_exponent"] == "3(n-1)"
    alts = doc["data"]["flagged_alternatives"]
    assert alts[0]["kind"] == "lower" and alts[0]["exponent"] == "(n-1)"
    for check in doc["checks"]:
        assert set(check) == {"check", "status", "witness", "paper_ref"}


def test_filtration_three_step_fails_honestly(capsys):
    code, out, _ = run(capsys, "filtration", "--model", "three_step.sm", "--json")
    assert code == 1
    doc = json.loads(out)
    status = {c["check"]: c["status"] for c in doc["checks"]}
    assert status == {"naive_equals_cautious": "fail", "delta_injective": "pass", "dnil_step_bound": "pass"}


def test_classify_and_weights(capsys):
    code, out, _ = run(capsys, "classify", "--model", "cubic.sm", "--json")
    assert code == 0 and json.loads(out)["data"]["classification"] == "simply connected"
    code, out, _ = run(capsys, "weights", "--model", "s2.sm", "--json")
    assert code == 0 and json.loads(out)["data"]["declared_weights"] == {"x": 2, "y": 4}


def test_truncate(capsys):
    code, out, _ = run(capsys, "classify", "--model", "s2.sm", "--truncate", "2", "--json")
    assert code == 0
    assert json.loads(out)["data"]["step_dimensions"] == {"2": [1]}


def test_non_nilpotent_commands_exit_one(capsys):
    code, out, _ = run(capsys, "bounds", "--model", "fixtures/non_nilpotent.sm")
    assert code == 1 and "nilpotence" in out


def test_homotopy_check_with_file_maps(capsys):
    code, out, _ = run(capsys, "homotopy-check", "--model", "fixtures/homotopy.sm", "--json", "--samples", "50")
    assert code == 0
    doc = json.loads(out)
    assert doc["data"]["homotopies"]["shift"]["end"]["z"] == "-x + z"


def test_whitehead(capsys):
    code, out, _ = run(capsys, "whitehead", "--c", "2", "--max-k", "5")
    assert code == 0
    assert out.count("[PASS]") == 3


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("SULLIVAN_SEED", "5")
    code, out, _ = run(capsys, "homotopy-check", "--model", "s2.sm", "--json", "--samples", "10")
    assert json.loads(out)["data"]["seed"] == 5
    monkeypatch.setenv("SULLIVAN_SEED", "nope")
    code, _, err = run(capsys, "homotopy-check", "--model", "s2.sm", "--samples", "10")
    assert code == 2


def test_bad_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sullivan", "validate", "--model", "s3.sm"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "validate s3: PASS" in proc.stdout
