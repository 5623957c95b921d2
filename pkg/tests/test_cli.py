import json
import shutil
import subprocess
import sys

import pytest

from rootedcluster.cli import main
from rootedcluster.quiver import IceQuiver, find_isomorphism

SEQ = "147,347,137,134,467,134,457"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def a2_file(tmp_path, a2):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(a2.to_dict()))
    return path


@pytest.fixture
def frozen_file(tmp_path):
    path = tmp_path / "fully_frozen.json"
    path.write_text(json.dumps(IceQuiver({"f": True, "g": True}).to_dict()))
    return path


def test_validate(capsys, data_dir):
    code, out, _ = run(capsys, "validate", str(data_dir / "g37_initial.json"))
    assert code == 0
    assert json.loads(out) == {"valid": True, "exchangeable": 6, "frozen": 7, "arrows": 17}


def test_validate_rejects_two_cycle(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": [{"id": "a"}, {"id": "b"}],
                                "arrows": [{"from": "a", "to": "b"}, {"from": "b", "to": "a"}]}))
    code, out, err = run(capsys, "validate", str(path))
    assert code == 1 and out == "" and "TwoCycleFound" in err


def test_mutate_g37(capsys, data_dir, g37):
    code, out, _ = run(capsys, "mutate", str(data_dir / "g37_initial.json"), "-s", SEQ)
    assert code == 0
    q = IceQuiver.from_dict(json.loads(out))
    assert find_isomorphism(q, g37.standard_quiver, frozen_by_label=True) is not None


def test_mutate_frozen_vertex(capsys, data_dir):
    code, out, err = run(capsys, "mutate", str(data_dir / "g37_initial.json"), "-s", "712")
    assert code == 2 and out == "" and "frozen" in err


def test_mutate_involution(capsys, a2_file):
    code, out, _ = run(capsys, "mutate", str(a2_file), "-s", "1,1")
    assert code == 0
    assert json.loads(out) == json.loads(a2_file.read_text())


def test_mutate_emit_vars(capsys, a2_file):
    code, out, _ = run(capsys, "mutate", str(a2_file), "-s", "1", "--emit-vars")
    assert code == 0
    assert json.loads(out)["vars"] == {"1": "x0^-1*x1 + x0^-1", "2": "x1"}


def test_mutate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "mutate", str(tmp_path / "nope.json"), "-s", "1")
    assert code == 1 and err


def test_pairs_g37(capsys, data_dir):
    code, out, _ = run(capsys, "pairs", str(data_dir / "g37_standard.json"), "--freeze", "x''")
    assert code == 0
    rep = json.loads(out)
    assert rep["count"] == 8 and len(rep["pairs"]) == 8


def test_pairs_small(capsys, a2_file, frozen_file):
    assert json.loads(run(capsys, "pairs", str(a2_file), "--freeze", "")[1])["count"] == 2
    assert json.loads(run(capsys, "pairs", str(frozen_file))[1])["count"] == 1


def test_pairs_invalid_freeze(capsys, data_dir):
    code, _, err = run(capsys, "pairs", str(data_dir / "g37_standard.json"), "--freeze", "123")
    assert code == 1 and "NotExchangeable" in err


def test_components(capsys, data_dir):
    code, out, _ = run(capsys, "components", str(data_dir / "g37_standard.json"), "--freeze", "x''")
    assert code == 0
    comps = json.loads(out)["components"]
    assert [c["exchangeable"] for c in comps] == [["126", "x'"], ["135", "235"], ["367"]]


@pytest.mark.parametrize(
    "name, max_len, trials",
    [("a2", 10, 100), ("g37_initial", 6, 50), ("a2", 0, 5)],
)
def test_check_laurent(capsys, data_dir, a2_file, name, max_len, trials):
    path = a2_file if name == "a2" else data_dir / f"{name}.json"
    code, out, _ = run(capsys, "--rng-seed", "3", "check-laurent", str(path),
                       "--max-len", str(max_len), "--trials", str(trials))
    assert code == 0
    summary = json.loads(out)
    assert summary["trials"] == trials and summary["laurent_violations"] == 0
    if max_len == 0:
        assert summary["mutations"] == 0


def test_check_laurent_exit_3_on_violation(capsys, tmp_path):
    path = tmp_path / "bad_seed.json"
    path.write_text(json.dumps({
        "vertices": [{"id": "1"}, {"id": "2"}],
        "arrows": [{"from": "1", "to": "2"}],
        "vars": {"1": "x0 + x1"},
    }))
    code, _, err = run(capsys, "check-laurent", str(path), "--max-len", "3", "--trials", "5")
    assert code == 3 and "not Laurent" in err


def test_verify_morphism(capsys, data_dir):
    code, out, _ = run(capsys, "verify-morphism", str(data_dir / "g37_sub1.json"),
                       str(data_dir / "g37_standard.json"), "--depth", "2")
    assert code == 0 and json.loads(out)["ok"] is True


def test_verify_morphism_violation(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"vertices": [{"id": "k"}], "arrows": []}))
    b.write_text(json.dumps({"vertices": [{"id": "k", "frozen": True}, {"id": "j"}],
                             "arrows": [{"from": "k", "to": "j"}]}))
    code, out, _ = run(capsys, "verify-morphism", str(a), str(b), "--map", "k=k")
    assert code == 0
    assert json.loads(out)["violation"]["condition"] == "a"


def test_demo_default(capsys):
    code, out, _ = run(capsys, "demo-g37")
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["pairs"] == 8


def test_demo_mapping_stable(capsys):
    maps = []
    for seed in ("1", "2", "3"):
        code, out, _ = run(capsys, "--rng-seed", seed, "demo-g37")
        assert code == 0
        maps.append(json.loads(out)["slot_labels"])
    assert maps[0] == maps[1] == maps[2]


def test_demo_corrupted_golden_file(capsys, tmp_path, data_dir):
    for f in data_dir.glob("g37_*.json"):
        shutil.copy(f, tmp_path / f.name)
    std = json.loads((tmp_path / "g37_standard.json").read_text())
    flip = next(a for a in std["arrows"] if a["from"] == "135" and a["to"] == "235")
    flip["from"], flip["to"] = "235", "135"
    (tmp_path / "g37_standard.json").write_text(json.dumps(std))
    code, out, err = run(capsys, "demo-g37", "--data-dir", str(tmp_path))
    assert code == 4
    assert json.loads(out)["failed_stage"] == "iii_isomorphism"
    assert "iii_isomorphism" in err


def test_deterministic_output(capsys, data_dir):
    args = ["--rng-seed", "9", "check-laurent", str(data_dir / "g37_initial.json"), "--max-len", "5", "--trials", "10"]
    first = run(capsys, *args)[1]
    assert run(capsys, *args)[1] == first


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "rootedcluster", "validate", str(data_dir / "g37_sub3.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["exchangeable"] == 1
