import subprocess
import sys

import pytest

from popdim.cli import main
from popdim.instances import gadget
from popdim.textio import parse_instance, parse_winning_set, serialize_instance


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_verify_house_gadget(capsys, files):
    path = files("house_lower.txt", serialize_instance(gadget("house_lower")))
    code, out, _ = run(capsys, "solve", path, "--verify")
    assert code == 0
    body, _, verdict = out.rpartition("VERIFIED\n")
    assert verdict == "" and out.endswith("VERIFIED\n")
    assert len(parse_winning_set(body)) == 2
    assert body == "match a x\nmatch c y\n---\nmatch b x\n"


def test_solve_trace_is_commented(capsys, files):
    path = files("h.txt", serialize_instance(gadget("house_lower")))
    code, out, _ = run(capsys, "solve", path, "--trace")
    assert code == 0
    lines = out.splitlines()
    assert "# step 1" in lines and "# end" in lines
    assert parse_winning_set(out) == parse_winning_set(out.split("# trace")[0])


def test_solve_roommates(capsys, files):
    path = files("r.txt", serialize_instance(gadget("roommates_lower")))
    code, out, _ = run(capsys, "solve", path, "--verify")
    assert code == 0 and out == "match a b\n---\nmatch b c\nVERIFIED\n"


def test_verify_defeated(capsys, files):
    inst = files("h.txt", serialize_instance(gadget("house_lower")))
    ws = files("m.txt", "match a x\nmatch b y\n")
    code, out, _ = run(capsys, "verify", inst, ws)
    assert code == 1
    assert out == "DEFEATED witness_weight 2 candidate_weight 1\nmatch b x\nmatch c y\n"


def test_dimension(capsys, files):
    path = files("h.txt", serialize_instance(gadget("house_lower")))
    assert run(capsys, "dimension", path, "--max-k", "2")[:2] == (0, "2\n")
    assert run(capsys, "dimension", path, "--max-k", "1")[:2] == (0, ">1\n")
    code, out, _ = run(capsys, "dimension", path, "--certificate")
    assert out.startswith("2\n") and len(parse_winning_set(out[2:])) == 2


def test_demo_writes_gadget(capsys, tmp_path):
    target = tmp_path / "rm.txt"
    assert run(capsys, "demo", "roommates_lower", "-o", str(target))[0] == 0
    inst = parse_instance(target.read_text())
    assert serialize_instance(inst) == serialize_instance(gadget("roommates_lower"))
    code, out, _ = run(capsys, "demo", "house_lower")
    assert out == serialize_instance(gadget("house_lower"))


def test_gen_deterministic(capsys):
    argv = ["gen", "--kind", "marriage", "--agents", "3", "--items", "3", "--ties",
            "--weights", "0:4", "--density", "0.6", "--seed", "9"]
    first = run(capsys, *argv)
    assert first[0] == 0 and first == run(capsys, *argv)
    assert parse_instance(first[1]).kind.value == "marriage"


def test_input_errors(capsys, files):
    bad = files("bad.txt", "problem: house\nagent a\nitem x\npref a: zz\n")
    code, _, err = run(capsys, "solve", bad)
    assert code == 2 and "line 4" in err and "zz" in err
    code, _, err = run(capsys, "solve", "/nonexistent/file.txt")
    assert code == 2
    code, _, err = run(capsys, "gen", "--kind", "roommates", "--agents", "2", "--items", "1")
    assert code == 2


def test_guard_reported(capsys, tmp_path):
    target = tmp_path / "big.txt"
    run(capsys, "gen", "--kind", "roommates", "--agents", "9", "-o", str(target))
    code, _, err = run(capsys, "dimension", str(target))
    assert code == 2 and "guard" in err
    code, out, _ = run(capsys, "solve", str(target))
    assert code == 0 and out


def test_module_entry_point_byte_identical(tmp_path):
    path = tmp_path / "h.txt"
    path.write_text(serialize_instance(gadget("house_lower")))
    cmd = [sys.executable, "-m", "popdim", "solve", str(path), "--verify", "--trace"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"VERIFIED\n")
