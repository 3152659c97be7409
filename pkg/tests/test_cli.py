import random

import pytest

from adca.cli import main
from adca.harness import read_csv


@pytest.fixture
def text_file(tmp_path):
    rng = random.Random(0)
    words = ["alpha", "beta", "gamma", "delta", "\n"]
    p = tmp_path / "in.txt"
    p.write_bytes(" ".join(rng.choice(words) for _ in range(400)).encode())
    return p


@pytest.mark.parametrize("mode", ["static", "dynamic"])
@pytest.mark.parametrize("binary", [False, True])
def test_round_trip(tmp_path, text_file, mode, binary):
    packed, out = tmp_path / "x.adc", tmp_path / "out.txt"
    args = ["compress", "--mode", mode, "--max-mfw-len", "6", "--mfw-len", "6"]
    if binary:
        args.append("--binary")
    assert main(args + [str(text_file), str(packed)]) == 0
    assert main(["decompress", str(packed), str(out)]) == 0
    assert out.read_bytes() == text_file.read_bytes()


def test_empty_file_round_trip(tmp_path):
    src, packed, out = tmp_path / "e", tmp_path / "e.adc", tmp_path / "e.out"
    src.write_bytes(b"")
    assert main(["compress", "--mode", "dynamic", str(src), str(packed)]) == 0
    assert main(["decompress", str(packed), str(out)]) == 0
    assert out.read_bytes() == b""


def test_decompress_rejects_garbage(tmp_path):
    bad = tmp_path / "bad"
    bad.write_bytes(b"hello")
    with pytest.raises(SystemExit):
        main(["decompress", str(bad), str(tmp_path / "o")])


def test_mfw_and_automaton(tmp_path, capsys):
    src = tmp_path / "bits"
    src.write_bytes(bytes([0b01001001]))
    assert main(["mfw", "--max-len", "3", "--binary", str(src)]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == "alphabet 2"
    assert "1 1" in text.splitlines()
    ad = tmp_path / "a.txt"
    ad.write_text(text)
    assert main(["automaton", "--antidictionary", str(ad)]) == 0
    assert capsys.readouterr().out


def test_entropy_and_simulate(tmp_path, capsys):
    spec = tmp_path / "gm.txt"
    spec.write_text("alphabet 2\n1 1\nprob lambda 0 0.5\n")
    assert main(["entropy", "--spec", str(spec)]) == 0
    out = capsys.readouterr().out
    assert float(out.split("entropy")[1]) == pytest.approx(2 / 3)
    raw = tmp_path / "raw"
    assert main(["simulate", "--spec", str(spec), "--n", "1000", "--seed", "4", "--out", str(raw)]) == 0
    data = raw.read_bytes()
    assert len(data) == 1000 and b"\x01\x01" not in data


def test_converge_writes_csv(tmp_path, capsys):
    csv = tmp_path / "m.csv"
    rc = main(["converge", "--model", "ternary", "--mode", "both", "--lengths", "256,1024",
               "--trials", "2", "--csv", str(csv)])
    assert rc == 0
    assert len(read_csv(csv)) == 8
    assert "median" in capsys.readouterr().out


def test_bad_spec_returns_error(tmp_path, capsys):
    spec = tmp_path / "bad.txt"
    spec.write_text("alphabet 2\n1 1\nprob 11 0 0.5\n")
    assert main(["entropy", "--spec", str(spec)]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["entropy", "--model", "nope"]) == 2
