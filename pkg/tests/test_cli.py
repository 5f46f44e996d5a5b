import json
import subprocess
import sys

import pytest

from fqcert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_certify_nonconjugacy(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "certify", "nonconjugacy", "--rank", "2", "--a", "a", "--b", "b", "-o", str(out))
    assert code == 0
    assert json.loads(out.read_text())["modulus"] == [2]


@pytest.mark.parametrize("a, b, witness", [("ab", "ba", "a"), ("a", "a", "1")])
def test_certify_conjugate_exit(capsys, a, b, witness):
    code, out, _ = run(capsys, "certify", "nonconjugacy", "--rank", "2", "--a", a, "--b", b)
    assert code == 2
    assert f"conjugator: {witness}" in out


def test_certify_exhausted_exit(capsys):
    code, _, err = run(
        capsys, "certify", "nonconjugacy", "--rank", "2", "--a", "abAB", "--b", "baBA",
        "--max-index", "2", "--max-prime", "2", "--max-rounds", "1",
    )
    assert code == 3
    assert "search exhausted" in err


def test_certify_omnipotence(tmp_path, capsys):
    code, out, _ = run(capsys, "certify", "omnipotence", "--rank", "2", "--elements", "a,b", "--orders", "2,3", "-o", str(tmp_path / "o.json"))
    assert code == 0 and "K=1 orders=[2,3]" in out
    code, out, _ = run(capsys, "certify", "omnipotence", "--rank", "2", "--elements", "a,aa", "--orders", "1,1")
    assert code == 4
    code, out, _ = run(capsys, "certify", "omnipotence", "--rank", "2", "--elements", "abAB,a", "--orders", "1,2", "-o", str(tmp_path / "p.json"))
    assert code == 0
    cert = json.loads((tmp_path / "p.json").read_text())
    k = cert["m"][0] * cert["m"][1]
    assert cert["cover"]["degree"] > 1
    assert f"K={k} orders=[{k},{2 * k}]" in out


def test_verify_exits(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "certify", "nonconjugacy", "--rank", "2", "--a", "abAB", "--b", "baBA", "-o", str(path))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "verdict: accept" in out

    text = path.read_text()
    data = json.loads(text)
    flipped = tmp_path / "flipped.json"
    n = data["modulus"][0]
    flipped.write_text(text.replace(f'"modulus":[{n}]', f'"modulus":[{n + 1}]'))
    code, out, _ = run(capsys, "verify", str(flipped))
    assert code == 1 and "[FAIL]" in out

    truncated = tmp_path / "trunc.json"
    truncated.write_text(text[: len(text) // 2])
    code, _, err = run(capsys, "verify", str(truncated))
    assert code == 65
    code, _, _ = run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 65


@pytest.mark.parametrize("a, b, answer, code", [("ab", "ba", "conjugate", 0), ("abAB", "baBA", "non-conjugate", 1), ("a", "a", "conjugate", 0)])
def test_oracle(capsys, a, b, answer, code):
    got, out, _ = run(capsys, "oracle", "--rank", "2", "--a", a, "--b", b)
    assert got == code and out.strip() == answer


def test_usage_errors(capsys):
    assert run(capsys, "oracle", "--rank", "2", "--a", "a?", "--b", "b")[0] == 64
    assert run(capsys, "oracle", "--rank", "1", "--a", "b", "--b", "a")[0] == 64
    with pytest.raises(SystemExit) as info:
        main(["oracle", "--rank", "2"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["certify", "nonconjugacy", "--rank", "0", "--a", "a", "--b", "b"])
    assert info.value.code == 64
    assert run(capsys, "certify", "omnipotence", "--rank", "2", "--elements", "a,b", "--orders", "2")[0] == 64
    assert run(capsys, "certify", "nonconjugacy", "--rank", "2", "--a", "1", "--b", "b")[0] == 64


def test_files_are_byte_stable(tmp_path, capsys):
    paths = [tmp_path / "x.json", tmp_path / "y.json"]
    for p in paths:
        run(capsys, "certify", "nonconjugacy", "--rank", "2", "--a", "aabAB", "--b", "abaBA", "-o", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "3", "--trials", "30")
    assert code == 0
    assert out.count("PASS") == 4


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fqcert.cli", "oracle", "--rank", "2", "--a", "ab", "--b", "ba"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "conjugate"
