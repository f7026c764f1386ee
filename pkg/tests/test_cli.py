import json

import pytest

from nbcss.binmat import BinaryMatrix
from nbcss.cli import main
from nbcss.formats import format_dense, read_binary, read_field_matrix, write_binary


@pytest.fixture
def pair_files(tmp_path, small_hgp):
    hc, hd = tmp_path / "hx.txt", tmp_path / "hz.txt"
    write_binary(hc, small_hgp.hc)
    write_binary(hd, small_hgp.hd)
    return str(hc), str(hd)


def write(path, rows):
    path.write_text(format_dense(BinaryMatrix.from_dense(rows)))
    return str(path)


def test_check_ok(pair_files, capsys):
    assert main(["check", *pair_files]) == 0
    out = capsys.readouterr().out
    assert "overlap histogram: 2:16" in out
    assert "congruence method: applicable" in out


def test_check_violation(tmp_path, capsys):
    a = write(tmp_path / "a.txt", [[1, 1, 0]])
    b = write(tmp_path / "b.txt", [[1, 0, 1]])
    assert main(["check", a, b]) == 1
    assert "(0,0) overlap 1" in capsys.readouterr().out


def test_check_overlap_four_not_applicable(tmp_path, capsys):
    a = write(tmp_path / "a.txt", [[1, 1, 1, 1]])
    assert main(["check", a, a]) == 0
    assert "not applicable" in capsys.readouterr().out


@pytest.mark.parametrize("solver", ["eliminate", "snf", "heuristic", "csa"])
def test_extend_then_verify(pair_files, tmp_path, solver):
    out = tmp_path / solver
    assert main(["extend", *pair_files, "-o", str(out), "--solver", solver, "--seed", "5"]) == 0
    assert main(["verify", str(out / "hgamma.hex"), str(out / "hdelta.hex"), *pair_files]) == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 5 and manifest["solver"] == solver
    if solver != "csa":
        assert len((out / "congruences.txt").read_text().splitlines()) == 16


def test_extend_prime_field(pair_files, tmp_path):
    out = tmp_path / "p"
    assert main(["extend", *pair_files, "-o", str(out), "-m", "7", "--solver", "prime-field"]) == 0
    assert read_field_matrix(out / "hgamma.hex").field.m == 7
    # 255 is composite
    assert main(["extend", *pair_files, "-o", str(out), "--solver", "prime-field"]) == 2


def test_extend_is_deterministic(pair_files, tmp_path):
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        assert main(["extend", *pair_files, "-o", str(out), "--seed", "17", "--trace-elimination"]) == 0
        runs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert runs[0] == runs[1]
    assert "elimination.trace" in runs[0]


def test_dump_congruences_prints_relations(pair_files, tmp_path, capsys, listed_relations):
    assert main(["extend", *pair_files, "-o", str(tmp_path / "d"), "--dump-congruences"]) == 0
    out = capsys.readouterr().out
    for i, ip, j, jp in listed_relations:
        assert f"({i},{ip},{j},{jp}) :" in out


def test_extend_trivial_pair(tmp_path):
    hc = write(tmp_path / "hc.txt", [[1]])
    hd = tmp_path / "hd.txt"
    hd.write_text("# 0 1\n")
    out = tmp_path / "t"
    assert main(["extend", hc, str(hd), "-o", str(out)]) == 0
    # no constraints: the single entry is any nonzero element
    hg = read_field_matrix(out / "hgamma.hex")
    assert hg.support() == BinaryMatrix.from_dense([[1]])
    assert read_field_matrix(out / "hdelta.hex").shape == (0, 1)


def test_extend_overlap_four(tmp_path):
    a = write(tmp_path / "a.txt", [[1, 1, 1, 1]])
    assert main(["extend", a, a, "-o", str(tmp_path / "x")]) == 3
    assert main(["extend", a, a, "-o", str(tmp_path / "y"), "--solver", "csa"]) == 0
    assert main(["csa", a, a, "-o", str(tmp_path / "z"), "-m", "2"]) == 0


def test_csa_odd_overlap_fails(tmp_path):
    a = write(tmp_path / "a.txt", [[1, 1, 0]])
    b = write(tmp_path / "b.txt", [[1, 0, 1]])
    assert main(["csa", a, b, "-o", str(tmp_path / "o")]) == 1


def test_heuristic_timeout_exit(pair_files, tmp_path):
    out = str(tmp_path / "h")
    assert main(["extend", *pair_files, "-o", out, "--solver", "heuristic", "--max-iters", "0"]) == 3


def test_verify_paper_hex(pair_files, data_dir, capsys):
    g, d = str(data_dir / "hgamma_offset.hex"), str(data_dir / "hdelta_offset.hex")
    assert main(["verify", g, d, *pair_files, "--paper-hex"]) == 0
    out = capsys.readouterr().out
    assert "exponent congruences: ok (16 checked)" in out
    assert "Fq orthogonality: ok" in out


def test_verify_paper_hex_tampered(pair_files, data_dir, tmp_path, capsys):
    text = (data_dir / "hgamma_offset.hex").read_text()
    assert text.startswith("E9")
    bad = tmp_path / "g.hex"
    bad.write_text("EA" + text[2:])
    assert main(["verify", str(bad), str(data_dir / "hdelta_offset.hex"), *pair_files, "--paper-hex"]) == 1
    out = capsys.readouterr().out
    assert "exponent congruences: FAIL" in out
    assert "i=0, ip=0" in out


def test_verify_tampered_extension(pair_files, tmp_path, capsys):
    out = tmp_path / "e"
    assert main(["extend", *pair_files, "-o", str(out)]) == 0
    lines = (out / "hgamma.hex").read_text().splitlines()
    # header, dims, then row 0; column 0 is in the support
    row = lines[2].split()
    row[0] = "01" if row[0] != "01" else "02"
    lines[2] = " ".join(row)
    (out / "hgamma.hex").write_text("\n".join(lines) + "\n")
    capsys.readouterr()
    assert main(["verify", str(out / "hgamma.hex"), str(out / "hdelta.hex"), *pair_files]) == 1
    report = capsys.readouterr().out
    assert "Fq orthogonality: FAIL" in report
    assert "(0, 0)" in report


def test_verify_support_mismatch(pair_files, data_dir, tmp_path):
    text = (data_dir / "hgamma_offset.hex").read_text()
    bad = tmp_path / "g.hex"
    bad.write_text("00" + text[2:])
    assert main(["verify", str(bad), str(data_dir / "hdelta_offset.hex"), *pair_files, "--paper-hex"]) == 1


def test_kernel(pair_files, capsys):
    assert main(["kernel", pair_files[0]]) == 0
    assert capsys.readouterr().out.startswith("# kernel dimension 7\n")


def test_hgp_command(data_dir, tmp_path, small_hgp):
    out = tmp_path / "g"
    args = ["hgp", str(data_dir / "hgp_h1.txt"), str(data_dir / "hgp_h2.txt"), "-o", str(out)]
    assert main(args + ["--out-format", "alist"]) == 0
    assert read_binary(out / "hx.alist") == small_hgp.hc
    assert read_binary(out / "hz.alist") == small_hgp.hd


def test_usage_errors(pair_files, tmp_path):
    assert main([]) == 2
    assert main(["extend", *pair_files, "-o", str(tmp_path / "x"), "-m", "1"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 0\n")
    assert main(["check", str(bad), str(bad)]) == 2
    assert main(["check", str(tmp_path / "missing.txt"), str(bad)]) == 2
    assert main(["extend", *pair_files, "-o", str(tmp_path / "x"), "--poly", "0x11b"]) == 2
