import json
import subprocess
import sys
from fractions import Fraction

import pytest

from pseudosplines.analysis import SupportOctagon
from pseudosplines.cli import main, verify_symbol
from pseudosplines.formats import (
    FormatError,
    MaskDocument,
    grid_from_csv,
    grid_to_csv,
    parse_fraction,
    read_pgm,
)
from pseudosplines.engine import GridFunction, delta_grid, sample_polynomial
from pseudosplines.laurent import BivariateLaurent
from pseudosplines.reference import PRINTED_MASKS
from pseudosplines.symbols import make_pseudospline

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mask_matrix_a21(capsys):
    code, out, _ = run(capsys, "mask", "pseudo", "-n", "2", "-l", "1", "--format", "matrix")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# pseudo n=2 l=1"
    assert len(lines) == 8
    assert lines[4].startswith("1/32 *")
    rows = [[int(v) for v in line.split("[")[1].split("]")[0].split()] for line in lines[1:]]
    assert rows == [list(r) for r in PRINTED_MASKS[2, 1].entries]
    assert rows[3] == [-2, 0, 18, 32, 18, 0, -2]


def test_mask_matrix_a10_and_box(capsys):
    code, out, _ = run(capsys, "mask", "--family", "pseudo", "-n", "1", "-l", "0")
    assert code == 0
    rows = [line.split("[")[1].split("]")[0].split() for line in out.splitlines()[1:]]
    assert rows == [["1", "2", "1"], ["2", "4", "2"], ["1", "2", "1"]]
    assert "1/4 *" in out
    code, out, _ = run(capsys, "mask", "box", "-n", "3")
    assert code == 0 and "1/256 *" in out


def test_mask_json_is_document(capsys):
    code, out, _ = run(capsys, "mask", "pseudo", "-n", "3", "-l", "1", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["family"] == "pseudo"
    assert d["params"] == {"n": 3, "l": 1, "mu": []}
    assert d["denominator"] == 256
    assert d["support"] == {"m": 4, "n": 4, "l": 3}
    doc = MaskDocument.from_json(out)
    assert doc.symbol() == make_pseudospline(3, 1).poly


def test_mask_csv(capsys):
    code, out, _ = run(capsys, "mask", "pseudo", "-n", "1", "-l", "0", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "alpha1,alpha2,value"
    assert "0,0,1" in lines and "1,0,1/2" in lines and "-1,-1,1/4" in lines
    assert len(lines) == 10


def test_verify_examples(capsys):
    code, out, _ = run(capsys, "verify", "pseudo", "-n", "3", "-l", "1")
    assert code == 0
    assert "generation_degree" in out and "all checks pass" in out
    assert "convergence is not established" in out
    code, out, _ = run(capsys, "verify", "pseudo", "-n", "3", "-l", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["measured"]["interpolatory"] is True
    assert d["measured"]["generation_degree"] == d["measured"]["reproduction_degree"] == 5
    code, out, _ = run(capsys, "verify", "variant", "-n", "3", "-l", "2", "--mu", "1,1", "--format", "json")
    d = json.loads(out)
    assert code == 0
    assert d["measured"]["interpolatory"] is False
    assert d["measured"]["support"] == {"m": 5, "n": 5, "l": 4}


@pytest.mark.parametrize("n,l", [(n, l) for n in range(1, 9) for l in range(n)])
def test_verify_exit_contract(n, l, capsys):
    code, _, _ = run(capsys, "verify", "pseudo", "-n", str(n), "-l", str(l))
    assert code == 0


def test_verify_failure_reports_witness(tmp_path, capsys):
    # a perturbed mask: still symmetric, but no longer satisfies the sum rules
    doc = MaskDocument.from_symbol("pseudo", make_pseudospline(2, 1).poly, 2, 1)
    d = doc.to_dict()
    d["rows"][3][3] += 1
    d.pop("support")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, out, _ = run(capsys, "verify", "--mask-file", str(path))
    assert code == 1
    assert "FAIL" in out and "FAILED:" in out


def test_json_round_trip_gives_identical_report(tmp_path, capsys):
    for argv, params in [
        (("pseudo", "-n", "3", "-l", "1"), ("pseudo", 3, 1, ())),
        (("variant", "-n", "4", "-l", "1", "--mu=-2/3"), ("variant", 4, 1, (F(-2, 3),))),
        (("amu", "--mu", "1"), ("amu", None, None, (F(1),))),
    ]:
        path = tmp_path / "doc.json"
        assert main(["mask", *argv, "--format", "json", "--out", str(path)]) == 0
        assert main(["verify", *argv, "--format", "json", "--out", str(tmp_path / "a.json")]) == 0
        assert main(["verify", "--mask-file", str(path), "--format", "json", "--out", str(tmp_path / "b.json")]) == 0
        direct = json.loads((tmp_path / "a.json").read_text())
        reparsed = json.loads((tmp_path / "b.json").read_text())
        assert direct == reparsed
        doc = MaskDocument.from_json(path.read_text())
        assert verify_symbol(params[0], doc.symbol(), *params[1:]).to_dict() == direct


def test_support_and_sweep(capsys):
    code, out, _ = run(capsys, "support", "-n", "4", "-l", "3")
    assert code == 0
    assert "width 15, corner cut 6" in out and "match" in out
    code, out, _ = run(capsys, "support", "-n", "1", "-l", "0")
    assert "width 3, corner cut 0" in out
    code, out, _ = run(capsys, "sweep", "--max-n", "5")
    assert code == 0
    assert "15/15 cells match" in out
    code, out2, _ = run(capsys, "sweep", "-n", "5")
    assert out2 == out


def test_sweep_with_verify(capsys):
    code, out, _ = run(capsys, "sweep", "--max-n", "4", "--verify")
    assert code == 0 and "10/10 cells match" in out


def _write_mask(tmp_path, n, l):
    path = tmp_path / f"a{n}{l}.json"
    assert main(["mask", "pseudo", "-n", str(n), "-l", str(l), "--format", "json", "--out", str(path)]) == 0
    return path


def test_subdivide_constant_grid(tmp_path, capsys):
    mask = _write_mask(tmp_path, 2, 1)
    grid = tmp_path / "ones.csv"
    pts = {(a1, a2): F(1) for a1 in range(-8, 9) for a2 in range(-8, 9)}
    grid.write_text(grid_to_csv(GridFunction(0, (-8, 8, -8, 8), pts)))
    code, out, _ = run(capsys, "subdivide", str(mask), str(grid), "--steps", "2")
    assert code == 0
    g = grid_from_csv(out)
    assert g.level == 2
    assert all(g[p] == 1 for p in g.points())


def test_subdivide_delta_tent(tmp_path, capsys):
    mask = _write_mask(tmp_path, 1, 0)
    grid = tmp_path / "delta.csv"
    grid.write_text(grid_to_csv(delta_grid(2)))
    code, out, _ = run(capsys, "subdivide", str(mask), str(grid))
    assert code == 0
    g = grid_from_csv(out)
    assert g.values == make_pseudospline(1, 0).poly.terms
    assert "1,0,1/2" in out.splitlines()


def test_subdivide_reproduces_cubic_samples(tmp_path, capsys):
    mask = _write_mask(tmp_path, 2, 1)
    p = BivariateLaurent({(2, 1): 1})
    grid = tmp_path / "x2y.csv"
    grid.write_text(grid_to_csv(sample_polynomial(p, (-5, 5, -5, 5))))
    code, out, _ = run(capsys, "subdivide", str(mask), str(grid))
    assert code == 0
    g = grid_from_csv(out)
    assert all(g[(a1, a2)] == F(a1, 2) ** 2 * F(a2, 2) for a1, a2 in g.points())


def test_limit_csv_tent(capsys):
    code, out, _ = run(capsys, "limit", "pseudo", "-n", "1", "-l", "0")
    assert code == 0
    g = grid_from_csv(out)
    assert g.level == 3
    assert max(g.values.values()) == 1 == g[(0, 0)]


def test_limit_csv_interpolatory(capsys):
    code, out, _ = run(capsys, "limit", "pseudo", "-n", "2", "-l", "1", "--steps", "3")
    g = grid_from_csv(out)
    for a1, a2 in g.points():
        if a1 % 8 == 0 and a2 % 8 == 0:
            assert g[(a1, a2)] == (1 if (a1, a2) == (0, 0) else 0)


def test_limit_pgm_footprint(tmp_path, capsys):
    out = tmp_path / "a31.pgm"
    code, _, _ = run(capsys, "limit", "pseudo", "-n", "3", "-l", "1", "--format", "pgm", "--out", str(out))
    assert code == 0
    assert out.read_bytes().startswith(b"P5\n")
    side = (tmp_path / "a31.pgm.norm.txt").read_text().splitlines()
    lo, hi = (parse_fraction(s.split("=")[1]) for s in side)
    width, height, rows = read_pgm(out)
    assert width == height and width % 2 == 1
    c = width // 2
    # pixel value of exact zero
    zero = round(-lo / (hi - lo) * 65535)
    oct8 = SupportOctagon(4 * 8, 4 * 8, 3 * 8)
    for r, row in enumerate(rows):
        for col, v in enumerate(row):
            a1, a2 = col - c, c - r
            if v != zero:
                assert oct8.contains((a1, a2))
    assert rows[c][c] == 65535


def test_pgm_requires_out(capsys):
    code, _, err = run(capsys, "limit", "pseudo", "-n", "1", "-l", "0", "--format", "pgm")
    assert code == 2 and "--out" in err


def test_outputs_are_byte_deterministic(tmp_path):
    for i in range(2):
        assert main(["mask", "pseudo", "-n", "3", "-l", "2", "--format", "json", "--out", str(tmp_path / f"m{i}.json")]) == 0
        assert main(["limit", "pseudo", "-n", "2", "-l", "0", "--steps", "2", "--out", str(tmp_path / f"l{i}.csv")]) == 0
        assert main(["limit", "pseudo", "-n", "2", "-l", "0", "--format", "pgm", "--out", str(tmp_path / f"p{i}.pgm")]) == 0
    for stem in ("m0.json", "l0.csv", "p0.pgm", "p0.pgm.norm.txt"):
        other = stem.replace("0", "1", 1)
        assert (tmp_path / stem).read_bytes() == (tmp_path / other).read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["mask", "pseudo", "-n", "2", "-l", "2"],
        ["mask", "pseudo"],
        ["mask"],
        ["verify", "variant", "-n", "3", "-l", "1", "--mu", "1"],
        ["mask", "amu"],
        ["support", "-n", "3"],
        ["sweep"],
        ["limit", "pseudo", "-n", "1", "-l", "0", "--steps", "0"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["mask", "spline"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "variant", "-n", "3", "-l", "2", "--mu", "0.5,0.5"])
    assert exc.value.code == 2


def test_malformed_files_exit_3(tmp_path, capsys):
    mask = _write_mask(tmp_path, 1, 0)
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{not json")
    grid = tmp_path / "g.csv"
    grid.write_text(grid_to_csv(delta_grid(2)))
    assert main(["verify", "--mask-file", str(bad_json)]) == 3
    assert main(["subdivide", str(bad_json), str(grid)]) == 3
    bad_grid = tmp_path / "bad.csv"
    bad_grid.write_text("alpha1,alpha2,value\n0,0,0.5\n")
    assert main(["subdivide", str(mask), str(bad_grid)]) == 3
    assert main(["subdivide", str(mask), str(tmp_path / "missing.csv")]) == 3
    # recorded support disagreeing with the rows
    d = json.loads(mask.read_text())
    d["support"]["l"] = 5
    lying = tmp_path / "lying.json"
    lying.write_text(json.dumps(d))
    assert main(["verify", "--mask-file", str(lying)]) == 3
    # too small a window for the requested steps
    tiny = tmp_path / "tiny.csv"
    tiny.write_text("alpha1,alpha2,value\n0,0,1\n")
    assert main(["subdivide", str(_write_mask(tmp_path, 3, 1)), str(tiny)]) == 3


def test_format_helpers():
    assert parse_fraction(" -3/6 ") == F(-1, 2)
    for bad in ("1.5", "1e3", "x", "1/0"):
        with pytest.raises(FormatError):
            parse_fraction(bad)
    g = grid_from_csv("alpha1,alpha2,value\n0,0,1/3\n1,2,2\n")
    assert g.window == (0, 1, 0, 2) and g[(1, 2)] == 2
    with pytest.raises(FormatError):
        grid_from_csv("a,b,c\n")
    with pytest.raises(FormatError):
        grid_from_csv("alpha1,alpha2,value\n0,0,1\n0,0,2\n")


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "pseudosplines", "support", "-n", "2", "-l", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert "width 7, corner cut 2" in res.stdout
