"""Command line driver, exercised in-process through dpi2.cli.run."""

import pytest

import dpi2 as d
import dpi2.cli as cli

from conftest import grid, T_TEXT


@pytest.fixture
def tmap(tmp_path):
    p = tmp_path / "T.dmap"
    p.write_text(d.dump_map(grid(T_TEXT)))
    return p


def run(capsys, argv):
    code = cli.run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_check_ok(capsys, tmap):
    code, out, err = run(capsys, ["check", str(tmap)])
    assert code == 0 and err == ""
    assert "5x5" in out and "S2" in out


def test_check_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.dmap"
    p.write_text("dmap v1 w=2 h=2 codomain=S2 basepoint=-1\n. q .\n. . .\n. . .\n")
    code, out, err = run(capsys, ["check", str(p)])
    assert code == 1 and out == ""
    assert "line 2" in err and "column 3" in err


def test_missing_file_is_an_error(capsys, tmp_path):
    code, out, err = run(capsys, ["check", str(tmp_path / "nope.dmap")])
    assert code == 1 and "error:" in err


def test_degree(capsys, tmap):
    code, out, _ = run(capsys, ["degree", str(tmap)])
    assert code == 0 and out.strip() == "1"


def test_normalize_prints_class_and_writes_cert(capsys, tmp_path, tmap):
    cert_path = tmp_path / "t.dcert"
    code, out, _ = run(capsys, ["normalize", "--cert", str(cert_path), str(tmap)])
    assert code == 0 and out.strip() == "1"
    cert, _ = d.load_certificate(cert_path.read_text())
    assert d.verify_certificate(cert).ok

    code, out, _ = run(capsys, ["verify", str(cert_path)])
    assert code == 0
    assert out.startswith("ok:") and "moves" in out


def test_normalize_zero_map(capsys, tmp_path, zero_map):
    p = tmp_path / "z.dmap"
    p.write_text(d.dump_map(zero_map))
    code, out, _ = run(capsys, ["normalize", str(p)])
    assert code == 0 and out.strip() == "0"


def test_normalize_rejects_small_k(capsys, tmap):
    code, _, err = run(capsys, ["normalize", "--k", "3", str(tmap)])
    assert code == 1 and "error:" in err


def test_verify_flags_tampering(capsys, tmp_path, tmap):
    cert_path = tmp_path / "t.dcert"
    run(capsys, ["normalize", "--cert", str(cert_path), str(tmap)])
    doc = cert_path.read_text()
    lines = doc.splitlines()
    at = next(i for i, ln in enumerate(lines) if ln.startswith("S "))
    parts = lines[at].split()
    parts[-1] = "1" if parts[-1] != "1" else "2"
    lines[at] = " ".join(parts)
    cert_path.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, ["verify", str(cert_path)])
    assert code == 1
    assert out.startswith("invalid:") and "line" in out


def test_oracle_equivalent(capsys, tmp_path):
    f = d.gen_random(1, 3, 3, moves=6)
    g = d.gen_random(1, 3, 3, moves=8)
    pf, pg = tmp_path / "f.dmap", tmp_path / "g.dmap"
    pf.write_text(d.dump_map(f))
    pg.write_text(d.dump_map(g))
    cert_path = tmp_path / "o.dcert"
    code, out, _ = run(
        capsys,
        ["oracle", "--pad", "6x6", "--max-states", "200000",
         "--cert", str(cert_path), str(pf), str(pg)],
    )
    assert code == 0
    assert out.startswith("equivalent:")
    cert, _ = d.load_certificate(cert_path.read_text())
    assert d.verify_certificate(cert).ok


def test_oracle_unknown(capsys, tmp_path, tmap):
    g = d.constant_map(d.Rectangle(4, 4), d.S2, d.BASEPOINT)
    pg = tmp_path / "c.dmap"
    pg.write_text(d.dump_map(g))
    code, out, _ = run(
        capsys, ["oracle", "--pad", "5x5", "--max-states", "50000", str(tmap), str(pg)]
    )
    # an inconclusive search is still a successful run
    assert code == 0
    assert out.startswith("unknown:") and "component exhausted" in out


def test_oracle_rejects_bad_pad(capsys, tmap):
    code, _, err = run(capsys, ["oracle", "--pad", "banana", str(tmap), str(tmap)])
    assert code == 1 and "error:" in err


def test_render_ascii_default(capsys, tmap):
    code, out, _ = run(capsys, ["render", str(tmap)])
    assert code == 0
    assert out == d.render_ascii(grid(T_TEXT))


def test_render_svg_to_file(capsys, tmp_path, tmap):
    target = tmp_path / "t.svg"
    code, out, _ = run(
        capsys,
        ["render", "--format", "svg", "--cell-size", "12", "--triangulation",
         "-o", str(target), str(tmap)],
    )
    assert code == 0
    svg = target.read_text()
    assert svg.startswith("<svg") and svg.count("<polygon") == 32


def test_gen_writes_deterministic_map(capsys, tmp_path):
    outp = tmp_path / "r.dmap"
    argv = ["gen", "--seed", "6", "-m", "7", "-n", "6", "--moves", "19",
            "--plant", "1", "-o", str(outp)]
    code, _, _ = run(capsys, argv)
    assert code == 0
    first = outp.read_text()
    assert d.triangle_count(d.load_map(first)) == 1
    run(capsys, argv)
    assert outp.read_text() == first


def test_gen_prints_to_stdout(capsys):
    code, out, _ = run(capsys, ["gen", "--seed", "0", "-m", "4", "-n", "4"])
    assert code == 0
    assert d.load_map(out).is_constant()


def test_op_product_and_inverse(capsys, tmp_path, tmap):
    inv = tmp_path / "inv.dmap"
    code, _, _ = run(capsys, ["op", "inverse", "-o", str(inv), str(tmap)])
    assert code == 0
    prod = tmp_path / "p.dmap"
    code, _, _ = run(capsys, ["op", "product", "-o", str(prod), str(tmap), str(inv)])
    assert code == 0
    f = d.load_map(prod.read_text())
    assert d.triangle_count(f) == 0
    assert f.rect.m == 9


def test_op_subdivide_extend_alpha_beta(capsys, tmp_path, tmap):
    for argv, m_expect in (
        (["op", "subdivide", str(tmap), "2"], 9),  # 5 points -> 10 points
        (["op", "extend", str(tmap), "6", "7"], 6),
        (["op", "alpha", str(tmap), "2"], 5),
        (["op", "beta", str(tmap), "0"], 4),
    ):
        code, out, _ = run(capsys, argv)
        assert code == 0
        assert d.load_map(out).rect.m == m_expect


def test_op_flood_accepts_both_label_spellings(capsys, tmp_path, zero_map):
    p = tmp_path / "z.dmap"
    p.write_text(d.dump_map(zero_map))
    code, out1, _ = run(capsys, ["op", "flood", str(p), "-1"])
    assert code == 0
    code, out2, _ = run(capsys, ["op", "flood", str(p), "."])
    assert code == 0
    assert out1 == out2
    flooded = d.load_map(out1)
    assert d.triangle_count(flooded) == d.triangle_count(zero_map)


def test_op_flood_rejects_pole(capsys, tmap):
    # flooding by e1 cannot preserve the map's basepoint frame
    code, _, err = run(capsys, ["op", "flood", str(tmap), "7"])
    assert code == 1 and "error:" in err


def test_usage_error_exit_code(capsys):
    assert cli.run(["degree"]) == 2  # missing argument -> usage error
    cap = capsys.readouterr()
    assert "usage:" in cap.err
