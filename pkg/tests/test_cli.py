"""End-to-end command line checks driven through cli.main."""

import json

import numpy as np
import pytest

from latprox import cli
from latprox.basis import Basis, is_unimodular, read_basis_csv, write_basis_csv
from latprox.bounds import bound_table
from latprox.geometry import distance_spectrum
from latprox.reduction import is_lll_reduced

from conftest import random_basis


@pytest.fixture
def basis_file(tmp_path, rng):
    b = random_basis(rng, 3)
    path = tmp_path / "basis.csv"
    write_basis_csv(str(path), b)
    return str(path), b


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0


def test_reduce_round_trip(basis_file, tmp_path):
    path, b = basis_file
    out = tmp_path / "report.json"
    rc = cli.main(["reduce", "--basis", path, "--method", "lll",
                   "--delta", "0.75", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    reduced = Basis(np.array(doc["reduced"]))
    assert is_lll_reduced(reduced, delta=0.75)
    u = doc["transform"]
    assert is_unimodular(u)
    assert np.allclose(b.entries @ np.array(u, dtype=float),
                       reduced.entries, atol=1e-8)
    assert doc["swaps"] >= 0


def test_reduce_dual_side(basis_file, tmp_path):
    path, _ = basis_file
    out = tmp_path / "report.json"
    rc = cli.main(["reduce", "--basis", path, "--method", "lll", "--side", "dual",
                   "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    from latprox.basis import dual_basis
    assert is_lll_reduced(dual_basis(Basis(np.array(doc["reduced"]))), delta=0.75)


def test_spectrum_csv(basis_file, tmp_path):
    path, b = basis_file
    out = tmp_path / "spec.csv"
    rc = cli.main(["spectrum", "--basis", path, "--out", str(out)])
    assert rc == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    assert header[0] == "i"
    sp = distance_spectrum(b)
    data = [ln.split(",") for ln in lines[1:1 + b.n]]
    for k, row in enumerate(data):
        assert int(row[0]) == k + 1
        assert float(row[header.index("d_zf")]) == pytest.approx(sp.d_zf[k], rel=1e-12)
        assert float(row[header.index("d_sic")]) == pytest.approx(sp.d_sic[k], rel=1e-12)
    tail = lines[1 + b.n]
    assert tail.startswith("d_ld")
    assert float(tail.split(",")[1]) == pytest.approx(sp.d_ld, rel=1e-12)


def test_bounds_csv_matches_tables(tmp_path):
    out = tmp_path / "bounds.csv"
    rc = cli.main(["bounds", "--n-max", "8", "--delta", "0.75", "--out", str(out)])
    assert rc == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    for ln in lines[1:]:
        row = ln.split(",")
        n = int(row[0])
        t = bound_table(n, delta=0.75)
        col = header.index("primal-lll-zf-lin")
        assert float(row[col]) == pytest.approx(t.overall["primal-lll-zf"], rel=1e-12)


def test_prox_smoke(tmp_path):
    out = tmp_path / "prox.csv"
    rc = cli.main(["prox", "--n", "2", "--trials", "20", "--method", "lll",
                   "--delta", "0.75", "--side", "primal", "--seed", "5",
                   "--out", str(out)])
    assert rc == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    header, row = lines[0].split(","), lines[1].split(",")
    rec = dict(zip(header, row))
    assert rec["method"] == "lll-primal-d0.75"
    assert float(rec["max_ratio_zf"]) <= float(rec["bound_zf"])


def test_ber_command(tmp_path):
    cfg = {
        "n_t": 2, "n_r": 2, "qam_order": 4, "snr_grid_db": [14.0],
        "max_trials": 150, "max_errors": 40, "seed": 6,
        "chains": [
            {"detector": "zf", "criterion": "plain", "boundary": "clamp"},
            {"detector": "zf", "criterion": "plain", "boundary": "clamp",
             "reduction": {"method": "lll", "delta": 0.75, "side": "dual"}},
        ],
    }
    cfg_path = tmp_path / "sim.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "ber.csv"
    rc = cli.main(["ber", "--config", str(cfg_path), "--out", str(out)])
    assert rc == 0
    lines = [ln for ln in out.read_text().splitlines() if not ln.startswith("#")]
    assert lines[0].startswith("snr_db,chain,bit_errors,bits_sent")
    assert len(lines) == 3  # header + one row per chain


def _decoded_coefficients(path):
    lines = [ln for ln in path.read_text().splitlines() if not ln.startswith("#")]
    return [int(v) for v in lines[0].split(",")]


def test_decode_command(basis_file, tmp_path):
    path, b = basis_file
    x = np.array([1, -2, 0])
    yfile = tmp_path / "y.csv"
    np.savetxt(yfile, b.entries @ x)
    out = tmp_path / "dec.csv"
    rc = cli.main(["decode", "--basis", path, "--y", str(yfile),
                   "--detector", "sic", "--reduction", "lll", "--out", str(out)])
    assert rc == 0
    assert _decoded_coefficients(out) == [1, -2, 0]


def test_decode_inline_vector(basis_file, tmp_path):
    path, b = basis_file
    y = b.entries @ np.array([2, 1, -1])
    out = tmp_path / "dec.csv"
    # --y=... keeps argparse from reading a leading minus as a flag
    rc = cli.main(["decode", "--basis", path,
                   "--y=" + ",".join(f"{v:.6f}" for v in y),
                   "--detector", "zf", "--out", str(out)])
    assert rc == 0
    assert _decoded_coefficients(out) == [2, 1, -1]


def test_missing_input_file_exits_2(capsys):
    assert cli.main(["decode", "--basis", "no-such-file.csv", "--y", "1,2"]) == 2
    assert "error:" in capsys.readouterr().err


def test_decode_with_alphabet_clamps(basis_file, tmp_path):
    path, b = basis_file
    x = np.array([1, 3, 0])
    yfile = tmp_path / "y.csv"
    np.savetxt(yfile, b.entries @ x)
    out = tmp_path / "dec.csv"
    rc = cli.main(["decode", "--basis", path, "--y", str(yfile),
                   "--detector", "zf", "--boundary", "clamp",
                   "--alphabet", "0:2", "--out", str(out)])
    assert rc == 0
    assert _decoded_coefficients(out) == [1, 2, 0]


def test_outputs_carry_config_header(basis_file, tmp_path):
    path, _ = basis_file
    out = tmp_path / "spec.csv"
    cli.main(["spectrum", "--basis", path, "--out", str(out)])
    text = out.read_text()
    assert text.startswith("# latprox ")
    assert "# spectrum config:" in text


def test_bad_seed_exits_2(basis_file):
    path, _ = basis_file
    for bad in ("-4", str(2 ** 64)):
        with pytest.raises(SystemExit) as exc:
            cli.main(["reduce", "--basis", path, "--seed", bad])
        assert exc.value.code == 2


def test_rank_deficient_basis_exits_2(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("1.0,2.0\n2.0,4.0\n")
    assert cli.main(["reduce", "--basis", str(p)]) == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
