import io
import json

import numpy as np
import pytest

import framescale as fs
from framescale import cli


def run_cli(argv):
    out = io.StringIO()
    err = io.StringIO()
    code = cli.run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def mercedes_file(tmp_path):
    s3 = np.sqrt(3.0)
    path = tmp_path / "mercedes.json"
    path.write_text(json.dumps({
        "n": 2,
        "vectors": [[0.0, 1.0], [-s3 / 2, -0.5], [s3 / 2, -0.5]],
    }))
    return str(path)


@pytest.fixture
def onb_plus_file(tmp_path):
    r = 1 / np.sqrt(2.0)
    path = tmp_path / "onb_plus.json"
    path.write_text(json.dumps({
        "n": 2, "vectors": [[1.0, 0.0], [0.0, 1.0], [r, r]],
    }))
    return str(path)


@pytest.fixture
def quadrant_file(tmp_path):
    path = tmp_path / "quadrant.json"
    path.write_text(json.dumps({
        "n": 2,
        "vectors": [[1 / np.sqrt(2), 1 / np.sqrt(2)],
                    [2 / np.sqrt(5), 1 / np.sqrt(5)],
                    [1 / np.sqrt(5), 2 / np.sqrt(5)]],
    }))
    return str(path)


# --- parsing --------------------------------------------------------------------

def test_invalid_json_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run_cli(["analyze", str(path)])
    assert code == cli.EXIT_PARSE
    assert "error" in err


def test_missing_keys_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"vectors": [[1, 0]]}')
    code, _, _ = run_cli(["analyze", str(path)])
    assert code == cli.EXIT_PARSE


def test_csv_bad_entry_reports_location(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,0\n0,oops\n")
    with pytest.raises(fs.FrameFileError) as err:
        cli.load_frame_file(str(path))
    assert err.value.line == 2 and err.value.field == 2


def test_csv_parses_rows_as_vectors(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("1,0\n0,1\n0.5,0.5\n")
    ff = cli.load_frame_file(str(path))
    assert ff.n == 2 and len(ff.vectors) == 3


def test_rank_deficient_exits_3(tmp_path):
    path = tmp_path / "flat.json"
    path.write_text('{"n": 2, "vectors": [[1.0, 0.0], [2.0, 0.0]]}')
    code, _, err = run_cli(["analyze", str(path)])
    assert code == cli.EXIT_NOT_A_FRAME


def test_labels_must_match_vector_count(tmp_path):
    path = tmp_path / "lab.json"
    path.write_text('{"n": 2, "vectors": [[1, 0], [0, 1]], "labels": ["a"]}')
    code, _, _ = run_cli(["analyze", str(path)])
    assert code == cli.EXIT_PARSE


# --- subcommands ------------------------------------------------------------------

def test_analyze_mercedes(mercedes_file):
    code, out, _ = run_cli(["analyze", mercedes_file])
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["verdict"]["scalable"] and report["verdict"]["strict"]
    u = report["certificate"]["u"]
    assert max(abs(a - b) for a in u for b in u) <= 1e-9
    assert report["certificate"]["alpha"] == pytest.approx(0.5, abs=1e-12)
    assert report["frame_bounds"]["lower"] == pytest.approx(1.5, abs=1e-12)
    assert report["condition_number"]["after"] == pytest.approx(1.0, abs=1e-9)


def test_certify_quadrant_emits_separator(quadrant_file):
    code, out, _ = run_cli(["certify", quadrant_file])
    assert code == 0
    doc = json.loads(out)
    assert not doc["scalable"]
    assert doc["certificate"]["type"] == "separator"
    assert doc["certificate"]["margin"] > 0


def test_scale_parseval_zeroes_redundant_column(onb_plus_file):
    code, out, _ = run_cli(["scale", "--parseval", onb_plus_file])
    assert code == 0
    doc = json.loads(out)
    scaled = fs.build_frame(doc["n"], doc["vectors"])
    assert np.linalg.norm(scaled.gram_dual() - np.eye(2)) <= 1e-9
    np.testing.assert_allclose(doc["vectors"][2], [0.0, 0.0], atol=1e-12)


def test_scale_nonscalable_exits_4(quadrant_file):
    code, _, err = run_cli(["scale", quadrant_file])
    assert code == cli.EXIT_HYPOTHESIS


def test_fmap_emits_transform(onb_plus_file):
    code, out, _ = run_cli(["fmap", onb_plus_file])
    assert code == 0
    doc = json.loads(out)
    assert doc["d"] == 2
    np.testing.assert_allclose(doc["columns"],
                               [[1, 0], [-1, 0], [0, 0.5]], atol=1e-15)


def test_subsets_query(onb_plus_file):
    code, out, _ = run_cli(["subsets", onb_plus_file, "--m", "2",
                            "--strict"])
    assert code == 0
    doc = json.loads(out)
    assert doc["scalable"] and doc["witness"] == [0, 1]


def test_subsets_budget_exhausted_exits_5(tmp_path):
    rng = np.random.default_rng(1)
    from conftest import random_scalable_frame
    f = random_scalable_frame(rng, 2, 6)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(
        {"n": 2, "vectors": [list(map(float, c)) for c in f.columns]}))
    code, _, err = run_cli(["subsets", str(path), "--m", "4", "--strict",
                            "--budget", "2"])
    assert code == cli.EXIT_BUDGET


def test_witness_emits_perturbed_frame(tmp_path):
    r = 1 / np.sqrt(3.0)
    path = tmp_path / "base.json"
    path.write_text(json.dumps({
        "n": 3,
        "vectors": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [r, r, r]],
    }))
    code, out, _ = run_cli(["witness", str(path), "--eps", "0.01",
                            "--seed", "5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["distance"] <= 0.01
    assert doc["separator"]["type"] == "separator"
    perturbed = fs.build_frame(doc["perturbed"]["n"],
                               doc["perturbed"]["vectors"])
    assert not fs.decide(perturbed).scalable


def test_witness_hypothesis_violation_exits_4(mercedes_file):
    code, _, err = run_cli(["witness", mercedes_file, "--eps", "0.01"])
    assert code == cli.EXIT_HYPOTHESIS


def test_random_roundtrip(tmp_path):
    out_path = tmp_path / "frame.json"
    code, _, _ = run_cli(["random", "--n", "3", "--m", "5", "--seed", "9",
                          "--out", str(out_path)])
    assert code == 0
    ff = cli.load_frame_file(str(out_path))
    frame = fs.build_frame(ff.n, ff.vectors)
    assert (frame.n, frame.m) == (3, 5)
    np.testing.assert_array_equal(frame.matrix,
                                  fs.random_frame(3, 5, seed=9).matrix)


def test_exact_mode_adds_rational_strings(mercedes_file):
    code, out, _ = run_cli(["certify", mercedes_file, "--mode", "exact"])
    assert code == 0
    doc = json.loads(out)
    ratio = doc["certificate"]["u_rational"]
    assert len(ratio) == 3
    from fractions import Fraction
    total = sum(Fraction(s) for s in ratio)
    assert total == 1


# --- report properties ----------------------------------------------------------

def test_report_deterministic_modulo_timings(mercedes_file):
    _, out1, _ = run_cli(["analyze", mercedes_file, "--seed", "0"])
    _, out2, _ = run_cli(["analyze", mercedes_file, "--seed", "0"])
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("timings")
    d2.pop("timings")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_report_roundtrip_and_certificate_reverifies(mercedes_file,
                                                     quadrant_file):
    for path in (mercedes_file, quadrant_file):
        _, out, _ = run_cli(["analyze", path])
        report = json.loads(out)
        again = json.loads(json.dumps(report))
        assert again == report
        assert cli.verify_report(again)


def test_analyze_scale_tight_pipeline_closes(mercedes_file, tmp_path):
    _, out, _ = run_cli(["analyze", mercedes_file])
    report = json.loads(out)
    assert report["verdict"]["scalable"]
    scaled_path = tmp_path / "scaled.json"
    code, _, _ = run_cli(["scale", "--parseval", mercedes_file,
                          "--out", str(scaled_path)])
    assert code == 0
    doc = json.loads(scaled_path.read_text())
    scaled = fs.build_frame(doc["n"], doc["vectors"])
    tight = fs.is_tight(scaled, tol=1e-9)
    assert tight.tight and tight.alpha == pytest.approx(1.0, abs=1e-9)


def test_out_flag_writes_file(mercedes_file, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(["analyze", mercedes_file, "--out", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["schema"] == 1
