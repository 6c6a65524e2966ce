import csv
import io
import json
import math

import numpy as np
import pytest

from circrobust import cli
from circrobust.core import arc_distance
from circrobust.distributions import VonMises
from circrobust.errors import DatasetUnavailable, EmptyDataset, ParseError
from circrobust.io import DATA_ENV, AngleSample, emit, fmt, ingest, parse_angles, provenance, to_json, write_csv

PI = math.pi


class TestIngest:
    def test_bundled_sizes(self):
        assert len(ingest("frogs")) == 14
        assert len(ingest("seastars")) == 22

    def test_bundled_are_canonical(self):
        a = ingest("seastars").angles
        assert np.all((a >= -PI) & (a < PI))

    def test_larva_requires_local_copy(self, monkeypatch):
        monkeypatch.delenv(DATA_ENV, raising=False)
        with pytest.raises(DatasetUnavailable):
            ingest("larva")

    def test_larva_from_data_dir(self, tmp_path, monkeypatch):
        (tmp_path / "larva.txt").write_text("# unit: degrees\n10\n350\n")
        monkeypatch.setenv(DATA_ENV, str(tmp_path))
        s = ingest("larva")
        assert s.name == "larva" and np.allclose(s.angles, np.deg2rad([10, -10]))

    def test_degrees_and_comments(self):
        s = parse_angles("# a comment\n\n90\n  180 \n# unit: degrees\n")
        assert np.allclose(s.angles, [PI / 2, -PI])

    def test_unit_override(self):
        s = parse_angles("# unit: degrees\n1.0\n", unit="radians")
        assert s.angles[0] == 1.0

    def test_csv_with_labels(self):
        s = parse_angles("label,angle\na,0.5\nb,-1\n")
        assert s.labels == ("a", "b") and np.allclose(s.angles, [0.5, -1.0])

    @pytest.mark.parametrize("text,line", [("0.1\nabc\n", 2), ("0.1\n\ninf\n", 3), ("x,y\n1,2\n", 1),
                                           ("angle,label\n1,a\n2\n", 3)])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as e:
            parse_angles(text)
        assert e.value.line == line

    def test_empty(self):
        with pytest.raises(EmptyDataset):
            parse_angles("# nothing\n")

    def test_round_trip(self, tmp_path, rng):
        s = AngleSample(np.atleast_1d(rng.uniform(-PI, PI, 50)))
        path = tmp_path / "a.txt"
        emit(s, path)
        assert np.array_equal(ingest(path).angles, s.angles)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetUnavailable):
            ingest(tmp_path / "nope.txt")


class TestSerialization:
    def test_fmt(self):
        assert fmt(math.pi) == "3.14159265359"
        assert fmt(3) == "3" and fmt(math.inf) == "inf" and fmt(True) == "true"

    def test_provenance_hash_is_stable(self):
        a = provenance("x", 1, {"b": 2, "a": 1})
        b = provenance("x", 1, {"a": 1, "b": 2})
        assert a == b and len(a["config_hash"]) == 16

    def test_csv_header(self):
        text = write_csv([{"k": "clms", "v": 1 / 3}], ["k", "v"], {"command": "t"})
        assert text.splitlines() == ["# command: t", "k,v", "clms,0.333333333333"]

    def test_json_rounding(self):
        body = json.loads(to_json({"x": 1 / 3, "y": [math.inf]}))
        assert body == {"x": 0.333333333333, "y": ["inf"]}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    return list(csv.DictReader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))


class TestCli:
    def test_estimate_seastars(self, capsys):
        code, out, _ = run(capsys, "estimate", "--data", "seastars", "--kind", "clms", "--model", "vm")
        body = json.loads(out)
        assert code == 0 and body["parameter"] == pytest.approx(7.92, abs=0.05)
        assert body["provenance"]["seed"] == 42

    def test_detect_frogs(self, capsys):
        code, out, _ = run(capsys, "detect", "--data", "frogs", "--alpha", "0.01")
        body = json.loads(out)
        assert code == 0 and body["flaggedCount"] == 1
        (flagged,) = [p["angle"] for p in body["points"] if p["flagged"]]
        assert arc_distance(flagged, 5.515) < 0.01
        assert set(body) >= {"median", "parameter", "cutoff", "alpha", "model", "points"}

    def test_are(self, capsys):
        code, out, _ = run(capsys, "are", "--model", "vm", "--kind", "clts", "--kappa", "200")
        rows = csv_rows(out)
        assert code == 0 and float(rows[0]["are"]) == pytest.approx(0.3067, abs=0.01)

    def test_bias_columns(self, capsys):
        code, out, _ = run(capsys, "bias", "--kappa", "2", "--n", "300", "--grid", "5", "--kinds", "clms,csd")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 10
        assert list(rows[0]) == ["theta", "relBias", "kind", "epsilon", "type", "seed"]

    def test_study_columns(self, capsys):
        code, out, _ = run(capsys, "study", "--model", "wn", "--sigma", "1", "--reps", "3", "--n", "40",
                           "--epsilons", "0.1")
        rows = csv_rows(out)
        assert code == 0 and len(rows) == 4
        assert list(rows[0]) == ["param", "epsilon", "estimator", "min", "q1", "median", "q3", "max", "failures"]

    def test_if_curve(self, capsys):
        code, out, _ = run(capsys, "ifcurve", "--kinds", "csd", "--grid", "3", "--kappa", "2")
        rows = csv_rows(out)
        c = VonMises(0, 2).csd
        assert code == 0 and len(rows) == 3
        assert float(rows[0]["if"]) == pytest.approx((2 - c * c / 2) / c, rel=1e-10)

    def test_violin_to_file(self, tmp_path, capsys):
        out = tmp_path / "v.svg"
        code, _, _ = run(capsys, "violin", "--data", "frogs", "--out", str(out))
        assert code == 0 and out.read_text().startswith("<svg")

    def test_deterministic_outputs(self, capsys):
        argv = ["--seed", "7", "bias", "--kappa", "1", "--n", "200", "--grid", "4", "--type", "shift"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(cli.SEED_ENV, "99")
        _, out, _ = run(capsys, "estimate", "--data", "frogs")
        assert json.loads(out)["provenance"]["seed"] == 99

    def test_parse_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("0.1\nnot-a-number\n")
        code, _, err = run(capsys, "estimate", "--data", str(bad))
        assert code == 2 and json.loads(err)["error"] == "ParseError"

    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "estimate")
        assert code == 2 and json.loads(err)["error"] == "usage"

    def test_non_unique_median(self, tmp_path, capsys):
        f = tmp_path / "eq.txt"
        f.write_text("".join(f"{v}\n" for v in np.linspace(-PI, PI, 6, endpoint=False)))
        code, _, err = run(capsys, "detect", "--data", str(f))
        assert code == 4 and json.loads(err)["error"] == "NonUniqueMedian"

    def test_explosion(self, tmp_path, capsys):
        f = tmp_path / "wide.txt"
        f.write_text("0\n2.2\n-2.3\n")
        code, out, _ = run(capsys, "estimate", "--data", str(f))
        assert code == 5 and json.loads(out)["status"] == "explosion"

    def test_numeric_error(self, capsys):
        code, _, err = run(capsys, "are", "--kappa", "-1")
        assert code == 3 and "error" in json.loads(err)

    def test_larva_unavailable(self, capsys, monkeypatch):
        monkeypatch.delenv(DATA_ENV, raising=False)
        code, _, err = run(capsys, "detect", "--data", "larva")
        assert code == 2 and json.loads(err)["error"] == "DatasetUnavailable"
