import json
import math

import pytest

from cuspinv.cli import main


@pytest.fixture
def files(tmp_path):
    def density(terms):
        return {"terms": [{"c": c, "e": list(e)} for e, c in terms.items()]}

    paths = {}
    paths["f1"] = tmp_path / "f1.json"
    paths["f1"].write_text(json.dumps(density({(0, 0, 0): 1.0})))
    paths["fy3"] = tmp_path / "fy3.json"
    paths["fy3"].write_text(json.dumps(density({(0, 3, 0): 1.0})))
    paths["local"] = tmp_path / "local.json"
    paths["local"].write_text(
        json.dumps({"kind": "cusp_local", "density": density({(0, 0, 0): 1.0}), "x0": 1.0})
    )
    paths["local2"] = tmp_path / "local2.json"
    paths["local2"].write_text(
        json.dumps({"kind": "cusp_local", "density": density({(0, 0, 0): 2.0}), "x0": 1.0})
    )
    paths["compact"] = tmp_path / "compact.json"
    paths["compact"].write_text(
        json.dumps({"kind": "cusp_compact", "density": density({(0, 0, 0): 1.0}), "x0": 0.25})
    )
    paths["bad"] = tmp_path / "bad.json"
    paths["bad"].write_text("{not json")
    paths["tmp"] = tmp_path
    return paths


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecompose:
    def test_unit_density(self, files, capsys):
        code, out, _ = _run(
            capsys, ["decompose", "--density", str(files["f1"]), "--no-cross-check"]
        )
        assert code == 0
        data = json.loads(out)
        assert data["alpha"][0] == 1.0
        assert all(v == 0.0 for v in data["beta"])

    def test_y_cubed(self, files, capsys):
        code, out, _ = _run(
            capsys, ["decompose", "--density", str(files["fy3"]), "--no-cross-check"]
        )
        data = json.loads(out)
        assert data["alpha"] == [0.0, 0.4]
        assert data["beta"] == [0.0]

    def test_config_overrides_flags(self, files, capsys):
        cfg = files["tmp"] / "cfg.json"
        cfg.write_text(json.dumps({"density": str(files["fy3"])}))
        code, out, _ = _run(
            capsys,
            [
                "--config",
                str(cfg),
                "decompose",
                "--density",
                str(files["f1"]),
                "--no-cross-check",
            ],
        )
        assert code == 0
        assert json.loads(out)["alpha"] == [0.0, 0.4]

    def test_cross_check_summary(self, files, capsys):
        code, out, _ = _run(capsys, ["decompose", "--density", str(files["f1"])])
        data = json.loads(out)
        cc = data["cross_check"]
        assert abs(cc["a0_fit"] - cc["a0_algebraic"]) < 1e-4

    def test_malformed_input_exit_2(self, files, capsys):
        code, out, err = _run(capsys, ["decompose", "--density", str(files["bad"])])
        assert code == 2
        assert "input error" in err
        assert out == ""


class TestActions:
    ARGS = ["--grid", "3x3", "--h-range", "-0.003", "0.003", "--l-range", "-0.05", "0.01"]

    def test_csv_header(self, files, capsys):
        code, out, _ = _run(capsys, ["actions", "--model", str(files["compact"])] + self.ARGS)
        assert code == 0
        assert out.splitlines()[0] == "H,lambda,stratum,Pi,Pi_circ,I,I_circ,I_mu"

    def test_stratum_filter(self, files, capsys):
        _, out, _ = _run(
            capsys,
            ["actions", "--model", str(files["compact"]), "--stratum", "narrow"] + self.ARGS,
        )
        rows = out.strip().splitlines()[1:]
        assert rows
        assert all(r.split(",")[2] == "narrow" for r in rows)

    def test_I_column_equals_lambda(self, files, capsys):
        _, out, _ = _run(capsys, ["actions", "--model", str(files["compact"])] + self.ARGS)
        for row in out.strip().splitlines()[1:]:
            parts = row.split(",")
            if parts[5]:
                assert float(parts[5]) == float(parts[1])

    def test_byte_determinism(self, files, capsys):
        _, out1, _ = _run(capsys, ["actions", "--model", str(files["compact"])] + self.ARGS)
        _, out2, _ = _run(capsys, ["actions", "--model", str(files["compact"])] + self.ARGS)
        assert out1 == out2

    def test_json_format(self, files, capsys):
        _, out, _ = _run(
            capsys,
            ["actions", "--model", str(files["compact"]), "--format", "json"] + self.ARGS,
        )
        data = json.loads(out)
        assert data["mu_shift"] == 0
        assert len(data["rows"]) == 9

    def test_output_file(self, files, capsys):
        dest = files["tmp"] / "chart.csv"
        code, out, _ = _run(
            capsys,
            ["actions", "--model", str(files["compact"]), "--out", str(dest)] + self.ARGS,
        )
        assert code == 0
        assert out == ""
        assert dest.read_text().startswith("H,lambda")


class TestCompare:
    def test_self_comparison(self, files, capsys):
        code, out, _ = _run(
            capsys, ["compare", "--sys1", str(files["local"]), "--sys2", str(files["local"])]
        )
        assert code == 0
        assert json.loads(out)["equivalent"] is True

    def test_scaled_density_not_equivalent(self, files, capsys):
        _, out, _ = _run(
            capsys, ["compare", "--sys1", str(files["local"]), "--sys2", str(files["local2"])]
        )
        assert json.loads(out)["equivalent"] is False

    def test_compact_self_comparison_reports_k(self, files, capsys):
        _, out, _ = _run(
            capsys,
            ["compare", "--sys1", str(files["compact"]), "--sys2", str(files["compact"])],
        )
        data = json.loads(out)
        assert data["equivalent"] is True
        assert data["k"] == 0


class TestInvariants:
    def test_unit_density_zero_canonical_f(self, files, capsys):
        code, out, _ = _run(capsys, ["invariants", "--sys", str(files["local"])])
        assert code == 0
        data = json.loads(out)
        assert all(abs(v) < 1e-9 for v in data["one_dof"]["canonical_f"])
        assert all(h > 0 for _, h in data["h_samples"])


class TestLattice:
    def test_verification_with_half_vector(self, files, capsys):
        code, out, _ = _run(
            capsys,
            [
                "lattice",
                "--sys",
                str(files["compact"]),
                "--at",
                "0.0",
                "-0.05",
                "--stratum",
                "narrow",
                "--verify",
            ],
        )
        assert code == 0
        data = json.loads(out)
        checks = data["verification"]
        assert checks[0]["returned"] and checks[1]["returned"]
        assert not checks[2]["returned"]  # half of the second basis vector

    def test_basis_shape(self, files, capsys):
        _, out, _ = _run(
            capsys, ["lattice", "--sys", str(files["compact"]), "--at", "0.05", "0.02", "--stratum", "wide"]
        )
        data = json.loads(out)
        assert abs(data["basis"][0][1] - 2 * math.pi) < 1e-12


class TestTransport:
    def test_points_roundtrip(self, files, capsys):
        pts = files["tmp"] / "pts.json"
        pts.write_text(json.dumps([[0.028, -0.4805, -0.3]]))
        code, out, _ = _run(
            capsys,
            [
                "transport",
                "--sys1",
                str(files["local"]),
                "--sys2",
                str(files["local"]),
                "--points",
                str(pts),
            ],
        )
        assert code == 0
        data = json.loads(out)
        entry = data["points"][0]
        assert abs(entry["xy_residual"]) < 1e-6
        assert entry["fiber_drift"] < 1e-9

    def test_bad_points_exit_2(self, files, capsys):
        pts = files["tmp"] / "pts.json"
        pts.write_text(json.dumps([[0.1]]))
        code, _, err = _run(
            capsys,
            [
                "transport",
                "--sys1",
                str(files["local"]),
                "--sys2",
                str(files["local"]),
                "--points",
                str(pts),
            ],
        )
        assert code == 2
        assert "input error" in err
