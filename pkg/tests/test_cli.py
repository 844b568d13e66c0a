import orjson
import pytest

from models.certificates import BoundCertificate, PairingReport
from models.configuration import Configuration
from run import main


def run_json(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    report = orjson.loads(out.read_bytes()) if out.exists() else None
    return code, report


class TestBounds:
    def test_markdown_table(self, tmp_path):
        out = tmp_path / "table.md"
        code = main(["bounds", "--k", "1..4", "--r", "1..4", "--manifold", "euclidean",
                     "--format", "markdown", "--out", str(out)])
        assert code == 0
        text = out.read_text()
        assert "implied_min_dimension" in text
        assert "hypothesis: k is a power of 2" in text

    def test_k1_row(self, tmp_path):
        code, report = run_json(tmp_path, "bounds", "--k", "1", "--r", "1..4")
        assert code == 0
        assert [row["implied_min_dimension"] for row in report["results"]] == [2, 4, 6, 8]

    def test_two_kr_minus_k(self, tmp_path):
        code, report = run_json(tmp_path, "bounds", "--k", "4", "--r", "4")
        assert code == 0
        assert report["results"][0]["strict_lower_bound"] == 28
        assert report["command"] == "bounds"

    def test_invalid_k(self, tmp_path):
        code, report = run_json(tmp_path, "bounds", "--k", "0", "--r", "1")
        assert code == 2
        assert report is None

    def test_malformed_range(self, tmp_path):
        code, _ = run_json(tmp_path, "bounds", "--k", "a..b", "--r", "1")
        assert code == 2

    def test_csv_flattens_hypotheses(self, tmp_path):
        out = tmp_path / "table.csv"
        assert main(["bounds", "--k", "4", "--r", "2", "--manifold", "projective", "--format", "csv",
                     "--out", str(out)]) == 0
        header = out.read_text().splitlines()[0]
        assert "hypothesis: k is a power of 2" in header
        assert "hypothesis: r <= k" in header

    def test_results_round_trip(self, tmp_path):
        code, report = run_json(tmp_path, "bounds", "--k", "2..4", "--r", "1..3", "--manifold", "projective",
                                "--audit-pairing")
        assert code == 0
        certificates = [BoundCertificate.model_validate(row) for row in report["results"]]
        assert [c.model_dump(mode="json") for c in certificates] == report["results"]

    def test_byte_identical_output(self, tmp_path):
        out = tmp_path / "a.json"
        main(["bounds", "--k", "1..8", "--r", "1..8", "--out", str(out)])
        first = out.read_bytes()
        main(["bounds", "--k", "1..8", "--r", "1..8", "--out", str(out)])
        assert out.read_bytes() == first

    def test_moment_flag_is_rejected(self, tmp_path):
        code, report = run_json(tmp_path, "bounds", "--k", "2", "--r", "2", "--moment")
        assert code == 2
        assert report is None

    def test_audit_pairing_reads_oracle_limits_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("NEIGHBORLY_ORACLE_MAX_K", "0")
        code, report = run_json(tmp_path, "bounds", "--k", "4", "--r", "2", "--manifold", "projective",
                                "--audit-pairing")
        assert code == 0
        assert report["results"][0]["pairing"]["value_oracle"] is None

    def test_writes_to_stdout(self, capsysbinary):
        assert main(["bounds", "--k", "2", "--r", "2"]) == 0
        report = orjson.loads(capsysbinary.readouterr().out)
        assert report["results"][0]["implied_min_dimension"] == 7


class TestVerifyTheorem2:
    def test_base_case(self, tmp_path):
        code, report = run_json(tmp_path, "verify-theorem2", "--k", "4", "--r", "1")
        assert code == 0
        pairing = PairingReport.model_validate(report["results"][0])
        assert pairing.value == 1
        assert pairing.agrees

    def test_vanishing_pairing_is_flagged(self, tmp_path):
        code, report = run_json(tmp_path, "verify-theorem2", "--k", "2", "--r", "2")
        assert code == 0
        assert report["results"][0]["value"] == 0
        assert any("pairing is 0" in f for f in report["findings"])
        assert any("dim Λ" in f for f in report["findings"])

    def test_r_above_k_is_skipped(self, tmp_path):
        code, report = run_json(tmp_path, "verify-theorem2", "--k", "2", "--r", "3")
        assert code == 0
        assert report["results"] == []
        assert any("skipped" in f for f in report["findings"])


class TestVerifyR2Model:
    def test_powers_of_two(self, tmp_path):
        code, report = run_json(tmp_path, "verify-r2-model", "--k", "2..16")
        assert code == 0
        for row in report["results"]:
            if row["k_is_power_of_two"]:
                assert (row["power_identity"], row["top_pairing"]) == (1, 1)

    def test_non_power_of_two_does_not_fail(self, tmp_path):
        code, report = run_json(tmp_path, "verify-r2-model", "--k", "6")
        assert code == 0
        assert report["results"][0]["power_identity"] == 0

    def test_empty_range(self, tmp_path):
        code, _ = run_json(tmp_path, "verify-r2-model", "--k", "5..2")
        assert code == 2


class TestMoment:
    def test_equispaced_triple(self, tmp_path):
        code, report = run_json(tmp_path, "moment", "--r", "3", "--angles", "0,2.0944,4.1888")
        assert code == 0
        assert all(row["passed"] for row in report["results"])
        assert {row["construction"] for row in report["results"]} == {"product", "nullspace"}

    def test_sweep(self, tmp_path):
        code, report = run_json(tmp_path, "moment", "--r", "4", "--sweep", "--trials", "100",
                                "--delta", "1e-3", "--seed", "7")
        assert code == 0
        assert report["results"][-1]["passes"] == 100

    def test_moment_flag_is_accepted(self, tmp_path):
        code, report = run_json(tmp_path, "moment", "--moment", "--r", "2", "--angles", "0,3.1416")
        assert code == 0
        assert report["config"]["moment"] is True

    def test_duplicate_angles(self, tmp_path):
        code, _ = run_json(tmp_path, "moment", "--r", "2", "--angles", "0,0")
        assert code == 2

    def test_angle_count_must_match_r(self, tmp_path):
        code, _ = run_json(tmp_path, "moment", "--r", "3", "--angles", "0,1")
        assert code == 2

    def test_grid_too_coarse(self, tmp_path):
        code, _ = run_json(tmp_path, "moment", "--r", "4", "--grid", "100")
        assert code == 2


class TestRank:
    def test_given_angles(self, tmp_path):
        code, report = run_json(tmp_path, "rank", "--moment", "--r", "2", "--angles", "0,1.5708")
        assert code == 0
        assert (report["results"][0]["rank"], report["results"][0]["required"]) == (3, 3)

    def test_sample(self, tmp_path):
        code, report = run_json(tmp_path, "rank", "--r", "3", "--trials", "50", "--seed", "1")
        assert code == 0
        assert report["results"][0]["omega_hits"] == 0

    def test_near_collision_is_an_omega_hit(self, tmp_path):
        code, report = run_json(tmp_path, "rank", "--r", "2", "--angles", "0,1e-9")
        assert code == 1
        assert report["results"][0]["in_omega"]


class TestLRConfig:
    def test_depth_two(self, tmp_path):
        code, report = run_json(tmp_path, "lr-config", "--k", "2", "--s", "2", "--epsilon", "0.4", "--seed", "1")
        assert code == 0
        config = Configuration.model_validate(report["results"][0])
        assert len(config.points) == 4
        assert config.min_distance > 0

    def test_composite(self, tmp_path):
        code, report = run_json(tmp_path, "lr-config", "--k", "2", "--r", "3")
        assert code == 0
        config = Configuration.model_validate(report["results"][0])
        assert len(config.points) == 3
        assert config.translations == [0.0, 3.0]
        assert config.points[2] == [3.0, 0.0]

    @pytest.mark.parametrize("argv", [
        ["lr-config", "--k", "2"],
        ["lr-config", "--k", "2", "--s", "2", "--r", "4"],
        ["lr-config", "--k", "1", "--s", "1"],
        ["lr-config", "--k", "2", "--s", "1", "--epsilon", "0.7"],
        ["lr-config", "--k", "2", "--r", "1"],
    ])
    def test_invalid_input(self, tmp_path, argv):
        code, _ = run_json(tmp_path, *argv)
        assert code == 2


def test_unknown_command():
    assert main(["nonsense"]) == 2
