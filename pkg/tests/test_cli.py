import json

import pytest

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_optimize_example_one(capsys):
    code, out, _ = run(capsys, "optimize", "--dist", "gaussian", "--sigma2", "1", "--order", "5")
    assert code == 0
    payload = json.loads(out)
    assert payload["gain"] == pytest.approx(5.0, abs=1e-9)
    assert payload["a"] == pytest.approx([15.0, -10.0, 1.0], rel=1e-8)
    assert payload["normalized_by_last"] is True
    assert payload["eigenvalues"] == pytest.approx([1.0, 3.0, 5.0], abs=1e-9)


def test_optimize_from_moment_file(capsys, tmp_path):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps({"m": 2, "even_moments": [1, "1/3", "1/5", "1/7"]}))
    code, out, _ = run(capsys, "optimize", "--moments", str(path))
    assert code == 0
    assert len(json.loads(out)["a"]) == 2


def test_optimize_with_non_positive_definite_moments(capsys, tmp_path):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps({"m": 2, "even_moments": [1, 1, 1, 1]}))
    code, out, _ = run(capsys, "optimize", "--moments", str(path), "--order", "3")
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "NotPositiveDefiniteError"
    assert payload["detail"]["index"] == 1


def test_optimize_even_order_is_usage_error(capsys):
    code, out, err = run(capsys, "optimize", "--order", "4")
    assert code == 2
    assert out == ""
    assert "odd" in err


def test_hermite_zero(capsys):
    code, out, _ = run(capsys, "hermite", "--n", "0")
    assert code == 0
    assert json.loads(out)["packed"] == ["1"]


def test_hermite_five(capsys):
    code, out, _ = run(capsys, "hermite", "--n", "5")
    payload = json.loads(out)
    assert payload["packed"] == ["15", "-10", "1"]
    assert payload["dense"] == ["0", "15", "0", "-10", "0", "1"]


def test_factor_elimination(capsys):
    code, out, _ = run(capsys, "factor", "--matrix", "B", "--m", "3", "--sigma2", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["pivots"] == ["1", "6", "120"]
    assert payload["source"] == "elimination"


@pytest.mark.parametrize("matrix", ["A", "B"])
@pytest.mark.parametrize("m, sigma2", [(1, "4"), (6, "9/49"), (12, "1/4")])
def test_factor_closed_form_matches_elimination(capsys, matrix, m, sigma2):
    _, eliminated, _ = run(capsys, "factor", "--matrix", matrix, "--m", str(m), "--sigma2", sigma2)
    _, closed, _ = run(capsys, "factor", "--matrix", matrix, "--m", str(m), "--sigma2", sigma2, "--closed-form")
    eliminated, closed = json.loads(eliminated), json.loads(closed)
    assert eliminated["lower"] == closed["lower"]
    assert eliminated["pivots"] == closed["pivots"]
    assert closed["source"] == "closed-form"


def test_closed_form_requires_gaussian(capsys):
    code, _, _ = run(capsys, "factor", "--matrix", "A", "--m", "2", "--dist", "uniform", "--closed-form")
    assert code == 2


def test_verify_small_grid(capsys):
    code, out, _ = run(capsys, "verify", "--m-max", "2", "--sigma2", "1,1/4")
    assert code == 0
    report = json.loads(out)
    assert report["overall"] == "pass"
    assert report["sigma2"] == ["1", "1/4"]


def test_verify_rejects_non_positive_variance(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["verify", "--m-max", "2", "--sigma2", "1,-1"])
    assert excinfo.value.code == 2


def test_verify_uses_config_file(capsys, tmp_path):
    path = tmp_path / "hankel.toml"
    path.write_text('verify_m_max = 1\nverify_sigma2 = ["4"]\n')
    code, out, _ = run(capsys, "--config", str(path), "verify")
    assert code == 0
    report = json.loads(out)
    assert report["m_max"] == 1
    assert report["sigma2"] == ["4"]


def test_missing_config_file(capsys, tmp_path):
    code, _, err = run(capsys, "--config", str(tmp_path / "absent.toml"), "hermite", "--n", "1")
    assert code == 2
    assert "absent.toml" in err


def test_gain_of_coefficient_file(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"a": ["15", "-10", "1"]}))
    code, out, _ = run(capsys, "gain", "--coeffs", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["gain_exact"] == "5"
    assert payload["monte_carlo"] is None


def test_gain_with_monte_carlo(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"a": ["15", "-10", "1"]}))
    code, out, _ = run(capsys, "--seed", "5", "gain", "--coeffs", str(path), "--monte-carlo", "100000")
    assert code == 0
    monte_carlo = json.loads(out)["monte_carlo"]
    assert monte_carlo["seed"] == 5
    assert monte_carlo["samples"] == 100000
    assert abs(monte_carlo["estimate"] - 5.0) <= 4 * monte_carlo["standard_error"]


def test_monte_carlo_requires_gaussian(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"a": ["1"]}))
    code, _, _ = run(capsys, "gain", "--coeffs", str(path), "--dist", "uniform", "--monte-carlo", "100")
    assert code == 2


def test_gain_of_zero_polynomial(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"a": ["0", "0"]}))
    code, out, _ = run(capsys, "gain", "--coeffs", str(path))
    assert code == 1
    assert json.loads(out)["error"] == "DegeneratePolynomialError"


def test_missing_coefficient_file(capsys, tmp_path):
    code, out, _ = run(capsys, "gain", "--coeffs", str(tmp_path / "absent.json"))
    assert code == 2
    assert out == ""


def test_malformed_coefficient_file(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "gain", "--coeffs", str(path))
    assert code == 2


def test_moments_from_samples_with_psd_check(capsys, tmp_path):
    path = tmp_path / "samples.txt"
    path.write_text("1\n-1\n")
    code, out, _ = run(capsys, "moments", "--m", "2", "--samples", str(path), "--check-psd")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "empirical-samples"
    assert payload["even_moments"] == ["1", "1", "1", "1"]
    assert payload["psd_rank_a"] == 1
    assert payload["psd_rank_b"] == 1


def test_strict_psd_rejects_rank_deficient_samples(capsys, tmp_path):
    path = tmp_path / "samples.txt"
    path.write_text("1\n-1\n")
    code, out, _ = run(capsys, "--strict-psd", "moments", "--m", "2", "--samples", str(path), "--check-psd")
    assert code == 1
    assert json.loads(out)["error"] == "NotPositiveDefiniteError"


def test_gaussian_moments_dump(capsys):
    code, out, _ = run(capsys, "moments", "--m", "3", "--sigma2", "1/4")
    assert code == 0
    assert json.loads(out)["even_moments"] == ["1", "1/4", "3/16", "15/64", "105/256", "945/1024"]


def test_table_format(capsys):
    code, out, _ = run(capsys, "--format", "table", "factor", "--matrix", "B", "--m", "2")
    assert code == 0
    assert "pivots: [1, 6]" in out
    assert "source: elimination" in out


def test_optimize_reports_lost_precision_at_high_order(capsys):
    code, out, _ = run(capsys, "optimize", "--dist", "gaussian", "--sigma2", "1", "--order", "25")
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "ConditioningError"
    assert payload["detail"]["order"] == 25


def test_factor_reads_beyond_declared_order(capsys, tmp_path):
    path = tmp_path / "moments.json"
    path.write_text(json.dumps({"m": 2, "even_moments": [1, 1, 3, 15, 105, 945]}))
    code, out, _ = run(capsys, "factor", "--matrix", "B", "--m", "3", "--moments", str(path))
    assert code == 0
    assert json.loads(out)["pivots"] == ["1", "6", "120"]


def test_gain_rejects_zero_proposal_scale(capsys, tmp_path):
    path = tmp_path / "coeffs.json"
    path.write_text(json.dumps({"a": ["1"]}))
    code, out, _ = run(capsys, "gain", "--coeffs", str(path), "--monte-carlo", "100", "--proposal-scale", "0")
    assert code == 1
    payload = json.loads(out)
    assert payload["error"] == "InvalidDistributionError"
    assert payload["detail"]["proposal_scale"] == 0.0
