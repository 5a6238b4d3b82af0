import pytest

from skewcalc.cli import main

SCALE2_CFG = "base = entire\nautomorphism = scale\nq = 2\n"
INTERVAL_CFG = "base = interval\nautomorphism = shift\n"


@pytest.fixture
def scale2_cfg(tmp_path):
    path = tmp_path / "scale2.cfg"
    path.write_text(SCALE2_CFG)
    return str(path)


@pytest.fixture
def interval_cfg(tmp_path):
    path = tmp_path / "interval.cfg"
    path.write_text(INTERVAL_CFG)
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- spot commands -----------------------------------------------------------


def test_qnorm_spot_values(capsys, scale2_cfg):
    base = ["--config", scale2_cfg, "qnorm", "z*x1", "--lambda", "1"]
    code, out, _ = run(capsys, base + ["--rho", "3/2"])
    assert (code, out.strip()) == (0, "0.84375")
    code, out, _ = run(capsys, base + ["--rho", "4"])
    assert (code, out.strip()) == (0, "4.0")
    code, out, _ = run(capsys, base + ["--rho", "1"])
    assert (code, out.strip()) == (0, "0.0")


def test_vanishing_spot(capsys, interval_cfg):
    code, out, _ = run(
        capsys, ["--config", interval_cfg, "vanishing", "--r", "1", "--depth", "12"]
    )
    assert code == 0
    assert out.strip() == "CollapseCertified"


def test_ideal_test_spot(capsys, scale2_cfg):
    code, out, _ = run(capsys, ["--config", scale2_cfg, "ideal-test", "x1*x2 - 1"])
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run(capsys, ["--config", scale2_cfg, "ideal-test", "x1"])
    assert (code, out.strip()) == (0, "false")


# -- other commands ----------------------------------------------------------


def test_mul_series_and_ore(capsys, scale2_cfg):
    code, out, _ = run(capsys, ["--config", scale2_cfg, "mul", "x1", "x2"])
    assert (code, out.strip()) == (0, "x1*x2")
    code, out, _ = run(capsys, ["--config", scale2_cfg, "mul", "t", "z"])
    assert (code, out.strip()) == (0, "(2*z)*t")
    code, _, err = run(capsys, ["--config", scale2_cfg, "mul", "t", "x1"])
    assert code == 3


def test_norm_series_and_ore(capsys, scale2_cfg):
    code, out, _ = run(
        capsys, ["--config", scale2_cfg, "norm", "z*x1", "--lambda", "1", "--rho", "2"]
    )
    assert (code, out.strip()) == (0, "2.0 (exact)")
    code, out, _ = run(
        capsys, ["--config", scale2_cfg, "norm", "t + t^-1", "--rho", "2"]
    )
    assert (code, out.strip()) == (0, "2.5")


def test_table_sorted_with_header(capsys, scale2_cfg):
    code, out, _ = run(
        capsys,
        ["--config", scale2_cfg, "table", "z*x1",
         "--lambda-grid", "2,1", "--rho-grid", "1,1/2"],
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "lambda,rho,value,exactness"
    assert [line.split(",")[:2] for line in lines[1:]] == [
        ["1.0", "0.5"], ["1.0", "1.0"], ["2.0", "0.5"], ["2.0", "1.0"]
    ]
    assert lines[2] == "1.0,1.0,1.0,exact"


def test_phi_outputs(capsys, scale2_cfg):
    code, out, _ = run(
        capsys, ["--config", scale2_cfg, "phi", "z*x1", "--m", "1", "--n", "1"]
    )
    assert (code, out.strip()) == (0, "1")
    code, out, _ = run(capsys, ["--config", scale2_cfg, "phi", "z*x1 + x2"])
    assert code == 0
    assert out.splitlines() == ["phi(0,-1) = 1", "phi(1,1) = 1"]


def test_to_ore(capsys, scale2_cfg):
    code, out, _ = run(capsys, ["--config", scale2_cfg, "to-ore", "x1*x2"])
    assert (code, out.strip()) == (0, "1")
    code, out, _ = run(capsys, ["--config", scale2_cfg, "to-ore", "z*x1*x2*x1"])
    assert (code, out.strip()) == (0, "(z)*t")


def test_reduce_shows_representative_and_drops(capsys, scale2_cfg):
    code, out, _ = run(
        capsys, ["--config", scale2_cfg, "reduce", "z*x1", "--rho", "3/2"]
    )
    assert code == 0
    assert "x1^2*x2" in out
    code, out, _ = run(capsys, ["--config", scale2_cfg, "reduce", "z*x1", "--rho", "1"])
    assert code == 0
    assert out.splitlines()[0] == "0"
    assert "dropped classes: (m=1, n=1)" in out


def test_localizability(capsys, scale2_cfg):
    code, out, _ = run(capsys, ["--config", scale2_cfg, "localizability"])
    assert code == 0
    assert "forward growing" in out
    assert "no negative certificate" in out


def test_vanishing_csv_format(capsys, interval_cfg):
    code, out, _ = run(
        capsys,
        ["--config", interval_cfg, "vanishing", "--r", "1", "--depth", "3",
         "--format", "csv"],
    )
    assert code == 0
    assert out.splitlines()[0] == "lambda,rho,k,value,verdict"


def test_default_config_is_scaling_base(capsys):
    code, out, _ = run(capsys, ["qnorm", "z*x1", "--rho", "4"])
    assert (code, out.strip()) == (0, "4.0")


# -- error handling ----------------------------------------------------------


def test_parse_error_exit_code(capsys, scale2_cfg):
    code, _, err = run(capsys, ["--config", scale2_cfg, "qnorm", "z*("])
    assert code == 2
    assert "parse error" in err


def test_config_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("base entire\n")
    code, _, err = run(capsys, ["--config", str(bad), "qnorm", "z*x1"])
    assert code == 2
    assert "config error" in err
    worse = tmp_path / "worse.cfg"
    worse.write_text("base = lattice\n")
    code, _, err = run(capsys, ["--config", str(worse), "qnorm", "z*x1"])
    assert code == 2


def test_missing_config_file_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, ["--config", str(tmp_path / "absent.cfg"), "norm", "1"])
    assert code == 2


def test_unsupported_configuration_exit_code(capsys, interval_cfg):
    code, _, err = run(capsys, ["--config", interval_cfg, "qnorm", "z*x1"])
    assert code == 3
    assert "unsupported configuration" in err


def test_bad_rho_exit_code(capsys, scale2_cfg):
    code, _, err = run(capsys, ["--config", scale2_cfg, "norm", "z*x1", "--rho", "0"])
    assert code == 2
