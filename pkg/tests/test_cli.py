"""Expression grammar and the command-line surface."""

import io
import json

import pytest

from gausscong.cli import (
    ExprError,
    expr_to_rational,
    main,
    parse_expression,
    parse_laurent,
    parse_rational,
)


def test_parse_apery_denominator():
    ast = parse_expression("(1-x1-x2)*(1-x3-x4)-x1*x2*x3*x4")
    F = expr_to_rational(ast, 4)
    assert len(F.num) == 10
    assert F.num[(1, 1, 1, 1)] == -1
    assert F.num[(0, 0, 0, 0)] == 1


def test_parse_delannoy_denominator():
    assert parse_laurent("1-x-y-x*y").support() == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_parse_error_offsets():
    with pytest.raises(ExprError) as err:
        parse_expression("1/(1-x))")
    assert err.value.pos == 7
    with pytest.raises(ExprError) as err:
        parse_expression("1-x-$")
    assert err.value.pos == 4
    with pytest.raises(ExprError) as err:
        parse_expression("2*q")
    assert err.value.pos == 2
    with pytest.raises(ExprError):
        parse_expression("x^y")


def test_no_implicit_multiplication():
    with pytest.raises(ExprError):
        parse_expression("2x")
    with pytest.raises(ExprError):
        parse_expression("x(1+x)")


def test_precedence_and_unary_minus():
    # ^ binds tighter than unary minus: -x^2 == -(x^2)
    assert parse_rational("-x^2") == parse_rational("0-x^2")
    assert parse_rational("2*x^2") == parse_rational("2*(x^2)")
    assert parse_rational("1-2*3") == parse_rational("-5")
    assert parse_rational("x^-1*y") == parse_rational("y", "x")


def test_parse_render_fixpoint():
    for src in ("1-x-y-x*y", "1 - 2*x1 + 1/2*x1*x2^2 - x2^-1", "(1-x)*(1+x)"):
        p = parse_laurent(src)
        assert parse_laurent(p.to_string()) == p
        assert parse_laurent(p.to_string()).to_string() == p.to_string()


def run_cli(args, stdin=None, monkeypatch=None, capsys=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_check_delannoy(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["check", "--num", "1", "--den", "1-x-y-x*y", "--primes", "2,3,5",
         "--rmax", "2", "--bound", "60", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert all(rep["verdict"] == "holds" for rep in payload["reports"])


def test_cli_check_matches_library(monkeypatch, capsys):
    from gausscong.gauss import GaussCheckConfig, check_gauss

    code, out, _ = run_cli(
        ["check", "--num", "1", "--den", "1-x-y-x*y", "--primes", "2,3",
         "--rmax", "2", "--bound", "30", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    rep = check_gauss(
        parse_rational("1", "1-x-y-x*y"), (0, 0),
        GaussCheckConfig(primes=(2, 3), r_max=2), bound=30,
    )
    assert json.loads(out) == rep.to_json_dict()


def test_cli_check_parallel_jobs_identical(monkeypatch, capsys):
    base = ["check", "--num", "1", "--den", "1-x-y-x*y", "--primes", "2,3,5",
            "--rmax", "2", "--bound", "40", "--json"]
    _, seq, _ = run_cli(base, monkeypatch=monkeypatch, capsys=capsys)
    _, par, _ = run_cli(base + ["--jobs", "3"], monkeypatch=monkeypatch, capsys=capsys)
    assert json.loads(seq) == json.loads(par)


def test_cli_minton(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["minton", "--num", "2-x", "--den", "1-x-x^2", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["has_gauss_property"] is True
    assert payload["decomposition"]["constant"] == "2/1"


def test_cli_classify_linear(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["classify-linear", "--num", "x*y", "--den", "1-x-y-x*y"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0 and out.strip() == "true"
    code, out, _ = run_cli(
        ["classify-linear", "--num", "x^2", "--den", "1-x-y-x*y"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0 and out.strip() == "false"


def test_cli_expand_golden(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["expand", "--num", "1", "--den", "1-x", "--bound", "3"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    assert out.strip().splitlines() == [
        "0 : 1/1", "1 : 1/1", "2 : 1/1", "3 : 1/1"
    ]


def test_cli_stdin_numerator(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["minton", "--num", "-", "--den", "1-x-x^2"],
        stdin="2-x", monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0 and out.startswith("yes")


def test_cli_exit_zero_on_failing_verdict(monkeypatch, capsys):
    # a computed "fails" verdict is still a successful run
    code, out, _ = run_cli(
        ["check", "--num", "x-2", "--den", "x+x^2", "--vertex", "2",
         "--primes", "5,7", "--rmax", "1", "--bound", "40", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert all(r["verdict"] == "fails" for r in payload["reports"])


def test_cli_console_script():
    import shutil
    import subprocess

    exe = shutil.which("gausscong")
    if exe is None:
        pytest.skip("console script not installed")
    proc = subprocess.run(
        [exe, "minton", "--num", "2-x", "--den", "1-x-x^2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("yes")


def test_cli_parse_error_exit_code(monkeypatch, capsys):
    code, _, err = run_cli(
        ["minton", "--num", "1/(1-x))", "--den", "1-x"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 2 and "offset" in err


def test_cli_usage_error_exit_code(monkeypatch, capsys):
    code, _, _ = run_cli(["no-such-command"], monkeypatch=monkeypatch, capsys=capsys)
    assert code == 2


def test_cli_insufficient_truncation_exit_code(monkeypatch, capsys):
    code, _, _ = run_cli(
        ["check", "--num", "1", "--den", "1-x", "--primes", "13",
         "--rmax", "1", "--bound", "5"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 3


def test_cli_division_by_zero_polynomial(monkeypatch, capsys):
    code, _, err = run_cli(
        ["minton", "--num", "1/(x-x)", "--den", "1-x"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 2


def test_cli_toroidal(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["toroidal", "--num", "2-x", "--den", "1-x-x^2", "--matrix", "1;1", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["den"] == "1 - x1*x2 - x1^2*x2^2"


def test_cli_restrict_face(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["restrict-face", "--num", "1", "--den", "1-x-y-x*y", "--form", "0,1",
         "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["den"] == "1 - x1"


def test_cli_substitute(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["substitute", "--num", "1", "--den", "1-x", "--g", "x^2", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"schema": 1, "num": "2", "den": "1 - x1^2"}


def test_cli_construct_det(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["construct-det", "--f", "x*(1-3*x+3*x^2)/(1-3*x)^3", "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    got = parse_rational(payload["num"], payload["den"])
    assert got == parse_rational("1", "(1-3*x)*(1-3*x+3*x^2)")


def test_cli_classify_deg2(monkeypatch, capsys):
    code, out, _ = run_cli(
        ["classify-deg2", "--num", "x", "--den", "1+3*x+3*y+2*x^2+5*x*y+2*y^2",
         "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["dim_VQ"] == 6 and payload["numerator_in_span"] is True


def test_cli_config_file(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "defaults.conf"
    cfg.write_text("primes=2,3\nbound=30\nrmax=1\n")
    code, out, _ = run_cli(
        ["--config", str(cfg), "check", "--num", "1", "--den", "1-x-y-x*y",
         "--json"],
        monkeypatch=monkeypatch, capsys=capsys,
    )
    assert code == 0
    payload = json.loads(out)
    assert [r["prime"] for r in payload["reports"]] == [2, 3]
    assert payload["bound"] == 30
