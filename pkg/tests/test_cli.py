import pytest
from clikit.io import BufferedIO

from charstack import nonorient, punctured
from charstack.cli import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, RunConfig, UsageError, main
from charstack.common import HOOK_BOUND, IntegralityViolation
from charstack.report import CheckResult, Report


def run(*argv):
    io = BufferedIO()
    code = main(list(argv), io)
    return code, io.fetch_output(), io.fetch_error()


def test_ecount_nonorient_text():
    code, output, _ = run("ecount-nonorient", "--rho", "1", "--n", "2", "--format", "text")
    assert code == EXIT_OK
    assert output == "3*q^4 - 2*q^3 - 3*q^2 + 2\n"


def test_involutions_text():
    code, output, _ = run("involutions", "--nmax", "2", "--format", "text")
    assert code == EXIT_OK
    assert output == "I_1: 2\nI_2: q^2 + q + 2\n"


def test_mseries_json():
    code, output, _ = run("mseries", "--rho", "0", "--nmax", "4")
    assert code == EXIT_OK
    report = Report.from_json(output)
    assert report.subcommand == "mseries"
    assert report.inputs == {"rho": 0, "nmax": 4}
    assert report["M_0"] == "1 + 2*T + (q + 3)*T^2 + (2*q + 6)*T^3 + (q^2 + 4*q + 9)*T^4 + O(T^5)"


def test_json_is_deterministic():
    first = run("involutions", "--nmax", "3")[1]
    second = run("involutions", "--nmax", "3")[1]
    assert first == second


def test_punctured_values():
    assert run("hh", "--r", "1", "--k", "1", "--mu", "2", "--format", "text")[1] == "1/(z^2 + 1)\n"
    assert run("ecount-punctured", "--r", "1", "--k", "1", "--mu", "1,1", "--format", "text")[1] == "1/(q - 1)\n"
    code, output, _ = run("hh", "--r", "1", "--k", "1", "--all", "--n", "2", "--format", "csv")
    assert code == EXIT_OK
    assert output.splitlines()[1:] == ["2,1/(z^2 + 1),,", "\"1,1\",1,,"]


def test_macdonald():
    code, output, _ = run("macdonald", "--lambda", "2", "--format", "text")
    assert code == EXIT_OK
    assert output == "m[2] + (q + 1)*m[1,1]\n"


def test_verify_identity():
    code, output, _ = run("verify", "i_star_product", "--degree", "8")
    assert code == EXIT_OK
    report = Report.from_json(output)
    assert report["i_star_product"].verdict == "pass"


def test_verify_failure(monkeypatch):
    monkeypatch.setitem(nonorient.IDENTITIES, "i_log", lambda cutoff: CheckResult("i_log", False, "degree 2"))
    code, output, error = run("verify", "i_log", "--format", "text")
    assert code == EXIT_CHECK_FAILED
    assert output == "i_log: FAIL (degree 2)\n"
    assert "1 check(s) failed" in error


def test_oracle_single_case():
    argv = ("--r", "1", "--k", "1", "--n", "2", "--q", "5", "--eigenvalues", "2,3")
    code, output, _ = run("oracle", "punctured", *argv)
    assert code == EXIT_OK
    report = Report.from_json(output)
    assert report["r=1,q=5,eigenvalues=2,3.count"] == 120


def test_out_file(tmp_path):
    path = tmp_path / "report.json"
    code, output, error = run("ecount-nonorient", "--rho", "0", "--n", "2", "--out", str(path))
    assert code == EXIT_OK
    assert output == ""
    assert "Wrote" in error
    assert Report.from_json(path.read_text())["e_count"] == "q + 3"


@pytest.mark.parametrize(
    "argv",
    [
        ("ecount-nonorient", "--rho", "1"),
        ("ecount-nonorient", "--rho", "-2", "--n", "2"),
        ("ecount-nonorient", "--rho", "1", "--n", "0"),
        ("hh", "--r", "1", "--k", "1"),
        ("hh", "--r", "1", "--k", "2", "--mu", "2"),
        ("verify", "nonsense"),
        ("oracle", "nonorient", "--n", "2"),
        ("oracle", "punctured", "--r", "1", "--q", "5", "--eigenvalues", "1,1"),
        ("involutions", "--format", "yaml"),
        ("no-such-command",),
    ],
)
def test_usage_errors(argv):
    code, output, error = run(*argv)
    assert code == EXIT_USAGE
    assert output == ""
    assert error


def test_version():
    assert main(["--version"], BufferedIO()) == EXIT_OK


def test_run_config():
    config = RunConfig("ecount-punctured", r=1, k=2, mu="1|1")
    assert config.partition_tuple.k == 2
    assert config.inputs == {"r": 1, "k": 2, "mu": "1|1"}
    with pytest.raises(UsageError, match=r"needs `--nmax`"):
        RunConfig("mseries", rho=0)
    with pytest.raises(UsageError, match=r"--k 3"):
        RunConfig("oracle", target="punctured", r=1, k=3, q=5, eigenvalues="2,3")


def test_verify_hook_identities_default_bound(monkeypatch):
    calls = []
    conjecture_checks = punctured.conjecture_checks

    def recording(which, bound=4, hook_bound=HOOK_BOUND):
        calls.append((tuple(which), hook_bound))
        return conjecture_checks(which, bound, hook_bound)

    monkeypatch.setattr(punctured, "conjecture_checks", recording)
    code, output, _ = run("verify", "sign_symmetry")
    assert code == EXIT_OK
    assert calls == [(("sign_symmetry",), 6)]
    assert Report.from_json(output)["sign_symmetry.r=3"].verdict == "pass"


def test_integrality_violation(monkeypatch):
    def broken(rho, n):
        raise IntegralityViolation("Count for rho=`1`, n=`2` is `q/2`, expected an integral polynomial.")

    monkeypatch.setattr(nonorient, "e_count_nonorient", broken)
    code, output, error = run("ecount-nonorient", "--rho", "1", "--n", "2")
    assert code == EXIT_CHECK_FAILED
    assert output == ""
    assert "Internal check failed" in error
    assert "Traceback" not in error
