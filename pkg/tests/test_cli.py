from pathlib import Path

import pytest

import kawasaki.classes
from kawasaki.classes import KClass, KTerm
from kawasaki.cli import JobError, main, parse_job
from kawasaki.geometry import CyclicQuotient, WeightedProjective

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_job_examples():
    job = parse_job("space = wps(1,2,3)\nbundle = O(6)")
    assert job.space == WeightedProjective((1, 2, 3))
    assert job.bundle == KClass.line(6)
    job = parse_job("space = quot(P1; m=2; act=0,1)\nbundle = O(2)")
    assert job.space == CyclicQuotient(2, (0, 1))
    with pytest.raises(JobError, match="weights must be positive"):
        parse_job("space = wps(1,0)")


def test_parse_job_full_syntax():
    job = parse_job(
        "# comment\n\nspace = P2   # trailing\nbundle = 2*O(3) - O(-1) + O(0)\nobstruction = [3, 4]\n"
    )
    assert job.space == WeightedProjective((1, 1, 1))
    assert job.bundle == KClass([KTerm(2, 3), KTerm(-1, -1), KTerm(1, 0)])
    assert job.obstruction == (3, 4)
    job = parse_job("space = quot(P2; m=3; act=0,1,2)\nbundle = O(2;1)\nshift = 2")
    assert job.bundle == KClass.line(2, 1) and job.shift == 2


@pytest.mark.parametrize(
    "text, message",
    [
        ("space = P2\ncolour = red", "line 2: unknown key 'colour'"),
        ("space = P2\nspace = P3", "line 2: duplicate key"),
        ("space P2", "line 1: expected 'key = value'"),
        ("bundle = O(1)", "missing key 'space'"),
        ("space = wps(1,a)", "line 1: wps weights"),
        ("space = P2\nbundle = O(1) O(2)", "line 2: missing"),
        ("space = P2\nbundle = L(1)", "line 2: cannot parse bundle"),
        ("space = quot(P1; m=2; act=0)", "needs 2 action weights"),
        ("space = P1\nobstruction = 0", "must be positive"),
        ("space = P1\nbundle = O(1;1)", "only apply to quotient"),
        ("space = quot(P1; m=2; act=0,1)\nobstruction = 2", "only supported on weighted"),
    ],
)
def test_parse_job_errors(text, message):
    with pytest.raises(JobError, match=message):
        parse_job(text)


def test_run_examples(capsys):
    assert run_cli(capsys, "chi", "--space", "wps(1,2)", "--bundle", "O(5)")[:2] == (0, "3\n")
    assert run_cli(capsys, "chi-fake", "--space", "wps(1,2)", "--bundle", "O(0)")[:2] == (0, "3/4\n")
    code, out, _ = run_cli(capsys, "chi-virtual", "--space", "P2", "--obstruction", "3", "--bundle", "O(1)")
    assert (code, out) == (0, "3\n")
    code, out, _ = run_cli(capsys, "verify", "--space", "P2", "--obstruction", "3", "--bundle", "O(1)")
    assert code == 0
    assert out.splitlines()[0] == "PASS chi-virtual=3 hypersurface_difference=3"
    assert out.splitlines()[-1] == "PASS"


def test_overrides_apply_on_top_of_job(capsys, tmp_path):
    job = tmp_path / "j.job"
    job.write_text("space = wps(1,2)\nbundle = O(5)\n")
    assert run_cli(capsys, "chi", "--job", str(job), "--bundle", "O(0)")[:2] == (0, "1\n")


def test_breakdown_format(capsys):
    code, out, _ = run_cli(capsys, "chi", "--space", "wps(1,2)", "--bundle", "O(0)", "--breakdown")
    assert code == 0
    assert out.splitlines() == [
        "z = zeta_2",
        "sector r=1 k=0 S={0,1} m=1 contribution=3/4",
        "sector r=2 k=1 S={1} m=2 contribution=1/4",
        "1",
    ]


@pytest.mark.parametrize(
    "argv",
    [
        ["chi", "--space", "wps(1,0)"],
        ["chi", "--job", "/nonexistent/job"],
        ["chi-virtual", "--space", "P2"],
        ["lefschetz", "--space", "P2"],
        ["chi"],
        ["nonsense"],
        ["verify", "--space", "quot(P1; m=2; act=0,1)", "--bundle", "O(-1)"],
    ],
)
def test_input_errors_exit_1(capsys, argv):
    assert run_cli(capsys, *argv)[0] == 1


def test_fault_injection_exits_2_with_breakdown(capsys, monkeypatch):
    original = kawasaki.classes.trace_exponent
    monkeypatch.setattr(kawasaki.classes, "trace_exponent", lambda t, s: original(t, s) + 1)
    code, out, err = run_cli(capsys, "chi", "--space", "wps(1,2)", "--bundle", "O(0)")
    assert code == 2
    assert "non-integer total" in err
    assert out.splitlines()[0] == "z = zeta_2"
    assert sum(line.startswith("sector ") for line in out.splitlines()) == 2
    code, out, err = run_cli(
        capsys, "chi-virtual", "--space", "wps(1,2,3)", "--obstruction", "2", "--bundle", "O(0)"
    )
    assert code == 2 and "internal error" in err


def _example_cases():
    for expected in sorted(EXAMPLES.glob("*.out")):
        stem, command, *rest = expected.name[: -len(".out")].split(".")
        flags = ["--breakdown"] if rest == ["breakdown"] else []
        yield pytest.param(EXAMPLES / f"{stem}.job", command, flags, expected, id=expected.name)


@pytest.mark.parametrize("job, command, flags, expected", list(_example_cases()))
def test_documented_examples_round_trip(capsys, job, command, flags, expected):
    code, out, _ = run_cli(capsys, command, "--job", str(job), *flags)
    assert code == 0
    assert out == expected.read_text()


def test_every_documented_job_is_exercised():
    jobs = {p.stem for p in EXAMPLES.glob("*.job")}
    covered = {p.name.split(".")[0] for p in EXAMPLES.glob("*.out")}
    assert jobs and jobs == covered


def test_sweep_reports_per_criterion(capsys, monkeypatch):
    from kawasaki import sweeps

    monkeypatch.setattr(sweeps, "CRITERIA", (
        ("small kawasaki", lambda: sweeps.kawasaki_vs_oracle(max_dim=1, max_weight=3, max_degree=5)),
        ("small lefschetz", lambda: sweeps.lefschetz_vs_oracle(max_order=3, max_dim=1, max_degree=4)),
    ))
    code, out, _ = run_cli(capsys, "verify", "--sweep")
    assert code == 0
    assert out.splitlines() == [
        "PASS small kawasaki (54 cases, 0 failures)",
        "PASS small lefschetz (195 cases, 0 failures)",
        "PASS",
    ]
    monkeypatch.setattr(sweeps, "CRITERIA", (("broken", lambda: (1, ["case x"])),))
    code, out, _ = run_cli(capsys, "verify", "--sweep")
    assert code == 2
    assert out.splitlines() == ["FAIL broken (1 cases, 1 failures)", "  case x", "FAIL"]
