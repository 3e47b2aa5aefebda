import json
import re


from dirac_liouville.cli import dumps, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), out


class TestSolve:
    def test_ground_state(self, capsys):
        code, rec, _ = run_json(capsys, "solve", "--potential", "x^2", "--mass", "1", "--energy", "0")
        assert code == 0 and rec["verdict"] == "solvable"
        assert rec["solutions"][0]["W"] == "1/3*x^3 + x"
        sp = rec["spinors"][0]
        assert sp["psi2"]["W"] == "-1/3*x^3 - x" and sp["passed"]
        assert rec["theorem"]["agrees"] is True

    def test_not_solvable_certificate(self, capsys):
        code, rec, _ = run_json(capsys, "solve", "--potential", "x^2", "--mass", "0", "--energy", "1")
        assert code == 10 and rec["verdict"] == "not_solvable"
        failures = rec["certificates"]["candidate_failures"]
        assert {"d": "0", "sign": 1, "residual": "1",
                "reason": "no monic polynomial of degree 0"} in failures

    def test_oscillator_k2(self, capsys):
        code, rec, _ = run_json(capsys, "solve", "--potential", "x", "--energy", "2")
        assert code == 0
        assert rec["solutions"][0]["P"] == "x"
        assert rec["spinors"][0]["psi2"]["P"] == "x^2 - 1/2"

    def test_radical_energy(self, capsys):
        code, rec, _ = run_json(capsys, "solve", "--potential", "x", "--energy-sq", "2")
        assert code == 0
        assert rec["spinors"][0]["psi2"]["divisor"] == "sqrt(2)"

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "solve", "--potential", "x^2", "--mass", "1")
        assert code == 0 and "exp(1/3*x^3 + x)" in out

    def test_parse_error_has_position(self, capsys):
        code, out, err = run(capsys, "solve", "--potential", "x^2 +* 1")
        assert code == 2 and out == ""
        assert re.search(r"column \d+|offset \d+", err)

    def test_non_polynomial(self, capsys):
        assert run(capsys, "solve", "--potential", "1/x")[0] == 2

    def test_usage_errors(self, capsys):
        assert run(capsys, "solve")[0] == 2
        assert run(capsys, "solve", "--potential", "x", "--component", "3")[0] == 2
        assert run(capsys, "solve", "--coupling", "vector", "--potential", "x", "--energy-sq", "2")[0] == 2

    def test_exit_code_ignores_format(self, capsys):
        for argv in (["--potential", "x^2", "--mass", "1"], ["--potential", "x^3", "--energy", "1"],
                     ["--potential", "x^4", "--coupling", "vector", "--energy", "3"]):
            a = run(capsys, "solve", *argv)[0]
            b = run(capsys, "solve", *argv, "--format", "json")[0]
            assert a == b


class TestJson:
    def test_round_trip_byte_identical(self, capsys):
        for argv in (("solve", "--potential", "x", "--energy-sq", "6"),
                     ("solve", "--potential", "x^3 - i*x", "--energy", "1/2"),
                     ("hermite", "--lambda", "2", "--kmax", "3"),
                     ("classify", "--potential", "x^5", "--energy", "7")):
            _, rec, out = run_json(capsys, *argv)
            assert dumps(rec) + "\n" == out

    def test_no_floats(self, capsys):
        _, rec, _ = run_json(capsys, "eval", "--solution", "exp(x)", "--at", "1/3", "--digits", "15")

        def walk(v):
            assert not isinstance(v, float)
            if isinstance(v, dict):
                for x in v.values():
                    walk(x)
            elif isinstance(v, list):
                for x in v:
                    walk(x)
        walk(rec)


class TestSweep:
    def test_theorem_grid(self, capsys):
        code, rec, _ = run_json(capsys, "sweep", "--degrees", "2..4", "--coeff-set=-1,1",
                                "--masses", "0,1", "--energies", "0,1")
        assert code == 0 and rec["summary"]["disagreements"] == 0
        assert all(c["solvable"] == (c["energy"] == "0") for c in rec["cells"])

    def test_linear_both_solvable(self, capsys):
        code, rec, _ = run_json(capsys, "sweep", "--degrees", "1..1", "--coeff-set", "1",
                                "--masses", "0", "--energies", "0,2")
        assert code == 0 and all(c["solvable"] for c in rec["cells"])

    def test_constant_potentials(self, capsys):
        code, rec, _ = run_json(capsys, "sweep", "--degrees", "0..0", "--coeff-set", "1,-2",
                                "--energies", "0,1,5/2", "--couplings", "scalar,vector")
        assert code == 0 and all(c["solvable"] for c in rec["cells"])

    def test_jobs_do_not_change_output(self, capsys):
        argv = ("sweep", "--degrees", "1..3", "--coeff-set=-1,2", "--masses", "0,1",
                "--energies", "0,1", "--couplings", "scalar,vector", "--components", "1,2",
                "--lower-seed", "7")
        _, one, _ = run_json(capsys, *argv, "--jobs", "1")
        _, four, _ = run_json(capsys, *argv, "--jobs", "3")
        one.pop("ms"), four.pop("ms")
        assert dumps(one) == dumps(four)

    def test_empty_grid(self, capsys):
        assert run(capsys, "sweep", "--masses", "")[0] == 2
        assert run(capsys, "sweep", "--degrees", "3..2")[0] == 2


class TestHermite:
    def test_table(self, capsys):
        code, rec, _ = run_json(capsys, "hermite", "--lambda", "1", "--kmax", "3")
        assert code == 0
        assert [r["P"] for r in rec["table"]] == ["1", "x", "x^2 - 1/2"]
        assert [r["degree"] for r in rec["table"]] == [0, 1, 2]

    def test_shifted_by_mass(self, capsys):
        # translation covariance: U = x + 1, so P(x) becomes P(x + 1)
        code, rec, _ = run_json(capsys, "hermite", "--lambda", "1", "--mass", "1", "--kmax", "3")
        assert code == 0
        assert [r["P"] for r in rec["table"]] == ["1", "x + 1", "x^2 + 2*x + 1/2"]

    def test_kmax_zero(self, capsys):
        code, rec, _ = run_json(capsys, "hermite", "--lambda", "1", "--kmax", "0")
        assert code == 0 and rec["table"] == []

    def test_zero_lambda(self, capsys):
        assert run(capsys, "hermite", "--lambda", "0")[0] == 2


class TestVerifyEvalClassify:
    def test_verify_pass(self, capsys):
        code, rec, _ = run_json(capsys, "verify", "--potential", "x^2", "--mass", "1",
                                "--solution", "exp(x + x^3/3)")
        assert code == 0 and rec["verdict"] == "pass"

    def test_verify_fail(self, capsys):
        code, rec, _ = run_json(capsys, "verify", "--potential", "x^2", "--mass", "1",
                                "--solution", "exp(x - x^3/3)")
        assert code == 10 and rec["certificates"]["residual"] != "0"

    def test_verify_partner(self, capsys):
        code, rec, _ = run_json(capsys, "verify", "--potential", "x", "--energy", "2",
                                "--solution", "x * exp(-x^2/2)", "--partner", "(x^2 - 1/2) * exp(-x^2/2)")
        assert code == 0 and rec["certificates"]["spinor"]["passed"]
        code, _, _ = run_json(capsys, "verify", "--potential", "x", "--energy", "2",
                              "--solution", "x * exp(-x^2/2)", "--partner", "x^2 * exp(-x^2/2)")
        assert code == 10

    def test_verify_parse_error(self, capsys):
        assert run(capsys, "verify", "--potential", "x", "--solution", "exp(")[0] == 2

    def test_eval(self, capsys):
        code, out, _ = run(capsys, "eval", "--solution", "exp(-x^2/2)", "--at", "0", "--digits", "10")
        assert code == 0 and "1.0000000000\n" in out

    def test_eval_negative_point(self, capsys):
        code, rec, _ = run_json(capsys, "eval", "--solution", "x^2", "--at=-1/2", "--digits", "4")
        assert code == 0 and rec["value"]["re"] == "0.2500" and rec["value"]["exact"]

    def test_eval_digits_cap(self, capsys):
        assert run(capsys, "eval", "--solution", "exp(x)", "--at", "1", "--digits", "5000")[0] == 2

    def test_classify(self, capsys):
        code, rec, _ = run_json(capsys, "classify", "--potential", "x^5", "--energy", "7")
        assert code == 10 and rec["reason"] == "Theorem: n>1, E≠0"
        code, rec, _ = run_json(capsys, "classify", "--potential", "i*x^2", "--energy", "1")
        assert rec["source"] == "kovacic"
