"""End-to-end CLI checks: output, formats, exit codes."""

import json

from danielewski.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "x*y + z", "--surface", "z^2-1")
    assert code == 0 and out == "-1 + z + z^2"


def test_json_format(capsys):
    code, out, _ = run(capsys, "reduce", "x*y", "--surface", "z^2-1",
                       "--format", "json")
    assert code == 0 and json.loads(out) == {"result": "-1 + z^2"}


def test_mul_and_bracket(capsys):
    code, out, _ = run(capsys, "mul", "x", "y", "--surface", "z^2-1")
    assert code == 0 and out == "-1 + z^2"
    code, out, _ = run(capsys, "bracket", "SFx(0)", "SFy(0)",
                       "--surface", "z^3-z", "--format", "json")
    assert code == 0 and json.loads(out) == {"result": "[6*x*z; -6*y*z; 0]"}


def test_potential_and_hamiltonian_are_inverse(capsys):
    code, pot, _ = run(capsys, "potential", "SFx(1)", "--surface", "z^2-1")
    assert code == 0 and pot == "-1/2*x^2"
    # arguments starting with '-' need the usual '--' separator
    code, field, _ = run(capsys, "hamiltonian", "--surface", "z^2-1", "--", pot)
    assert code == 0
    code, out, _ = run(capsys, "potential", field, "--surface", "z^2-1")
    assert code == 0 and out == pot


def test_decide_exit_codes(capsys):
    code, out, _ = run(capsys, "decide", "z", "--surface", "z^3-z")
    assert code == 1 and out.startswith("rejected")
    code, out, _ = run(capsys, "decide", "1/2*z^2", "--surface", "z^3-z")
    assert code == 0 and out.startswith("accepted")


def test_lnd_check_exit_codes(capsys):
    code, _, _ = run(capsys, "lnd-check", "SFx(0)", "--surface", "z^2-1")
    assert code == 0
    code, _, _ = run(capsys, "lnd-check", "HF(1)", "--surface", "z^2-1",
                     "--max-iter", "10")
    assert code == 1


def test_certify_and_verify(capsys, tmp_path):
    cert = tmp_path / "cert.json"
    code, _, _ = run(capsys, "certify", "x^2*z", "--surface", "z^2-1",
                     "--shears-only", "--output", str(cert))
    assert code == 0
    obj = json.loads(cert.read_text())
    assert set(obj) == {"p", "claimed", "certificate"}
    code, out, _ = run(capsys, "verify-cert", str(cert), "--surface", "z^2-1")
    assert code == 0 and out == "true"
    # tampering with the claim must fail verification
    obj["claimed"] = "x^2*z + z"
    cert.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify-cert", str(cert), "--surface", "z^2-1")
    assert code == 1 and out == "false"


def test_certify_rejected_input(capsys):
    code, _, err = run(capsys, "certify", "z", "--surface", "z^3-z",
                       "--shears-only")
    assert code == 1 and "membership-rejected" in err


def test_word_commands(capsys):
    code, out, _ = run(capsys, "compose", "Dx(1)", "H(2)", "--surface", "z^2-1")
    assert code == 0 and out == "Dx(2);H(2)"
    code, out, _ = run(capsys, "volume-factor", "I;Dx(1);I", "--surface", "z^2-1")
    assert code == 0 and out == "1"
    code, out, _ = run(capsys, "volume-factor", "I", "--surface", "z^2-1")
    assert code == 0 and out == "-1"


def test_conjugate(capsys):
    code, out, _ = run(capsys, "conjugate", "Dx(1)", "SFy(0)",
                       "--surface", "z^2-1")
    assert code == 0 and out == "[2*x + 2*z; -2*y - 2*z; -x + y]"


def test_flex_check(capsys):
    code, out, _ = run(capsys, "flex-check", "1,0,1", "--surface", "z^2-1")
    assert code == 0 and out == "true"
    code, _, err = run(capsys, "flex-check", "1,1,1", "--surface", "z^2-1")
    assert code == 2 and "point-not-on-surface" in err


def test_z2_commands(capsys):
    code, out, _ = run(capsys, "z2-check", "--max-degree", "3",
                       "--surface", "z^2-1", "--format", "json")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows and all(r["verified"] for r in rows)
    code, _, err = run(capsys, "z2-check", "--surface", "z^3-z")
    assert code == 2 and "wrong-surface" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "reduce", "x^(-1)", "--surface", "z^2-1")
    assert code == 2 and "negative-exponent" in err
    code, _, err = run(capsys, "reduce", "x", "--surface", "z^2-2*z+1")
    assert code == 2 and "repeated-root" in err
    code, _, err = run(capsys, "reduce", "x +", "--surface", "z^2-1")
    assert code == 2 and "syntax-error" in err


def test_error_json(capsys):
    code, out, _ = run(capsys, "reduce", "x^(-1)", "--surface", "z^2-1",
                       "--format", "json")
    assert code == 2
    obj = json.loads(out)
    assert obj["error"] == "negative-exponent"


def test_unknown_command_is_usage_error(capsys):
    assert main(["frobnicate", "--surface", "z^2-1"]) == 2
