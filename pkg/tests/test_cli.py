import json
import subprocess
import sys

import pytest
from gmpy2 import mpq

from jordtwist.cli import main
from jordtwist.exactmath import I, Poly
from jordtwist.render import parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "fgz_inv", "--N", "1")
    assert code == 0
    assert out.strip() == "1⊗1 + t((u - 1) P⊗D + u D⊗P)"


def test_expand_formats(capsys):
    code, out, _ = run(capsys, "expand", "f0_inv", "--N", "0", "--format", "latex")
    assert out.strip() == r"1 \otimes 1"
    code, out, _ = run(capsys, "expand", "R_gz", "--N", "2", "--u", "1/2", "--format", "json")
    payload = json.loads(out)
    assert payload["N"] == 2 and payload["arity"] == 2 and payload["params"] == ["t"]


def test_verify_json_schema_and_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "cocycle", "--N", "3")
    assert code == 0
    reports = [json.loads(line) for line in out.splitlines()]
    assert reports and all(set(r) >= {"check", "params", "pass", "residual_terms", "ms"} for r in reports)
    assert all(r["pass"] for r in reports)
    code, out, _ = run(capsys, "verify", "cocycle", "--N", "3", "--corrupt")
    assert code == 1
    assert json.loads(out.splitlines()[0])["residual_terms"]


def test_usage_errors(capsys):
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "verify", "cocycle", "--u", "0.5")[0] == 2
    assert run(capsys, "star", "--kappa", "0", "--k", "1,0", "--q", "1,0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["expand", "nope"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_output_is_deterministic(capsys):
    first = run(capsys, "verify", "star-assoc", "--samples", "20", "--no-timing")[1]
    second = run(capsys, "verify", "star-assoc", "--samples", "20", "--no-timing")[1]
    assert first == second


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"N": 2, "u": "1/3"}))
    _, out, _ = run(capsys, "verify", "equality", "--config", str(cfg))
    assert json.loads(out)["params"] == {"N": 2, "u": "1/3"}
    _, out, _ = run(capsys, "verify", "equality", "--config", str(cfg), "--N", "3")
    assert json.loads(out)["params"] == {"N": 3, "u": "1/3"}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nonsense": 1}))
    assert run(capsys, "verify", "equality", "--config", str(bad))[0] == 2


def test_star_planewave(capsys):
    code, out, _ = run(capsys, "star", "--u", "1/2", "--kappa", "1", "--v", "1", "--k", "1", "--q", "1")
    assert code == 0
    assert json.loads(out) == {"u": "1/2", "kappa": "1", "momentum": ["8/5"], "prefactor": "4/5"}
    code, out, _ = run(capsys, "star", "--u", "0", "--v", "1,0", "--k", "3,1", "--q", "2,-5")
    assert json.loads(out)["prefactor"] == "1"


def test_star_singular(capsys):
    code, _, err = run(capsys, "star", "--u", "1/2", "--v", "1", "--k", "2", "--q", "-2")
    assert code == 1 and "v.k=2" in err


def test_star_polynomials(capsys):
    code, out, _ = run(capsys, "star", "--f", "1", "--g", "1")
    assert json.loads(out)["product"] == "1"
    code, out, _ = run(capsys, "star", "--u", "0", "--v", "1", "--f", "x0", "--g", "x0")
    assert json.loads(out)["product"] == "x0^2 + i*x0"


def test_star_sampling(capsys):
    code, out, _ = run(capsys, "star", "--u", "1/3", "--samples", "10")
    assert code == 0 and json.loads(out)["pass"]


def test_xhat(capsys):
    code, closed, _ = run(capsys, "xhat", "--mu", "0", "--u", "1/2")
    code2, twisted, _ = run(capsys, "xhat", "--mu", "0", "--u", "1/2", "--from-twist", "R")
    assert code == code2 == 0 and closed == twisted
    assert run(capsys, "xhat", "--mu", "5")[0] == 2


def test_lemma_summary(capsys):
    code, out, _ = run(capsys, "lemma", "--max", "2")
    assert code == 0 and json.loads(out) == {"tuples_checked": 36, "failures": []}
    code, out, _ = run(capsys, "lemma", "--max", "2", "--corrupt")
    assert code == 1 and json.loads(out)["failures"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "jordtwist", "verify", "qybe", "--N", "2", "--no-timing"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[0])["pass"] is True


def test_parse_poly():
    x0, x1 = Poly.gens(("x0", "x1"))
    assert parse_poly("3/2*x0^2*x1 - i*x1 + (x0+1)**2", ("x0", "x1")) == x0 ** 2 * x1 * mpq(3, 2) - x1 * I + (x0 + 1) ** 2
    for bad in ("x2", "x0**-1", "x0/x1", "0.5*x0", "x0 +"):
        with pytest.raises(ValueError):
            parse_poly(bad, ("x0", "x1"))
