import io
import json

import pytest

from idealspin.cli import build_parser, parse_field, run


def run_cli(*argv):
    out = io.StringIO()
    err = io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_field_info_json():
    code, out, _ = run_cli("field-info", "--field", "shanks:1")
    assert code == 0
    info = json.loads(out)
    assert info["defining_poly"] == [-1, -2, 1, 1]
    assert info["disc"] == 49
    assert info["maximal_order_verified"] is True


def test_primes_csv_header():
    code, out, _ = run_cli("primes", "--max-norm", "13")
    lines = out.strip().splitlines()
    assert lines[0] == "p,f,e,r,norm"
    assert lines[1:] == ["7,1,3,2,7", "2,3,1,-1,8", "13,1,1,7,13",
                         "13,1,1,8,13", "13,1,1,10,13"]


def test_spins_five_rows():
    code, out, _ = run_cli("spins", "--field", "shanks:1", "--max-norm", "13")
    lines = out.strip().splitlines()
    assert lines[0] == "p,r,norm,gen_coords,spin_k1,spin_k2"
    assert len(lines) == 6  # header + 5 data rows
    norms = [int(l.split(",")[2]) for l in lines[1:]]
    assert norms == [7, 8, 13, 13, 13]


def test_symbol_command():
    code, out, _ = run_cli("symbol", "--upper", "0,1,0", "--lower", "13:7")
    assert code == 0 and out.strip() == "-1"


def test_worker_determinism():
    _, out1, _ = run_cli("spins", "--max-norm", "2000", "--workers", "1")
    _, out2, _ = run_cli("spins", "--max-norm", "2000", "--workers", "3")
    assert out1 == out2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["no-such-command"])
    assert exc.value.code == 1


def test_hypothesis_error_exit_code():
    code, out, err = run_cli("selmer-scan", "--curve", "11a", "--max-p", "100")
    assert code == 2
    assert json.loads(err)["error"] == "HypothesisViolated"


def test_parse_field_rejects_garbage():
    with pytest.raises(ValueError):
        parse_field("nonsense")


def test_config_file(tmp_path):
    cfg = tmp_path / "run.conf"
    cfg.write_text("max_norm = 13\nfield = shanks:1\n")
    code, out, _ = run_cli("--config", str(cfg), "primes")
    assert code == 0
    assert len(out.strip().splitlines()) == 6  # header + 5 rows

    # explicit flags override the file
    code, out2, _ = run_cli("--config", str(cfg), "primes", "--max-norm", "8")
    assert len(out2.strip().splitlines()) == 3  # norms 7 and 8


def test_vaughan_command():
    code, out, _ = run_cli("vaughan-verify", "--x", "100", "--sequence", "ones")
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,z,exact_identity"
    assert all(l.endswith(",1") for l in lines[1:])
    assert len(lines) == 5  # (2,50),(4,25),(5,20),(10,10)


def test_char_scan_json():
    code, out, _ = run_cli("char-scan", "--q-max", "100", "--format", "json")
    rep = json.loads(out)
    assert rep["max_ratio"] > 0


def test_quad_spins_rows():
    code, out, _ = run_cli("quad-spins", "--d", "5", "--max-norm", "1200")
    lines = out.strip().splitlines()
    assert lines[0] == "p,beta,spin_direct,spin_formula,agree"
    for l in lines[1:]:
        assert l.split(",")[4] == "1"


def test_selmer_scan_rows():
    code, out, _ = run_cli("selmer-scan", "--max-p", "2000")
    lines = out.strip().splitlines()
    assert lines[0] == "p,qualified,spin,predicted_dim,failure_reason"
    for l in lines[1:]:
        p, q, s, d, reason = l.split(",")
        assert q == "1"
        assert (d == "3") == (s == "1")
