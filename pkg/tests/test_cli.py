import json
from fractions import Fraction

import pytest

from conftest import DATA
from toricelim.cli import main, parse_laurent
from toricelim.polyring import LaurentPoly

RUNNING = str(DATA / "running_generic.json")
ALL_ONES = str(DATA / "running_all_ones.json")
ZERO11 = str(DATA / "zero_at_11.json")
SYLV = str(DATA / "sylvester_23.json")
LOWDIM = str(DATA / "lowdim.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# dims
# ---------------------------------------------------------------------------

def test_dims_levels_three_deltas(capsys):
    code, out, _ = run(capsys, "dims", RUNNING)
    assert code == 0 and out == "levels [[12],[7,4,5],[1,2,1],[0]]\n"
    code, out, _ = run(capsys, "dims", RUNNING, "--delta", "0,0")
    assert code == 0 and out == "levels [[16],[11,7,7],[2,4,4],[1]]\n"
    code, out, _ = run(capsys, "dims", RUNNING, "--delta", "0,-1/2")
    assert code == 0 and out == "levels [[12],[8,4,4],[0,2,2],[0]]\n"


def test_dims_json_format(capsys):
    code, out, _ = run(capsys, "dims", RUNNING, "--format", "json")
    assert code == 0
    assert json.loads(out) == {"levels": [[12], [7, 4, 5], [1, 2, 1], [0]]}


def test_dims_q_override(capsys):
    code, out, _ = run(capsys, "dims", RUNNING, "--Q", "0,0;1,0", "--format", "json")
    assert code == 0
    levels = json.loads(out)["levels"]
    assert [sum(l) for l in levels] == [16, 24, 8, 0]


def test_dims_geometric_precondition_exit_3(capsys):
    code, _, err = run(capsys, "dims", LOWDIM)
    assert code == 3 and "lower-dimensional" in err


def test_malformed_input_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "dims", str(bad))
    assert code == 2 and "input error" in err


# ---------------------------------------------------------------------------
# resultant
# ---------------------------------------------------------------------------

def test_resultant_golden_text(capsys):
    golden = (DATA / "res123_golden.txt").read_text().strip()
    code, out, _ = run(capsys, "resultant", RUNNING)
    assert code == 0
    assert out.splitlines()[0] == golden
    assert "f_1     4       4" in out


def test_resultant_json_and_determinism(capsys):
    code, out1, _ = run(capsys, "resultant", RUNNING, "--format", "json")
    assert code == 0
    code, out2, _ = run(capsys, "resultant", RUNNING, "--format", "json")
    assert out1 == out2  # byte-identical for identical (file, seed)
    data = json.loads(out1)
    assert data["degrees"] == [4, 2, 2]
    assert data["mixed_volumes"] == [4, 2, 2]
    assert len(data["terms"]) == 7


def test_resultant_verify_minors(capsys):
    code, out, _ = run(capsys, "resultant", RUNNING, "--verify-minors", "25",
                       "--format", "json")
    assert code == 0
    minors = json.loads(out)["minors"]
    assert minors["total"] == 25
    assert minors["failures"] == []
    assert minors["zero"] + minors["divisible"] == 25


def test_resultant_sylvester_file(capsys):
    code, out, _ = run(capsys, "resultant", SYLV, "--format", "json")
    assert code == 0
    assert json.loads(out)["degrees"] == [3, 2]


def test_resultant_requires_k_equals_n_plus_one(tmp_path, capsys):
    f = tmp_path / "two.json"
    f.write_text(json.dumps({
        "n": 2, "supports": [[[0, 0], [1, 1]], [[0, 0], [2, 1], [1, 2]]],
        "coefficients": "generic"}))
    code, _, err = run(capsys, "resultant", str(f))
    assert code == 2 and "k = n+1" in err


def test_resultant_rejects_concrete(capsys):
    code, _, err = run(capsys, "resultant", ALL_ONES)
    assert code == 2 and "generic" in err


# ---------------------------------------------------------------------------
# check / certificate
# ---------------------------------------------------------------------------

def test_check_verdicts(capsys):
    code, out, _ = run(capsys, "check", ALL_ONES)
    assert code == 0 and out.strip() == "empty (surjective)"
    code, out, _ = run(capsys, "check", ZERO11)
    assert code == 0 and out.strip() == "nonempty (not surjective)"


def test_certificate_verified(capsys):
    code, out, _ = run(capsys, "certificate", ALL_ONES, "--target", "t^(2,2)",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True
    assert data["target"] == [{"coeff": "1", "point": [2, 2]}]
    assert len(data["cofactors"]) == 3


def test_certificate_no_certificate_exit_5(capsys):
    code, _, err = run(capsys, "certificate", ZERO11, "--target", "1")
    assert code == 5 and "no certificate" in err


def test_certificate_support_escape_exit_2(capsys):
    code, _, err = run(capsys, "certificate", ALL_ONES, "--target", "t^(9,9)")
    assert code == 2 and "escape" in err


# ---------------------------------------------------------------------------
# mixed-volume
# ---------------------------------------------------------------------------

def test_mixed_volume_running(capsys):
    code, out, _ = run(capsys, "mixed-volume", RUNNING)
    assert code == 0 and out.strip() == "[4,2,2]"


def test_mixed_volume_dense_simplices(tmp_path, capsys):
    simplex = [[0, 0], [1, 0], [0, 1]]
    f = tmp_path / "dense.json"
    f.write_text(json.dumps({"n": 2, "supports": [simplex] * 3,
                             "coefficients": "generic"}))
    code, out, _ = run(capsys, "mixed-volume", str(f))
    assert code == 0 and out.strip() == "[1,1,1]"


def test_mixed_volume_with_point_support(tmp_path, capsys):
    f = tmp_path / "pt.json"
    f.write_text(json.dumps({
        "n": 2,
        "supports": [[[0, 0]], [[0, 0], [1, 0], [0, 1]], [[0, 0], [1, 0], [0, 1]]],
        "coefficients": "generic"}))
    code, out, _ = run(capsys, "mixed-volume", str(f))
    assert code == 0
    mvs = json.loads(out)
    assert mvs[1] == 0 and mvs[2] == 0


# ---------------------------------------------------------------------------
# target parsing
# ---------------------------------------------------------------------------

def test_parse_laurent_forms():
    assert parse_laurent("t^(2,2)", 2) == LaurentPoly.monomial((2, 2))
    assert parse_laurent("1", 2) == LaurentPoly.monomial((0, 0))
    assert parse_laurent("-t^(-1,2)", 2) == LaurentPoly.monomial((-1, 2), -1)
    got = parse_laurent("3*t^(1,0) - 1/2*t^(0,1) + 2", 2)
    assert got == LaurentPoly({(1, 0): 3, (0, 1): Fraction(-1, 2), (0, 0): 2})


def test_parse_laurent_rejects_garbage():
    from toricelim.cli import InputError
    with pytest.raises(InputError):
        parse_laurent("t^(1)", 2)
    with pytest.raises(InputError):
        parse_laurent("spam", 2)
