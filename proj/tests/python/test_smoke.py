import json

import pytest

import kw1


def test_builtins_and_documents():
    assert "sl2" in kw1.builtin_names()
    doc = json.loads(kw1.algebra_document("sl2"))
    assert doc["basis"] == ["h", "e", "f"]
    assert kw1.index(kw1.algebra_document("sl2")) == 1


def test_index_and_p_map():
    assert kw1.index("gl2") == 2
    assert kw1.index("gl2", p=5) == 2
    assert kw1.p_map("sl2", 5) == {"h": "h", "e": "0", "f": "0"}
    assert kw1.p_center_generators("remark:1:1", 3) == ["h^3 + 2*h", "x^3", "y^3"]


def test_center_and_rank():
    basis = kw1.center_basis("remark:1:1", 3, degree_bound=4)
    assert basis == ["1", "y^3", "x*y^2", "x^2*y", "x^3", "h^3 + 2*h"]
    assert kw1.rank_over_p_center("remark:1:1", 3, degree_bound=4) == 3
    assert kw1.fraction_field_degree("remark:1:2", 5, "x^2", "y") == 5
    assert not kw1.in_p_center_subalgebra("remark:1:1", 3, "x*y^2")
    assert kw1.in_p_center_subalgebra("remark:1:1", 3, "x^3*y^3")


def test_oracle_and_lemma1():
    assert kw1.max_irreducible_dim("heisenberg", 3, samples=2) == 3
    assert kw1.rank_over_frobenius_subring(2, ["x"], 3) == 3
    assert kw1.rank_over_frobenius_subring(2, [], 3) == 9


def test_check_reports():
    reports, code = kw1.check("sl2", primes=[3, 5])
    assert code == 0
    assert [r["mLower"] for r in reports] == [3, 5]
    assert all(r["verdict"] == "verified" for r in reports)
    _, code = kw1.check("remark:1:1", primes=[3], degree_bound=1)
    assert code == 2


def test_errors():
    with pytest.raises(kw1.InputError):
        kw1.index("nosuch")
    with pytest.raises(kw1.InputError):
        kw1.check("sl2", primes=[4])
    with pytest.raises(kw1.WeightMismatch):
        kw1.fraction_field_degree("remark:1:1", 3, "h", "x")
    assert issubclass(kw1.InputError, kw1.Error)


def test_cli_entry():
    code, out, _ = kw1.run_cli(["lemma1", "--vars", "2", "-g", "x", "--prime", "5"])
    assert code == 0
    assert json.loads(out)["rank"] == 5
