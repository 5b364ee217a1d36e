import pytest

import wfree


def test_catalog_keys():
    keys = wfree.catalog_keys()
    assert "gl11-wakimoto" in keys
    assert "subregular-sl:3:coset" in keys


def test_levels():
    assert wfree.dual_level("sl", 2, "-14/5") == "3"
    assert wfree.dual_level("so", 2, "-5/2") == "-1"
    with pytest.raises(wfree.WfreeError):
        wfree.dual_level("sl", 2, "-3")
    assert wfree.degeneracy_constants("sl", 2) == ("-3/2", "-4/3")
    assert wfree.delta_conformal("1", "1", "2", "0") == "7/8"


def test_wakimoto_symbolic():
    r = wfree.check_homomorphism("gl11-wakimoto")
    assert r.passed
    assert len(r.items) == 16


def test_resolution_dims():
    r = wfree.check_resolution("7/2", "1/3", 3, 2)
    assert r.passed
    assert [row[1] for row in r.per_degree] == [1, 4, 12, 32]


def test_rank1_and_coset():
    assert wfree.check_rank1_ff_duality("7/2").passed
    assert not wfree.check_rank1_ff_duality("2").passed
    assert wfree.check_gram_duality("so", 3).passed
    r = wfree.check_coset_duality("sl", 2, "-14/5", 3)
    assert r.passed and len(r.per_degree) == 4


def test_ks_and_norms():
    assert wfree.check_ks("so", 2).passed
    assert not wfree.check_ks("so", 2, drop_psi=True).passed
    assert wfree.norm_degeneracy("sl", 3).passed


def test_character_oracle():
    assert wfree.character_oracle("gl11-wakimoto", 3) == [2, 8, 24, 64]


def test_cli_json_round_trip():
    import json

    code, out, _ = wfree.cli("duality", "--pair", "sl", "--n", "2", "--k1", "-14/5", "--max-degree", "3",
                             "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "pass"
    assert [row["degree"] for row in data["per_degree"]] == [0, 1, 2, 3]
    assert json.dumps(data, indent=2, ensure_ascii=False) + "\n" == out


def test_cli_exit_codes():
    code, _, err = wfree.cli("duality", "--pair", "sl", "--n", "2", "--k1", "-3")
    assert code == 2 and "K1" in err
    code, _, _ = wfree.cli("ks-check", "--pair", "sl", "--n", "2", "--perturb")
    assert code == 1
