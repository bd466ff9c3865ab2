import json

import pytest

from etaq.congruences import (
    IDENTITIES,
    CongruenceReport,
    Params,
    identity_sides,
    self_similarity_params,
    verify_identity,
    verify_kz_b25_vanishing,
    verify_theorem,
    verify_theorem_b3,
    verify_theorem_b21,
    verify_theorem_b25,
)
from etaq.partitions import OracleRangeError, ParityOracle, count_regular


def test_params():
    assert self_similarity_params("THM_B3", 13) == Params(alpha=7)
    assert self_similarity_params("THM_B3", 5) == Params(alpha=1)
    assert self_similarity_params("THM_B25", 11) == Params(alpha=21, beta=10)
    assert self_similarity_params("THM_B21", 13) == Params(gamma=28)


@pytest.mark.parametrize("target,p", [("THM_B3", 3), ("THM_B21", 2), ("THM_B3", 9), ("NOPE", 5)])
def test_params_rejects(target, p):
    with pytest.raises(ValueError):
        self_similarity_params(target, p)


def test_b3_theorem_holds(oracle):
    rep = verify_theorem_b3(13, 500, oracle)
    assert rep.holds and rep.alpha == 7 and rep.first_failure is None
    assert verify_theorem_b3(17, 300, oracle).holds


def test_b3_base_case():
    # m = 0 on the left is b_3(2 alpha) = b_3(14) for p = 13
    assert count_regular(3, 14)[14] == 57


@pytest.mark.parametrize("p", [5, 7, 11])
def test_b3_theorem_fails_off_the_annihilating_primes(p, oracle):
    rep = verify_theorem_b3(p, 200, oracle)
    assert not rep.holds and rep.first_failure is not None


@pytest.mark.parametrize("p", [11, 19])
def test_b25_theorem_holds(p, oracle):
    assert verify_theorem_b25(p, 300, oracle).holds


@pytest.mark.parametrize("p", [7, 13])
def test_b25_theorem_fails(p, oracle):
    assert not verify_theorem_b25(p, 300, oracle).holds


def test_b25_rejects_five(oracle):
    with pytest.raises(ValueError):
        verify_theorem_b25(5, 10, oracle)


@pytest.mark.parametrize("p", [13, 17, 19, 23])
def test_b21_theorem_holds(p, oracle):
    assert verify_theorem_b21(p, 500, oracle).holds


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_b21_literal_form_fails(p, oracle):
    rep = verify_theorem_b21(p, 100, oracle, literal=True)
    assert not rep.holds


def test_verify_theorem_dispatch(oracle):
    assert verify_theorem("THM_B3", 13, 50, oracle) == verify_theorem_b3(13, 50, oracle)
    with pytest.raises(ValueError):
        verify_theorem("THM_X", 13, 50, oracle)


def test_oracle_range_is_enforced():
    with pytest.raises(OracleRangeError):
        verify_theorem_b3(13, 500, ParityOracle(max_n=1000))


@pytest.mark.parametrize("p", [11, 13, 17, 19])
def test_kz_vanishing(p, oracle):
    rep = verify_kz_b25_vanishing(p, 20, oracle)
    assert rep.holds and rep.target == "KZ_B25_VANISHING"


def test_kz_rejects_bad_prime(oracle):
    with pytest.raises(ValueError):
        verify_kz_b25_vanishing(7, 5, oracle)


@pytest.mark.parametrize("name", IDENTITIES)
def test_identities_hold(name, oracle):
    rep = verify_identity(name, 2000, oracle)
    assert rep.holds and rep.n_range == (0, 1999)


def test_identity_detects_a_broken_side(oracle):
    lhs, rhs = identity_sides("B3_EVEN", 200, oracle)
    assert lhs == rhs
    assert lhs + rhs.shift(1) != lhs


def test_identity_unknown(oracle):
    with pytest.raises(ValueError):
        verify_identity("FOO", 100, oracle)


def test_report_json_field_order():
    rep = CongruenceReport("THM_B25", (0, 10), False, p=11, alpha=21, beta=10, first_failure=3)
    assert list(json.loads(rep.to_json())) == ["target", "p", "alpha", "beta", "n_range", "holds", "first_failure"]
    assert "gamma" not in rep.to_dict()
