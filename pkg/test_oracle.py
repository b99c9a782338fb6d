"""
测试穷举枚举、字典序扫描和定理验证证书
"""
from collections import Counter
from fractions import Fraction

import pytest

from analysis import family_stats, is_intersecting, is_isomorphic
from bounds import bound_cross
from constructions import j_family
from core import binom
from exceptions import GuardExceededError, ParameterRangeError, UnknownTheoremError
from models import CertificateStatus, Ground, SetFamily, VerificationCertificate
from oracle import (VERIFIERS, Tally, _class2_checks, enumerate_maximal_intersecting, exhaustive_cross_optimum,
                    lex_scan_optimum, lex_scan_sweep, verify_theorem)


def test_maximal_intersecting_5_2():
    families = list(enumerate_maximal_intersecting(5, 2, anchored=False))
    assert len(families) == 15
    assert Counter(len(F) for F in families) == {4: 5, 3: 10}
    assert all(is_intersecting(F) for F in families)
    anchored = list(enumerate_maximal_intersecting(5, 2, anchored=True))
    assert len(anchored) == 5
    assert all(F.masks >= {0b110} for F in anchored)


def test_maximal_intersecting_7_3_largest_is_star():
    families = list(enumerate_maximal_intersecting(7, 3, anchored=True))
    best = max(families, key=len)
    assert len(best) == 15
    assert family_stats(best).trivial
    nontrivial = max(len(F) for F in families if not family_stats(F).trivial)
    assert nontrivial == 13


def test_enumeration_guard_and_budget():
    with pytest.raises(GuardExceededError):
        list(enumerate_maximal_intersecting(7, 3, guard=10))
    with pytest.raises(GuardExceededError):
        list(enumerate_maximal_intersecting(5, 2, anchored=False, budget=3))
    with pytest.raises(ParameterRangeError):
        list(enumerate_maximal_intersecting(3, 4))


def test_lex_scan_sweep_tail():
    caps = lex_scan_sweep(10, 3, 4, Ground.TAIL, limit=20)
    assert [caps[g] for g in (1, 2, 3, 4, 5, 6, 7, 20)] == [74, 68, 65, 64, 64, 64, 58, 49]


def test_lex_scan_sweep_full():
    caps = lex_scan_sweep(10, 3, 4, Ground.FULL, limit=28)
    assert caps[0] == 120
    assert (caps[1], caps[2], caps[7], caps[8], caps[28]) == (100, 90, 85, 75, 64)
    assert all(x >= y for x, y in zip(caps, caps[1:]))


def test_lex_scan_optimum():
    value, (A, B) = lex_scan_optimum(10, 3, 4, 6, ground=Ground.TAIL)
    assert value == 70
    assert (len(A), len(B)) == (64, 6)
    assert is_intersecting(A, B)
    weighted, _ = lex_scan_optimum(10, 3, 4, 6, weight=Fraction(3), ground=Ground.TAIL)
    assert weighted == 82
    with pytest.raises(ParameterRangeError):
        lex_scan_optimum(6, 3, 4, 1)


def test_exhaustive_matches_lex_scan():
    caps = lex_scan_sweep(6, 2, 2, Ground.FULL)
    for size in range(len(caps)):
        exact, (A, B) = exhaustive_cross_optimum(6, 2, 2, size)
        assert exact == caps[size] + size
        assert len(B) == size
        assert is_intersecting(A, B)
    with pytest.raises(GuardExceededError):
        exhaustive_cross_optimum(10, 3, 4, 1)


@pytest.mark.parametrize("theorem_id,checks", [
    ("eqfull2", 2),
    ("thmfull1", 4),
    ("thmfulleq", 4),
    ("thmfullw", 6),
    ("corweight", 7),
])
def test_verified_at_10_4(theorem_id, checks):
    cert = verify_theorem(theorem_id, {"n": 10, "k": 4})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.checks == checks
    assert cert.witness is None


def test_eqfull3_lex_scan():
    cert = verify_theorem("eqfull3", {"n": 10, "k": 4})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.params["mode"] == "lex-scan"
    assert VERIFIERS["thmfull2"] is VERIFIERS["eqfull3"]


def test_weighted_counterexamples_at_10_4():
    cert = verify_theorem("eqfull4", {"n": 10, "k": 4})
    assert cert.status is CertificateStatus.COUNTEREXAMPLE
    assert cert.witness["previous"] == "77"
    assert cert.witness["value"] == "82"
    nontrivial = verify_theorem("corweight", {"n": 10, "k": 4, "part": "nontrivial"})
    assert nontrivial.status is CertificateStatus.COUNTEREXAMPLE
    assert nontrivial.witness["lhs"] == "82"
    assert nontrivial.witness["cap"] == "77"


@pytest.mark.parametrize("theorem_id", ["prop9", "cross2", "kk-reduction", "shifts-cross"])
def test_cross_verifiers_at_6_2_2(theorem_id):
    cert = verify_theorem(theorem_id, {"n": 6, "a": 2, "b": 2})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.checks > 0


def test_general_cross_verifiers_at_10_3_4():
    assert verify_theorem("thmfullcri", {"n": 10, "a": 3, "b": 4}).status is CertificateStatus.VERIFIED
    cert = verify_theorem("eqcreasy", {"n": 10, "a": 3, "b": 4})
    assert cert.status is CertificateStatus.COUNTEREXAMPLE
    assert (cert.witness["j"], cert.witness["B_size"]) == (3, "28")
    assert cert.witness["lex_sum"] == cert.witness["cap"] == "92"
    assert cert.witness["attained_by"] == "B = b-sets containing [2]"
    assert cert.witness["B"]["size"] == "28"


@pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 5) for b in range(2, 5)])
def test_cross_cap_reached_only_at_tight_sizes(a, b):
    for n in range(a + b + 1, 13):
        upper = binom(n + a - b - 1, a - 1)
        caps = lex_scan_sweep(n, a, b, Ground.FULL, limit=upper)
        for j in range(max(1, b - a + 1), b + 1):
            for size in range(binom(n - j, b - j), min(upper, len(caps) - 1) + 1):
                bound = bound_cross(a, b, n, size, part="eqcreasy2", j=j)
                value = caps[size] + size
                assert value <= bound.value, (n, j, size)
                assert (value == bound.value) == (bound.flag == "tight"), (n, j, size)


@pytest.mark.parametrize("theorem_id,params", [
    ("identities", {"n": 20, "k": 6}),
    ("a0-degree", {"n": 9, "k": 3}),
    ("eqhil", {"n": 13, "k": 3, "s": 2}),
    ("kk", {"n": 6, "k": 3}),
    ("ekr", {"n": 7, "k": 3}),
    ("hm", {"n": 7, "k": 3}),
])
def test_other_verifiers(theorem_id, params):
    cert = verify_theorem(theorem_id, params)
    assert cert.status is CertificateStatus.VERIFIED


def test_eqhil_reports_parameters():
    cert = verify_theorem("eqhil", {"n": 13, "k": 3, "s": 2})
    assert cert.params["u"] == 3
    assert cert.witness["measured"]["a_k"] == {"size": "56", "nu": 2, "tau": 6}
    assert cert.witness["measured"]["cap"] == "121"


@pytest.mark.parametrize("theorem_id", ["thm02", "degEKR"])
def test_out_of_scale_theorems_are_skipped(theorem_id):
    cert = verify_theorem(theorem_id, {"n": 7, "k": 3})
    assert cert.status is CertificateStatus.SKIPPED
    assert "reason" in cert.witness
    assert "measured" in cert.witness


def test_guard_turns_into_skipped():
    cert = verify_theorem("ekr", {"n": 13, "k": 4})
    assert cert.status is CertificateStatus.SKIPPED
    assert "guard" in cert.witness["reason"]
    assert cert.params["min_size"] == 220


def test_unknown_theorem():
    with pytest.raises(UnknownTheoremError):
        verify_theorem("thm99", {"n": 10, "k": 4})


def test_certificate_json_round_trip():
    cert = verify_theorem("eqfull4", {"n": 10, "k": 4})
    data = cert.to_json_dict()
    assert data["theorem"] == "eqfull4"
    assert data["status"] == "counterexample"
    again = VerificationCertificate.model_validate(data)
    assert again == cert


def test_size_floor_search_matches_full_listing():
    full = [F for F in enumerate_maximal_intersecting(7, 3, anchored=True) if len(F) >= 13]
    labelled = list(enumerate_maximal_intersecting(7, 3, anchored=True, min_size=13))
    assert {F.masks for F in labelled} == {F.masks for F in full}
    reduced = list(enumerate_maximal_intersecting(7, 3, anchored=True, min_size=13, orbits=True))
    assert 0 < len(reduced) <= len(labelled)
    assert all(any(is_isomorphic(F, G) for G in reduced) for F in full)


def test_swap_reduction_keeps_every_class():
    full = list(enumerate_maximal_intersecting(6, 3, anchored=True))
    reduced = list(enumerate_maximal_intersecting(6, 3, anchored=True, orbits=True))
    assert len(reduced) <= len(full)
    assert all(any(is_isomorphic(F, G) for G in reduced) for F in full)


@pytest.mark.parametrize("theorem_id,floor", [
    ("ekr", 56),
    ("hm", 53),
    ("thmhk", 51),
    ("thmhz", 50),
    ("stat1", 50),
    ("corweight", 52),
])
def test_enumeration_at_9_4(theorem_id, floor):
    cert = verify_theorem(theorem_id, {"n": 9, "k": 4, "mode": "enumerate"})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.params["mode"] == "enumerate"
    assert cert.params["min_size"] == floor
    assert cert.checks > 0


def test_hk_attainers_at_9_4():
    cert = verify_theorem("thmhk", {"n": 9, "k": 4, "mode": "enumerate"})
    measured = cert.witness["measured"]
    assert measured["max_size"] == 51
    assert measured["attaining"] >= 2
    assert measured["unique_up_to_isomorphism"] is False


def test_weighted_corollary_by_enumeration_at_11_4():
    cert = verify_theorem("corweight", {"n": 11, "k": 4, "mode": "enumerate"})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.params["min_size"] == 100
    assert cert.checks > 0


@pytest.mark.parametrize("n", [11, 12])
def test_class2_on_constructed_families(n):
    cert = verify_theorem("thmclass2", {"n": n, "k": 5})
    assert cert.status is CertificateStatus.VERIFIED
    assert cert.params["mode"] == "constructive"
    assert cert.checks > 0


def test_class2_equality_check_runs_only_on_ties():
    tally = Tally()
    _class2_checks(j_family(12, 5, 2), 3, binom(7, 1), tally)
    assert tally.checks == 2 and tally.witness is None
    # drop a set through 1: now strictly below the family its pair generates
    smaller = j_family(12, 5, 2)
    smaller = SetFamily.trusted(12, 5, sorted(smaller.masks)[1:])
    tally = Tally()
    _class2_checks(smaller, 3, binom(7, 1), tally)
    assert tally.checks == 1 and tally.witness is None
