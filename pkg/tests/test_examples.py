from __future__ import annotations

import pytest

from kumar import examples as ex
from kumar.correspondence import (
    CorrespondenceError,
    bundle_check,
    check_triple,
    chern_of_pair,
    expand_column,
    extend_scalars,
    forward,
    local_freeness,
)
from kumar.matrix import GradedMatrix, koszul_differential
from kumar.modules import Submodule, minimal_presentation
from kumar.report import Status
from kumar.ring import PolyRing


# -- null correlation ------------------------------------------------------------


def test_null_correlation_golden():
    T = ex.null_correlation()
    P = forward(T)
    assert Submodule(ex.null_correlation_gamma0(P.S)).same_as(P.E())
    F, _ = minimal_presentation(extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane))
    beta0 = ex.null_correlation_beta0(P.S)
    assert F.target == beta0.target
    assert Submodule(F.relations).same_as(Submodule(beta0))
    assert check_triple(T).status is Status.PASS


# -- characteristic two ------------------------------------------------------------


def test_char2_extended_matrix_is_printed_block():
    T = ex.kumar_char2()
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane)
    printed = GradedMatrix.from_strings(T.S, ex.CHAR2_EXTENDED, F.target, F.relations.source)
    assert F.relations == printed


def test_char2_is_over_gf2():
    T = ex.kumar_char2()
    assert T.S.field.p == 2 and T.m == 3 and T.l == (-2, -2)


def test_char2_chern_and_bundle():
    P = forward(ex.kumar_char2())
    ch = chern_of_pair(P)
    assert (ch.rank, ch.c1, ch.c2) == (2, -7, 16)
    assert bundle_check(P).passed


# -- cotangent family ------------------------------------------------------------


def test_cotangent_two_is_null_correlation():
    assert ex.cotangent_triple(2) == ex.null_correlation()


@pytest.mark.parametrize("n", [1, 3, 5, 0])
def test_cotangent_rejects_odd_or_small(n):
    with pytest.raises(ValueError):
        ex.cotangent_triple(n)


def test_cotangent_four_structure():
    T = ex.cotangent_triple(4)
    assert T.alpha.shape == (10, 10) and T.psi0.shape == (10, 4)
    rep = check_triple(T)
    status = {c.name: c.status for c in rep.checks}
    assert status["nilpotent"] is Status.PASS
    assert status["locally-free"] is Status.PASS
    assert rep.info == [("rank M", "4")]
    assert (T.phi_power(2)).is_zero()


# -- Horrocks-Mumford ------------------------------------------------------------


def test_hm_beta2_is_koszul_up_to_signed_permutation():
    S = PolyRing([f"x{i}" for i in range(5)], 32003)
    b2 = ex.hm_beta2(S)
    K = koszul_differential(3, S)
    assert K.shape == b2.shape == (10, 10)
    # same support pattern under the pair/triple labelling, same entries up to sign
    pairs = ex.HM_PAIRS
    triples = ex.HM_TRIPLES
    for i, pr in enumerate(pairs):
        for j, tr in enumerate(triples):
            e = b2[i, j]
            if set(pr) <= set(tr):
                (v,) = set(tr) - set(pr)
                assert e == S.gens[v] or e == -S.gens[v]
            else:
                assert not e.terms
    assert sorted(sorted(str(e).lstrip("-") for e in r) for r in b2.rows) == sorted(
        sorted(str(e).lstrip("-") for e in r) for r in K.rows
    )


def test_hm_certificates(hm):
    names = [c.name for c in hm.certificates]
    assert names == ["minors-of-A", "membership", "saturation"]
    assert all(c.passed for c in hm.certificates)


def test_hm_presentation_shape(hm):
    F = hm.pair.cokernel
    assert F.target == (8, 7, 1, 1, 1, 1, 1)
    assert F.relations.shape == (7, 15)
    assert [str(e) for e in F.relations.column(0)] == [str(hm.pair.S.parse(e)) for e in ex.HM_P_COLUMN1]


def test_hm_chern(hm):
    ch = chern_of_pair(hm.pair)
    E = ch.twist(-1)
    assert (E.rank, E.c1, E.c2) == (2, -1, 4)


def test_hm_q_column_one(hm):
    P = hm.pair
    R = P.S.drop_variable(0)
    col = expand_column(P.cokernel.relations.column(0), 0, 14, 0, R)
    assert len(col) == 98
    got = {k + 1: str(e) for k, e in enumerate(col) if e.terms}
    assert got == {k: str(R.parse(v)) for k, v in ex.HM_Q1.items()}


def test_hm_reverse_generators(hm_reverse):
    T, res = hm_reverse
    assert len(res.labels) == 98
    assert res.M.ngens == 20
    assert sorted(res.kept_labels()) == sorted(ex.HM_G_LABELS)
    assert T.l == (8, 7) and T.m == 14


def test_hm_local_freeness_budget_is_reported(hm_reverse):
    T, _ = hm_reverse
    chk, rank = local_freeness(T.alpha, budget=500)
    assert rank == 14
    assert chk.status is Status.INCONCLUSIVE and "budget 500" in chk.detail


@pytest.mark.parametrize(
    "attr, bad, name",
    [
        ("HM_V1", {15: "x0^6", 2: "x1^6"}, "membership"),
        ("HM_A0T", [[0] * 20] * 5, "minors-of-A"),
    ],
)
def test_hm_certificate_failures_are_named(monkeypatch, attr, bad, name):
    monkeypatch.setattr(ex, attr, bad)
    with pytest.raises(CorrespondenceError, match=name):
        ex.build_hm_pair()
