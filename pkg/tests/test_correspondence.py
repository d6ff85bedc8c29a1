from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kumar.correspondence import (
    CorrespondenceError,
    Pair,
    Triple,
    annihilated_by,
    chern,
    chern_from_twists,
    chern_of_pair,
    expand_column,
    extend_scalars,
    forward,
    nilpotency_holds,
    nilpotency_order,
    resolution_of,
    restrict_scalars,
    reverse,
    standard_lifting,
)
from kumar.matrix import GradedMatrix
from kumar.modules import Presentation, Submodule, hilbert_function, minimal_presentation
from kumar.examples import null_correlation
from kumar.ring import PolyRing

import oracle

TRIPLES = ["null-correlation", "kumar-char2", "cotangent-2", "cotangent-4", "horrocks-mumford"]
PAIRS = ["null-correlation", "kumar-char2", "horrocks-mumford"]


def _betti01(P: Presentation):
    Q, _ = minimal_presentation(P)
    return sorted(Q.target), sorted(Q.relations.source)


@pytest.mark.parametrize("name", TRIPLES)
def test_round_trip_restrict_extend(name, builtin_triples):
    T = builtin_triples[name]
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane)
    res = restrict_scalars(F, T.hyperplane, T.m)
    window = range(-5, 16)
    assert hilbert_function(res.M, window) == hilbert_function(T.M, window)
    assert _betti01(res.M) == _betti01(T.M)


@pytest.mark.parametrize("name", PAIRS)
def test_round_trip_reverse_forward(name, builtin_pairs):
    P = builtin_pairs[name]
    T, _ = reverse(P)
    back = forward(T)
    assert back.l == P.l
    assert Submodule(back.gamma).same_as(Submodule(P.gamma))


@pytest.mark.parametrize("name, m", [("null-correlation", 2), ("kumar-char2", 3), ("horrocks-mumford", 14)])
def test_nilpotency_has_exact_order(name, m, builtin_triples):
    T = builtin_triples[name]
    assert T.m == m
    assert nilpotency_holds(T.alpha, T.phi0, m)
    assert not nilpotency_holds(T.alpha, T.phi0, m - 1)
    assert nilpotency_order(T) == m


@pytest.mark.parametrize("name", TRIPLES)
def test_extension_is_annihilated(name, builtin_triples):
    T = builtin_triples[name]
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane, check=False)
    assert annihilated_by(F, T.S.gens[T.hyperplane] ** T.m)


@pytest.mark.parametrize("name, m", [("null-correlation", 2), ("kumar-char2", 3), ("horrocks-mumford", 14)])
def test_m_is_sum_of_twists_minus_c1(name, m, builtin_pairs):
    P = builtin_pairs[name]
    assert P.m == m
    assert sum(P.l) - chern_of_pair(P).c1 == m


def test_pair_exactness_against_oracle():
    """E = ker(sum S(l) -> F), degree by degree up to 6, on the null correlation pair."""
    P = forward(null_correlation())
    F = P.cokernel
    V = P.cokernel_images
    composed = V @ P.gamma
    G = F.groebner()
    assert all(G.contains(c) for c in composed.columns())
    stacked = V.hstack(F.relations)
    for d in range(0, 7):
        ker = oracle.kernel_dim(stacked, d) - oracle.kernel_dim(F.relations, d)
        assert oracle.image_dim(P.gamma, d) == ker, d


def test_trivial_reverse():
    S = PolyRing(["x", "y", "z"], 32003)
    z = S.parse("z")
    gamma = GradedMatrix(S, [[z, S.zero()], [S.zero(), z]], [0, 0], [-1, -1])
    T, res = reverse(Pair(gamma, (0, 0), 1, 2))
    assert T.alpha.nrows == 2 and (T.alpha.ncols == 0 or T.alpha.is_zero())
    assert T.phi0.is_zero()
    assert T.psi0 == GradedMatrix.identity(T.R, (0, 0))


def test_reverse_with_wrong_m_fails():
    P = forward(null_correlation())
    with pytest.raises(CorrespondenceError):
        reverse(P, m=1)


def test_reverse_computes_m_when_missing():
    P = forward(null_correlation())
    T, _ = reverse(P, m=0)
    assert T.m == 2


def test_standard_lifting_is_the_shift():
    T = null_correlation()
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane)
    res = restrict_scalars(F, T.hyperplane, T.m)
    phi = standard_lifting(res)
    assert phi.source == res.M.target
    assert phi.target == tuple(d + 1 for d in res.M.target)
    assert nilpotency_holds(res.M.relations, phi, T.m)


def test_expand_column_labels():
    S = PolyRing(["x", "y", "h"], 32003)
    R = S.drop_variable(2)
    col = [S.parse("x*h + y^2"), S.parse("h^2")]
    out = expand_column(col, 2, 3, 0, R)
    assert out[0] == R.parse("y^2") and out[2] == R.parse("x") and out[5] == R.parse("1")
    shifted = expand_column(col, 2, 3, 1, R)
    assert shifted[2] == R.parse("y^2") and shifted[4] == R.parse("x") and not shifted[5].terms


def test_triple_validation():
    T = null_correlation()
    with pytest.raises(CorrespondenceError):
        Triple(T.alpha, T.phi0, T.psi0, (0, 1), T.m, T.S, T.hyperplane)
    with pytest.raises(ValueError):
        Triple(T.alpha, T.phi0.with_twists(target=[0, 0, 0]), T.psi0, T.l, T.m, T.S, T.hyperplane)


def test_restriction_requires_annihilation():
    T = null_correlation()
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane)
    with pytest.raises(CorrespondenceError):
        restrict_scalars(F, T.hyperplane, 1)


# -- Chern classes --------------------------------------------------------------


def test_chern_of_free_module():
    ch = chern_from_twists([(2, -1, 3)], 4)
    assert ch.rank == 3 and ch.c1 == 4


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.integers(-3, 3))
@settings(max_examples=50, deadline=None)
def test_twisting_matches_shifted_twists(twists, t):
    n = 4
    direct = chern_from_twists([[a + t for a in twists]], n)
    assert chern_from_twists([twists], n).twist(t) == direct


def test_null_correlation_chern():
    res = resolution_of(forward(null_correlation()))
    ch = chern(res)
    assert (ch.rank, ch.c1, ch.c2) == (2, -2, 2)
    norm, t = ch.normalized()
    assert (norm.c1, norm.c2, t) == (0, 1, 1)
