"""Verification reports for the built-in examples (shared by the CLI and the tests)."""

from __future__ import annotations

import time
from typing import Callable

from .correspondence import (
    Pair,
    Triple,
    bundle_check,
    chern,
    check_triple,
    expand_column,
    extend_scalars,
    forward,
    nilpotency_holds,
    resolution_of,
    reverse,
)
from .examples import (
    CHAR2_BETA0,
    CHAR2_BETA0_SOURCE,
    CHAR2_BETA0_TARGET,
    HM_CONSTANT_Q_ROWS,
    HM_F_TARGET,
    HM_G_LABELS,
    HM_Q1,
    build_hm_pair,
    char2_gamma0,
    cotangent_triple,
    kumar_char2,
    null_correlation,
    null_correlation_gamma0,
)
from .matrix import GradedMatrix
from .modules import Submodule, minimal_presentation
from .report import Check, Report, Status

EXAMPLES = ("null-correlation", "kumar-char2", "horrocks-mumford", "cotangent")


def _expect(rep: Report, name: str, ok: bool, detail: str) -> bool:
    rep.add(Check(name, Status.of(ok), detail))
    return ok


class _Clock:
    def __init__(self, rep: Report):
        self.rep = rep

    def __call__(self, key: str, fn: Callable):
        t0 = time.perf_counter()
        out = fn()
        self.rep.time(key, time.perf_counter() - t0)
        return out


def _pair_checks(rep: Report, P: Pair, clock: _Clock, budget: int | None, betti=None, classes=None):
    """Resolution shape, bundle check and Chern classes of the pair's ``E``."""
    res = clock("resolution", lambda: resolution_of(P))
    rep.note("resolution of E", res.shape())
    if betti is not None:
        got = tuple(res.ranks)
        _expect(rep, "betti", got == betti, f"ranks {list(got)}, expected {list(betti)}")
    rep.add(clock("bundle", lambda: bundle_check(P, budget)))
    ch = chern(res)
    rep.note("chern of E", ch)
    if classes is not None:
        rank, c1, c2 = classes
        ok = (ch.rank, ch.c1, ch.c2) == (rank, c1, c2)
        _expect(rep, "chern", ok, f"rank {ch.rank}, c1 = {ch.c1}, c2 = {ch.c2}")
    return res, ch


def verify_null_correlation(budget: int | None = None, field: int = 32003) -> Report:
    rep = Report()
    clock = _Clock(rep)
    T = null_correlation(field)
    rep.extend(check_triple(T, budget), "triple ")
    P = clock("forward", lambda: forward(T))
    _, ch = _pair_checks(rep, P, clock, budget, betti=(5, 4, 1), classes=(2, -2, 2))
    norm, t = ch.normalized()
    _expect(rep, "chern normalized", (norm.c1, norm.c2, t) == (0, 1, 1), f"E({t}): c1 = {norm.c1}, c2 = {norm.c2}")
    golden = Submodule(null_correlation_gamma0(P.S))
    _expect(rep, "gamma", golden.same_as(P.E()), "gamma spans the transcribed gamma0")
    _expect(rep, "cotangent n=2", cotangent_triple(2, field) == T, "cotangent family at n = 2 is this triple")
    return rep


def verify_char2(budget: int | None = None) -> Report:
    rep = Report()
    clock = _Clock(rep)
    T = kumar_char2()
    rep.extend(check_triple(T, budget), "triple ")
    exact = not nilpotency_holds(T.alpha, T.phi0, 2)
    _expect(rep, "nilpotency order", exact, "phi^2 != 0" if exact else "phi^2 = 0")
    F = extend_scalars(T.alpha, T.phi0, T.m, T.S, T.hyperplane)
    Fmin, _ = clock("minimalize", lambda: minimal_presentation(F))
    shape = Fmin.relations.shape
    _expect(rep, "minimal presentation", shape == (4, 8), f"{shape[0]} x {shape[1]}")
    beta0 = GradedMatrix.from_strings(T.S, CHAR2_BETA0, CHAR2_BETA0_TARGET, CHAR2_BETA0_SOURCE)
    same = Fmin.target == beta0.target and Submodule(beta0).same_as(Submodule(Fmin.relations))
    _expect(rep, "beta0", same, "relations span the transcribed beta0")
    P = clock("forward", lambda: forward(T))
    _pair_checks(rep, P, clock, budget, classes=(2, -7, 16))
    g = char2_gamma0(P.S)
    swapped = GradedMatrix(P.S, [g.rows[1], g.rows[0]], g.target, g.source)
    x = P.x ** 3
    z = P.S.zero()
    power = GradedMatrix(P.S, [[x, z], [z, x]], P.l, [d - 3 for d in P.l])
    golden = Submodule(swapped.hstack(power))
    _expect(rep, "gamma", golden.same_as(P.E()), "gamma with x4^3 I spans E")
    return rep


def verify_hm(budget: int | None = None, field: int = 32003) -> Report:
    rep = Report()
    clock = _Clock(rep)
    hm = clock("build", lambda: build_hm_pair(field))
    for c in hm.certificates:
        rep.add(c)
    P = hm.pair
    F = P.cokernel
    shape_ok = F.target == HM_F_TARGET and F.relations.ncols == 15
    _expect(rep, "F presentation", shape_ok, f"target {list(F.target)}, {F.relations.ncols} relations")
    _, ch = _pair_checks(rep, P, clock, budget)
    E = ch.twist(-1)
    ok = (E.rank, E.c1, E.c2) == (2, -1, 4)
    _expect(rep, "chern", ok, f"E = ker(-1): rank {E.rank}, c1 = {E.c1}, c2 = {E.c2}")
    _expect(rep, "m", sum(P.l) - ch.c1 == P.m, f"sum(l) - c1 = {sum(P.l) - ch.c1}")
    R = P.S.drop_variable(P.hyperplane)
    col = expand_column(F.relations.column(0), P.hyperplane, P.m, 0, R)
    nonzero = {k + 1 for k, e in enumerate(col) if e.terms}
    match = nonzero == set(HM_Q1) and all((col[k - 1] - R.parse(v)).is_zero() for k, v in HM_Q1.items())
    _expect(rep, "Q column 1", match, f"{len(nonzero)} nonzero entries")
    consts = set()
    for j in range(F.relations.ncols):
        for k, e in enumerate(expand_column(F.relations.column(j), P.hyperplane, P.m, 0, R)):
            if e.terms and e.is_constant():
                consts.add(k + 1)
    _expect(rep, "Q constants", consts == HM_CONSTANT_Q_ROWS, f"constant entries in rows {sorted(consts)}")
    T, res = clock("reverse", lambda: reverse(P))
    rep.note("labelled generators", len(res.labels))
    rep.note("minimal generators", res.M.ngens)
    ok = len(res.labels) == 98 and res.M.ngens == 20
    _expect(rep, "restriction", ok, f"{len(res.labels)} labelled generators, {res.M.ngens} minimal")
    _expect(rep, "generators G", sorted(res.kept_labels()) == sorted(HM_G_LABELS), "kept x0^i f_j match G")
    rep.extend(check_triple(T, budget), "triple ")
    return rep


def verify_cotangent(n: int, budget: int | None = None, field: int = 32003) -> Report:
    rep = Report()
    clock = _Clock(rep)
    T = cotangent_triple(n, field)
    rep.extend(check_triple(T, budget), "triple ")
    P = clock("forward", lambda: forward(T, check=False))
    res, ch = _pair_checks(rep, P, clock, budget)
    _expect(rep, "rank", ch.rank == n, f"rank {ch.rank} from the resolution")
    return rep


def example_triple_or_pair(name: str, n: int | None = None, field: int = 32003) -> Triple | Pair:
    if name == "null-correlation":
        return null_correlation(field)
    if name == "kumar-char2":
        return kumar_char2()
    if name == "horrocks-mumford":
        return build_hm_pair(field).pair
    if name == "cotangent":
        return cotangent_triple(4 if n is None else n, field)
    raise ValueError(f"unknown example {name!r}")


def verify_example(name: str, n: int | None = None, budget: int | None = None, field: int = 32003) -> Report:
    if name == "null-correlation":
        return verify_null_correlation(budget, field)
    if name == "kumar-char2":
        return verify_char2(budget)
    if name == "horrocks-mumford":
        return verify_hm(budget, field)
    if name == "cotangent":
        return verify_cotangent(4 if n is None else n, budget, field)
    raise ValueError(f"unknown example {name!r}")
