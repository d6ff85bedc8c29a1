"""Kumar's correspondence between pairs and triples, in graded-module terms.

Coordinates: ``S = K[x_0..x_n]`` and the hyperplane ``H = {x_h = 0}`` with
``h`` the *hyperplane index* (the last variable by default).  The
coordinate ring of ``H`` is ``R``, the ring ``S`` with ``x_h`` removed.

* A :class:`Triple` is an ``R``-module ``M = coker(alpha)``, a degree one
  endomorphism lifted to ``phi0 : M_0 -> M_0(1)``, a map
  ``psi0 : sum R(l_i) -> M_0`` and the order ``m``.
* A :class:`Pair` is a matrix ``gamma`` whose columns generate a submodule
  ``E`` of ``sum S(l_i)``; its cokernel ``F`` is killed by ``x_h^m``.

``forward`` turns a triple into a pair by extension of scalars and a
kernel computation; ``reverse`` goes back by restriction of scalars.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .matrix import GradedMatrix
from .modules import (
    ChangeOfBasis,
    FittingResult,
    FreeResolution,
    Presentation,
    Submodule,
    fitting_ideal,
    hilbert_data,
    is_finite_length,
    is_projectively_empty,
    kernel_into_cokernel,
    minimal_generators,
    minimalize,
    quotient_is_empty,
    resolve_image,
)
from .report import Check, Report, Status
from .ring import Polynomial, PolyRing


class CorrespondenceError(ValueError):
    """A precondition of the correspondence failed."""


# ---------------------------------------------------------------------------
# rings


def hyperplane_ring(S: PolyRing, h: int) -> PolyRing:
    """Coordinate ring of ``{x_h = 0}``."""
    if not 0 <= h < S.nvars:
        raise ValueError(f"hyperplane index {h} out of range")
    return S.drop_variable(h)


def to_ring(A: GradedMatrix, ring: PolyRing) -> GradedMatrix:
    return A if A.ring == ring else A.change_ring(ring)


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class Triple:
    """``(M, phi0, psi0, l, m)`` over the hyperplane ring.

    ``alpha`` presents ``M`` with target twists ``M_0``; ``phi0`` has target
    ``M_0 + 1`` and source ``M_0``; ``psi0`` has target ``M_0`` and source
    ``l``.  ``S`` and ``hyperplane`` record the ambient ring.
    """

    alpha: GradedMatrix
    phi0: GradedMatrix
    psi0: GradedMatrix
    l: tuple[int, ...]
    m: int
    S: PolyRing
    hyperplane: int

    def __post_init__(self):
        R = hyperplane_ring(self.S, self.hyperplane)
        for name in ("alpha", "phi0", "psi0"):
            A = getattr(self, name)
            if A.ring != R:
                object.__setattr__(self, name, A.change_ring(R))
            getattr(self, name).validate(name)
        t = self.alpha.target
        if self.phi0.source != t or self.phi0.target != tuple(d + 1 for d in t):
            raise CorrespondenceError(
                f"phi0 must map M_0 {list(t)} to M_0(1); got {list(self.phi0.source)} -> {list(self.phi0.target)}"
            )
        if self.psi0.target != t:
            raise CorrespondenceError(f"psi0 target {list(self.psi0.target)} differs from M_0 {list(t)}")
        if tuple(self.psi0.source) != tuple(self.l):
            raise CorrespondenceError(f"psi0 source {list(self.psi0.source)} differs from l = {list(self.l)}")
        if self.m < 1:
            raise CorrespondenceError("m must be positive")
        object.__setattr__(self, "l", tuple(self.l))

    @property
    def R(self) -> PolyRing:
        return self.alpha.ring

    @property
    def M(self) -> Presentation:
        return Presentation(self.alpha)

    @property
    def rank(self) -> int:
        return len(self.l)

    def phi_power(self, k: int) -> GradedMatrix:
        """``phi0`` composed ``k`` times, as a map ``M_0 -> M_0(k)``."""
        out = GradedMatrix.identity(self.R, self.alpha.target)
        for i in range(k):
            out = self.phi0.twist(i) @ out
        return out


@dataclass(frozen=True)
class Pair:
    """Columns of ``gamma`` generate ``E`` inside ``sum S(l_i)``.

    Optionally ``F`` presents the cokernel with its own generators and
    ``images`` (target ``F``'s generators, source ``l``) sends the basis
    vectors of ``sum S(l_i)`` into it.  By default ``F = coker(gamma)`` and
    ``images`` is the identity.
    """

    gamma: GradedMatrix
    l: tuple[int, ...]
    m: int
    hyperplane: int
    F: Presentation | None = None
    images: GradedMatrix | None = None

    def __post_init__(self):
        self.gamma.validate("gamma")
        object.__setattr__(self, "l", tuple(self.l))
        if self.gamma.target != self.l:
            raise CorrespondenceError(f"gamma target {list(self.gamma.target)} differs from l = {list(self.l)}")
        if self.F is not None:
            images = self.images
            if images is None:
                if self.F.target[: len(self.l)] != self.l:
                    raise CorrespondenceError("the first generators of F must carry the twists l")
                S = self.gamma.ring
                z, one = S.zero(), S.one_poly()
                rows = [[one if i == j else z for j in range(len(self.l))] for i in range(self.F.ngens)]
                images = GradedMatrix(S, rows, self.F.target, self.l)
                object.__setattr__(self, "images", images)
            images.validate("images")
            if images.target != self.F.target or images.source != self.l:
                raise CorrespondenceError("images must map sum S(l_i) to the generators of F")
        elif self.images is not None:
            raise CorrespondenceError("images given without F")

    @property
    def S(self) -> PolyRing:
        return self.gamma.ring

    @property
    def rank(self) -> int:
        return len(self.l)

    @property
    def cokernel(self) -> Presentation:
        return self.F if self.F is not None else Presentation(self.gamma)

    @property
    def cokernel_images(self) -> GradedMatrix:
        if self.images is not None:
            return self.images
        return GradedMatrix.identity(self.S, self.l)

    @property
    def x(self) -> Polynomial:
        return self.S.gens[self.hyperplane]

    def E(self) -> Submodule:
        return Submodule(self.gamma)


def _binom(a: int, k: int) -> int:
    """Binomial coefficient with arbitrary integer upper index."""
    if a >= 0:
        return comb(a, k)
    return (-1) ** k * comb(k - a - 1, k)


@dataclass(frozen=True)
class ChernData:
    """Rank and Chern classes ``c_1..c_n`` (coefficients of powers of the hyperplane class)."""

    rank: int
    classes: tuple[int, ...]

    @property
    def c1(self) -> int:
        return self.classes[0] if self.classes else 0

    @property
    def c2(self) -> int:
        return self.classes[1] if len(self.classes) > 1 else 0

    def twist(self, t: int) -> "ChernData":
        """Chern classes of ``E(t)``: ``c_k(E(t)) = sum_i C(r-i, k-i) t^(k-i) c_i(E)``."""
        n = len(self.classes)
        r = self.rank
        c = (1,) + self.classes
        out = []
        for k in range(1, n + 1):
            out.append(sum(_binom(r - i, k - i) * t ** (k - i) * c[i] for i in range(k + 1)))
        return ChernData(r, tuple(out))

    def normalized(self) -> tuple["ChernData", int]:
        """Twist so that ``c_1`` lies in ``{-r+1, ..., 0}``; returns the data and the twist used."""
        r = self.rank
        if r == 0:
            return self, 0
        t = (-self.c1) // r
        return self.twist(t), t

    def __str__(self) -> str:
        return f"rank {self.rank}, " + ", ".join(f"c{i + 1} = {c}" for i, c in enumerate(self.classes))


# ---------------------------------------------------------------------------
# Chern classes


def _series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def _series_inv(a: list[int], n: int) -> list[int]:
    # a[0] == 1
    out = [1] + [0] * n
    for k in range(1, n + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
    return out


def chern_from_twists(twists: Sequence[Sequence[int]], n: int) -> ChernData:
    """Chern data of the alternating sum of ``F_i = sum S(a)`` with twist lists ``twists[i]``."""
    total = [1] + [0] * n
    rank = 0
    for i, t in enumerate(twists):
        c = [1] + [0] * n
        for a in t:
            c = _series_mul(c, [1, a], n)
        if i % 2:
            c = _series_inv(c, n)
            rank -= len(t)
        else:
            rank += len(t)
        total = _series_mul(total, c, n)
    return ChernData(rank, tuple(total[1:]))


def chern(res: FreeResolution, n: int | None = None) -> ChernData:
    """Chern data of the resolved module on ``P^n`` (``n`` defaults to ``nvars - 1``)."""
    n = res.ring.nvars - 1 if n is None else n
    return chern_from_twists(res.twists, n)


# ---------------------------------------------------------------------------
# extension and restriction of scalars


def nilpotency_holds(alpha: GradedMatrix, phi0: GradedMatrix, k: int) -> bool:
    """Whether ``phi^k = 0`` on ``coker(alpha)``."""
    t = alpha.target
    power = GradedMatrix.identity(alpha.ring, t)
    for i in range(k):
        power = phi0.twist(i) @ power
    G = Presentation(alpha).groebner()
    return all(G.contains(c) for c in power.columns())


def nilpotency_order(T: Triple, bound: int | None = None) -> int | None:
    """Least ``k`` with ``phi^k = 0``, searching up to ``bound`` (default ``T.m``)."""
    bound = T.m if bound is None else bound
    G = T.M.groebner()
    power = GradedMatrix.identity(T.R, T.alpha.target)
    for k in range(1, bound + 1):
        power = T.phi0.twist(k - 1) @ power
        if all(G.contains(c) for c in power.columns()):
            return k
    return None


def annihilated_by(F: Presentation, f: Polynomial) -> bool:
    """Whether ``f`` kills ``coker F`` (``f e_j`` lies in the relations for every ``j``)."""
    G = F.groebner()
    z = f.ring.zero()
    for j in range(F.ngens):
        col = [f if i == j else z for i in range(F.ngens)]
        if not G.contains(col):
            return False
    return True


def extend_scalars(alpha: GradedMatrix, phi0: GradedMatrix, m: int, S: PolyRing, hyperplane: int, check: bool = True) -> Presentation:
    """Presentation ``[alpha | phi0(-1) - x_h I]`` of the ``S``-module ``F``."""
    if check and not nilpotency_holds(alpha, phi0, m):
        raise CorrespondenceError(f"phi^{m} is not zero on M")
    t = alpha.target
    A = to_ring(alpha, S)
    P = to_ring(phi0, S).with_twists(target=t, source=[d - 1 for d in t])
    x = S.gens[hyperplane]
    n = len(t)
    rows = [[P[i, j] - x if i == j else P[i, j] for j in range(n)] for i in range(n)]
    block = GradedMatrix(S, rows, t, [d - 1 for d in t])
    F = Presentation(A.hstack(block))
    if check and not annihilated_by(F, x**m):
        raise CorrespondenceError(f"x^{m} does not annihilate the extended module")
    return F


@dataclass
class Restriction:
    """Output of :func:`restrict_scalars`.

    ``labels[k] = (i, j)`` names the generator ``x_h^i f_j`` (index
    ``i * s + j`` with ``s`` generators of ``F``); ``full`` is the
    presentation on all labelled generators, ``M`` its minimalization and
    ``basis`` the change of basis between them.
    """

    labels: list[tuple[int, int]]
    full: Presentation
    M: Presentation
    basis: ChangeOfBasis
    m: int
    s: int

    def index(self, i: int, j: int) -> int:
        return i * self.s + j

    def kept_labels(self) -> list[tuple[int, int]]:
        return [self.labels[k] for k in self.basis.kept]


def expand_column(col: Sequence[Polynomial], hyperplane: int, m: int, shift: int, R: PolyRing) -> list[Polynomial]:
    """``x_h^shift * col`` rewritten on the labelled generators ``x_h^i f_j`` (terms with ``i >= m`` dropped)."""
    s = len(col)
    out = [R.zero()] * (m * s)
    for j, f in enumerate(col):
        for k, c in f.expand_in(hyperplane).items():
            i = k + shift
            if i < m:
                out[i * s + j] = out[i * s + j] + R.convert(c)
    return out


def restrict_scalars(F: Presentation, hyperplane: int, m: int, check: bool = True) -> Restriction:
    """The ``R``-module underlying an ``S``-module killed by ``x_h^m``.

    Generators are ``x_h^i f_j`` for ``0 <= i < m``; relations are the
    expansions of ``x_h^t r`` for every relation ``r`` and ``0 <= t < m``.
    """
    S = F.ring
    R = hyperplane_ring(S, hyperplane)
    if check and not annihilated_by(F, S.gens[hyperplane] ** m):
        raise CorrespondenceError(f"not a module over the {m}-th infinitesimal neighbourhood: x^{m} does not annihilate F")
    s = F.ngens
    labels = [(i, j) for i in range(m) for j in range(s)]
    target = [F.target[j] - i for i, j in labels]
    cols, source = [], []
    for c, r in enumerate(F.relations.columns()):
        for t in range(m):
            e = expand_column(r, hyperplane, m, t, R)
            if any(p.terms for p in e):
                cols.append(e)
                source.append(F.relations.source[c] - t)
    full = Presentation(GradedMatrix.from_columns(R, cols, target, source))
    M, cob = minimalize(full)
    M = Presentation(minimal_generators(M.relations))
    return Restriction(labels, full, M, cob, m, s)


def standard_lifting(res: Restriction) -> GradedMatrix:
    """The shift ``x^i f_j -> x^(i+1) f_j`` on the minimal generators, as ``M_0 -> M_0(1)``."""
    T = res.basis.rewrite
    R = T.ring
    cols = []
    for k in res.basis.kept:
        i, j = res.labels[k]
        if i + 1 < res.m:
            cols.append(T.column(res.index(i + 1, j)))
        else:
            cols.append([R.zero()] * T.nrows)
    t = T.target
    return GradedMatrix.from_columns(R, cols, [d + 1 for d in t], t)


def psi_from_restriction(res: Restriction, images: GradedMatrix, hyperplane: int) -> GradedMatrix:
    """Rewrite the images of the basis vectors on the minimal generators of ``M``."""
    T = res.basis.rewrite
    R = T.ring
    cols = []
    for col in images.columns():
        v = expand_column(col, hyperplane, res.m, 0, R)
        cols.append(
            [sum((T[k, g] * v[g] for g in range(len(v)) if v[g].terms and T[k, g].terms), R.zero()) for k in range(T.nrows)]
        )
    return GradedMatrix.from_columns(R, cols, T.target, images.source)


# ---------------------------------------------------------------------------
# checks


def _fitting_emptiness(A: GradedMatrix, k: int, budget: int | None) -> FittingResult:
    return fitting_ideal(A, k, budget=budget, stop=is_projectively_empty)


def local_freeness(alpha: GradedMatrix, budget: int | None = None) -> tuple[Check, int | None]:
    """Local freeness of ``coker(alpha)`` by Fitting ideals.

    The generic rank comes from the Hilbert polynomial; with ``rho`` the number
    of generators minus that rank, ``I_(rho+1)`` vanishes because the ring is
    a domain, and the sheaf is locally free iff ``V(I_rho)`` is empty.
    """
    P = Presentation(alpha)
    rank = hilbert_data(P).rank()
    rho = P.ngens - rank
    if rho == 0:
        return Check("locally-free", Status.PASS, f"rank {rank}, free"), rank
    res = _fitting_emptiness(alpha, rho, budget)
    if res.stopped_early:
        return Check("locally-free", Status.PASS, f"rank {rank}, V(I_{rho}) empty after {res.examined} of {res.total} minors"), rank
    if res.complete:
        return Check("locally-free", Status.FAIL, f"generic rank {rank} but V(I_{rho}) is not empty"), rank
    return (
        Check(
            "locally-free",
            Status.INCONCLUSIVE,
            f"generic rank {rank}; minor budget {budget} exhausted after {res.examined} of {res.total} minors of size {rho}",
        ),
        rank,
    )


def surjectivity_matrix(T: Triple) -> GradedMatrix:
    """Presentation ``[phi0(-1) | psi0 | alpha]`` of ``coker(phi, psi)``."""
    t = T.alpha.target
    phi = T.phi0.with_twists(target=t, source=[d - 1 for d in t])
    return phi.hstack(T.psi0, T.alpha)


def check_triple(T: Triple, budget: int | None = None, local: bool = True) -> Report:
    rep = Report()
    t0 = time.perf_counter()
    ok = nilpotency_holds(T.alpha, T.phi0, T.m)
    rep.add(Check("nilpotent", Status.of(ok), f"phi^{T.m} {'=' if ok else '!='} 0"))
    rep.time("nilpotent", time.perf_counter() - t0)
    t0 = time.perf_counter()
    fl = is_finite_length(Presentation(surjectivity_matrix(T)))
    rep.add(Check("surjective", Status.of(fl), "coker(phi, psi) has finite length" if fl else "coker(phi, psi) has positive dimension"))
    rep.time("surjective", time.perf_counter() - t0)
    if local:
        t0 = time.perf_counter()
        chk, rank = local_freeness(T.alpha, budget)
        rep.add(chk)
        rep.note("rank M", rank)
        rep.time("locally-free", time.perf_counter() - t0)
    return rep


def bundle_check(P: Pair, budget: int | None = None) -> Check:
    """Maximal minors ``I`` of ``gamma``; pass iff ``V(I : x_h^m)`` is empty."""
    gamma = P.gamma
    r = gamma.nrows
    if gamma.ncols < r:
        return Check("bundle", Status.FAIL, f"gamma has fewer than {r} columns")
    x = P.x
    res = fitting_ideal(gamma, r, budget=budget, stop=lambda g: quotient_is_empty(g, x, P.m))
    name = P.S.names[P.hyperplane]
    if res.stopped_early:
        return Check("bundle", Status.PASS, f"V(I : {name}^{P.m}) empty, {res.examined} of {res.total} minors used")
    if res.complete:
        return Check("bundle", Status.FAIL, f"V(I : {name}^{P.m}) is not empty")
    return Check("bundle", Status.INCONCLUSIVE, f"minor budget {budget} exhausted after {res.examined} of {res.total} minors")


# ---------------------------------------------------------------------------
# the two directions


def forward(T: Triple, check: bool = True) -> Pair:
    """Triple to pair: ``E`` is the kernel of ``sum S(l_i) -> F`` given by ``psi0``."""
    S = T.S
    F = extend_scalars(T.alpha, T.phi0, T.m, S, T.hyperplane, check=check)
    V = to_ring(T.psi0, S)
    E = kernel_into_cokernel(V, F)
    return Pair(E.generators, T.l, T.m, T.hyperplane, F, V)


def resolution_of(P: Pair, max_length: int | None = None) -> FreeResolution:
    return resolve_image(P.gamma, max_length)


def chern_of_pair(P: Pair) -> ChernData:
    return chern(resolution_of(P))


def reverse(P: Pair, m: int | None = None, check: bool = True) -> tuple[Triple, Restriction]:
    """Pair to triple by restriction of scalars.

    ``m`` defaults to the pair's; with ``m=0`` it is recomputed as
    ``sum(l) - c_1(E)``.
    """
    m = P.m if m is None else m
    if not m:
        m = sum(P.l) - chern_of_pair(P).c1
    F = P.cokernel
    res = restrict_scalars(F, P.hyperplane, m, check=check)
    phi0 = standard_lifting(res)
    psi0 = psi_from_restriction(res, P.cokernel_images, P.hyperplane)
    T = Triple(res.M.relations, phi0, psi0, P.l, m, P.S, P.hyperplane)
    return T, res
