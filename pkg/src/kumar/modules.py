"""Graded modules: submodules, presentations, syzygies and resolutions.

Everything here is built on :mod:`kumar.groebner`.  A module is either a
:class:`Submodule` of a twisted free module (generated by matrix columns) or
a :class:`Presentation` (the cokernel of a matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Iterator, Sequence

from .groebner import Buchberger, Frame, GroebnerBasis, groebner
from .matrix import GradedMatrix
from .ring import Polynomial, PolyRing


class Inconclusive(RuntimeError):
    """A bounded search ran out of budget before reaching a verdict."""


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class Submodule:
    """Submodule of ``S(d_0) + ... + S(d_{r-1})`` generated by the columns of ``generators``."""

    generators: GradedMatrix

    @property
    def ring(self) -> PolyRing:
        return self.generators.ring

    @property
    def ambient(self) -> tuple[int, ...]:
        return self.generators.target

    def groebner(self, **kw) -> GroebnerBasis:
        return buchberger(self, **kw)

    def contains(self, column: Sequence[Polynomial]) -> bool:
        return self.groebner().contains(column)

    def same_as(self, other: "Submodule") -> bool:
        """Equality of submodules by mutual membership."""
        if self.ambient != other.ambient:
            return False
        ga, gb = self.groebner(), other.groebner()
        return all(gb.contains(c) for c in self.generators.columns()) and all(
            ga.contains(c) for c in other.generators.columns()
        )


@dataclass(frozen=True)
class Presentation:
    """The cokernel of ``relations : S(e_j) -> S(d_i)``."""

    relations: GradedMatrix

    @classmethod
    def free(cls, ring: PolyRing, twists: Sequence[int]) -> "Presentation":
        return cls(GradedMatrix.zero(ring, twists, []))

    @property
    def ring(self) -> PolyRing:
        return self.relations.ring

    @property
    def target(self) -> tuple[int, ...]:
        return self.relations.target

    @property
    def ngens(self) -> int:
        return self.relations.nrows

    def groebner(self, **kw) -> GroebnerBasis:
        return buchberger(Submodule(self.relations), **kw)

    def is_zero_element(self, column: Sequence[Polynomial]) -> bool:
        return self.groebner().contains(column)


@dataclass
class FreeResolution:
    """``F_0 <- F_1 <- ... <- F_k`` given by the differentials ``d_1..d_k``.

    ``twists[i]`` are the twists of ``F_i``.
    """

    ring: PolyRing
    twists: list[tuple[int, ...]]
    differentials: list[GradedMatrix]
    minimal: bool
    truncated: bool = False

    @property
    def ranks(self) -> list[int]:
        return [len(t) for t in self.twists]

    @property
    def length(self) -> int:
        return len(self.differentials)

    def shape(self) -> str:
        parts = []
        for t in self.twists:
            counts: dict[int, int] = {}
            for d in t:
                counts[d] = counts.get(d, 0) + 1
            parts.append("+".join(f"{c}S({d})" if c > 1 else f"S({d})" for d, c in sorted(counts.items(), reverse=True)) or "0")
        return " <- ".join(parts)

    def betti(self) -> list[dict[int, int]]:
        """Graded Betti numbers: ``betti()[i][j]`` = multiplicity of ``S(-j)`` in ``F_i``."""
        out = []
        for t in self.twists:
            counts: dict[int, int] = {}
            for d in t:
                counts[-d] = counts.get(-d, 0) + 1
            out.append(counts)
        return out


@dataclass
class ChangeOfBasis:
    """Result bookkeeping of :func:`minimalize`.

    ``kept[k]`` is the original index of surviving generator ``k``.
    ``rewrite`` is a matrix (surviving rows x original columns) whose column
    ``g`` expresses original generator ``g`` in the surviving ones.
    """

    kept: list[int]
    rewrite: GradedMatrix


# ---------------------------------------------------------------------------
# Gröbner front ends


def _frame_inputs(A: GradedMatrix, frame: Frame) -> list[dict]:
    return [frame.vector(c) for c in A.columns()]


def buchberger(sub: Submodule, **kw) -> GroebnerBasis:
    """Reduced Gröbner basis of a submodule (term-over-position over the ring order)."""
    A = sub.generators
    return GroebnerBasis.of_columns(A.ring, A.target, A.columns(), **kw)


def normal_form(column: Sequence[Polynomial], G: GroebnerBasis) -> list[Polynomial]:
    return G.normal_form(column)


def syzygy(A: GradedMatrix) -> GradedMatrix:
    """Generators of the kernel of ``A`` (as a map of free modules).

    The result has target ``A.source``; its columns are the Buchberger-trace
    syzygies, then pruned to a minimal generating set.
    """
    return minimal_generators(_raw_syzygy(A))


def _raw_syzygy(A: GradedMatrix) -> GradedMatrix:
    R = A.ring
    frame = Frame(R, A.target, A.source)
    res = groebner(frame, _frame_inputs(A, frame), track=True, interreduce=False)
    cols = []
    degs = []
    for s in res.syzygies:
        cols.append(frame.column(s, offset=frame.rank, length=A.ncols))
        degs.append(frame.vector_degree(s))
    return GradedMatrix.from_columns(R, cols, A.source, [-d for d in degs])


def minimal_generators(A: GradedMatrix) -> GradedMatrix:
    """Subset of the columns of ``A`` minimally generating the same submodule."""
    if A.ncols == 0:
        return A
    frame = Frame(A.ring, A.target)
    res = groebner(frame, _frame_inputs(A, frame), interreduce=False)
    keep = sorted(res.minimal_inputs)
    if len(keep) == A.ncols:
        return A
    return A.submatrix(cols=keep)


def kernel_into_cokernel(V: GradedMatrix, P: Presentation) -> Submodule:
    """``{w : V w lies in the image of P.relations}`` as a submodule of ``V``'s source."""
    if V.target != P.target:
        raise ValueError(f"twist mismatch: {V.target} vs {P.target}")
    k = V.ncols
    Z = syzygy(V.hstack(P.relations))
    top = Z.submatrix(rows=range(k))
    nz = [j for j in range(top.ncols) if any(top.rows[i][j] for i in range(k))]
    return Submodule(minimal_generators(top.submatrix(cols=nz)))


# ---------------------------------------------------------------------------
# minimalization and resolutions


def minimalize(P: Presentation) -> tuple[Presentation, ChangeOfBasis]:
    """Remove generators killed by relations with a unit entry.

    Pivots are chosen by scanning columns left to right and, within a
    column, rows top to bottom.  Zero relation columns are dropped.
    """
    A = P.relations
    R = A.ring
    F = R.field
    rows = [list(r) for r in A.rows]
    target = list(A.target)
    source = list(A.source)
    kept = list(range(A.nrows))
    zero = R.zero()
    one = R.one_poly()
    rewrite = [[one if i == g else zero for g in range(A.nrows)] for i in range(A.nrows)]
    while True:
        pivot = None
        for j in range(len(source)):
            for i in range(len(rows)):
                e = rows[i][j]
                if e.terms and e.is_constant():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = F.inv(rows[i][j].constant_value())
        col = [rows[k][j].scale(inv) for k in range(len(rows))]  # col[i] == 1
        # clear row i in every other column
        for l in range(len(source)):
            if l == j:
                continue
            a = rows[i][l]
            if a.terms:
                for k in range(len(rows)):
                    if col[k].terms:
                        rows[k][l] = rows[k][l] - col[k] * a
        # e_i = -sum_{k != i} col[k] e_k in the cokernel
        ri = rewrite[i]
        for k in range(len(rows)):
            if k != i and col[k].terms:
                rk = rewrite[k]
                for g, t in enumerate(ri):
                    if t.terms:
                        rk[g] = rk[g] - col[k] * t
        del rows[i]
        del target[i]
        del kept[i]
        del rewrite[i]
        for r in rows:
            del r[j]
        del source[j]
    nz = [j for j in range(len(source)) if any(r[j].terms for r in rows)]
    rows = [[r[j] for j in nz] for r in rows]
    source = [source[j] for j in nz]
    out = Presentation(GradedMatrix(R, rows, target, source))
    cob = ChangeOfBasis(kept, GradedMatrix(R, rewrite, target, A.target))
    return out, cob


def minimal_presentation(P: Presentation) -> tuple[Presentation, ChangeOfBasis]:
    """:func:`minimalize` followed by pruning the relations to a minimal set."""
    Q, cob = minimalize(P)
    return Presentation(minimal_generators(Q.relations)), cob


def free_resolution(P: Presentation, max_length: int | None = None) -> FreeResolution:
    """Minimal free resolution of the cokernel of ``P``.

    Stops when the syzygies vanish or after ``max_length`` differentials
    (then ``truncated`` is set).
    """
    Q, _ = minimal_presentation(P)
    R = Q.ring
    twists = [Q.target]
    diffs: list[GradedMatrix] = []
    d = Q.relations
    truncated = False
    while d.ncols:
        if max_length is not None and len(diffs) >= max_length:
            truncated = True
            break
        diffs.append(d)
        twists.append(d.source)
        d = syzygy(d)
    minimal = not any(m.has_unit_entry() for m in diffs)
    return FreeResolution(R, twists, diffs, minimal, truncated)


def resolve_image(A: GradedMatrix, max_length: int | None = None) -> FreeResolution:
    """Minimal free resolution of the submodule generated by the columns of ``A``."""
    gens = minimal_generators(A)
    pres = Presentation(syzygy(gens))
    return free_resolution(pres, max_length)


# ---------------------------------------------------------------------------
# Hilbert functions


def _minimize_monomials(gens: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    gs = sorted(set(gens), key=lambda e: (sum(e), e))
    out: list[tuple[int, ...]] = []
    for g in gs:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


def _poly_sub(a: list[int], b: list[int], shift: int) -> list[int]:
    n = max(len(a), len(b) + shift)
    out = a + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=200_000)
def _numerator(gens: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Numerator of the Hilbert series of ``S / (gens)`` over ``(1 - t)^n``."""
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)
    # split off generators that share no variable with the rest
    support = [frozenset(i for i, e in enumerate(g) if e) for g in gens]
    if all(not (support[a] & support[b]) for a in range(len(gens)) for b in range(a)):
        out = [1]
        for g in gens:
            d = sum(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    # pivot on the variable most frequent among non-pure generators; the
    # median exponent keeps the pivot outside the ideal
    n = len(gens[0])
    mixed = [g for g, sup in zip(gens, support) if len(sup) > 1]
    counts = [sum(1 for g in mixed if g[v]) for v in range(n)]
    v = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[v] for g in mixed if g[v])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == v else 0 for i in range(n))
    # N(J) = N(J + p) + t^deg(p) N(J : p)
    with_p = _minimize_monomials(list(gens) + [pivot])
    colon = _minimize_monomials(tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens)
    a = list(_numerator(with_p))
    b = list(_numerator(colon))
    out = a + [0] * max(0, len(b) + e - len(a))
    for i, c in enumerate(b):
        out[i + e] += c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def monomial_numerator(gens: Iterable[Sequence[int]]) -> tuple[int, ...]:
    return _numerator(_minimize_monomials(tuple(g) for g in gens))


@dataclass(frozen=True)
class HilbertData:
    """Hilbert series of a cokernel: per position numerator and twist."""

    nvars: int
    parts: tuple[tuple[int, tuple[int, ...]], ...]  # (twist, numerator)

    def value(self, d: int) -> int:
        n = self.nvars
        total = 0
        for twist, num in self.parts:
            e = d + twist
            for k, c in enumerate(num):
                if c and e - k >= 0:
                    total += c * comb(e - k + n - 1, n - 1)
        return total

    def function(self, degrees: Iterable[int]) -> list[int]:
        return [self.value(d) for d in degrees]

    def numerator(self) -> dict[int, int]:
        """Numerator of the Hilbert series in ``t`` (exponents may be negative)."""
        out: dict[int, int] = {}
        for twist, num in self.parts:
            for k, c in enumerate(num):
                if c:
                    out[k - twist] = out.get(k - twist, 0) + c
        return {k: c for k, c in sorted(out.items()) if c}

    def rank(self) -> int:
        """Rank of the module (the numerator evaluated at 1)."""
        return sum(sum(num) for _, num in self.parts)


def hilbert_data(P: Presentation, G: GroebnerBasis | None = None) -> HilbertData:
    R = P.ring
    G = G or P.groebner()
    parts = []
    for pos, monos in enumerate(G.lead_monomials_by_position()):
        num = monomial_numerator(R.exponents(m) for m in monos)
        parts.append((P.target[pos], num))
    return HilbertData(R.nvars, tuple(parts))


def hilbert_function(P: Presentation, degrees: Iterable[int] | None = None) -> list[int]:
    """Dimensions of the graded pieces of ``coker P`` in the given degrees.

    The default window runs from the lowest generator degree to the highest
    relation degree plus the number of variables.
    """
    if degrees is None:
        gen_degs = [-t for t in P.target] or [0]
        rel_degs = [-s for s in P.relations.source] or gen_degs
        degrees = range(min(gen_degs), max(rel_degs) + P.ring.nvars + 1)
    return hilbert_data(P).function(degrees)


def module_rank(P: Presentation) -> int:
    return hilbert_data(P).rank()


# ---------------------------------------------------------------------------
# emptiness, finite length, quotients


def _pure_power_positions(bb: Buchberger) -> list[set[int]]:
    """For each position, the variables having a pure power among the lead terms."""
    fr = bb.frame
    R = bb.ring
    out: list[set[int]] = [set() for _ in range(fr.rank)]
    for mc in bb.leads:
        v = R.pure_power_var(fr.mono(mc))
        if v is not None:
            out[fr.pos(mc)].add(v)
        elif fr.mono(mc) == R.one:
            out[fr.pos(mc)].update(range(R.nvars))
    return out


def _covers(bb: Buchberger) -> bool:
    n = bb.ring.nvars
    return all(len(s) == n for s in _pure_power_positions(bb))


def is_finite_length(P: Presentation) -> bool:
    """True iff every variable has a pure power in the lead-term module at every position."""
    if P.ngens == 0:
        return True
    frame = Frame(P.ring, P.target)
    res = groebner(frame, _frame_inputs(P.relations, frame), on_degree=lambda d, bb: _covers(bb), interreduce=False)
    bb = Buchberger(frame)
    bb.leads = [max(v) for v in res.basis]
    return _covers(bb)


def _check_homogeneous(gens: Sequence[Polynomial]) -> None:
    for g in gens:
        if g.terms and not g.is_homogeneous():
            raise ValueError(f"inhomogeneous ideal generator {g}")


def ideal(ring: PolyRing, gens: Sequence[Polynomial]) -> Submodule:
    """The ideal generated by ``gens`` as a submodule of ``S``."""
    _check_homogeneous(gens)
    gens = [g for g in gens if g.terms]
    return Submodule(GradedMatrix(ring, [gens], [0], [-g.degree() for g in gens]))


def ideal_generators(I: Submodule) -> list[Polynomial]:
    if len(I.ambient) != 1:
        raise ValueError("not an ideal (ambient rank must be 1)")
    return list(I.generators.rows[0])


def is_projectively_empty(I: Submodule | Sequence[Polynomial]) -> bool:
    """True iff ``V(I)`` is empty in projective space (a pure power of every variable lies in ``in(I)``)."""
    gens = ideal_generators(I) if isinstance(I, Submodule) else list(I)
    _check_homogeneous(gens)
    gens = [g for g in gens if g.terms]
    if not gens:
        return False
    R = gens[0].ring
    frame = Frame(R, [0])
    res = groebner(frame, [frame.vector([g]) for g in gens], on_degree=lambda d, bb: _covers(bb), interreduce=False)
    bb = Buchberger(frame)
    bb.leads = [max(v) for v in res.basis]
    return _covers(bb)


def _permuted_ring(R: PolyRing, v: int) -> tuple[PolyRing, list[int]]:
    """A copy of ``R`` with variable ``v`` moved last, and the index permutation."""
    perm = [i for i in range(R.nvars) if i != v] + [v]
    S = PolyRing([R.names[i] for i in perm], R.field, "grevlex")
    return S, perm


def _permute(f: Polynomial, S: PolyRing, perm: list[int]) -> Polynomial:
    R = f.ring
    terms = {}
    for c, a in f.terms.items():
        e = R.exponents(c)
        terms[S.code([e[i] for i in perm])] = a
    return Polynomial(S, terms)


def _unpermute(f: Polynomial, R: PolyRing, perm: list[int]) -> Polynomial:
    S = f.ring
    terms = {}
    for c, a in f.terms.items():
        e = S.exponents(c)
        full = [0] * R.nvars
        for k, i in enumerate(perm):
            full[i] = e[k]
        terms[R.code(full)] = a
    return Polynomial(R, terms)


def _variable_power(f: Polynomial) -> tuple[int, int] | None:
    """``(v, k)`` when ``f`` is a nonzero scalar multiple of ``x_v^k``."""
    if len(f.terms) != 1:
        return None
    R = f.ring
    e = R.exponents(f.leading_code())
    nz = [i for i, a in enumerate(e) if a]
    if len(nz) == 0:
        return (0, 0)
    if len(nz) == 1:
        return (nz[0], e[nz[0]])
    return None


def _bayer_quotient(gens: Sequence[Polynomial], v: int, k: int | None, on_degree=None) -> tuple[list[Polynomial], bool]:
    """``(I : x_v^k)`` (``k=None`` for saturation) via a grevlex basis with ``x_v`` last."""
    R = gens[0].ring
    S, perm = _permuted_ring(R, v)
    frame = Frame(S, [0])
    pg = [_permute(g, S, perm) for g in gens]
    res = groebner(frame, [frame.vector([g]) for g in pg], on_degree=on_degree)
    out = []
    for vec in res.basis:
        g = frame.column(vec)[0]
        last = min(S.exponents(c)[-1] for c in g.terms)
        cut = last if k is None else min(last, k)
        code = S.code([0] * (S.nvars - 1) + [cut])
        terms = {c - code + S.one: a for c, a in g.terms.items()}
        out.append(_unpermute(Polynomial(S, terms), R, perm))
    return out, res.complete


def ideal_quotient(I: Submodule, f: Polynomial) -> Submodule:
    """``(I : f) = {g : g f in I}``."""
    gens = [g for g in ideal_generators(I) if g.terms]
    if not f.terms:
        raise ValueError("ideal quotient by zero")
    R = I.ring
    if not gens:
        return ideal(R, [])
    vp = _variable_power(f)
    if vp is not None and R.order == "grevlex":
        v, k = vp
        if k == 0:
            return ideal(R, gens)
        out, _ = _bayer_quotient(gens, v, k)
        return ideal(R, out)
    A = GradedMatrix(R, [[f] + gens], [0], [-f.degree()] + [-g.degree() for g in gens])
    Z = syzygy(A)
    q = [Z.rows[0][j] for j in range(Z.ncols) if Z.rows[0][j].terms]
    return ideal(R, q)


def saturate(I: Submodule, f: Polynomial) -> Submodule:
    """``(I : f^infinity)``, by iterated quotients until stable."""
    R = I.ring
    vp = _variable_power(f)
    gens = [g for g in ideal_generators(I) if g.terms]
    if vp is not None and R.order == "grevlex" and gens:
        if vp[1] == 0:
            return ideal(R, gens)
        out, _ = _bayer_quotient(gens, vp[0], None)
        return ideal(R, out)
    cur = I
    while True:
        nxt = ideal_quotient(cur, f)
        if nxt.same_as(cur):
            return cur
        cur = nxt


def quotient_is_empty(gens: Sequence[Polynomial], f: Polynomial | None, power: int | None) -> bool:
    """Whether ``(gens) : x_v^power`` (``power=None``: saturation) is projectively empty.

    ``f`` must be a variable.  Stops as soon as the partial basis certifies
    emptiness: for a grevlex basis with ``x_v`` last, dividing an element by
    the power of ``x_v`` in its lead term stays inside the quotient.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return False
    _check_homogeneous(gens)
    R = gens[0].ring
    if f is None:
        return is_projectively_empty(gens)
    vp = _variable_power(f)
    if vp is None or vp[1] != 1:
        raise ValueError("quotient emptiness expects a variable")
    v = vp[0]
    S, perm = _permuted_ring(R, v)
    last = S.nvars - 1

    def covered(bb: Buchberger) -> bool:
        seen = set()
        for mc in bb.leads:
            e = S.exponents(bb.frame.mono(mc))
            b = e[last]
            fits = power is None or b <= power
            rest = [i for i in range(last) if e[i]]
            if not rest:
                if fits:
                    return True  # the quotient is the unit ideal
                seen.add(last)
            elif len(rest) == 1 and fits:
                seen.add(rest[0])
        return len(seen) == S.nvars

    frame = Frame(S, [0])
    pg = [_permute(g, S, perm) for g in gens]
    res = groebner(frame, [frame.vector([g]) for g in pg], on_degree=lambda d, bb: covered(bb), interreduce=False)
    bb = Buchberger(frame)
    bb.leads = [max(v) for v in res.basis]
    return covered(bb)


# ---------------------------------------------------------------------------
# minors and Fitting ideals


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant by expansion over column subsets (exact, division free)."""
    k = len(rows)
    if k == 0:
        raise ValueError("empty determinant")
    R = rows[0][0].ring
    # dp[mask] = det of the first popcount(mask) rows on the columns in mask
    dp: dict[int, Polynomial] = {0: R.one_poly()}
    for i in range(k):
        nxt: dict[int, Polynomial] = {}
        row = rows[i]
        for mask, val in dp.items():
            if not val.terms:
                continue
            sign_count = 0
            for j in range(k):
                bit = 1 << j
                if mask & bit:
                    sign_count += 1
                    continue
                e = row[j]
                if not e.terms:
                    continue
                # sign: number of used columns to the right of j
                right = bin(mask >> (j + 1)).count("1")
                term = val * e
                if right % 2:
                    term = -term
                m2 = mask | bit
                nxt[m2] = nxt[m2] + term if m2 in nxt else term
        dp = nxt
    return dp.get((1 << k) - 1, R.zero())


def colex_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """k-subsets of ``range(n)`` in colexicographic order."""
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for rest in colex_subsets(last, k - 1):
            yield rest + (last,)


def minors(A: GradedMatrix, k: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Polynomial]]:
    """All ``k x k`` minors; row subsets outer, column subsets inner, both colex."""
    if not 1 <= k <= min(A.nrows, A.ncols):
        raise ValueError(f"minor size {k} out of range for a {A.nrows}x{A.ncols} matrix")
    for rs in colex_subsets(A.nrows, k):
        sub = [A.rows[i] for i in rs]
        for cs in colex_subsets(A.ncols, k):
            yield rs, cs, determinant([[r[j] for j in cs] for r in sub])


@dataclass
class FittingResult:
    """Partial or complete ideal of ``k x k`` minors."""

    k: int
    generators: list[Polynomial]
    examined: int
    total: int
    complete: bool
    stopped_early: bool = False

    @property
    def is_zero(self) -> bool:
        return self.complete and not self.generators

    @property
    def inconclusive(self) -> bool:
        return not self.complete and not self.stopped_early


def fitting_ideal(
    A: GradedMatrix,
    k: int,
    budget: int | None = None,
    stop: Callable[[list[Polynomial]], bool] | None = None,
    batch: int = 16,
) -> FittingResult:
    """Ideal of ``k x k`` minors of ``A``, computed incrementally.

    ``stop(nonzero_minors)`` is consulted after batches of growing size
    (``batch``, doubled each time); a True answer ends the enumeration with
    ``stopped_early``.  When ``budget`` minors have been examined without a
    verdict the result is flagged incomplete.
    """
    total = comb(A.nrows, k) * comb(A.ncols, k)
    gens: list[Polynomial] = []
    seen: set[Polynomial] = set()
    examined = 0
    next_check = batch
    for _, _, d in minors(A, k):
        examined += 1
        if d.terms:
            dm = d.monic()
            if dm not in seen:
                seen.add(dm)
                gens.append(dm)
                if stop is not None and len(gens) >= next_check:
                    next_check *= 2
                    if stop(gens):
                        return FittingResult(k, gens, examined, total, False, True)
        if budget is not None and examined >= budget and examined < total:
            if stop is not None and gens and stop(gens):
                return FittingResult(k, gens, examined, total, False, True)
            return FittingResult(k, gens, examined, total, False)
    if stop is not None and gens and stop(gens):
        return FittingResult(k, gens, examined, total, True, True)
    return FittingResult(k, gens, examined, total, True)
