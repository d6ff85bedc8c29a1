"""Built-in examples: transcribed matrices and golden values."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .correspondence import CorrespondenceError, Pair, Triple
from .matrix import GradedMatrix, koszul_differential
from .modules import (
    Presentation,
    fitting_ideal,
    is_projectively_empty,
    kernel_into_cokernel,
    minimal_presentation,
    quotient_is_empty,
)
from .report import Check, Status
from .ring import Polynomial, PolyRing

# -- null correlation bundle on P^3 ----------------------------------------

NULL_CORRELATION_GAMMA0 = [
    ["-x1*x3", "-x1^2", "-x0*x1+x2*x3", "x3^2", "0"],
    ["x0*x3", "x0*x1+x2*x3", "x0^2", "0", "x3^2"],
]

NULL_CORRELATION_BETA0 = [
    ["x2", "-x3", "x0", "x1"],
    ["-x1", "0", "-x3", "0"],
    ["x0", "0", "0", "-x3"],
]

NULL_CORRELATION_PHI0 = [["0", "x0", "x1"], ["0", "0", "0"], ["0", "0", "0"]]


def null_correlation(field: int = 32003) -> Triple:
    """Twisted cotangent bundle of the plane with the rank one nilpotent endomorphism."""
    S = PolyRing(["x0", "x1", "x2", "x3"], field)
    R = S.drop_variable(3)
    alpha2 = GradedMatrix.from_strings(R, [["x2"], ["-x1"], ["x0"]], [0, 0, 0], [-1])
    phi0 = GradedMatrix.from_strings(R, NULL_CORRELATION_PHI0, [1, 1, 1], [0, 0, 0])
    psi0 = GradedMatrix.from_strings(R, [["0", "0"], ["1", "0"], ["0", "1"]], [0, 0, 0], [0, 0])
    return Triple(alpha2, phi0, psi0, (0, 0), 2, S, 3)


def null_correlation_gamma0(S: PolyRing) -> GradedMatrix:
    return GradedMatrix.from_strings(S, NULL_CORRELATION_GAMMA0, [0, 0], [-2, -2, -2, -2, -2])


def null_correlation_beta0(S: PolyRing) -> GradedMatrix:
    return GradedMatrix.from_strings(S, NULL_CORRELATION_BETA0, [0, 0, 0], [-1, -1, -1, -1])


# -- characteristic two bundle on P^4 --------------------------------------

CHAR2_ALPHA0 = [
    ["0", "0", "x0*x1^2", "x1^3"],
    ["0", "0", "x0^3", "x0^2*x1"],
    ["x2^2", "x3^2", "0", "0"],
    ["x0", "0", "0", "x3^2"],
    ["0", "x1", "x2^2", "0"],
    ["x1", "x0", "x3^2", "x2^2"],
]
CHAR2_M0 = [-2, -2, -2, -3, -3, -3]
CHAR2_ALPHA_SOURCE = [-4, -4, -5, -5]

CHAR2_PHI0 = [
    ["0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "x1^2", "x0^2", "x0*x1"],
    ["0", "1", "0", "0", "0", "0"],
    ["1", "0", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "0", "0"],
]

# (alpha0 | phi0 - x4 I), as displayed
CHAR2_EXTENDED = [
    ["0", "0", "x0*x1^2", "x1^3", "x4", "0", "0", "0", "0", "0"],
    ["0", "0", "x0^3", "x0^2*x1", "0", "x4", "0", "0", "0", "0"],
    ["x2^2", "x3^2", "0", "0", "0", "0", "x4", "x1^2", "x0^2", "x0*x1"],
    ["x0", "0", "0", "x3^2", "0", "1", "0", "x4", "0", "0"],
    ["0", "x1", "x2^2", "0", "1", "0", "0", "0", "x4", "0"],
    ["x1", "x0", "x3^2", "x2^2", "0", "0", "0", "0", "0", "x4"],
]

# the minimal presentation; entry (3,6) corrected from x3^3 to x3^2 (degree rule)
CHAR2_BETA0 = [
    ["0", "x4^2", "0", "0", "0", "x1*x4", "x0*x1^2+x2^2*x4", "x1^3"],
    ["0", "0", "0", "x4^2", "x0*x4", "0", "x0^3", "x0^2*x1+x3^2*x4"],
    ["x4", "x0^2", "x0*x1", "x1^2", "x2^2", "x3^2", "0", "0"],
    ["0", "0", "x4", "0", "x1", "x0", "x3^2", "x2^2"],
]
CHAR2_BETA0_TARGET = [-2, -2, -2, -3]
CHAR2_BETA0_SOURCE = [-3, -4, -4, -4, -4, -4, -5, -5]

CHAR2_COKERNEL_C = [
    ["x0^2", "x0*x1", "x1^2", "x2^2", "x3^2", "0", "0"],
    ["0", "0", "0", "x1", "x0", "x2^2", "x3^2"],
]

# gamma0 transposed; columns 8 and 9 are garbled as printed (column 8 repeats
# column 7, and two entries of 9 run together), read here as two separate entries
CHAR2_GAMMA0_T = [
    ["x0^2*x4^2", "x1^2*x4^2"],
    ["x0^4*x4", "x0^2*x1^2*x4+x0*x2^2*x4^2+x1*x3^2*x4^2"],
    ["x0^3*x1*x4+x0*x3^2*x4^2", "x0*x1^3*x4+x1*x2^2*x4^2"],
    ["x0^2*x1^2*x4+x0*x2^2*x4^2+x1*x3^2*x4^2", "x1^4*x4"],
    ["x0^3*x2^2+x0^2*x1*x3^2+x3^4*x4", "x0*x1^2*x2^2+x1^3*x3^2+x2^4*x4"],
    ["x0^4*x1^2+x0^3*x2^2*x4+x0^2*x1*x3^2*x4", "x0^2*x1^4+x2^4*x4^2"],
    ["x0^5*x1+x0^3*x3^2*x4", "x0^3*x1^3+x0^2*x1*x2^2*x4+x2^2*x3^2*x4^2"],
    ["x0^6", "x0^4*x1^2+x0^3*x2^2*x4+x0^2*x1*x3^2*x4+x3^4*x4^2"],
    ["x0^3*x1^3+x0*x1^2*x3^2*x4+x2^2*x3^2*x4^2", "x0*x1^5+x1^3*x2^2*x4"],
    ["x0^2*x1^4+x0*x1^2*x2^2*x4+x1^3*x3^2*x4+x2^4*x4^2", "x1^6"],
]


def kumar_char2() -> Triple:
    """Rank three bundle on P^3 over GF(2) with a nilpotent endomorphism of order three."""
    S = PolyRing(["x0", "x1", "x2", "x3", "x4"], 2)
    R = S.drop_variable(4)
    alpha0 = GradedMatrix.from_strings(R, CHAR2_ALPHA0, CHAR2_M0, CHAR2_ALPHA_SOURCE)
    phi0 = GradedMatrix.from_strings(R, CHAR2_PHI0, [d + 1 for d in CHAR2_M0], CHAR2_M0)
    psi0 = GradedMatrix.from_strings(
        R, [["1", "0"], ["0", "1"], ["0", "0"], ["0", "0"], ["0", "0"], ["0", "0"]], CHAR2_M0, [-2, -2]
    )
    return Triple(alpha0, phi0, psi0, (-2, -2), 3, S, 4)


def char2_gamma0(S: PolyRing) -> GradedMatrix:
    cols = [[S.parse(e) for e in row] for row in CHAR2_GAMMA0_T]
    degs = [c[0].degree() if c[0].terms else c[1].degree() for c in cols]
    return GradedMatrix.from_columns(S, cols, [-2, -2], [-2 - d for d in degs])


# -- cotangent family --------------------------------------------------------


def cotangent_triple(n: int, field: int = 32003) -> Triple:
    """Twisted cotangent bundle of ``P^n`` (``n`` even) with a square-zero endomorphism.

    ``M`` is the image of the second Koszul differential, generated by
    ``s_ab`` for ``a < b``.  With ``w = e0^e1 + e2^e3 + ...`` (kernel ``e_n``)
    the endomorphism is ``s_w`` composed with the last coordinate row ``t_n``;
    ``t_n`` kills every ``s_ab`` in ``w``, so the square vanishes.  The
    remaining generators ``s_{i,n}`` give ``psi``.
    """
    if n < 2 or n % 2:
        raise ValueError(f"cotangent family needs an even n >= 2, got {n}")
    S = PolyRing([f"x{i}" for i in range(n + 2)], field)
    R = S.drop_variable(n + 1)
    labels = list(combinations(range(n + 1), 2))
    N = len(labels)
    koszul2 = koszul_differential(2, R)
    koszul3 = koszul_differential(3, R)
    alpha = koszul3.with_twists(target=[0] * N, source=[-1] * koszul3.ncols)
    zero = R.zero()
    rows = []
    for a, b in labels:
        in_w = b == a + 1 and a % 2 == 0 and b < n
        rows.append([koszul2[n, j] for j in range(N)] if in_w else [zero] * N)
    phi0 = GradedMatrix(R, rows, [1] * N, [0] * N)
    kept = [labels.index((i, n)) for i in range(n)]
    psi0 = GradedMatrix(
        R, [[R.constant(1 if kept[c] == r else 0) for c in range(n)] for r in range(N)], [0] * N, [0] * n
    )
    return Triple(alpha, phi0, psi0, (0,) * n, 2, S, n + 1)


# -- Horrocks-Mumford bundle on P^4 ------------------------------------------

# second Koszul-type differential; rows indexed by pairs, columns by triples
HM_BETA2 = [
    ["x2", "x3", "0", "0", "x4", "0", "0", "0", "0", "0"],
    ["-x1", "0", "x3", "0", "0", "x4", "0", "0", "0", "0"],
    ["x0", "0", "0", "x3", "0", "0", "x4", "0", "0", "0"],
    ["0", "-x1", "-x2", "0", "0", "0", "0", "x4", "0", "0"],
    ["0", "x0", "0", "-x2", "0", "0", "0", "0", "x4", "0"],
    ["0", "0", "x0", "x1", "0", "0", "0", "0", "0", "x4"],
    ["0", "0", "0", "0", "-x1", "-x2", "0", "-x3", "0", "0"],
    ["0", "0", "0", "0", "x0", "0", "-x2", "0", "-x3", "0"],
    ["0", "0", "0", "0", "0", "x0", "x1", "0", "0", "-x3"],
    ["0", "0", "0", "0", "0", "0", "0", "x0", "x1", "x2"],
]
HM_PAIRS = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
HM_TRIPLES = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (0, 1, 4), (0, 2, 4), (1, 2, 4), (0, 3, 4), (1, 3, 4), (2, 3, 4)]

# A0 transposed (5 x 20, constant)
HM_A0T = [
    [0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0],
]

# nonzero entries of v1, v2 (1-based positions)
HM_V1 = {
    2: "-x0^5*x1-x0*x1^2*x2*x3*x4-x0^3*x3*x4^2",
    6: "-x0^3*x1^2*x2-x0^5*x4",
    11: "x0^4*x1^2+x1^3*x2*x3*x4+x0^2*x1*x3*x4^2",
    12: "-x1^3*x2^2*x4-x0^2*x1*x2*x4^2",
    15: "x0^6",
    18: "x0^2*x1^2*x2*x4+x0^4*x4^2",
}
HM_V2 = {
    2: "-x0^5*x3^2-x0^3*x2^2*x3*x4-x0*x1*x2*x3^3*x4",
    3: "-x0^7",
    6: "-x0^5*x2^2-x0^3*x1*x2*x3^2",
    11: "x0^6*x2+x0^4*x1*x3^2+x0^2*x1*x2^2*x3*x4+x1^2*x2*x3^3*x4",
    12: "-x0^2*x1*x2^3*x4-x1^2*x2^2*x3^2*x4",
    18: "x0^6*x3+x0^4*x2^2*x4+x0^2*x1*x2*x3^2*x4",
}

HM_P11 = (
    "x0^6*x2^2-x1^3*x2^4*x3+2*x0^2*x1*x2^3*x3*x4+x0*x1^4*x3^2*x4-3*x1^2*x2^2*x3^3*x4"
    "-x0^2*x2*x3^3*x4^2+x1*x3^5*x4^2-x0*x1^2*x2*x3*x4^3-x2^3*x3^2*x4^3+x0^3*x3*x4^4"
)
HM_P21 = (
    "x0^4*x1^2*x2-x0^3*x2^3*x3+x0*x1*x2^2*x3^3+x0^6*x4+x1^3*x2^2*x3*x4-x0*x3^5*x4"
    "+2*x0^2*x1*x2*x3*x4^2+x1^2*x3^3*x4^2-x2*x3^2*x4^4"
)
HM_P_COLUMN1 = [HM_P11, HM_P21, "x3", "0", "0", "0", "0"]

# Q[7t+i, 1] (1-based) for the nonzero entries; the x0^6 terms sit at t = 6,
# i.e. rows 43 and 44 (printed as 36 and 37, which contradicts 7t+i)
HM_Q1 = {
    1: "-x1^3*x2^4*x3-3*x1^2*x2^2*x3^3*x4+x1*x3^5*x4^2-x2^3*x3^2*x4^3",
    8: "x1^4*x3^2*x4-x1^2*x2*x3*x4^3",
    15: "2*x1*x2^3*x3*x4-x2*x3^3*x4^2",
    22: "x3*x4^4",
    43: "x2^2",
    2: "x1^3*x2^2*x3*x4+x1^2*x3^3*x4^2-x2*x3^2*x4^4",
    9: "x1*x2^2*x3^3-x3^5*x4",
    16: "2*x1*x2*x3*x4^2",
    23: "-x2^3*x3",
    30: "x1^2*x2",
    44: "x4",
    3: "x3",
}
# rows of Q holding the nonzero constants (1-based)
HM_CONSTANT_Q_ROWS = {10, 11, 12, 13, 14, 51, 57}
# the minimal generators x0^i f_j as (i, j) with j 0-based
HM_G_LABELS = [(0, j) for j in range(7)] + [(i, 0) for i in range(1, 8)] + [(i, 1) for i in range(1, 7)]
HM_F_TARGET = (8, 7, 1, 1, 1, 1, 1)
HM_L = (8, 7)
HM_M = 14


def _perm_sign(seq) -> int:
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def hm_beta2(S: PolyRing) -> GradedMatrix:
    return GradedMatrix.from_strings(S, HM_BETA2, [0] * 10, [-1] * 10)


def hm_vector(S: PolyRing, entries: dict[int, str]) -> list[Polynomial]:
    return [S.parse(entries[i + 1]) if i + 1 in entries else S.zero() for i in range(20)]


def hm_pairing(S: PolyRing) -> GradedMatrix:
    """``J * Pi``: the symplectic form composed with the signed wedge pairing.

    ``Pi`` sends the pair coordinate ``e_ab`` (in both blocks) to the triple
    coordinate of its complement with the sign of ``e_ab ^ e_cde``.
    """
    z = S.zero()
    Pi = [[0] * 20 for _ in range(20)]
    for blk in (0, 10):
        for i, pr in enumerate(HM_PAIRS):
            tr = tuple(sorted(set(range(5)) - set(pr)))
            Pi[blk + HM_TRIPLES.index(tr)][blk + i] = _perm_sign(pr + tr)
    rows = []
    for i in range(20):
        src = Pi[i + 10] if i < 10 else [-a for a in Pi[i - 10]]
        rows.append([S.constant(a) if a else z for a in src])
    return GradedMatrix(S, rows, [0] * 20, [0] * 20)


@dataclass(frozen=True)
class HMPair:
    """The pair together with the certificates checked while building it."""

    pair: Pair
    certificates: tuple[Check, ...]
    raw: Presentation


def _apply(A: GradedMatrix, v: list[Polynomial]) -> list[Polynomial]:
    z = A.ring.zero()
    return [sum((A[i, j] * v[j] for j in range(A.ncols)), z) for i in range(A.nrows)]


def _printed_basis(rel: GradedMatrix, S: PolyRing) -> GradedMatrix:
    """Move a minimal presentation of ``F`` to the basis where column 1 is :data:`HM_P_COLUMN1`.

    The new generators put the ``S(1)`` generator met by ``x3`` third with a
    sign flip, absorb multiples of it into the first two, and the matching
    relation column is moved to the front.
    """
    x3 = S.gens[3]
    printed = [S.parse(e) for e in HM_P_COLUMN1]
    r = rel.nrows
    for j in range(rel.ncols):
        col = rel.column(j)
        if all(not col[i].terms for i in range(2, r - 1)) and (col[r - 1] - x3).is_zero():
            break
    else:
        raise CorrespondenceError("no relation of F meets the last S(1) generator in x3 alone")
    order = [0, 1, r - 1] + list(range(2, r - 1))
    sign = [1, 1, -1] + [1] * (r - 3)
    rows = [[rel[order[i], k].scale(sign[i]) for k in range(rel.ncols)] for i in range(r)]
    code = S.var_code(3)
    h1 = (printed[0] + rel[0, j]).div_monomial(code)
    h2 = (printed[1] + rel[1, j]).div_monomial(code)
    for k in range(rel.ncols):
        rows[0][k] = rows[0][k] + h1 * rows[2][k]
        rows[1][k] = rows[1][k] + h2 * rows[2][k]
    perm = [j] + [k for k in range(rel.ncols) if k != j]
    out = [[(rows[i][k].scale(-1) if k == j else rows[i][k]) for k in perm] for i in range(r)]
    P = GradedMatrix(S, out, [rel.target[o] for o in order], [rel.source[k] for k in perm])
    if any(not (a - b).is_zero() for a, b in zip(P.column(0), printed)):
        raise CorrespondenceError("basis change did not reproduce the first relation column")
    return P.validate("P")


def build_hm_pair(field: int = 32003) -> HMPair:
    """Rank two pair on P^4 whose kernel is the Horrocks-Mumford bundle ``E(1)``.

    ``F`` is presented by ``[v2 | v1 | A0]^T * J * Pi * beta``; every
    certificate failure raises :class:`CorrespondenceError` naming it.
    """
    S = PolyRing([f"x{i}" for i in range(5)], field)
    z = S.zero()
    b2 = [[S.parse(e) for e in row] for row in HM_BETA2]
    beta = GradedMatrix(S, [r + [z] * 10 for r in b2] + [[z] * 10 + r for r in b2], [0] * 20, [-1] * 20)
    A0 = GradedMatrix(S, [[S.constant(HM_A0T[c][r]) for c in range(5)] for r in range(20)], [-1] * 20, [-2] * 5)
    v1, v2 = hm_vector(S, HM_V1), hm_vector(S, HM_V2)
    JPi = hm_pairing(S)
    certs: list[Check] = []

    def certify(check: Check) -> None:
        certs.append(check)
        if not check.passed:
            raise CorrespondenceError(f"certificate {check.name} failed: {check.detail}")

    res = fitting_ideal(beta @ A0, 5, stop=is_projectively_empty)
    certify(Check("minors-of-A", Status.of(res.stopped_early), f"V(5x5 minors of beta*A0) empty, {res.examined} of {res.total} minors used"))

    A0T = GradedMatrix(S, [[S.constant(a) for a in row] for row in HM_A0T], [0] * 5, [0] * 20)
    B = A0T @ JPi @ beta
    complex_ok = (B @ A0).is_zero()
    members = all(not e.terms for v in (v1, v2) for e in _apply(B, v))
    certify(Check("membership", Status.of(complex_ok and members), "v1, v2 and A0 lie in the kernel of A0^T J Pi beta"))

    W = [[v2[r], v1[r]] + [A0[r, c] for c in range(5)] for r in range(20)]
    nz = [r for r in range(20) if any(e.terms for e in W[r])]
    Wn = GradedMatrix(S, [W[r] for r in nz], [-1] * len(nz), [-8, -7] + [-2] * 5)
    res = fitting_ideal(Wn, 7, stop=lambda g: quotient_is_empty(g, S.gens[0], None))
    certify(Check("saturation", Status.of(res.stopped_early), f"V(I : x0^inf) empty, {res.examined} of {res.total} minors used"))

    Wt = GradedMatrix(S, [[W[r][c] for r in range(20)] for c in range(7)], list(HM_F_TARGET), [1] * 20)
    raw = Presentation(Wt @ GradedMatrix(S, (JPi @ beta).rows, [1] * 20, [0] * 20))
    F, _ = minimal_presentation(raw)
    if F.target != HM_F_TARGET or F.relations.ncols != 15:
        raise CorrespondenceError(f"F has generators {list(F.target)} and {F.relations.ncols} relations")
    F = Presentation(_printed_basis(F.relations, S))
    n = len(HM_L)
    images = GradedMatrix(S, [[S.one_poly() if i == j else z for j in range(n)] for i in range(F.ngens)], F.target, HM_L)
    gamma = kernel_into_cokernel(images, F).generators
    return HMPair(Pair(gamma, HM_L, HM_M, 0, F, images), tuple(certs), raw)
