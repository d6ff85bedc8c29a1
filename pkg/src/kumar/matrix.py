"""Homogeneous matrices between twisted graded free modules.

A free module ``S(d_1) + ... + S(d_k)`` is described by its twist list
``[d_1, ..., d_k]``; generator ``j`` sits in degree ``-d_j``.  For a matrix
with target twists ``d`` (rows) and source twists ``e`` (columns) every
nonzero entry ``(i, j)`` must be homogeneous of degree ``d_i - e_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .ring import Polynomial, PolyRing, RingMismatch


@dataclass(frozen=True)
class Violation:
    row: int
    col: int
    expected: int
    actual: int | None  # None: entry is not homogeneous

    def __str__(self) -> str:
        what = "inhomogeneous" if self.actual is None else f"degree {self.actual}"
        return f"entry ({self.row + 1},{self.col + 1}) is {what}, expected degree {self.expected}"


class HomogeneityError(ValueError):
    def __init__(self, violation: Violation, name: str = "matrix"):
        super().__init__(f"{name}: {violation}")
        self.violation = violation


class GradedMatrix:
    """Rectangular matrix of polynomials with row (target) and column (source) twists.

    Instances are treated as immutable.  The constructor does not validate
    degrees; call :meth:`validate` or :func:`validate_homogeneous`.
    """

    __slots__ = ("ring", "rows", "target", "source")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence[Polynomial]], target: Sequence[int], source: Sequence[int]):
        self.ring = ring
        self.target = tuple(int(t) for t in target)
        self.source = tuple(int(s) for s in source)
        self.rows = tuple(tuple(ring(e) for e in row) for row in rows)
        if len(self.rows) != len(self.target):
            raise ValueError(f"{len(self.rows)} rows but {len(self.target)} target twists")
        for row in self.rows:
            if len(row) != len(self.source):
                raise ValueError(f"row of length {len(row)} but {len(self.source)} source twists")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_strings(cls, ring: PolyRing, rows: Sequence[Sequence[str]], target, source) -> "GradedMatrix":
        return cls(ring, [[ring.parse(e) if isinstance(e, str) else ring(e) for e in row] for row in rows], target, source)

    @classmethod
    def from_columns(cls, ring: PolyRing, columns: Sequence[Sequence[Polynomial]], target, source) -> "GradedMatrix":
        nrows = len(target)
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls(ring, rows, target, source)

    @classmethod
    def zero(cls, ring: PolyRing, target, source) -> "GradedMatrix":
        z = ring.zero()
        return cls(ring, [[z] * len(source) for _ in target], target, source)

    @classmethod
    def identity(cls, ring: PolyRing, twists) -> "GradedMatrix":
        n = len(twists)
        one, z = ring.one_poly(), ring.zero()
        return cls(ring, [[one if i == j else z for j in range(n)] for i in range(n)], twists, twists)

    # -- shape --------------------------------------------------------------
    @property
    def nrows(self) -> int:
        return len(self.target)

    @property
    def ncols(self) -> int:
        return len(self.source)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedMatrix)
            and self.ring == other.ring
            and self.target == other.target
            and self.source == other.source
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.target, self.source, self.rows))

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def has_unit_entry(self) -> bool:
        return any(e and e.is_constant() for row in self.rows for e in row)

    def expected_degree(self, i: int, j: int) -> int:
        return self.target[i] - self.source[j]

    def column_degree(self, j: int) -> int:
        """Degree of the image of source generator ``j``."""
        return -self.source[j]

    # -- validation ---------------------------------------------------------
    def violations(self) -> list[Violation]:
        out = []
        R = self.ring
        for i, row in enumerate(self.rows):
            for j, e in enumerate(row):
                if not e.terms:
                    continue
                want = self.target[i] - self.source[j]
                degs = {R.deg(c) for c in e.terms}
                if len(degs) > 1:
                    out.append(Violation(i, j, want, None))
                elif degs != {want}:
                    out.append(Violation(i, j, want, degs.pop()))
        return out

    def validate(self, name: str = "matrix") -> "GradedMatrix":
        v = self.violations()
        if v:
            raise HomogeneityError(v[0], name)
        return self

    # -- algebra ------------------------------------------------------------
    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        if self.source != other.target:
            raise ValueError(f"twist mismatch: {self.source} vs {other.target}")
        R = self.ring
        z = R.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a.terms:
                        b = other.rows[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return GradedMatrix(R, rows, self.target, other.source)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        return GradedMatrix(self.ring, rows, self.target, self.source)

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rows = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)]
        return GradedMatrix(self.ring, rows, self.target, self.source)

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(self.ring, [[-a for a in r] for r in self.rows], self.target, self.source)

    def scale(self, f: Polynomial, shift: int) -> "GradedMatrix":
        """Multiply by the homogeneous scalar ``f`` of degree ``shift`` (source twists drop by ``shift``)."""
        rows = [[a * f for a in r] for r in self.rows]
        return GradedMatrix(self.ring, rows, self.target, [s - shift for s in self.source])

    def twist(self, t: int) -> "GradedMatrix":
        """The same matrix as a map ``F(t) -> G(t)``."""
        return GradedMatrix(self.ring, self.rows, [d + t for d in self.target], [e + t for e in self.source])

    def with_twists(self, target=None, source=None) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            self.rows,
            self.target if target is None else target,
            self.source if source is None else source,
        )

    def transpose(self) -> "GradedMatrix":
        """Dual map ``Hom(G, S) -> Hom(F, S)`` with negated twists."""
        rows = [list(col) for col in self.columns()]
        return GradedMatrix(self.ring, rows, [-e for e in self.source], [-d for d in self.target])

    def hstack(self, *others: "GradedMatrix") -> "GradedMatrix":
        rows = [list(r) for r in self.rows]
        source = list(self.source)
        for o in others:
            if o.target != self.target:
                raise ValueError(f"target twists differ: {o.target} vs {self.target}")
            for r, orow in zip(rows, o.rows):
                r.extend(orow)
            source.extend(o.source)
        return GradedMatrix(self.ring, rows, self.target, source)

    def vstack(self, *others: "GradedMatrix") -> "GradedMatrix":
        rows = [list(r) for r in self.rows]
        target = list(self.target)
        for o in others:
            if o.source != self.source:
                raise ValueError(f"source twists differ: {o.source} vs {self.source}")
            rows.extend(list(r) for r in o.rows)
            target.extend(o.target)
        return GradedMatrix(self.ring, rows, target, self.source)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "GradedMatrix":
        rows = range(self.nrows) if rows is None else rows
        cols = range(self.ncols) if cols is None else cols
        return GradedMatrix(
            self.ring,
            [[self.rows[i][j] for j in cols] for i in rows],
            [self.target[i] for i in rows],
            [self.source[j] for j in cols],
        )

    def map_entries(self, fn, ring: PolyRing | None = None) -> "GradedMatrix":
        ring = ring or self.ring
        return GradedMatrix(ring, [[fn(a) for a in r] for r in self.rows], self.target, self.source)

    def change_ring(self, ring: PolyRing) -> "GradedMatrix":
        return self.map_entries(ring.convert, ring)

    def __str__(self) -> str:
        body = "\n".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"[{self.nrows} x {self.ncols}] target {list(self.target)} source {list(self.source)}\n{body}"

    def __repr__(self) -> str:
        return f"GradedMatrix({self.nrows}x{self.ncols}, target={list(self.target)}, source={list(self.source)})"


def validate_homogeneous(A: GradedMatrix) -> Violation | None:
    """``None`` if ``A`` obeys the degree rule, else the first violating cell."""
    v = A.violations()
    return v[0] if v else None


def koszul_differential(k: int, ring: PolyRing) -> GradedMatrix:
    """The map ``L^k W (x) S(-k) -> L^{k-1} W (x) S(-k+1)`` of the Koszul complex.

    Basis index sets are ordered lexicographically; the image of
    ``e_{i_0 < ... < i_{k-1}}`` is ``sum_p (-1)^p x_{i_p} e_{I minus i_p}``.
    """
    n = ring.nvars
    if not 1 <= k <= n:
        raise ValueError(f"Koszul differential index {k} outside 1..{n}")
    src = list(combinations(range(n), k))
    tgt = list(combinations(range(n), k - 1))
    tindex = {s: i for i, s in enumerate(tgt)}
    z = ring.zero()
    rows = [[z] * len(src) for _ in tgt]
    gens = ring.gens
    for j, I in enumerate(src):
        for p, v in enumerate(I):
            rest = I[:p] + I[p + 1 :]
            rows[tindex[rest]][j] = gens[v] if p % 2 == 0 else -gens[v]
    return GradedMatrix(ring, rows, [-(k - 1)] * len(tgt), [-k] * len(src))
