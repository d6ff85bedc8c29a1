"""The ``.km`` text format for rings, matrices, triples and pairs.

A document names one ring and then lists blocks::

    ring S = GF(32003)[x0,x1,x2,x3] order grevlex
    twists l = [0,0]
    matrix alpha (3 x 1) target [0,0,0] source [-1]
      x2
      -x1
      x0
    triple M=alpha phi0=phi psi0=psi l=[0,0] m=2
    pair gamma=gamma l=[0,0] m=2 hyperplane=x3

Twist lists in ``target``/``source``/``l`` may be literal or the name of a
``twists`` block.  Matrix rows follow their header, one per line, entries
separated by commas; a matrix with no columns (or rows) has no row lines.
Triples live on the hyperplane ``{last variable = 0}``: their matrices may
not involve the last variable.  Lines starting with ``#`` and blank lines
are kept, so printing a parsed canonical document reproduces it exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .correspondence import CorrespondenceError, Pair, Triple
from .matrix import GradedMatrix, HomogeneityError
from .ring import PolyRing, PolynomialSyntaxError


class DocumentError(ValueError):
    """Parse or validation failure, located at ``line``/``column`` (1-based)."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Comment:
    text: str


@dataclass(frozen=True)
class TwistsBlock:
    name: str
    values: tuple[int, ...]


@dataclass(frozen=True)
class MatrixBlock:
    name: str
    matrix: GradedMatrix
    target_ref: str | None = None
    source_ref: str | None = None


@dataclass(frozen=True)
class TripleBlock:
    M: str
    phi0: str
    psi0: str
    l: tuple[int, ...]
    m: int
    l_ref: str | None = None


@dataclass(frozen=True)
class PairBlock:
    gamma: str
    l: tuple[int, ...]
    m: int
    hyperplane: str
    l_ref: str | None = None


Block = Union[Comment, TwistsBlock, MatrixBlock, TripleBlock, PairBlock]


@dataclass
class Document:
    ring_name: str
    ring: PolyRing
    blocks: list[Block] = field(default_factory=list)

    # -- lookup ---------------------------------------------------------------
    @property
    def matrices(self) -> dict[str, GradedMatrix]:
        return {b.name: b.matrix for b in self.blocks if isinstance(b, MatrixBlock)}

    @property
    def twists(self) -> dict[str, tuple[int, ...]]:
        return {b.name: b.values for b in self.blocks if isinstance(b, TwistsBlock)}

    def triples(self) -> list[Triple]:
        S = self.ring
        mats = self.matrices
        return [
            Triple(mats[b.M], mats[b.phi0], mats[b.psi0], b.l, b.m, S, S.nvars - 1)
            for b in self.blocks
            if isinstance(b, TripleBlock)
        ]

    def pairs(self) -> list[Pair]:
        mats = self.matrices
        return [
            Pair(mats[b.gamma], b.l, b.m, self.ring.index[b.hyperplane])
            for b in self.blocks
            if isinstance(b, PairBlock)
        ]

    def triple(self) -> Triple:
        ts = self.triples()
        if len(ts) != 1:
            raise ValueError(f"expected exactly one triple, found {len(ts)}")
        return ts[0]

    def pair(self) -> Pair:
        ps = self.pairs()
        if len(ps) != 1:
            raise ValueError(f"expected exactly one pair, found {len(ps)}")
        return ps[0]

    # -- building -------------------------------------------------------------
    def add_matrix(self, name: str, A: GradedMatrix) -> str:
        self.blocks.append(MatrixBlock(name, A.change_ring(self.ring) if A.ring != self.ring else A))
        return name

    def __str__(self) -> str:
        return print_document(self)


# ---------------------------------------------------------------------------
# printing


def _twists_text(values, ref: str | None) -> str:
    return ref if ref is not None else "[" + ",".join(str(v) for v in values) + "]"


def _field_text(R: PolyRing) -> str:
    return f"GF({R.field.p})"


def print_document(doc: Document) -> str:
    R = doc.ring
    lines = [f"ring {doc.ring_name} = {_field_text(R)}[{','.join(R.names)}] order {R.order}"]
    for b in doc.blocks:
        if isinstance(b, Comment):
            lines.append(b.text)
        elif isinstance(b, TwistsBlock):
            lines.append(f"twists {b.name} = {_twists_text(b.values, None)}")
        elif isinstance(b, MatrixBlock):
            A = b.matrix
            lines.append(
                f"matrix {b.name} ({A.nrows} x {A.ncols}) target {_twists_text(A.target, b.target_ref)}"
                f" source {_twists_text(A.source, b.source_ref)}"
            )
            if A.ncols:
                lines.extend("  " + ", ".join(str(e) for e in row) for row in A.rows)
        elif isinstance(b, TripleBlock):
            lines.append(
                f"triple M={b.M} phi0={b.phi0} psi0={b.psi0} l={_twists_text(b.l, b.l_ref)} m={b.m}"
            )
        elif isinstance(b, PairBlock):
            lines.append(f"pair gamma={b.gamma} l={_twists_text(b.l, b.l_ref)} m={b.m} hyperplane={b.hyperplane}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_LIST = r"\[[^\]]*\]"
_REF = rf"(?:{_LIST}|{_NAME})"
_RING = re.compile(rf"ring\s+({_NAME})\s*=\s*GF\((\d+)\)\s*\[([^\]]*)\]\s+order\s+(\w+)\s*$")
_TWISTS = re.compile(rf"twists\s+({_NAME})\s*=\s*({_LIST})\s*$")
_MATRIX = re.compile(
    rf"matrix\s+({_NAME})\s*\(\s*(\d+)\s*x\s*(\d+)\s*\)\s+target\s+({_REF})\s+source\s+({_REF})\s*$"
)
_TRIPLE = re.compile(
    rf"triple\s+M=({_NAME})\s+phi0=({_NAME})\s+psi0=({_NAME})\s+l=({_REF})\s+m=(-?\d+)\s*$"
)
_PAIR = re.compile(rf"pair\s+gamma=({_NAME})\s+l=({_REF})\s+m=(-?\d+)\s+hyperplane=({_NAME})\s*$")


class _Parser:
    def __init__(self, text: str, field: int | None):
        self.lines = text.splitlines()
        self.field = field
        self.i = 0
        self.twists: dict[str, tuple[int, ...]] = {}
        self.matrices: dict[str, GradedMatrix] = {}

    def fail(self, msg: str, column: int = 1, line: int | None = None):
        raise DocumentError(msg, self.i + 1 if line is None else line, column)

    def twist_list(self, text: str, col: int) -> tuple[tuple[int, ...], str | None]:
        if text.startswith("["):
            body = text[1:-1].strip()
            if not body:
                return (), None
            try:
                return tuple(int(t) for t in body.split(",")), None
            except ValueError:
                self.fail(f"bad twist list {text}", col)
        if text not in self.twists:
            self.fail(f"unknown twists {text!r}", col)
        return self.twists[text], text

    def matrix_ref(self, name: str, line: str) -> GradedMatrix:
        if name not in self.matrices:
            self.fail(f"unknown matrix {name!r}", line.index(name) + 1)
        return self.matrices[name]

    def parse(self) -> Document:
        while self.i < len(self.lines) and not self.lines[self.i].strip():
            self.i += 1
        if self.i:
            self.fail("blank lines before the ring header")
        if not self.lines:
            self.fail("empty document")
        m = _RING.match(self.lines[0])
        if not m:
            self.fail("expected 'ring <name> = GF(<p>)[<vars>] order grevlex'")
        name, p, vars_, order = m.groups()
        names = [v.strip() for v in vars_.split(",")] if vars_.strip() else []
        if order != "grevlex":
            self.fail(f"unsupported order {order!r}", m.start(4) + 1)
        try:
            ring = PolyRing(names, self.field if self.field is not None else int(p), order)
        except ValueError as exc:
            self.fail(str(exc), m.start(3) + 1)
        doc = Document(name, ring)
        self.i = 1
        while self.i < len(self.lines):
            doc.blocks.append(self.block(ring))
        return doc

    def block(self, ring: PolyRing) -> Block:
        line = self.lines[self.i]
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            self.i += 1
            return Comment(line)
        head = stripped.split(None, 1)[0]
        if line != stripped:
            self.fail("block headers start in column 1")
        if head == "twists":
            m = self._match(_TWISTS, line, "twists <name> = [d1,...,dk]")
            values, _ = self.twist_list(m.group(2), m.start(2) + 1)
            self.twists[m.group(1)] = values
            self.i += 1
            return TwistsBlock(m.group(1), values)
        if head == "matrix":
            return self.matrix(ring, line)
        if head == "triple":
            m = self._match(_TRIPLE, line, "triple M=<matrix> phi0=<matrix> psi0=<matrix> l=[...] m=<int>")
            for g in (1, 2, 3):
                self.matrix_ref(m.group(g), line)
            l, ref = self.twist_list(m.group(4), m.start(4) + 1)
            hyper = ring.names[-1]
            for g in (1, 2, 3):
                if any(ring.index[hyper] in e.variables_used() for row in self.matrices[m.group(g)].rows for e in row):
                    self.fail(f"triple matrix {m.group(g)} involves the hyperplane variable {hyper}", m.start(g) + 1)
            blk = TripleBlock(m.group(1), m.group(2), m.group(3), l, int(m.group(5)), ref)
            self._check(lambda: Triple(*(self.matrices[x] for x in (blk.M, blk.phi0, blk.psi0)), l, blk.m, ring, ring.nvars - 1))
            self.i += 1
            return blk
        if head == "pair":
            m = self._match(_PAIR, line, "pair gamma=<matrix> l=[...] m=<int> hyperplane=<var>")
            self.matrix_ref(m.group(1), line)
            l, ref = self.twist_list(m.group(2), m.start(2) + 1)
            if m.group(4) not in ring.index:
                self.fail(f"unknown variable {m.group(4)!r}", m.start(4) + 1)
            blk = PairBlock(m.group(1), l, int(m.group(3)), m.group(4), ref)
            self._check(lambda: Pair(self.matrices[blk.gamma], l, blk.m, ring.index[blk.hyperplane]))
            self.i += 1
            return blk
        self.fail(f"unknown block {head!r}")

    def _match(self, pattern: re.Pattern, line: str, usage: str) -> re.Match:
        m = pattern.match(line)
        if not m:
            self.fail(f"expected '{usage}'")
        return m

    def _check(self, build) -> None:
        try:
            build()
        except (CorrespondenceError, HomogeneityError, ValueError) as exc:
            self.fail(str(exc))

    def matrix(self, ring: PolyRing, line: str) -> MatrixBlock:
        m = self._match(_MATRIX, line, "matrix <name> (<rows> x <cols>) target <twists> source <twists>")
        name = m.group(1)
        if name in self.matrices:
            self.fail(f"matrix {name!r} defined twice", m.start(1) + 1)
        r, c = int(m.group(2)), int(m.group(3))
        target, tref = self.twist_list(m.group(4), m.start(4) + 1)
        source, sref = self.twist_list(m.group(5), m.start(5) + 1)
        if len(target) != r:
            self.fail(f"{r} rows but {len(target)} target twists", m.start(4) + 1)
        if len(source) != c:
            self.fail(f"{c} columns but {len(source)} source twists", m.start(5) + 1)
        header = self.i + 1
        self.i += 1
        rows = []
        for k in range(r if c else 0):
            if self.i >= len(self.lines):
                self.fail(f"matrix {name!r} ends after {k} of {r} rows", line=header)
            text = self.lines[self.i]
            rows.append(self.row(ring, text, c))
            self.i += 1
        if not c:
            rows = [[] for _ in range(r)]
        A = GradedMatrix(ring, rows, target, source)
        bad = A.violations()
        if bad:
            v = bad[0]
            self.i = header + v.row
            col = self._cell_column(self.lines[self.i], v.col)
            self.fail(f"matrix {name!r}: {v}", col)
        self.matrices[name] = A
        return MatrixBlock(name, A, tref, sref)

    def _cell_column(self, text: str, j: int) -> int:
        pos = 0
        for _ in range(j):
            pos = text.index(",", pos) + 1
        while pos < len(text) and text[pos] == " ":
            pos += 1
        return pos + 1

    def row(self, ring: PolyRing, text: str, ncols: int) -> list:
        cells = text.split(",")
        if len(cells) != ncols:
            self.fail(f"expected {ncols} entries, found {len(cells)}")
        out = []
        start = 0
        for cell in cells:
            try:
                out.append(ring.parse(cell))
            except PolynomialSyntaxError as exc:
                self.fail(str(exc).split(" at column")[0], start + exc.column)
            start += len(cell) + 1
        return out


def parse_document(text: str, field: int | None = None) -> Document:
    """Parse and validate ``.km`` text; ``field`` overrides the header's prime."""
    return _Parser(text, field).parse()


def load_document(path, field: int | None = None) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), field)


# ---------------------------------------------------------------------------
# conversion from objects


def triple_document(T: Triple, ring_name: str = "S") -> Document:
    """Document over ``T.S`` with the hyperplane variable moved last."""
    names = list(T.R.names) + [T.S.names[T.hyperplane]]
    ring = PolyRing(names, T.S.field, T.S.order)
    doc = Document(ring_name, ring)
    doc.add_matrix("alpha", T.alpha)
    doc.add_matrix("phi0", T.phi0)
    doc.add_matrix("psi0", T.psi0)
    doc.blocks.append(TripleBlock("alpha", "phi0", "psi0", T.l, T.m))
    return doc


def pair_document(P: Pair, ring_name: str = "S") -> Document:
    doc = Document(ring_name, P.S)
    doc.add_matrix("gamma", P.gamma)
    doc.blocks.append(PairBlock("gamma", P.l, P.m, P.S.names[P.hyperplane]))
    return doc


def example_path(name: str):
    """Path of a shipped example document (``null_correlation``, ``kumar_char2``, ...)."""
    from importlib.resources import files

    path = files("kumar") / "data" / "examples" / f"{name}.km"
    if not path.is_file():
        raise FileNotFoundError(f"no shipped example {name!r}")
    return path
