from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kumar.document import (
    Document,
    DocumentError,
    example_path,
    pair_document,
    parse_document,
    print_document,
    triple_document,
)
from kumar.correspondence import forward
from kumar.examples import cotangent_triple, kumar_char2, null_correlation
from kumar.matrix import GradedMatrix
from kumar.ring import PolyRing

SHIPPED = ["null_correlation", "kumar_char2", "horrocks_mumford", "cotangent_4"]

HEADER = "ring S = GF(101)[x,y,z] order grevlex\n"


@pytest.mark.parametrize("name", SHIPPED)
def test_shipped_documents_round_trip(name):
    text = example_path(name).read_text(encoding="utf-8")
    assert print_document(parse_document(text)) == text


def test_shipped_null_correlation_is_the_triple():
    doc = parse_document(example_path("null_correlation").read_text())
    assert doc.triple() == null_correlation()


def test_shipped_char2_is_the_triple():
    doc = parse_document(example_path("kumar_char2").read_text())
    assert doc.triple() == kumar_char2()


def test_shipped_cotangent_is_the_triple():
    doc = parse_document(example_path("cotangent_4").read_text())
    assert doc.triple() == cotangent_triple(4)


def test_triple_and_pair_documents_round_trip():
    T = null_correlation()
    for doc in (triple_document(T), pair_document(forward(T))):
        text = print_document(doc)
        assert print_document(parse_document(text)) == text


def test_named_twists_and_comments_are_kept():
    text = (
        HEADER
        + "# a comment\n"
        + "twists t = [0,0]\n"
        + "\n"
        + "matrix A (2 x 1) target t source [-1]\n"
        + "  x\n"
        + "  y\n"
    )
    doc = parse_document(text)
    assert print_document(doc) == text
    assert doc.matrices["A"].target == (0, 0)


def test_empty_matrix_block():
    doc = parse_document(HEADER + "matrix E (2 x 0) target [0,1] source []\n")
    A = doc.matrices["E"]
    assert A.shape == (2, 0) and A.target == (0, 1)


def test_wrong_degree_names_the_cell():
    text = HEADER + "matrix A (1 x 2) target [0] source [-1,-1]\n  x, y^2\n"
    with pytest.raises(DocumentError) as err:
        parse_document(text)
    assert err.value.line == 3 and err.value.column == 6
    assert "(1,2)" in str(err.value)


def test_unknown_variable_is_located():
    with pytest.raises(DocumentError) as err:
        parse_document(HEADER + "matrix A (1 x 1) target [0] source [-1]\n  x+w\n")
    assert (err.value.line, err.value.column) == (3, 5)
    assert "unknown variable" in str(err.value)


@pytest.mark.parametrize(
    "body, line",
    [
        ("matrix A (1 x 1) target [0]\n", 2),
        ("matrix A (2 x 1) target [0,0] source [-1]\n  x\n", 2),
        ("matrix A (1 x 2) target [0] source [-1,-1]\n  x\n", 3),
        ("frobnicate\n", 2),
        ("pair gamma=G l=[0] m=1 hyperplane=z\n", 2),
        ("twists t = [a]\n", 2),
    ],
)
def test_syntax_errors_are_located(body, line):
    with pytest.raises(DocumentError) as err:
        parse_document(HEADER + body)
    assert err.value.line == line


def test_bad_header():
    with pytest.raises(DocumentError) as err:
        parse_document("ring S = QQ[x] order grevlex\n")
    assert err.value.line == 1


def test_triple_may_not_use_the_hyperplane_variable():
    text = (
        HEADER
        + "matrix A (1 x 1) target [0] source [-1]\n  z\n"
        + "matrix P (1 x 1) target [1] source [0]\n  0\n"
        + "matrix Q (1 x 1) target [0] source [0]\n  1\n"
        + "triple M=A phi0=P psi0=Q l=[0] m=1\n"
    )
    with pytest.raises(DocumentError, match="hyperplane"):
        parse_document(text)


def test_field_override():
    text = example_path("null_correlation").read_text()
    doc = parse_document(text, field=7)
    assert doc.ring.field.p == 7


@given(st.lists(st.lists(st.integers(-3, 3), min_size=1, max_size=3), min_size=1, max_size=3))
@settings(max_examples=40, deadline=None)
def test_random_matrices_round_trip(rows):
    R = PolyRing(["x", "y"], 101)
    ncols = len(rows[0])
    rows = [(r + [0] * ncols)[:ncols] for r in rows]
    M = GradedMatrix(R, [[(R.parse("x") - R.parse("y") * 2).scale(a) for a in r] for r in rows], [0] * len(rows), [-1] * ncols)
    doc = Document("S", R)
    doc.add_matrix("M", M)
    text = print_document(doc)
    back = parse_document(text)
    assert back.matrices["M"] == M
    assert print_document(back) == text
