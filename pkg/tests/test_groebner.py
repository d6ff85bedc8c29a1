from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kumar.matrix import GradedMatrix
from kumar.modules import Submodule, buchberger, ideal, normal_form
from kumar.ring import PolyRing

import oracle

P = 32003


def _random_ideal(seed: int):
    rng = random.Random(seed)
    nv = rng.randint(1, 3)
    R = PolyRing([f"x{i}" for i in range(nv)], P)
    gens = [oracle.random_form(R, rng.randint(1, 3), rng, density=0.6) for _ in range(rng.randint(1, 4))]
    return R, [g for g in gens if g.terms] or [R.gens[0]]


@given(st.integers(0, 10**9))
@settings(max_examples=200, deadline=None, derandomize=True)
def test_s_polynomials_reduce_to_zero(seed):
    """Buchberger's criterion checked with the reference division (own grevlex order)."""
    R, gens = _random_ideal(seed)
    G = ideal(R, gens).groebner()
    basis = [oracle.terms(c[0], P) for c in G.columns()]
    basis = [b for b in basis if b]
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            assert not oracle.reduce(oracle.s_polynomial(basis[i], basis[j], P), basis, P)
    for g in gens:
        assert not oracle.reduce(oracle.terms(g, P), basis, P)


def _sympy_basis(R: PolyRing, gens):
    syms = sympy.symbols(R.names)
    exprs = [sympy.sympify(str(g).replace("^", "**"), locals=dict(zip(R.names, syms))) for g in gens]
    GB = sympy.groebner(exprs, *syms, modulus=P, order="grevlex")
    out = set()
    for g in GB.exprs:
        poly = sympy.Poly(g, *syms, modulus=P)
        lc = int(poly.LC(order="grevlex")) % P
        inv = pow(lc, -1, P)
        out.add(frozenset((tuple(m), int(c) * inv % P) for m, c in poly.terms()))
    return out


@pytest.mark.parametrize("seed", range(40))
def test_reduced_basis_matches_sympy(seed):
    R, gens = _random_ideal(seed)
    G = ideal(R, gens).groebner()
    ours = set()
    for col in G.columns():
        f = col[0].monic()
        ours.add(frozenset((e, int(c) % P) for e, c in f.sorted_terms()))
    assert ours == _sympy_basis(R, gens)


def test_module_membership_and_normal_form():
    R = PolyRing(["x", "y", "z"], P)
    A = GradedMatrix.from_strings(R, [["x", "y", "0"], ["0", "x", "z"]], [0, 0], [-1, -1, -1])
    G = buchberger(Submodule(A))
    assert G.contains([R.parse("x*y"), R.parse("x^2")])
    assert not G.contains([R.parse("z"), R.zero()])
    nf = normal_form([R.parse("x*y + z^2"), R.parse("x^2")], G)
    assert G.contains([a - b for a, b in zip([R.parse("x*y + z^2"), R.parse("x^2")], nf)])
    # normal forms are canonical
    again = normal_form([nf[0] + R.parse("x*z"), nf[1]], G)
    assert again == nf


@pytest.mark.parametrize("seed", range(25))
def test_module_basis_spans_input(seed):
    rng = random.Random(seed)
    R = PolyRing(["x", "y", "z"][: rng.randint(2, 3)], P)
    A = oracle.random_matrix(R, rng, rng.randint(1, 3), rng.randint(1, 4))
    G = Submodule(A).groebner()
    for c in A.columns():
        assert G.contains(c)
    # same graded dimensions as the input span, degree by degree
    for d in range(-1, 5):
        rows = [r for col in G.columns() for r in _col_rows(R, A.target, col, d)]
        assert oracle.rank_mod_p(rows, P) == oracle.image_dim(A, d)


def _col_rows(R, target, col, d):
    i = next(i for i, e in enumerate(col) if e.terms)
    deg = col[i].degree() - target[i]
    out = []
    for m in oracle.monomials(R.nvars, d - deg):
        vec = {}
        for k, e in enumerate(col):
            for ex, c in oracle.terms(e, P).items():
                vec[(k, tuple(a + b for a, b in zip(ex, m)))] = c
        out.append(vec)
    return out
