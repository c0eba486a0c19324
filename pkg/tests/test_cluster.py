from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qpdt.cluster import (
    ComputationBudgetExceeded,
    all_sequences,
    c_vector,
    cluster_state,
    dim_vector_R,
    f_polynomial,
    fz,
    g_recursion_check,
    g_vector,
    initial_seed,
    max_monomial,
    mutate_seed,
    reduced_word,
    sign_sequence,
)
from qpdt.errors import DepthCapExceeded, InvalidVertex, MaxMonomialNotUnique
from qpdt.lattice import class_matrix
from qpdt.laurent import Laurent
from qpdt.quiver import Quiver, mutate_quiver

from test_quiver import quivers


def x(n, *exps):
    return Laurent.monomial("x", n, exps)


def yv(n, *exps):
    return Laurent.monomial("y", n, exps)


def _evaluate(f: Laurent, point) -> Fraction:
    total = Fraction(0)
    for e, c in f.to_dict().items():
        term = Fraction(int(c))
        for p, k in zip(point, e):
            term *= p ** int(k)
        total += term
    return total


def _numeric_seed(q: Quiver, kseq, point):
    """Exchange relation applied to rational numbers."""
    vals = list(point)
    for k in kseq:
        a = q.as_array()
        plus = minus = Fraction(1)
        for i in q.vertices():
            plus *= vals[i - 1] ** int(a[i - 1, k - 1])
            minus *= vals[i - 1] ** int(a[k - 1, i - 1])
        vals[k - 1] = (plus + minus) / vals[k - 1]
        q = mutate_quiver(q, k)
    return vals


def test_a2_single_mutation(a2):
    s = mutate_seed(initial_seed(a2), 1)
    assert s.vars[0] == (1 + x(2, 0, 1)) * x(2, -1, 0)
    assert s.vars[1] == x(2, 0, 1)
    assert s.quiver == mutate_quiver(a2, 1)


def test_double_mutation_restores_seed(a2, kronecker):
    for q in (a2, kronecker):
        s0 = initial_seed(q)
        for k in q.vertices():
            assert mutate_seed(mutate_seed(s0, k), k) == s0


def test_pentagon(a2):
    s = initial_seed(a2)
    for k in (1, 2, 1, 2, 1):
        s = mutate_seed(s, k)
    assert s.permuted((2, 1)) == initial_seed(a2)


def test_fz_examples(a2):
    assert fz(a2, (), 2) == x(2, 0, 1)
    assert fz(a2, (1,), 1) == (1 + x(2, 0, 1)) * x(2, -1, 0)
    assert fz(a2, (1, 2), 2) == (1 + x(2, 1, 0) + x(2, 0, 1)) * x(2, -1, -1)


def test_f_polynomial_examples(a2, a3):
    one = Laurent.const("y", 2, 1)
    assert f_polynomial(a2, (1,), 1) == one + yv(2, 1, 0)
    # with y_1 = x_2 the second variable of (1,2) is x^(-1,0) F(y^-1)
    assert f_polynomial(a2, (1, 2), 2) == one + yv(2, 1, 0) + yv(2, 1, 1)
    assert f_polynomial(a2, (1, 2), 1) == one + yv(2, 1, 0)
    # vertex 3 of A3 is untouched and not adjacent to vertex 1
    assert f_polynomial(a3, (1,), 3) == Laurent.const("y", 3, 1)


def test_g_and_c_vector_examples(a2, a3):
    assert g_vector(a2, (), 2).coords == (0, 1)
    assert g_vector(a2, (1,), 1).coords == (-1, 1)
    for k in (1, 2):
        other = 3 - k
        assert g_vector(a2, (k,), other).coords == tuple(int(j == other - 1) for j in range(2))
        assert c_vector(a2, (k,), k).coords == tuple(-int(j == k - 1) for j in range(2))
    assert c_vector(a2, (), 1).coords == (1, 0)
    assert c_vector(a2, (1, 2), 2).coords == (-1, -1)
    assert g_vector(a3, (2,), 1).coords == (1, 0, 0)


def test_sign_sequences(a2, kronecker):
    for q in (a2, kronecker):
        for k in q.vertices():
            assert sign_sequence(q, (k,)) == (1,)
    assert sign_sequence(a2, (1, 1)) == (1, -1)
    assert sign_sequence(a2, (1, 2)) == (1, 1)


def test_g_recursion(a2):
    for i in (1, 2):
        assert g_recursion_check(a2, (1, 2), i)
        assert g_recursion_check(a2, (1,), i)


def test_dim_vectors(a2):
    assert dim_vector_R(a2, (1,), 1).coords == (1, 0)
    assert dim_vector_R(a2, (1,), 2).coords == (0, 0)
    assert dim_vector_R(a2, (1, 2), 2).coords == (1, 1)


def test_max_monomial_uniqueness():
    f = Laurent.from_dict("y", 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})
    with pytest.raises(MaxMonomialNotUnique):
        max_monomial(f)
    assert max_monomial(Laurent.from_dict("y", 2, {(0, 0): 1, (1, 1): 1})) == (1, 1)


def test_errors(a2):
    with pytest.raises(InvalidVertex):
        fz(a2, (3,), 1)
    with pytest.raises(DepthCapExceeded):
        fz(a2, (1, 2) * 6, 1, max_depth=10)
    with pytest.raises(ComputationBudgetExceeded):
        s = initial_seed(Quiver([[0, 2, 2], [0, 0, 2], [0, 0, 0]]))
        for k in (1, 2, 3, 1, 2, 3):
            s = mutate_seed(s, k, max_terms=50)


def test_words():
    assert reduced_word((1, 2, 2, 1, 3)) == (3,)
    assert sum(1 for _ in all_sequences(2, 3)) == 1 + 2 + 4 + 8


seqs = st.lists(st.integers(1, 3), max_size=4)


@given(quivers(max_n=3, max_mult=1), seqs)
def test_cluster_variables_match_rational_oracle(q, kseq):
    kseq = [k for k in kseq if k <= q.n]
    point = [Fraction(p, 2 + p) for p in (2, 3, 5)][: q.n]
    want = _numeric_seed(q, kseq, point)
    for i in q.vertices():
        assert _evaluate(fz(q, kseq, i), point) == want[i - 1]


@given(quivers(max_n=3, max_mult=1), seqs)
def test_separation_formula(q, kseq):
    kseq = [k for k in kseq if k <= q.n]
    n = q.n
    k = class_matrix(q)
    images = [tuple(-int(c) for c in k[:, j]) for j in range(n)]
    for i in q.vertices():
        g = g_vector(q, kseq, i).coords
        f = f_polynomial(q, kseq, i).monomial_map("x", n, images)
        assert fz(q, kseq, i) == f * x(n, *g)


@given(quivers(max_n=3, max_mult=2), st.lists(st.integers(1, 3), max_size=3))
def test_tropical_duality_and_sign_coherence(q, kseq):
    kseq = [k for k in kseq if k <= q.n]
    st_ = cluster_state(q, kseq)
    assert np.array_equal(st_.G.T @ st_.C, np.eye(q.n, dtype=np.int64))
    for col in st_.C.T:
        assert (col >= 0).all() or (col <= 0).all()
    for i in q.vertices():
        assert st_.g_from_framing(i) == st_.g_tropical(i)
        assert st_.c_from_framing(i) == st_.c_tropical(i)
        f = st_.f_polynomial(i)
        assert f.coefficient((0,) * q.n) == 1
        max_monomial(f)
    if kseq:
        for i in q.vertices():
            assert g_recursion_check(q, kseq, i)
