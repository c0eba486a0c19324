from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qpdt.errors import InvalidVertex, InvariantViolation
from qpdt.quiver import Quiver, matrix_mutation, mutate_quiver, principal_framing


@st.composite
def quivers(draw, max_n=4, max_mult=2):
    n = draw(st.integers(1, max_n))
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = draw(st.integers(-max_mult, max_mult))
            if c > 0:
                a[i][j] = c
            elif c < 0:
                a[j][i] = -c
    return Quiver(a)


def test_a2_mutation(a2):
    assert mutate_quiver(a2, 1) == Quiver([[0, 0], [1, 0]])
    assert mutate_quiver(a2, 2) == Quiver([[0, 0], [1, 0]])


def test_kronecker_mutation_reverses(kronecker):
    assert mutate_quiver(kronecker, 2).as_array().tolist() == [[0, 0], [2, 0]]


def test_a3_middle_mutation_creates_cycle(a3):
    # 1 -> 2 -> 3 becomes 1 <- 2 <- 3 with a new arrow 1 -> 3
    out = mutate_quiver(a3, 2)
    assert out.as_array().tolist() == [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    assert not out.is_acyclic()


def test_two_cycles_cancel():
    # cyclic triangle: mutating at 1 adds 3 -> 2 which cancels 2 -> 3
    q = Quiver([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    assert mutate_quiver(q, 1).as_array().tolist() == [[0, 0, 1], [1, 0, 0], [0, 0, 0]]


def test_barq_and_exchange_matrix(a2):
    assert a2.barQ(1, 2) == -1 and a2.barQ(2, 1) == 1
    b = a2.exchange_matrix()
    assert b.tolist() == [[0, -1], [1, 0]]
    assert Quiver.from_exchange_matrix(b) == a2


@pytest.mark.parametrize("rows, message", [
    ([[1, 0], [0, 0]], "loop"),
    ([[0, 1], [1, 0]], "2-cycle"),
    ([[0, -1], [0, 0]], "negative"),
    ([[0, 1]], "length"),
])
def test_invariants_rejected(rows, message):
    with pytest.raises(InvariantViolation, match=message):
        Quiver(rows)


def test_invalid_vertex(a2):
    with pytest.raises(InvalidVertex):
        mutate_quiver(a2, 3)
    with pytest.raises(InvalidVertex):
        mutate_quiver(a2, 0)


def test_principal_framing(a2):
    f = principal_framing(a2)
    assert f.n == 4
    arr = f.as_array()
    assert arr[0, 1] == 1
    # frozen vertex n+i carries one arrow into i
    assert arr[2, 0] == 1 and arr[3, 1] == 1
    assert arr[:, 2:].sum() == 0


def test_json_round_trip(kronecker):
    assert Quiver.from_json(kronecker.to_json()) == kronecker


def test_mutation_is_an_involution_exhaustive():
    for entries in itertools.product(range(-2, 3), repeat=3):
        b = np.zeros((3, 3), dtype=int)
        for (i, j), c in zip(((0, 1), (0, 2), (1, 2)), entries):
            b[i, j], b[j, i] = c, -c
        q = Quiver.from_exchange_matrix(b)
        for k in q.vertices():
            assert mutate_quiver(mutate_quiver(q, k), k) == q


@given(quivers(), st.data())
def test_quiver_and_matrix_mutation_agree(q, data):
    k = data.draw(st.integers(1, q.n))
    assert np.array_equal(mutate_quiver(q, k).exchange_matrix(), matrix_mutation(q.exchange_matrix(), k))


@given(quivers(), st.data())
def test_mutation_involutive(q, data):
    k = data.draw(st.integers(1, q.n))
    assert mutate_quiver(mutate_quiver(q, k), k) == q


@given(quivers())
def test_exchange_matrix_antisymmetric(q):
    b = q.exchange_matrix()
    assert np.array_equal(b, -b.T)


def test_permuted_relabels(a2):
    assert a2.permuted((2, 1)) == Quiver([[0, 0], [1, 0]])
