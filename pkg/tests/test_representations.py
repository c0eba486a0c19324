from __future__ import annotations

import itertools

import numpy as np
import pytest

from qpdt.errors import DimensionCapExceeded, NotPolynomialCount
from qpdt.potential import QP
from qpdt.quiver import Quiver
from qpdt.representations import (
    ModuleRep,
    count_grass_points,
    count_hilb_points,
    count_polynomial,
    enumerate_reps,
    euler_from_counts,
    gl_order,
    grass_degree_bound,
    grass_series,
    hilb_series,
    projective_rep,
    simple_rep,
    zero_rep,
)
from qpdt.torus import NEGATIVE, POSITIVE, TorusSeries


def _gl_oracle(d, q):
    # count invertible matrices by brute force
    if d == 0:
        return 1
    total = 0
    for flat in itertools.product(range(q), repeat=d * d):
        m = np.array(flat).reshape(d, d)
        if round(np.linalg.det(m)) % q:
            total += 1
    return total


@pytest.mark.parametrize("d, q", [(0, 2), (1, 3), (2, 2), (2, 3)])
def test_gl_order(d, q):
    assert gl_order((d,), q) == _gl_oracle(d, q)


def test_enumerate_point_and_a2(a2):
    point = QP.from_quiver(Quiver([[0]]))
    assert sum(1 for _ in enumerate_reps(point, (1,), 5)) == 1
    assert sum(1 for _ in enumerate_reps(QP.from_quiver(a2), (1, 1), 2)) == 2


def test_enumerate_triangle(triangle):
    # scalar triples with ab = bc = ca = 0, counted directly
    expected = sum(1 for t in itertools.product(range(2), repeat=3)
                   if t[0] * t[1] == 0 and t[1] * t[2] == 0 and t[2] * t[0] == 0)
    assert expected == 4
    assert sum(1 for _ in enumerate_reps(triangle, (1, 1, 1), 2)) == expected


def test_dimension_cap(kronecker):
    with pytest.raises(DimensionCapExceeded):
        list(enumerate_reps(QP.from_quiver(kronecker), (3, 3), 2, max_dim=4))
    with pytest.raises(DimensionCapExceeded):
        count_hilb_points(QP.from_quiver(kronecker), 1, (2, 3), 2, max_dim=4)


def test_hilb_points_examples(a2, kronecker):
    qa, qk = QP.from_quiver(a2), QP.from_quiver(kronecker)
    for q in (2, 3, 5):
        assert count_hilb_points(qa, 1, (0, 0), q) == 1
        assert count_hilb_points(qa, 1, (1, 1), q) == 1
        assert count_hilb_points(qk, 1, (1, 1), q) == q + 1


def test_grass_points_examples(a2, kronecker):
    p1 = projective_rep(QP.from_quiver(a2), 1)
    assert p1.dim == (1, 1)
    for q in (2, 3):
        assert [count_grass_points(p1, v, q) for v in ((0, 0), (1, 0), (1, 1), (0, 1))] == [1, 1, 1, 0]
    pk = projective_rep(QP.from_quiver(kronecker), 1)
    assert pk.dim == (1, 2)
    for q in (2, 3, 5):
        assert count_grass_points(pk, (1, 1), q) == q + 1


def test_euler_from_counts():
    assert euler_from_counts({2: 1, 3: 1, 5: 1}, 0) == 1
    assert euler_from_counts({2: 3, 3: 4, 5: 6}, 1) == 2
    assert euler_from_counts({2: 4, 3: 9, 5: 25}, 2) == 1
    assert count_polynomial({2: 4, 3: 9, 5: 25}, 2) == [0, 0, 1]


def test_euler_rejects_non_polynomial_tables():
    with pytest.raises(NotPolynomialCount):
        euler_from_counts({2: 1, 3: 2, 5: 7}, 1)
    with pytest.raises(NotPolynomialCount):
        euler_from_counts({2: 1, 5: 2}, 1)  # slope 1/3
    with pytest.raises(NotPolynomialCount):
        euler_from_counts({2: 1}, 2)


def test_hilb_series_examples(a2):
    point = QP.from_quiver(Quiver([[0]]))
    assert hilb_series(point, 1, 4) == TorusSeries.from_y(1, 4, {(0,): 1, (1,): 1})
    qa = QP.from_quiver(a2)
    assert hilb_series(qa, 1, 4) == TorusSeries.from_y(2, 4, {(0, 0): 1, (1, 0): 1, (1, 1): 1})
    z2 = hilb_series(qa, 2, 4)
    assert z2 == TorusSeries.from_y(2, 4, {(0, 0): 1, (0, 1): 1})
    assert z2.cone == POSITIVE


def test_grass_series_examples(a2):
    qa = QP.from_quiver(a2)
    assert grass_series(zero_rep(qa), 4).is_one()
    s1 = grass_series(simple_rep(qa, 1), 4)
    assert s1 == TorusSeries.from_y(2, 4, {(0, 0): 1, (-1, 0): 1}, cone=NEGATIVE)
    p1 = grass_series(projective_rep(qa, 1), 4)
    assert p1 == TorusSeries.from_y(2, 4, {(0, 0): 1, (-1, 0): 1, (-1, -1): 1}, cone=NEGATIVE)


ACYCLIC = [
    Quiver([[0, 1], [0, 0]]),
    Quiver([[0, 2], [0, 0]]),
    Quiver([[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
    Quiver([[0, 1, 1], [0, 0, 0], [0, 0, 0]]),
    Quiver([[0, 1, 1], [0, 0, 1], [0, 0, 0]]),
]


@pytest.mark.parametrize("q", ACYCLIC, ids=lambda q: str(q.as_array().tolist()))
def test_hilb_matches_grassmannian_of_projective(q):
    qp = QP.from_quiver(q)
    for i in q.vertices():
        p = projective_rep(qp, i)
        if sum(p.dim) > 4:
            continue
        for v in itertools.product(*(range(d + 2) for d in p.dim)):
            if sum(v) > 4:
                continue
            for prime in (2, 3):
                assert count_hilb_points(qp, i, v, prime) == count_grass_points(p, v, prime), (i, v, prime)


def test_grass_degree_bound_covers_counts(kronecker):
    pk = projective_rep(QP.from_quiver(kronecker), 1)
    for v in itertools.product(range(2), range(3)):
        counts = {q: count_grass_points(pk, v, q) for q in (2, 3, 5, 7)}
        if any(counts.values()):
            assert len(count_polynomial(counts, grass_degree_bound(pk.dim, v))) - 1 <= grass_degree_bound(pk.dim, v)


def test_module_relations_checked(triangle):
    with pytest.raises(ValueError):
        ModuleRep(triangle, 2, (1, 1, 1), {"a": [[1]], "b": [[1]]})
    ok = ModuleRep(triangle, 2, (1, 1, 1), {"a": [[1]]})
    assert ok.satisfies_relations()


def test_grass_counts_isomorphism_invariant(kronecker):
    qp = QP.from_quiver(kronecker)
    p = projective_rep(qp, 1, q=3)
    g = np.array([[1, 1], [0, 2]])  # invertible over F_3
    conj = ModuleRep(qp, 3, p.dim, {a: (g @ m) % 3 for a, m in p.mats.items()})
    for v in itertools.product(range(2), range(3)):
        assert count_grass_points(conj, v, 3) == count_grass_points(p, v, 3)
