from __future__ import annotations

from fractions import Fraction

import pytest

from qpdt.errors import InvariantViolation, NotMutatable, ReductionDiverged, UnknownArrow
from qpdt.potential import (
    QP,
    NCPolynomial,
    Potential,
    canonical_rotation,
    cyclic_derivative,
    jacobi_relations,
    mutate_qp,
    premutate,
    reduce,
)
from qpdt.quiver import Quiver, mutate_quiver
from qpdt.representations import enumerate_reps


def test_canonical_rotation():
    assert canonical_rotation(("b", "c", "a")) == ("a", "b", "c")
    assert Potential({("c", "a", "b"): 1}) == Potential({("a", "b", "c"): 1})


def test_potential_drops_zero_terms():
    w = Potential({("a", "b", "c"): 1}) + Potential({("b", "c", "a"): -1})
    assert w.is_zero() and w.terms == {}


def test_cyclic_derivative_examples(triangle):
    assert cyclic_derivative(triangle.potential, "a") == NCPolynomial({("b", "c"): 1})
    w = Potential({("a", "b", "a", "c"): 1})
    assert cyclic_derivative(w, "a") == NCPolynomial({("b", "a", "c"): 1, ("c", "a", "b"): 1})
    assert cyclic_derivative(triangle.potential, "d").is_zero()


def test_cyclic_derivative_unknown_arrow(triangle):
    with pytest.raises(UnknownArrow):
        cyclic_derivative(triangle.potential, "d", triangle)


def test_jacobi_relations(triangle):
    rel = dict(jacobi_relations(triangle))
    assert rel == {"a": NCPolynomial({("b", "c"): 1}), "b": NCPolynomial({("c", "a"): 1}),
                   "c": NCPolynomial({("a", "b"): 1})}
    zero = QP.from_quiver(Quiver([[0, 1], [0, 0]]))
    assert all(r.is_zero() for _, r in jacobi_relations(zero))


def test_jacobi_relations_linear():
    arrows = [("a", 1, 2), ("b", 2, 3), ("c", 3, 1), ("d", 1, 2), ("e", 2, 3), ("f", 3, 1)]
    qp = QP(3, arrows, Potential({("a", "b", "c"): 1, ("d", "e", "f"): 1}))
    rel = dict(jacobi_relations(qp))
    assert rel["a"] == NCPolynomial({("b", "c"): 1})
    assert rel["f"] == NCPolynomial({("d", "e"): 1})


def test_premutate_triangle(triangle):
    pre = premutate(triangle, 1)
    assert set(pre.arrows) == {("b", 2, 3), ("[a.c]", 3, 2), ("a*", 2, 1), ("c*", 1, 3)}
    assert pre.potential == Potential({("b", "[a.c]"): 1, ("[a.c]", "a*", "c*"): 1})


def test_premutate_a2(a2):
    pre = premutate(QP.from_quiver(a2), 1)
    assert pre.quiver() == Quiver([[0, 0], [1, 0]])
    assert pre.potential.is_zero()


def test_premutate_acyclic_gives_delta_only(a3):
    pre = premutate(QP.from_quiver(a3), 2)
    assert len(pre.potential.terms) == 1
    (word, coeff), = pre.potential.terms.items()
    assert len(word) == 3 and coeff == 1


def test_reduce_triangle_premutation(triangle):
    red = reduce(premutate(triangle, 1))
    assert set(red.arrows) == {("a*", 2, 1), ("c*", 1, 3)}
    assert red.potential.is_zero()


def test_reduce_trivial_pair():
    qp = QP(2, [("a", 1, 2), ("b", 2, 1)], Potential({("a", "b"): Fraction(3, 2)}))
    red = reduce(qp)
    assert red.arrows == () and red.potential.is_zero()


def test_reduce_leaves_reduced_input(triangle):
    assert reduce(triangle) == triangle


def test_reduce_cap():
    arrows = [("a", 1, 2), ("b", 2, 1)]
    qp = QP(2, arrows, Potential({("a", "b"): 1, ("a", "b", "a", "b"): 1}))
    with pytest.raises(ReductionDiverged):
        reduce(qp, max_iter=0)
    # the correction series never terminates with finite substitutions
    with pytest.raises(ReductionDiverged):
        reduce(qp)


@pytest.mark.parametrize("name, k, expected", [
    ("triangle", 1, [[0, 0, 1], [1, 0, 0], [0, 0, 0]]),
    ("a2", 1, [[0, 0], [1, 0]]),
    ("kronecker", 2, [[0, 0], [2, 0]]),
])
def test_mutate_qp_examples(request, name, k, expected):
    obj = request.getfixturevalue(name)
    qp = obj if isinstance(obj, QP) else QP.from_quiver(obj)
    out = mutate_qp(qp, k)
    assert out.quiver().as_array().tolist() == expected
    assert out.potential.is_zero()


def test_mutate_qp_not_mutatable():
    # 1 -> 2 -> 3 -> 1 with W = 0: mutation at 2 leaves an unreduced 2-cycle
    qp = QP(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], Potential())
    with pytest.raises(NotMutatable):
        mutate_qp(qp, 2)


def test_qp_rejects_bad_cycles():
    with pytest.raises(InvariantViolation):
        QP(2, [("a", 1, 2)], Potential({("a", "a"): 1}))
    with pytest.raises(InvariantViolation):
        QP(2, [("a", 1, 2)], Potential({("z", "a"): 1}))


def test_json_round_trip(triangle):
    obj = triangle.to_json()
    assert obj["n"] == 3 and obj["potential"] == [{"cycle": ["a", "b", "c"], "coeff": "1"}]


def _rep_count(qp, dim):
    return sum(1 for _ in enumerate_reps(qp, dim, 2))


def _dims(n, total):
    if n == 0:
        if total == 0:
            yield ()
        return
    for d in range(total + 1):
        for rest in _dims(n - 1, total - d):
            yield (d,) + rest


@pytest.mark.parametrize("k", [1, 2, 3])
def test_double_mutation_triangle(triangle, k):
    twice = mutate_qp(mutate_qp(triangle, k), k)
    assert twice.quiver() == triangle.quiver()
    for total in range(4):
        for dim in _dims(3, total):
            assert _rep_count(twice, dim) == _rep_count(triangle, dim), dim


@pytest.mark.parametrize("k", [1, 2, 3])
def test_double_mutation_a3(a3, k):
    qp = QP.from_quiver(a3)
    twice = mutate_qp(mutate_qp(qp, k), k)
    assert twice.quiver() == a3
    for total in range(4):
        for dim in _dims(3, total):
            assert _rep_count(twice, dim) == _rep_count(qp, dim), dim


def test_mutation_quiver_matches_quiver_mutation(triangle):
    for k in (1, 2, 3):
        out = mutate_qp(triangle, k)
        assert out.quiver() == mutate_quiver(triangle.quiver(), k)
        assert all(len(w) >= 3 for w in out.potential.terms)
