from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qpdt.errors import NotAUnit, OrderMismatch, SignMismatch, SignUnsupported
from qpdt.lattice import chi_matrix
from qpdt.quiver import Quiver
from qpdt.torus import (
    NEGATIVE,
    POSITIVE,
    TorusAutomorphism,
    TorusSeries,
    ad_minus_automorphism,
    ad_plus_automorphism,
    compose,
    dt_automorphism,
    format_series,
    invert,
    inverse,
    mul,
    pi_project,
    power,
    sigma_involution,
)

N = 5


def y(coeffs, n=2, order=N, **kw):
    return TorusSeries.from_y(n, order, coeffs, **kw)


@st.composite
def units(draw, n=2, order=4):
    """Pure y-series in the positive cone with constant term 1."""
    coeffs = {(0,) * n: 1}
    for _ in range(draw(st.integers(0, 4))):
        v = tuple(draw(st.integers(0, 2)) for _ in range(n))
        if any(v):
            coeffs[v] = draw(st.integers(-3, 3))
    return y(coeffs, n, order)


def test_untwisted_product():
    assert mul(y({(1, 0): 1}), y({(0, 1): 1})) == y({(1, 1): 1})


def test_twisted_product_a2(a2):
    form = chi_matrix(a2)
    a = y({(1, 0): 1}, sign=-1, form=form)
    b = y({(0, 1): 1}, sign=-1, form=form)
    assert mul(a, b) == y({(1, 1): -1}, sign=-1, form=form)
    assert mul(a, a) == y({(2, 0): 1}, sign=-1, form=form)


def test_product_checks():
    with pytest.raises(OrderMismatch):
        mul(y({(1, 0): 1}), y({(1, 0): 1}, order=3))
    with pytest.raises(SignMismatch):
        y({(1, 0): 1}, sign=-1)


def test_truncation_drops_high_terms():
    a = y({(0, 0): 1, (N, 1): 1})
    assert a == y({(0, 0): 1})


def test_geometric_series():
    inv = invert(y({(0, 0): 1, (1, 0): 1}))
    assert inv == y({(j, 0): (-1) ** j for j in range(N + 1)})
    assert invert(TorusSeries.one(2, N)) == TorusSeries.one(2, N)


def test_invert_rejects_non_units():
    with pytest.raises(NotAUnit):
        invert(y({(1, 0): 1}))


def test_invert_self_check():
    a = y({(0, 0): 1, (1, 0): 1, (1, 1): 1}, order=6)
    assert mul(a, invert(a)).is_one()


@given(units(), units(), units())
def test_product_associative_and_commutative(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b) == mul(b, a)


@given(units())
def test_inverse_and_powers(a):
    assert mul(a, invert(a)).is_one()
    assert power(a, 3) == mul(a, mul(a, a))
    assert mul(power(a, -2), power(a, 2)).is_one()


def test_sigma_involution():
    a = y({(1, 0): 1})
    s = sigma_involution(a)
    assert s.terms == {((0, 0), (-1, 0)): Fraction(1)} and s.cone == NEGATIVE
    assert sigma_involution(s) == a
    assert sigma_involution(TorusSeries.one(2, N)).is_one()


def test_pi_project_a2(a2):
    k = a2.exchange_matrix()
    img = pi_project(y({(0, 1): 1}), k)
    assert img.terms == {((-1, 0), (0, 0)): Fraction(1)}
    x1 = TorusSeries.monomial(2, N, (1, 0), (0, 0))
    assert pi_project(x1, k).terms == x1.terms
    assert pi_project(TorusSeries.one(2, N), k).is_one()
    with pytest.raises(SignUnsupported):
        pi_project(y({(0, 1): 1}, sign=-1, form=chi_matrix(a2)), k)


def test_dt_point_algebra():
    q = Quiver([[0]])
    z = TorusSeries.from_y(1, N, {(0,): 1, (1,): 1})
    f = dt_automorphism([z], q)
    assert f.image(0).terms == {((1,), (0,)): 1, ((1,), (1,)): 1}
    assert f.units[1].is_one()


def test_dt_a2(a2):
    z1 = y({(0, 0): 1, (1, 0): 1, (1, 1): 1})
    z2 = y({(0, 0): 1, (0, 1): 1})
    f = dt_automorphism([z1, z2], a2)
    assert f.units[0] == z1 and f.units[1] == z2
    # y_1 -> y_1 * (Z^2)^{barQ(2,1)}
    assert f.units[2] == z2
    assert f.units[3] == invert(z1)


def test_dt_identity(a2):
    one = TorusSeries.one(2, N)
    assert dt_automorphism([one, one], a2).is_identity()


def test_ad_minus_single_step(a2):
    g = y({(0, 0): 1, (-1, 0): 1}, cone=NEGATIVE)
    one = TorusSeries.one(2, N, cone=NEGATIVE)
    f = ad_minus_automorphism([g, one], a2)
    assert f.image(0).terms == {((1, 0), (0, 0)): 1, ((1, 0), (-1, 0)): 1}
    assert f.image(1).terms == {((0, 1), (0, 0)): 1}
    assert ad_minus_automorphism([one, one], a2).is_identity()


def test_ad_plus_conjugation(a2):
    g = y({(0, 0): 1, (-1, 0): 1}, cone=NEGATIVE)
    one = TorusSeries.one(2, N, cone=NEGATIVE)
    f = ad_minus_automorphism([g, one], a2)
    plus = ad_plus_automorphism(f)
    assert plus.cone == POSITIVE
    assert ad_plus_automorphism(plus) == f
    assert ad_plus_automorphism(TorusAutomorphism.identity(2, N)).is_identity()
    assert compose(plus, inverse(plus)).is_identity()


@given(units(), units())
def test_compose_with_inverse_is_identity(z1, z2):
    f = dt_automorphism([z1, z2], Quiver([[0, 1], [0, 0]]))
    ident = TorusAutomorphism.identity(2, f.N)
    assert compose(f, ident) == f
    assert compose(ident, f) == f
    assert compose(f, inverse(f)).is_identity()
    assert compose(inverse(f), f).is_identity()


def test_compose_applies_right_factor_first(a2):
    z1 = y({(0, 0): 1, (1, 0): 1})
    one = TorusSeries.one(2, N)
    f = dt_automorphism([z1, one], a2)
    g = dt_automorphism([one, z1], a2)
    h = compose(f, g)
    x2 = TorusSeries.monomial(2, N, (0, 1), (0, 0))
    assert h.apply(x2) == f.apply(g.apply(x2))


def test_format_series():
    assert format_series(y({(0, 0): 1, (1, 0): 1, (1, 1): -2})) == "1 + y1 - 2*y1*y2"
