"""Truncated sign-twisted torus series and their automorphisms.

A series is a finite sum of ``c * x^w y^v`` with ``w`` in ``M`` and ``v`` in
``L``. Multiplication follows

    x^w x^w' = x^(w+w'),   y^v y^v' = sigma^chi(v,v') y^(v+v'),   x y = y x,

and every stored ``v`` satisfies ``|v|_1 <= N``. Since ``sigma = +-1`` the
twist is symmetric, so the ring is commutative for both signs.

Automorphisms are stored as one unit series per generator: the image of a
generator ``g`` is ``g * U_g`` with ``U_g`` a pure ``y``-series with constant
term 1. All unit series of an automorphism live in one pointed cone, where
truncation at order ``N`` is compatible with every operation used here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import NotAUnit, OrderMismatch, SignMismatch, SignUnsupported, TruncationOverflow

__all__ = [
    "POSITIVE",
    "NEGATIVE",
    "MIXED",
    "TorusSeries",
    "TorusAutomorphism",
    "mul",
    "invert",
    "sigma_involution",
    "pi_project",
    "dt_automorphism",
    "ad_minus_automorphism",
    "ad_plus_automorphism",
    "compose",
    "inverse",
    "ConeViolation",
]

POSITIVE = "POSITIVE"
NEGATIVE = "NEGATIVE"
MIXED = "MIXED"

Key = tuple[tuple[int, ...], tuple[int, ...]]


class ConeViolation(TruncationOverflow):
    """A series left the cone in which truncation is meaningful."""


def _norm(v: Sequence[int]) -> int:
    return sum(abs(x) for x in v)


def _in_cone(v: Sequence[int], cone: str) -> bool:
    if cone == POSITIVE:
        return all(x >= 0 for x in v)
    if cone == NEGATIVE:
        return all(x <= 0 for x in v)
    return True


def _as_form(form) -> tuple[tuple[int, ...], ...] | None:
    if form is None:
        return None
    return tuple(tuple(int(x) for x in row) for row in np.asarray(form))


class TorusSeries:
    """Truncated series in the twisted torus.

    Parameters
    ----------
    n : int
        Rank of ``M`` and ``L``.
    N : int
        Truncation order on ``|v|_1``.
    sign : int
        ``+1`` or ``-1``.
    cone : str
        ``POSITIVE``, ``NEGATIVE`` or ``MIXED``.
    terms : mapping
        ``(w, v) -> coefficient``.
    form : array-like, optional
        Matrix of the antisymmetric pairing on ``L``; needed when ``sign`` is -1.
    """

    __slots__ = ("n", "N", "sign", "cone", "terms", "form")

    def __init__(self, n: int, N: int, sign: int, cone: str, terms: Mapping[Key, object],
                 form=None, check: bool = True):
        if sign not in (1, -1):
            raise SignMismatch(f"sign must be +1 or -1, got {sign}")
        if cone not in (POSITIVE, NEGATIVE, MIXED):
            raise ValueError(f"unknown cone {cone!r}")
        self.n = n
        self.N = N
        self.sign = sign
        self.cone = cone
        self.form = _as_form(form)
        if sign == -1 and self.form is None:
            raise SignMismatch("sign -1 needs the pairing matrix")
        out: dict[Key, Fraction] = {}
        for (w, v), c in terms.items():
            if c == 0:
                continue
            w = tuple(int(x) for x in w)
            v = tuple(int(x) for x in v)
            if _norm(v) > N:
                continue
            if check and not _in_cone(v, cone):
                raise ConeViolation(f"exponent {v} outside the {cone} cone")
            out[(w, v)] = Fraction(c)
        self.terms = out

    # construction ---------------------------------------------------------
    @classmethod
    def from_terms(cls, n: int, N: int, terms: Mapping[Key, object], sign: int = 1,
                   cone: str = POSITIVE, form=None) -> "TorusSeries":
        return cls(n, N, sign, cone, terms, form)

    @classmethod
    def from_y(cls, n: int, N: int, coeffs: Mapping[Sequence[int], object], sign: int = 1,
               cone: str = POSITIVE, form=None) -> "TorusSeries":
        """Pure ``y``-series from ``{v: c}``."""
        z = (0,) * n
        return cls(n, N, sign, cone, {(z, tuple(v)): c for v, c in coeffs.items()}, form)

    @classmethod
    def one(cls, n: int, N: int, sign: int = 1, cone: str = POSITIVE, form=None) -> "TorusSeries":
        z = (0,) * n
        return cls(n, N, sign, cone, {(z, z): 1}, form)

    @classmethod
    def monomial(cls, n: int, N: int, w: Sequence[int], v: Sequence[int], c=1, sign: int = 1,
                 cone: str = MIXED, form=None) -> "TorusSeries":
        return cls(n, N, sign, cone, {(tuple(w), tuple(v)): c}, form, check=False)

    def like(self, terms: Mapping[Key, object], cone: str | None = None, check: bool = True) -> "TorusSeries":
        return TorusSeries(self.n, self.N, self.sign, cone or self.cone, terms, self.form, check)

    # inspection -----------------------------------------------------------
    def coefficient(self, w: Sequence[int], v: Sequence[int]) -> Fraction:
        return self.terms.get((tuple(w), tuple(v)), Fraction(0))

    def constant_term(self) -> Fraction:
        z = (0,) * self.n
        return self.terms.get((z, z), Fraction(0))

    def is_pure_y(self) -> bool:
        return all(not any(w) for w, _ in self.terms)

    def is_one(self) -> bool:
        z = (0,) * self.n
        return self.terms == {(z, z): 1}

    def sorted_items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items())

    def y_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {v: c for (w, v), c in self.terms.items()}

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TorusSeries) and self.n == other.n and self.N == other.N
                and self.sign == other.sign and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.n, self.N, self.sign, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"TorusSeries(N={self.N}, sign={self.sign:+d}, {self.cone}, {format_series(self)})"

    # arithmetic -----------------------------------------------------------
    def _compatible(self, other: "TorusSeries") -> None:
        if self.sign != other.sign:
            raise SignMismatch(f"sign {self.sign} vs {other.sign}")
        if self.N != other.N:
            raise OrderMismatch(f"order {self.N} vs {other.N}")
        if self.n != other.n:
            raise OrderMismatch(f"rank {self.n} vs {other.n}")

    def _cone_with(self, other: "TorusSeries") -> str:
        if self.cone == other.cone:
            return self.cone
        if other.is_scalar():
            return self.cone
        if self.is_scalar():
            return other.cone
        return MIXED

    def is_scalar(self) -> bool:
        z = (0,) * self.n
        return all(k == (z, z) for k in self.terms)

    def __add__(self, other: "TorusSeries") -> "TorusSeries":
        self._compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self.like(out, self._cone_with(other), check=False)

    def __neg__(self) -> "TorusSeries":
        return self.like({k: -c for k, c in self.terms.items()}, check=False)

    def __sub__(self, other: "TorusSeries") -> "TorusSeries":
        return self + (-other)

    def scale(self, c) -> "TorusSeries":
        return self.like({k: c * x for k, x in self.terms.items()}, check=False)

    def __mul__(self, other: "TorusSeries") -> "TorusSeries":
        return mul(self, other)

    def __pow__(self, e: int) -> "TorusSeries":
        return power(self, e)

    def truncate(self, N: int) -> "TorusSeries":
        if N > self.N:
            raise OrderMismatch(f"cannot raise order {self.N} to {N}")
        return TorusSeries(self.n, N, self.sign, self.cone, self.terms, self.form, check=False)

    def with_order(self, N: int) -> "TorusSeries":
        """Same terms, relabelled with order ``N`` (terms above ``N`` dropped)."""
        return TorusSeries(self.n, N, self.sign, self.cone, self.terms, self.form, check=False)

    def map_exponents(self, wmap: np.ndarray | None, vmap: np.ndarray | None, N: int | None = None,
                      cone: str | None = None, form=None, check: bool = True) -> "TorusSeries":
        """Apply integer matrices to the exponents (lattice change of basis)."""
        out: dict[Key, Fraction] = {}
        for (w, v), c in self.terms.items():
            w2 = tuple(int(x) for x in (wmap @ np.asarray(w))) if wmap is not None else w
            v2 = tuple(int(x) for x in (vmap @ np.asarray(v))) if vmap is not None else v
            out[(w2, v2)] = out.get((w2, v2), 0) + c
        return TorusSeries(self.n, self.N if N is None else N, self.sign, cone or self.cone, out,
                           self.form if form is None else form, check=check)

    def to_json(self) -> list[dict]:
        return [{"w": list(w), "v": list(v), "c": str(c)} for (w, v), c in self.sorted_items()]

    @classmethod
    def from_json(cls, items: Iterable[dict], n: int, N: int, sign: int = 1, cone: str = POSITIVE,
                  form=None) -> "TorusSeries":
        return cls(n, N, sign, cone, {(tuple(it["w"]), tuple(it["v"])): Fraction(str(it["c"]))
                                      for it in items}, form)


def _twist(a: TorusSeries, v: Sequence[int], v2: Sequence[int]) -> int:
    if a.sign == 1:
        return 1
    f = a.form
    e = 0
    for i, x in enumerate(v):
        if x:
            row = f[i]
            for j, y in enumerate(v2):
                if y:
                    e += x * row[j] * y
    return -1 if e % 2 else 1


def mul(a: TorusSeries, b: TorusSeries) -> TorusSeries:
    """Product with the sign twist on the ``y``-parts, truncated at order ``N``."""
    a._compatible(b)
    N = a.N
    out: dict[Key, Fraction] = {}
    for (w1, v1), c1 in a.terms.items():
        for (w2, v2), c2 in b.terms.items():
            v = tuple(x + y for x, y in zip(v1, v2))
            if _norm(v) > N:
                continue
            w = tuple(x + y for x, y in zip(w1, w2))
            c = c1 * c2
            if a.sign == -1:
                c *= _twist(a, v1, v2)
            out[(w, v)] = out.get((w, v), 0) + c
    return a.like(out, a._cone_with(b), check=False)


def _leading(a: TorusSeries) -> Key:
    """The term whose removal leaves a series strictly inside the cone."""
    if not a.terms:
        raise NotAUnit("zero series is not a unit")
    ws = {w for w, _ in a.terms}
    if len(ws) != 1:
        raise NotAUnit("terms with different x-exponents")
    (w,) = ws
    vs = [v for _, v in a.terms]
    if len(vs) == 1:
        return (w, vs[0])
    if a.cone == POSITIVE:
        v0 = tuple(min(col) for col in zip(*vs))
    elif a.cone == NEGATIVE:
        v0 = tuple(max(col) for col in zip(*vs))
    else:
        raise TruncationOverflow("cannot invert a non-monomial series in a MIXED cone")
    if (w, v0) not in a.terms:
        raise NotAUnit(f"no leading term at {v0}")
    return (w, v0)


def invert(a: TorusSeries) -> TorusSeries:
    """Inverse of ``c * x^w y^v0 * (1 + r)`` with ``c = +-1`` by the geometric series."""
    w, v0 = _leading(a)
    c0 = a.terms[(w, v0)]
    if abs(c0) != 1:
        raise NotAUnit(f"leading coefficient {c0} is not +-1")
    if any(v0):
        # Monomial factors are only handled for scalars times pure units.
        raise NotAUnit("leading y-monomial must be trivial; factor it out first")
    minus_w = tuple(-x for x in w)
    one = TorusSeries.one(a.n, a.N, a.sign, a.cone, a.form)
    # r = c0^-1 x^-w a - 1, supported in the cone minus the origin
    r_terms = {}
    for (ww, v), c in a.terms.items():
        if v == v0:
            continue
        r_terms[((0,) * a.n, v)] = c / c0
    r = a.like(r_terms, check=False)
    acc = one
    if r.terms:
        neg_r = r.scale(-1)
        power_ = one
        for _ in range(a.N):
            power_ = mul(power_, neg_r)
            if not power_.terms:
                break
            acc = acc + power_
    inv_c = Fraction(1) / c0
    return a.like({(minus_w, v): c * inv_c for (_, v), c in acc.terms.items()}, check=False)


def power(a: TorusSeries, e: int) -> TorusSeries:
    if e < 0:
        return power(invert(a), -e)
    out = TorusSeries.one(a.n, a.N, a.sign, a.cone, a.form)
    base = a
    while e:
        if e & 1:
            out = mul(out, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return out


def sigma_involution(a: TorusSeries) -> TorusSeries:
    """Negate every exponent and flip the cone tag."""
    flip = {POSITIVE: NEGATIVE, NEGATIVE: POSITIVE, MIXED: MIXED}[a.cone]
    return a.like({(tuple(-x for x in w), tuple(-x for x in v)): c for (w, v), c in a.terms.items()},
                  flip, check=False)


def pi_project(a: TorusSeries, class_matrix) -> TorusSeries:
    """Replace ``y^v`` by ``x^(K v)`` where column ``j`` of ``K`` is the class of ``v_j``."""
    if a.sign != 1:
        raise SignUnsupported("pi_project is implemented for sign +1 only")
    k = np.asarray(class_matrix, dtype=np.int64)
    out: dict[Key, Fraction] = {}
    z = (0,) * a.n
    for (w, v), c in a.terms.items():
        w2 = tuple(int(x) + int(y) for x, y in zip(w, k @ np.asarray(v, dtype=np.int64)))
        out[(w2, z)] = out.get((w2, z), 0) + c
    return TorusSeries(a.n, a.N, a.sign, MIXED, out, a.form, check=False)


def format_series(a: TorusSeries) -> str:
    if not a.terms:
        return "0"
    parts = []
    for (w, v), c in sorted(a.terms.items(), key=lambda t: (_norm(t[0][1]), t[0])):
        mono = "*".join(
            [f"x{i + 1}" + ("" if e == 1 else f"^{e}") for i, e in enumerate(w) if e]
            + [f"y{i + 1}" + ("" if e == 1 else f"^{e}") for i, e in enumerate(v) if e]
        )
        coeff = "" if (c == 1 and mono) else ("-" if (c == -1 and mono) else str(c))
        if mono and coeff not in ("", "-"):
            coeff += "*"
        parts.append(coeff + mono if mono else str(c))
    return " + ".join(parts).replace("+ -", "- ")


# --- automorphisms ----------------------------------------------------------

class TorusAutomorphism:
    """Automorphism ``g -> g * U_g`` on the generators ``x_1..x_n, y_1..y_n``.

    ``units`` holds ``2n`` pure ``y``-series with constant term 1, first the
    ``x``-generators then the ``y``-generators.
    """

    __slots__ = ("n", "N", "sign", "cone", "form", "units")

    def __init__(self, units: Sequence[TorusSeries]):
        units = tuple(units)
        if not units or len(units) % 2:
            raise ValueError("need 2n unit series")
        n = len(units) // 2
        first = units[0]
        for u in units:
            first._compatible(u)
            if not u.is_pure_y():
                raise ValueError("unit series must be pure y-series")
            if u.constant_term() != 1:
                raise NotAUnit("unit series must have constant term 1")
        cones = {u.cone for u in units if not u.is_one()}
        self.n = n
        self.N = first.N
        self.sign = first.sign
        self.form = first.form
        self.cone = cones.pop() if len(cones) == 1 else (first.cone if not cones else MIXED)
        self.units = units

    @classmethod
    def identity(cls, n: int, N: int, sign: int = 1, cone: str = POSITIVE, form=None) -> "TorusAutomorphism":
        return cls([TorusSeries.one(n, N, sign, cone, form) for _ in range(2 * n)])

    def gen_name(self, idx: int) -> str:
        return f"x{idx + 1}" if idx < self.n else f"y{idx - self.n + 1}"

    def head(self, idx: int) -> Key:
        z = [0] * self.n
        if idx < self.n:
            z[idx] = 1
            return tuple(z), (0,) * self.n
        z[idx - self.n] = 1
        return (0,) * self.n, tuple(z)

    def image(self, idx: int) -> TorusSeries:
        """Generator image ``g * U_g``; the head monomial is not counted against ``N``."""
        hw, hv = self.head(idx)
        u = self.units[idx]
        terms = {}
        for (w, v), c in u.terms.items():
            vv = tuple(a + b for a, b in zip(hv, v))
            c2 = c * (_twist(u, hv, v) if self.sign == -1 else 1)
            terms[(tuple(a + b for a, b in zip(hw, w)), vv)] = c2
        return TorusSeries(self.n, self.N + 1, self.sign, MIXED, terms, self.form, check=False)

    def unit_power(self, idx: int, e: int, cache: dict) -> TorusSeries:
        key = (idx, e)
        if key not in cache:
            cache[key] = power(self.units[idx], e)
        return cache[key]

    def apply_unit_factor(self, w: Sequence[int], v: Sequence[int], cache: dict) -> TorusSeries:
        """The unit ``U`` with ``f(x^w y^v) = x^w y^v U``."""
        acc = TorusSeries.one(self.n, self.N, self.sign, self.cone, self.form)
        for i, e in enumerate(w):
            if e:
                acc = mul(acc, self.unit_power(i, e, cache))
        for i, e in enumerate(v):
            if e:
                acc = mul(acc, self.unit_power(self.n + i, e, cache))
        return acc

    def apply(self, a: TorusSeries, cache: dict | None = None) -> TorusSeries:
        """Image of an arbitrary series whose terms lie in this automorphism's cone."""
        cache = {} if cache is None else cache
        self_check(self, a)
        out = TorusSeries(a.n, a.N, a.sign, _merge_cone(a.cone, self.cone), {}, a.form, check=False)
        for (w, v), c in a.terms.items():
            u = self.apply_unit_factor(w, v, cache)
            mono = TorusSeries.monomial(a.n, a.N, w, v, c, a.sign, out.cone, a.form)
            out = out + mul(mono, u)
        return out

    def first_difference(self, other: "TorusAutomorphism") -> dict | None:
        """First differing coefficient of the unit series, or ``None``."""
        for idx in range(2 * self.n):
            a, b = self.units[idx], other.units[idx]
            for key in sorted(set(a.terms) | set(b.terms)):
                ca, cb = a.terms.get(key, Fraction(0)), b.terms.get(key, Fraction(0))
                if ca != cb:
                    return {"generator": self.gen_name(idx), "w": list(key[0]), "v": list(key[1]),
                            "expected": str(cb), "got": str(ca)}
        return None

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TorusAutomorphism) and self.n == other.n and self.N == other.N
                and self.sign == other.sign and self.units == other.units)

    def __hash__(self) -> int:
        return hash(self.units)

    def is_identity(self) -> bool:
        return all(u.is_one() for u in self.units)

    def truncate(self, N: int) -> "TorusAutomorphism":
        return TorusAutomorphism([u.truncate(N) for u in self.units])

    def map_units(self, fn: Callable[[TorusSeries], TorusSeries]) -> "TorusAutomorphism":
        return TorusAutomorphism([fn(u) for u in self.units])

    def to_json(self) -> dict:
        return {self.gen_name(i): u.to_json() for i, u in enumerate(self.units)}

    def __repr__(self) -> str:
        body = ", ".join(f"{self.gen_name(i)}: {format_series(u)}" for i, u in enumerate(self.units))
        return f"TorusAutomorphism(N={self.N}, {body})"


def _merge_cone(a: str, b: str) -> str:
    return a if a == b else MIXED


def self_check(f: TorusAutomorphism, a: TorusSeries) -> None:
    if f.sign != a.sign:
        raise SignMismatch(f"sign {f.sign} vs {a.sign}")
    if f.N != a.N:
        raise OrderMismatch(f"order {f.N} vs {a.N}")


def unit_family_automorphism(us: Sequence[TorusSeries], class_matrix) -> TorusAutomorphism:
    """``x_i -> x_i U^i`` and ``y_i -> y_i prod_j (U^j)^K[j,i]``.

    ``K`` is the class matrix (column ``i`` holds ``barQ(j,i)``) in the
    coordinates of the generators.
    """
    k = np.asarray(class_matrix, dtype=np.int64)
    n = len(us)
    ys = []
    cache: dict = {}
    for i in range(n):
        acc = TorusSeries.one(n, us[0].N, us[0].sign, us[0].cone, us[0].form)
        for j in range(n):
            e = int(k[j, i])
            if e:
                key = (j, e)
                if key not in cache:
                    cache[key] = power(us[j], e)
                acc = mul(acc, cache[key])
        ys.append(acc)
    return TorusAutomorphism(list(us) + ys)


def dt_automorphism(zs: Sequence[TorusSeries], q, sign: int = 1) -> TorusAutomorphism:
    """``x_i -> x_i Z^i`` and ``y_i -> y_i prod_j (Z^j)^barQ(j,i)``."""
    for z in zs:
        if z.constant_term() != 1:
            raise NotAUnit("DT series must have constant term 1")
        if z.cone == NEGATIVE:
            raise ConeViolation("DT series live in the positive cone")
        if z.sign != sign:
            raise SignMismatch(f"series sign {z.sign} vs requested {sign}")
    return unit_family_automorphism(zs, q.exchange_matrix())


def ad_minus_automorphism(gs: Sequence[TorusSeries], q_k) -> TorusAutomorphism:
    """``x_{k,i} -> x_{k,i} G^i`` and ``y_{k,i} -> y_{k,i} prod_j (G^j)^barQ_k(j,i)``.

    The generators are those of the torus of ``q_k``; each ``G^i`` must be
    written in the same coordinates (see :func:`rebase_series`).
    """
    for g in gs:
        if g.constant_term() != 1:
            raise NotAUnit("Grassmannian series must have constant term 1")
    return unit_family_automorphism(gs, q_k.exchange_matrix())


def ad_plus_automorphism(f: TorusAutomorphism) -> TorusAutomorphism:
    """``Sigma o f o Sigma``, realised on the generators.

    ``Sigma(g) = g^-1`` and ``f(g^-1) = g^-1 U_g^-1``, so the conjugate sends
    ``g`` to ``g * Sigma(U_g)^-1``.
    """
    return f.map_units(lambda u: sigma_involution(invert(u)))


def compose(f: TorusAutomorphism, g: TorusAutomorphism) -> TorusAutomorphism:
    """``f o g``: apply ``g`` first, then rewrite every monomial through ``f``.

    With ``g(h) = h V_h`` one gets ``f(g(h)) = h U_h f(V_h)``.
    """
    if f.sign != g.sign:
        raise SignMismatch(f"sign {f.sign} vs {g.sign}")
    if f.N != g.N:
        raise OrderMismatch(f"order {f.N} vs {g.N}")
    if f.n != g.n:
        raise OrderMismatch(f"rank {f.n} vs {g.n}")
    cache: dict = {}
    units = []
    for idx in range(2 * f.n):
        v = g.units[idx]
        fv = f.apply(v, cache) if not v.is_one() else v
        units.append(mul(f.units[idx], fv))
    return TorusAutomorphism(units)


def inverse(f: TorusAutomorphism) -> TorusAutomorphism:
    """Inverse automorphism by fixed-point iteration.

    On pure ``y``-series ``f`` acts by ``y_i -> y_i U_i``; its inverse acts
    by ``y_i -> y_i R_i`` with ``R_i = phi^-1(U_i^-1)``. Iterating
    ``R <- U^-1 (y -> y R)`` gains one order per round. The inverse unit of
    any generator ``h`` is then ``phi^-1(U_h^-1)``.
    """
    n = f.n
    inv_units = [invert(u) for u in f.units]
    r = [TorusSeries.one(n, f.N, f.sign, f.cone, f.form) for _ in range(n)]
    for _ in range(f.N + 1):
        phi_inv = TorusAutomorphism([TorusSeries.one(n, f.N, f.sign, f.cone, f.form)] * n + r)
        cache: dict = {}
        new_r = [phi_inv.apply(inv_units[n + i], cache) for i in range(n)]
        if new_r == r:
            break
        r = new_r
    phi_inv = TorusAutomorphism([TorusSeries.one(n, f.N, f.sign, f.cone, f.form)] * n + r)
    cache = {}
    return TorusAutomorphism([phi_inv.apply(u, cache) for u in inv_units])


# --- change of lattice basis ------------------------------------------------

def rebase_series(a: TorusSeries, cmat, N: int | None = None, form=None) -> TorusSeries:
    """Rewrite a pure ``y``-series in the basis given by the columns of ``cmat``.

    ``y^u = y'^(C^-1 u)``. The result must lie in the positive cone of the new
    coordinates; otherwise :class:`ConeViolation` is raised. Terms beyond the
    new order ``N`` are dropped.
    """
    c = np.asarray(cmat, dtype=np.int64)
    cinv = _integer_inverse(c)
    out: dict[Key, Fraction] = {}
    for (w, v), coeff in a.terms.items():
        v2 = tuple(int(x) for x in cinv @ np.asarray(v, dtype=np.int64))
        if any(x < 0 for x in v2):
            raise ConeViolation(f"term y^{list(v)} becomes y'^{list(v2)} outside the positive cone")
        out[(w, v2)] = out.get((w, v2), 0) + coeff
    return TorusSeries(a.n, a.N if N is None else N, a.sign, POSITIVE, out,
                       a.form if form is None else form)


def rebase_automorphism(f: TorusAutomorphism, gmat, cmat, N: int, form=None) -> TorusAutomorphism:
    """Express ``f`` on the generators ``x^(g_i)`` and ``y^(c_i)``.

    ``gmat`` and ``cmat`` hold the new generators' exponents as columns.
    The new unit of ``x^(g_i)`` is ``prod_j U_{x_j}^(G[j,i])`` and likewise
    for ``y^(c_i)``; the result is rewritten in the new coordinates and
    truncated at ``N``.
    """
    g = np.asarray(gmat, dtype=np.int64)
    c = np.asarray(cmat, dtype=np.int64)
    n = f.n
    cache: dict = {}
    units = []
    for block, mat in ((0, g), (n, c)):
        for i in range(n):
            acc = TorusSeries.one(n, f.N, f.sign, f.cone, f.form)
            for j in range(n):
                e = int(mat[j, i])
                if e:
                    acc = mul(acc, f.unit_power(block + j, e, cache))
            units.append(rebase_series(acc, c, N, form))
    return TorusAutomorphism(units)


def _integer_inverse(m: np.ndarray) -> np.ndarray:
    det = round(float(np.linalg.det(m)))
    if abs(det) != 1:
        raise ValueError(f"matrix with determinant {det} is not unimodular")
    inv = np.rint(np.linalg.inv(m)).astype(np.int64)
    if not np.array_equal(m @ inv, np.eye(len(m), dtype=np.int64)):
        raise ValueError("integer inverse check failed")
    return inv
