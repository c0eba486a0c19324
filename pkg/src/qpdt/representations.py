"""Finite-field representations of Jacobi algebras and point counting.

Conventions
-----------
An arrow ``a: s -> t`` acts by a ``dim(t) x dim(s)`` matrix, and the path
``a1 a2 ... am`` (``a1`` first) acts by ``M_am ... M_a1``. The projective
``P_i`` is spanned by paths starting at ``i``, so quotients of ``P_i`` are
the modules generated by one vector at vertex ``i``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import DimensionCapExceeded, InternalNonIntegral, NotPolynomialCount
from .potential import QP, jacobi_relations
from .torus import NEGATIVE, POSITIVE, TorusSeries

__all__ = [
    "ModuleRep",
    "enumerate_reps",
    "count_hilb_points",
    "count_grass_points",
    "euler_from_counts",
    "hilb_degree_bound",
    "grass_degree_bound",
    "hilb_counts",
    "hilb_series",
    "grass_series",
    "projective_rep",
    "simple_rep",
    "zero_rep",
    "gl_order",
]

DEFAULT_MAX_DIM = 4


# --- linear algebra over F_q ------------------------------------------------

def _rank_mod(m: np.ndarray, q: int) -> int:
    a = np.array(m, dtype=np.int64) % q
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), -1, q) % q
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % q
        r += 1
        if r == rows:
            break
    return r


class _Span:
    """Incrementally built subspace of ``F_q^d`` kept in reduced echelon form."""

    __slots__ = ("q", "rows", "pivots")

    def __init__(self, q: int):
        self.q = q
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def reduce(self, x: np.ndarray) -> np.ndarray:
        x = x % self.q
        for r, p in zip(self.rows, self.pivots):
            if x[p]:
                x = (x - x[p] * r) % self.q
        return x

    def add(self, x: np.ndarray) -> bool:
        x = self.reduce(x)
        nz = np.flatnonzero(x)
        if nz.size == 0:
            return False
        p = int(nz[0])
        x = x * pow(int(x[p]), -1, self.q) % self.q
        for i, r in enumerate(self.rows):
            if r[p]:
                self.rows[i] = (r - r[p] * x) % self.q
        self.rows.append(x)
        self.pivots.append(p)
        return True

    def __len__(self) -> int:
        return len(self.rows)


def _subspaces(d: int, r: int, q: int) -> Iterator[np.ndarray]:
    """All ``r``-dimensional subspaces of ``F_q^d`` as ``r x d`` RREF matrices."""
    if r == 0:
        yield np.zeros((0, d), dtype=np.int64)
        return
    for piv in itertools.combinations(range(d), r):
        free = [(i, c) for i in range(r) for c in range(piv[i] + 1, d) if c not in piv]
        for vals in itertools.product(range(q), repeat=len(free)):
            m = np.zeros((r, d), dtype=np.int64)
            for i, p in enumerate(piv):
                m[i, p] = 1
            for (i, c), x in zip(free, vals):
                m[i, c] = x
            yield m


def gl_order(dim: Sequence[int], q: int) -> int:
    """Order of ``prod_j GL(dim_j, F_q)``."""
    out = 1
    for d in dim:
        for m in range(d):
            out *= q ** d - q ** m
    return out


def _mod_coeff(c: Fraction, q: int) -> int:
    if c.denominator % q == 0:
        raise NotPolynomialCount(f"coefficient {c} is not defined over F_{q}")
    return c.numerator * pow(c.denominator, -1, q) % q


# --- modules ----------------------------------------------------------------

class ModuleRep:
    """Representation of ``J(Q,W)`` over ``F_q``.

    Parameters
    ----------
    qp : QP
    q : int
        Field size (a prime).
    dim : sequence of int
        Dimension vector.
    mats : mapping
        Arrow label to ``dim(target) x dim(source)`` integer matrix.
    check : bool
        Verify the Jacobi relations.
    """

    __slots__ = ("qp", "q", "dim", "mats")

    def __init__(self, qp: QP, q: int, dim: Sequence[int], mats: Mapping[str, object],
                 check: bool = True):
        self.qp = qp
        self.q = int(q)
        self.dim = tuple(int(d) for d in dim)
        if len(self.dim) != qp.n or min(self.dim, default=0) < 0:
            raise ValueError(f"bad dimension vector {self.dim}")
        out = {}
        for a, s, t in qp.arrows:
            m = np.array(mats.get(a, np.zeros((self.dim[t - 1], self.dim[s - 1]))), dtype=np.int64)
            m = m.reshape(self.dim[t - 1], self.dim[s - 1]) % self.q
            out[a] = m
        self.mats = out
        if check and not self.satisfies_relations():
            raise ValueError("matrices violate the Jacobi relations")

    def path_matrix(self, path: Sequence[str]) -> np.ndarray:
        if not path:
            raise ValueError("empty path has no fixed vertex")
        m = self.mats[path[0]]
        for a in path[1:]:
            m = self.mats[a] @ m % self.q
        return m

    def satisfies_relations(self) -> bool:
        for a, rel in jacobi_relations(self.qp):
            if rel.is_zero():
                continue
            s, t = self.qp.endpoints(a)
            acc = np.zeros((self.dim[s - 1], self.dim[t - 1]), dtype=np.int64)
            for p, c in rel.terms.items():
                acc = (acc + _mod_coeff(c, self.q) * self.path_matrix(p)) % self.q
            if acc.any():
                return False
        return True

    def reduce_mod(self, q: int) -> "ModuleRep":
        """Same integer matrices read over another field."""
        return ModuleRep(self.qp, q, self.dim, self.mats)

    def generated_dim(self, i: int, m: np.ndarray) -> tuple[int, ...]:
        """Dimension vector of the submodule generated by ``m`` in ``V_i``."""
        spans = [_Span(self.q) for _ in self.dim]
        queue = []
        if spans[i - 1].add(np.asarray(m, dtype=np.int64)):
            queue.append((i, spans[i - 1].rows[-1]))
        out_arrows = {v: [(a, t) for a, s, t in self.qp.arrows if s == v] for v in range(1, self.qp.n + 1)}
        while queue:
            v, x = queue.pop()
            for a, t in out_arrows[v]:
                y = self.mats[a] @ x % self.q
                if spans[t - 1].add(y):
                    queue.append((t, y))
        return tuple(len(s) for s in spans)

    def to_json(self) -> dict:
        return {"dim": list(self.dim), "field": self.q,
                "mats": {a: m.tolist() for a, m in self.mats.items()}}

    def __repr__(self) -> str:
        return f"ModuleRep(dim={self.dim}, q={self.q})"


def _check_cap(dim: Sequence[int], max_dim: int) -> None:
    if sum(dim) > max_dim:
        raise DimensionCapExceeded(f"total dimension {sum(dim)} exceeds cap {max_dim}")


def enumerate_reps(qp: QP, dim: Sequence[int], q: int,
                   max_dim: int = DEFAULT_MAX_DIM) -> Iterator[ModuleRep]:
    """Every representation of ``J(qp)`` with the given dimension vector over ``F_q``."""
    _check_cap(dim, max_dim)
    shapes = [(a, dim[t - 1], dim[s - 1]) for a, s, t in qp.arrows]
    sizes = [r * c for _, r, c in shapes]
    total = sum(sizes)
    has_relations = not qp.potential.is_zero()
    for flat in itertools.product(range(q), repeat=total):
        mats = {}
        pos = 0
        for (a, r, c), sz in zip(shapes, sizes):
            mats[a] = np.array(flat[pos:pos + sz], dtype=np.int64).reshape(r, c)
            pos += sz
        rep = ModuleRep(qp, q, dim, mats, check=False)
        if has_relations and not rep.satisfies_relations():
            continue
        yield rep


def _vectors(d: int, q: int) -> Iterator[np.ndarray]:
    for t in itertools.product(range(q), repeat=d):
        yield np.array(t, dtype=np.int64)


def _hilb_trivially_zero(qp: QP, i: int, v: Sequence[int]) -> bool:
    if not any(v):
        return False
    if v[i - 1] == 0:
        return True
    reach = {i}
    frontier = [i]
    while frontier:
        u = frontier.pop()
        for _, s, t in qp.arrows:
            if s == u and t not in reach:
                reach.add(t)
                frontier.append(t)
    if any(v[j] and (j + 1) not in reach for j in range(qp.n)):
        return True
    # a module generated at i is spanned at j by arrow images (plus the generator)
    incoming = [int(j == i - 1) for j in range(qp.n)]
    for _, s, t in qp.arrows:
        incoming[t - 1] += v[s - 1]
    return any(v[j] > incoming[j] for j in range(qp.n))


def count_hilb_points(qp: QP, i: int, v: Sequence[int], q: int,
                      max_dim: int = DEFAULT_MAX_DIM) -> int:
    """Number of ``F_q``-points of the moduli of quotients of ``P_i`` with dimension ``v``.

    Counts pairs (representation, cyclic vector at ``i``) and divides by the
    order of ``GL_v``. The action on such pairs is free, so the quotient must
    be an integer; otherwise :class:`InternalNonIntegral` is raised.
    """
    v = tuple(int(x) for x in v)
    if not any(v):
        return 1
    _check_cap(v, max_dim)
    if _hilb_trivially_zero(qp, i, v):
        return 0
    pairs = 0
    for rep in enumerate_reps(qp, v, q, max_dim):
        for m in _vectors(v[i - 1], q):
            if rep.generated_dim(i, m) == v:
                pairs += 1
    order = gl_order(v, q)
    if pairs % order:
        raise InternalNonIntegral(f"{pairs} cyclic pairs not divisible by |GL_v|={order} for v={v}, q={q}")
    return pairs // order


def count_grass_points(r: ModuleRep, v: Sequence[int], q: int | None = None,
                       max_dim: int = DEFAULT_MAX_DIM) -> int:
    """Number of submodules ``S`` of ``r`` with ``dim r - dim S = v`` over ``F_q``."""
    q = r.q if q is None else q
    if q != r.q:
        r = r.reduce_mod(q)
    v = tuple(int(x) for x in v)
    if any(x < 0 or x > d for x, d in zip(v, r.dim)):
        return 0
    _check_cap(r.dim, max_dim)
    sub = [d - x for d, x in zip(r.dim, v)]
    choices = [list(_subspaces(d, s, q)) for d, s in zip(r.dim, sub)]
    arrows = [(r.mats[a], s - 1, t - 1) for a, s, t in r.qp.arrows]
    count = 0
    for pick in itertools.product(*choices):
        ok = True
        for m, s, t in arrows:
            if pick[s].shape[0] == 0 or sub[t] == r.dim[t]:
                continue
            img = (m @ pick[s].T % q).T
            if _rank_mod(np.vstack([pick[t], img]), q) != sub[t]:
                ok = False
                break
        if ok:
            count += 1
    return count


# --- Euler characteristics --------------------------------------------------

def hilb_degree_bound(qp: QP, i: int, v: Sequence[int]) -> int:
    """Upper bound on the dimension of the quotient moduli space.

    ``sum_a v_s v_t + v_i - sum_j v_j^2``: the pairs (representation,
    generator) form a subvariety of affine space of that dimension plus
    ``sum_j v_j^2``, on which ``GL_v`` acts freely.
    """
    e = sum(v[s - 1] * v[t - 1] for _, s, t in qp.arrows) + v[i - 1] - sum(x * x for x in v)
    return max(0, e)


def grass_degree_bound(dim: Sequence[int], v: Sequence[int]) -> int:
    """Dimension of the product of ordinary Grassmannians containing the quiver Grassmannian."""
    return sum(x * (d - x) for d, x in zip(dim, v))


def _interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (constant first) of the Lagrange polynomial through ``points``."""
    k = len(points)
    coeffs = [Fraction(0)] * k
    for j, (xj, yj) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for m, (xm, _) in enumerate(points):
            if m == j:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xm * basis[t + 1]
            denom *= xj - xm
        for t in range(k):
            coeffs[t] += yj * basis[t] / denom
    return coeffs


def euler_from_counts(counts: Mapping[int, int], degree: int) -> int:
    """Euler characteristic from point counts via polynomial interpolation.

    Fits the polynomial of degree at most ``degree`` through the first
    ``degree + 1`` primes, requires integer coefficients, checks that every
    further prime is predicted exactly, and returns the value at ``q = 1``.
    """
    items = sorted((int(q), int(c)) for q, c in counts.items())
    if len(items) < degree + 1:
        raise NotPolynomialCount(f"{len(items)} primes cannot fix a polynomial of degree {degree}")
    coeffs = _interpolate(items[:degree + 1])
    if any(c.denominator != 1 for c in coeffs):
        raise NotPolynomialCount(f"non-integral fit {coeffs} through {items}")
    for q, c in items[degree + 1:]:
        pred = sum(a * q ** e for e, a in enumerate(coeffs))
        if pred != c:
            raise NotPolynomialCount(f"fit predicts {pred} at q={q}, measured {c}")
    return int(sum(coeffs))


def count_polynomial(counts: Mapping[int, int], degree: int) -> list[int]:
    """Integer coefficients (constant first) of the fitted count polynomial."""
    items = sorted((int(q), int(c)) for q, c in counts.items())
    coeffs = _interpolate(items[:degree + 1])
    if any(c.denominator != 1 for c in coeffs):
        raise NotPolynomialCount(f"non-integral fit {coeffs}")
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return [int(c) for c in coeffs]


def _shell(n: int, d: int) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _shell(n - 1, d - a):
            yield (a,) + rest


def hilb_counts(qp: QP, i: int, v: Sequence[int], primes: Sequence[int],
                max_dim: int = DEFAULT_MAX_DIM) -> dict[int, int]:
    return {q: count_hilb_points(qp, i, v, q, max_dim) for q in primes}


def hilb_series(qp: QP, i: int, N: int, primes: Sequence[int] = (2, 3, 5),
                max_dim: int = DEFAULT_MAX_DIM) -> TorusSeries:
    """Generating series of Euler characteristics of quotients of ``P_i``, to order ``N``.

    For acyclic quivers every module is nilpotent, so a cyclic module of
    dimension ``d+1`` has a cyclic quotient of dimension ``d``; the series
    therefore stops at the first shell with no points. For quivers with
    oriented cycles every shell up to ``N`` is computed.
    """
    n = qp.n
    acyclic = qp.quiver().is_acyclic() if _two_cycle_free(qp) else False
    coeffs: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for d in range(1, N + 1):
        shell_nonzero = False
        for v in _shell(n, d):
            if _hilb_trivially_zero(qp, i, v):
                continue
            counts = hilb_counts(qp, i, v, primes, max_dim)
            if not any(counts.values()):
                continue
            shell_nonzero = True
            e = euler_from_counts(counts, hilb_degree_bound(qp, i, v))
            if e:
                coeffs[v] = e
        if not shell_nonzero and acyclic:
            break
    return TorusSeries.from_terms(n, N, {((0,) * n, v): c for v, c in coeffs.items()},
                                  sign=1, cone=POSITIVE)


def _two_cycle_free(qp: QP) -> bool:
    m = qp.count_matrix()
    return all(not (m[i][j] and m[j][i]) for i in range(qp.n) for j in range(qp.n))


def grass_series(family: Mapping[int, ModuleRep] | ModuleRep, N: int,
                 primes: Sequence[int] = (2, 3, 5), max_dim: int = DEFAULT_MAX_DIM) -> TorusSeries:
    """``sum_v e(Grass(r, v)) y^(-v)`` over quotient dimensions ``|v| <= N``.

    ``family`` is either one representation with integer matrices (read over
    every prime) or a mapping prime to representation.
    """
    if isinstance(family, ModuleRep):
        base = family
        family = {q: base.reduce_mod(q) for q in primes}
    reps = [family[q] for q in primes]
    dim = reps[0].dim
    n = len(dim)
    coeffs: dict[tuple[int, ...], int] = {}
    for v in itertools.product(*(range(d + 1) for d in dim)):
        if sum(v) > N:
            continue
        counts = {q: count_grass_points(r, v, q, max_dim) for q, r in zip(primes, reps)}
        if not any(counts.values()):
            continue
        e = euler_from_counts(counts, grass_degree_bound(dim, v))
        if e:
            coeffs[tuple(-x for x in v)] = e
    return TorusSeries.from_terms(n, N, {((0,) * n, v): c for v, c in coeffs.items()},
                                  sign=1, cone=NEGATIVE)


# --- catalogue helpers ------------------------------------------------------

def zero_rep(qp: QP, q: int = 0) -> ModuleRep:
    return ModuleRep(qp, q or 2, (0,) * qp.n, {})


def simple_rep(qp: QP, k: int, q: int = 2) -> ModuleRep:
    return ModuleRep(qp, q, [int(j == k - 1) for j in range(qp.n)], {})


def projective_rep(qp: QP, i: int, q: int = 2, max_dim: int = DEFAULT_MAX_DIM) -> ModuleRep:
    """``P_i`` of the path algebra of an acyclic quiver (requires ``W = 0``)."""
    if not qp.potential.is_zero():
        raise ValueError("projective_rep builds path-algebra projectives only")
    if not qp.quiver().is_acyclic():
        raise ValueError("path algebra of a cyclic quiver is infinite-dimensional")
    paths: list[list[tuple[str, ...]]] = [[] for _ in range(qp.n)]
    frontier = [((), i)]
    while frontier:
        p, v = frontier.pop(0)
        paths[v - 1].append(p)
        for a, s, t in qp.arrows:
            if s == v:
                frontier.append((p + (a,), t))
    dim = [len(x) for x in paths]
    _check_cap(dim, max_dim)
    index = [{p: k for k, p in enumerate(x)} for x in paths]
    mats = {}
    for a, s, t in qp.arrows:
        m = np.zeros((dim[t - 1], dim[s - 1]), dtype=np.int64)
        for p, col in index[s - 1].items():
            m[index[t - 1][p + (a,)], col] = 1
        mats[a] = m
    return ModuleRep(qp, q, dim, mats)
