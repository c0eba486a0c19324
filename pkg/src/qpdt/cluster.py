"""Seeds, cluster variables, F-polynomials, g-, c- and tropical g-vectors.

F-polynomials and g-vectors are read off the principally framed cluster
variables. The same quantities are recomputed tropically by composing the
lattice maps ``phi`` with the sign sequence, and the two are compared.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    CMismatch,
    DepthCapExceeded,
    GMismatch,
    InvalidVertex,
    LaurentViolation,
    MaxMonomialNotUnique,
    QPDTError,
    SignIncoherent,
)
from .lattice import LatticeVector, chi_matrix, phi_inverse_matrix
from .laurent import Laurent
from .quiver import Quiver, mutate_quiver, principal_framing

__all__ = [
    "Seed",
    "mutate_seed",
    "initial_seed",
    "fz",
    "f_polynomial",
    "g_vector",
    "c_vector",
    "tg_vector",
    "sign_sequence",
    "g_recursion_check",
    "g_recursion_expected",
    "dim_vector_R",
    "ClusterState",
    "cluster_state",
    "ComputationBudgetExceeded",
    "DEFAULT_MAX_TERMS",
    "all_sequences",
    "reduced_word",
    "max_monomial",
]

DEFAULT_MAX_TERMS = 20000
DEFAULT_MAX_DEPTH = 10


class ComputationBudgetExceeded(QPDTError):
    """A Laurent polynomial grew beyond the configured term budget."""


class Seed:
    """Quiver together with one Laurent polynomial per vertex."""

    __slots__ = ("quiver", "vars")

    def __init__(self, quiver: Quiver, vars: Sequence[Laurent]):
        if len(vars) != quiver.n:
            raise ValueError(f"{len(vars)} variables for {quiver.n} vertices")
        self.quiver = quiver
        self.vars = tuple(vars)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Seed) and self.quiver == other.quiver and self.vars == other.vars

    def __hash__(self) -> int:
        return hash((self.quiver, self.vars))

    def __repr__(self) -> str:
        return f"Seed({self.quiver!r}, [{', '.join(map(str, self.vars))}])"

    def permuted(self, perm: Sequence[int]) -> "Seed":
        """Relabel vertex ``i`` as ``perm[i-1]``."""
        vars_ = [None] * len(self.vars)
        for i, v in enumerate(self.vars):
            vars_[perm[i] - 1] = v
        return Seed(self.quiver.permuted(perm), vars_)


def initial_seed(q: Quiver, prefix: str = "x") -> Seed:
    return Seed(q, [Laurent.gen(prefix, q.n, i) for i in q.vertices()])


PAIR_FACTOR = 50


def _checked_mul(a: Laurent, b: Laurent, max_terms: int | None) -> Laurent:
    if max_terms is not None and len(a) * len(b) > max_terms * PAIR_FACTOR:
        raise ComputationBudgetExceeded(f"product of {len(a)} and {len(b)} terms exceeds the budget")
    out = a * b
    if max_terms is not None and len(out) > max_terms:
        raise ComputationBudgetExceeded(f"{len(out)} terms exceed the budget of {max_terms}")
    return out


def _checked_pow(a: Laurent, e: int, max_terms: int | None) -> Laurent:
    out = a
    for _ in range(e - 1):
        out = _checked_mul(out, a, max_terms)
    return out


def mutate_seed(s: Seed, k: int, max_terms: int | None = None) -> Seed:
    """Exchange ``u_k`` for ``u_k^-1 (prod_i u_i^Q(i,k) + prod_i u_i^Q(k,i))``."""
    q = s.quiver
    if not 1 <= k <= q.n:
        raise InvalidVertex(f"vertex {k} outside 1..{q.n}")
    u = s.vars
    one = Laurent.const(u[0].prefix, u[0].n, 1)
    p_in, p_out = one, one
    for i in q.vertices():
        a, b = q.Q(i, k), q.Q(k, i)
        if a:
            p_in = _checked_mul(p_in, _checked_pow(u[i - 1], a, max_terms), max_terms)
        if b:
            p_out = _checked_mul(p_out, _checked_pow(u[i - 1], b, max_terms), max_terms)
    num = p_in + p_out
    try:
        new = num.divexact(u[k - 1])
    except LaurentViolation as exc:
        raise LaurentViolation(f"exchange at {k} is not Laurent: {exc}") from None
    if max_terms is not None and len(new) > max_terms:
        raise ComputationBudgetExceeded(f"{len(new)} terms exceed the budget of {max_terms}")
    vars_ = list(u)
    vars_[k - 1] = new
    return Seed(mutate_quiver(q, k), vars_)


def _check_kseq(q: Quiver, kseq: Sequence[int], max_depth: int | None) -> tuple[int, ...]:
    kseq = tuple(int(k) for k in kseq)
    for k in kseq:
        if not 1 <= k <= q.n:
            raise InvalidVertex(f"vertex {k} outside 1..{q.n}")
    if max_depth is not None and len(kseq) > max_depth:
        raise DepthCapExceeded(f"sequence length {len(kseq)} exceeds cap {max_depth}")
    return kseq


@lru_cache(maxsize=4096)
def _seed(q: Quiver, kseq: tuple[int, ...]) -> Seed:
    if not kseq:
        return initial_seed(q)
    return mutate_seed(_seed(q, kseq[:-1]), kseq[-1])


def fz(q: Quiver, kseq: Sequence[int], i: int, max_depth: int | None = DEFAULT_MAX_DEPTH) -> Laurent:
    """Cluster variable ``i`` after mutating the initial seed along ``kseq``."""
    kseq = _check_kseq(q, kseq, max_depth)
    if not 1 <= i <= q.n:
        raise InvalidVertex(f"vertex {i} outside 1..{q.n}")
    return _seed(q, kseq).vars[i - 1]


# --- framed computation and tropical data ------------------------------------

class ClusterState:
    """Everything attached to one mutation sequence.

    Attributes
    ----------
    quiver : Quiver
        Mutated quiver ``Q_k``.
    framed : Seed or None
        Mutated principally framed seed (``None`` when over budget).
    G, C : numpy.ndarray
        Columns are g-vectors and c-vectors from the tropical recursion.
    signs : tuple of int
        Sign sequence.
    path : tuple of Quiver
        Quivers before each step.
    """

    __slots__ = ("base", "kseq", "quiver", "framed", "G", "C", "signs", "path", "budget_error")

    def __init__(self, base, kseq, quiver, framed, G, C, signs, path, budget_error=None):
        self.base = base
        self.kseq = kseq
        self.quiver = quiver
        self.framed = framed
        self.G = G
        self.C = C
        self.signs = signs
        self.path = path
        self.budget_error = budget_error

    @classmethod
    def initial(cls, q: Quiver) -> "ClusterState":
        n = q.n
        framed = Seed(principal_framing(q),
                      [Laurent.gen("X", 2 * n, i) for i in range(1, 2 * n + 1)])
        eye = np.eye(n, dtype=np.int64)
        return cls(q, (), q, framed, eye, eye.copy(), (), ())

    def mutate(self, k: int, max_terms: int | None = None) -> "ClusterState":
        q = self.quiver
        n = q.n
        if not 1 <= k <= n:
            raise InvalidVertex(f"vertex {k} outside 1..{n}")
        eps = _sign_of(self.C[:, k - 1], self.kseq + (k,))
        G = self.G @ phi_inverse_matrix(q, k, eps, "M")
        C = self.C @ phi_inverse_matrix(q, k, eps, "L")
        framed, err = None, self.budget_error
        if self.framed is not None:
            try:
                framed = mutate_seed(self.framed, k, max_terms)
            except ComputationBudgetExceeded as exc:
                err = str(exc)
        return ClusterState(self.base, self.kseq + (k,), mutate_quiver(q, k), framed, G, C,
                            self.signs + (eps,), self.path + (q,), err)

    # framed readouts --------------------------------------------------------
    def _need_framed(self) -> Seed:
        if self.framed is None:
            raise ComputationBudgetExceeded(self.budget_error or "framed seed unavailable")
        return self.framed

    def f_polynomial(self, i: int) -> Laurent:
        n = self.base.n
        x = self._need_framed().vars[i - 1]
        images = [[0] * n for _ in range(n)] + [[int(r == j) for r in range(n)] for j in range(n)]
        f = x.monomial_map("y", n, images)
        if not f.is_polynomial():
            raise LaurentViolation(f"F-polynomial {f} has negative exponents")
        return f

    def g_from_framing(self, i: int) -> tuple[int, ...]:
        n = self.base.n
        x = self._need_framed().vars[i - 1]
        hits = [(e, c) for e, c in x.terms() if not any(e[n:])]
        if len(hits) != 1 or hits[0][1] != 1:
            raise GMismatch(f"framed variable {i} has frozen-degree-zero part {hits}")
        return tuple(hits[0][0][:n])

    def c_from_framing(self, i: int) -> tuple[int, ...]:
        n = self.base.n
        fq = self._need_framed().quiver
        return tuple(fq.Q(n + m, i) - fq.Q(i, n + m) for m in range(1, n + 1))

    def g_tropical(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.G[:, i - 1])

    def c_tropical(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.C[:, i - 1])

    def tg_vectors(self) -> np.ndarray:
        """Columns ``phi_k([s_i])``: the inverse of ``C``."""
        return _int_inverse(self.C)


def _sign_of(c: np.ndarray, kseq) -> int:
    if all(x >= 0 for x in c):
        return 1
    if all(x <= 0 for x in c):
        return -1
    raise SignIncoherent(f"c-vector {list(map(int, c))} has mixed signs (sequence {list(kseq)})")


def _int_inverse(m: np.ndarray) -> np.ndarray:
    det = round(float(np.linalg.det(m)))
    if abs(det) != 1:
        raise ValueError(f"determinant {det} is not +-1")
    inv = np.rint(np.linalg.inv(m)).astype(np.int64)
    if not np.array_equal(m @ inv, np.eye(len(m), dtype=np.int64)):
        raise ValueError("integer inverse check failed")
    return inv


@lru_cache(maxsize=4096)
def _state(q: Quiver, kseq: tuple[int, ...]) -> ClusterState:
    if not kseq:
        return ClusterState.initial(q)
    return _state(q, kseq[:-1]).mutate(kseq[-1])


def cluster_state(q: Quiver, kseq: Sequence[int], max_depth: int | None = DEFAULT_MAX_DEPTH) -> ClusterState:
    return _state(q, _check_kseq(q, kseq, max_depth))


def f_polynomial(q: Quiver, kseq: Sequence[int], i: int) -> Laurent:
    """F-polynomial: framed cluster variable at ``X_j = 1``, ``X_{j*} = y_j``."""
    return cluster_state(q, kseq).f_polynomial(i)


def g_vector(q: Quiver, kseq: Sequence[int], i: int) -> LatticeVector:
    """g-vector from the framed variable, checked against the phi recursion."""
    st = cluster_state(q, kseq)
    a = st.g_from_framing(i)
    b = st.g_tropical(i)
    if a != b:
        raise GMismatch(f"framing gives {a}, phi recursion gives {b}")
    return LatticeVector("M", a)


def c_vector(q: Quiver, kseq: Sequence[int], i: int) -> LatticeVector:
    """c-vector from the phi recursion, checked against the framed quiver."""
    st = cluster_state(q, kseq)
    a = st.c_tropical(i)
    b = st.c_from_framing(i)
    if a != b:
        raise CMismatch(f"phi recursion gives {a}, framing arrows give {b}")
    return LatticeVector("L", a)


def tg_vector(q: Quiver, kseq: Sequence[int], i: int) -> LatticeVector:
    """``phi_k([s_i])`` in the lattice of ``Q_k``."""
    st = cluster_state(q, kseq)
    return LatticeVector("L", (int(x) for x in st.tg_vectors()[:, i - 1]))


def sign_sequence(q: Quiver, kseq: Sequence[int]) -> tuple[int, ...]:
    return cluster_state(q, kseq).signs


def g_recursion_expected(q: Quiver, tg: np.ndarray, k0: int, kseq: Sequence[int] = ()) -> np.ndarray:
    """Tropical g-vectors of the tail sequence predicted from those of the full one.

    Column ``i`` is ``-tg_i`` if ``i = k0``, else ``tg_i + Q(k0, i) tg_k0``
    (``eps0 = +``) or ``tg_i + Q(i, k0) tg_k0`` (``eps0 = -``), where
    ``eps0`` is the opposite of the sign of the (sign-coherent) column ``tg_k0``.
    """
    eps0 = -_sign_of(tg[:, k0 - 1], kseq)
    out = tg.copy()
    for i in q.vertices():
        if i == k0:
            out[:, i - 1] = -tg[:, i - 1]
        else:
            coef = q.Q(k0, i) if eps0 > 0 else q.Q(i, k0)
            out[:, i - 1] = tg[:, i - 1] + coef * tg[:, k0 - 1]
    return out


def g_recursion_check(q: Quiver, kseq: Sequence[int], i: int) -> bool:
    """Compare tropical g-vectors of ``kseq`` with those of its tail on ``mu_{k0} Q``."""
    kseq = tuple(kseq)
    if not kseq:
        raise ValueError("g_recursion_check needs a non-empty sequence")
    k0 = kseq[0]
    full = cluster_state(q, kseq)
    tail = cluster_state(mutate_quiver(q, k0), kseq[1:])
    expected = g_recursion_expected(q, full.tg_vectors(), k0, kseq)
    return bool(np.array_equal(tail.tg_vectors()[:, i - 1], expected[:, i - 1]))


def dim_vector_R(q: Quiver, kseq: Sequence[int], i: int) -> LatticeVector:
    """Exponent of the divisibility-maximal monomial of the F-polynomial."""
    f = f_polynomial(q, kseq, i)
    return LatticeVector("L", max_monomial(f))


def max_monomial(f: Laurent) -> tuple[int, ...]:
    """Exponent of the unique monomial divisible by all others; coefficient must be 1."""
    terms = f.to_dict()
    top = tuple(max(e[j] for e in terms) for j in range(f.n))
    if terms.get(top) != 1:
        raise MaxMonomialNotUnique(f"coordinatewise maximum {top} has coefficient {terms.get(top, 0)}")
    return top


def reduced_word(kseq: Sequence[int]) -> tuple[int, ...]:
    """Cancel adjacent repeated letters (mutation is an involution)."""
    out: list[int] = []
    for k in kseq:
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def all_sequences(n: int, depth: int) -> Iterator[tuple[int, ...]]:
    """Every sequence over ``1..n`` of length at most ``depth``, shortest first."""
    for length in range(depth + 1):
        yield from _words(n, length)


def _words(n: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for w in _words(n, length - 1):
        for k in range(1, n + 1):
            yield w + (k,)


def chi_form(q: Quiver) -> np.ndarray:
    return chi_matrix(q)
