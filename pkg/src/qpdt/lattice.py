"""Grothendieck lattices ``L`` and ``M``, the Euler pairing and the maps phi.

``L`` has basis ``v_i`` (classes of simples) and ``M`` has basis ``w_i``
(classes of projectives). Vectors carry their space tag so that pairing
them in the wrong order is caught.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidVertex, SpaceMismatch
from .quiver import Quiver

__all__ = [
    "LatticeVector",
    "chi",
    "chi_matrix",
    "class_in_M",
    "class_matrix",
    "phi_inverse_step",
    "phi_inverse_matrix",
    "compose_phi_inverse",
]

L = "L"
M = "M"


class LatticeVector:
    """Integer vector tagged with the lattice it lives in."""

    __slots__ = ("space", "coords")

    def __init__(self, space: str, coords: Iterable[int]):
        if space not in (L, M):
            raise SpaceMismatch(f"unknown space {space!r}")
        self.space = space
        self.coords = tuple(int(c) for c in coords)

    @classmethod
    def basis(cls, space: str, n: int, i: int) -> "LatticeVector":
        if not 1 <= i <= n:
            raise InvalidVertex(f"vertex {i} outside 1..{n}")
        return cls(space, (int(j == i - 1) for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._same(other)
        return LatticeVector(self.space, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._same(other)
        return LatticeVector(self.space, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.space, (-a for a in self.coords))

    def __rmul__(self, c: int) -> "LatticeVector":
        return LatticeVector(self.space, (c * a for a in self.coords))

    def _same(self, other: "LatticeVector") -> None:
        if self.space != other.space or self.n != other.n:
            raise SpaceMismatch(f"{self.space}{self.n} vs {other.space}{other.n}")

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LatticeVector)
            and self.space == other.space
            and self.coords == other.coords
        )

    def __hash__(self) -> int:
        return hash((self.space, self.coords))

    def __repr__(self) -> str:
        return f"LatticeVector({self.space!r}, {list(self.coords)})"

    def to_json(self) -> dict:
        return {"space": self.space, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeVector":
        return cls(obj["space"], obj["coords"])


def chi_matrix(q: Quiver) -> np.ndarray:
    """Gram matrix of the antisymmetric form on ``L``: entry ``(i,j)`` is
    ``Q(i,j) - Q(j,i)``."""
    a = q.as_array()
    return a - a.T


def chi(x: LatticeVector, y: LatticeVector, q: Quiver | None = None) -> int:
    """Euler pairing.

    ``(M, L)`` is the dot product, ``(M, M)`` vanishes, ``(L, L)`` needs the
    quiver and is antisymmetric, ``(L, M)`` is minus ``(M, L)``.
    """
    if x.n != y.n:
        raise SpaceMismatch(f"rank {x.n} vs {y.n}")
    if x.space == M and y.space == L:
        return sum(a * b for a, b in zip(x.coords, y.coords))
    if x.space == L and y.space == M:
        return -chi(y, x)
    if x.space == M and y.space == M:
        return 0
    if q is None:
        raise SpaceMismatch("(L,L) pairing needs a quiver")
    if q.n != x.n:
        raise SpaceMismatch(f"quiver rank {q.n} vs vector rank {x.n}")
    g = chi_matrix(q)
    return int(np.asarray(x.coords) @ g @ np.asarray(y.coords))


def class_matrix(q: Quiver) -> np.ndarray:
    """Matrix of ``class_in_M``: column ``j`` is ``(barQ(i,j))_i``."""
    return q.exchange_matrix()


def class_in_M(v: LatticeVector, q: Quiver) -> LatticeVector:
    """Send ``v_j`` to ``sum_i barQ(i,j) w_i``."""
    if v.space != L:
        raise SpaceMismatch("class_in_M expects an L-vector")
    if v.n != q.n:
        raise SpaceMismatch(f"quiver rank {q.n} vs vector rank {v.n}")
    return LatticeVector(M, (class_matrix(q) @ np.asarray(v.coords, dtype=np.int64)).tolist())


def phi_inverse_matrix(q: Quiver, k: int, sign: int, space: str) -> np.ndarray:
    """Matrix of one step of phi inverse, columns are images of basis vectors.

    ``q`` is the quiver before mutation at ``k``; the result maps coordinates
    with respect to ``mu_k q`` to coordinates with respect to ``q``.
    """
    if not 1 <= k <= q.n:
        raise InvalidVertex(f"vertex {k} outside 1..{q.n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = q.n
    a = q.as_array()
    kk = k - 1
    m = np.eye(n, dtype=np.int64)
    if space == M:
        m[:, kk] = a[kk, :] if sign > 0 else a[:, kk]
        m[kk, kk] = -1
    elif space == L:
        m[kk, :] = a[kk, :] if sign > 0 else a[:, kk]
        m[kk, kk] = -1
    else:
        raise SpaceMismatch(f"unknown space {space!r}")
    return m


def phi_inverse_step(x: LatticeVector, k: int, sign: int, q: Quiver) -> LatticeVector:
    """Apply one step of phi inverse at ``k`` with the given sign.

    On ``M``: ``w_k -> -w_k + sum_j Q(k,j) w_j`` (sign ``+``) or
    ``sum_j Q(j,k) w_j`` (sign ``-``); other basis vectors are fixed.
    On ``L``: ``v_i -> v_i + Q(k,i) v_k`` (sign ``+``) or ``Q(i,k)``
    (sign ``-``) for ``i != k``, and ``v_k -> -v_k``.
    Counts are those of ``q``, the quiver the step mutates.
    """
    if x.n != q.n:
        raise SpaceMismatch(f"quiver rank {q.n} vs vector rank {x.n}")
    m = phi_inverse_matrix(q, k, sign, x.space)
    return LatticeVector(x.space, (m @ np.asarray(x.coords, dtype=np.int64)).tolist())


def compose_phi_inverse(qs: Sequence[Quiver], kseq: Sequence[int], signs: Sequence[int],
                        space: str) -> np.ndarray:
    """Matrix of the composite phi inverse along ``kseq``.

    ``qs[r]`` is the quiver before step ``r``. The composite sends
    coordinates in the final lattice to coordinates in the initial one.
    """
    n = qs[0].n
    total = np.eye(n, dtype=np.int64)
    for q, k, s in zip(qs, kseq, signs):
        total = total @ phi_inverse_matrix(q, k, s, space)
    return total
