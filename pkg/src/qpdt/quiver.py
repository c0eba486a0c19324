"""Quivers stored as arrow-count matrices, quiver mutation and principal framing."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidVertex, InvariantViolation

__all__ = [
    "Quiver",
    "mutate_quiver",
    "principal_framing",
    "matrix_mutation",
]


class Quiver:
    """A finite quiver without loops and oriented 2-cycles.

    Parameters
    ----------
    arrows : sequence of sequences of int
        Square matrix whose entry ``(i, j)`` (0-based storage) is the number
        of arrows from vertex ``i+1`` to vertex ``j+1``.

    Notes
    -----
    Vertices are 1-based in every public accessor. The value is immutable
    and hashable.
    """

    __slots__ = ("_arrows", "_n")

    def __init__(self, arrows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in arrows)
        n = len(rows)
        if n == 0:
            raise InvariantViolation("a quiver needs at least one vertex")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InvariantViolation(f"row {i + 1} has length {len(row)}, expected {n}")
            for j, c in enumerate(row):
                if c < 0:
                    raise InvariantViolation(f"negative arrow count at ({i + 1},{j + 1})")
            if row[i] != 0:
                raise InvariantViolation(f"loop at vertex {i + 1}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] and rows[j][i]:
                    raise InvariantViolation(f"oriented 2-cycle between {i + 1} and {j + 1}")
        self._arrows = rows
        self._n = n

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Quiver":
        """Build a quiver from 1-based ``(source, target)`` pairs, one per arrow."""
        m = [[0] * n for _ in range(n)]
        for s, t in edges:
            if not (1 <= s <= n and 1 <= t <= n):
                raise InvalidVertex(f"arrow {s}->{t} outside 1..{n}")
            m[s - 1][t - 1] += 1
        return cls(m)

    @classmethod
    def from_exchange_matrix(cls, b: Sequence[Sequence[int]]) -> "Quiver":
        """Inverse of :meth:`exchange_matrix`."""
        n = len(b)
        return cls([[max(-int(b[i][j]), 0) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def arrows(self) -> tuple[tuple[int, ...], ...]:
        return self._arrows

    def Q(self, i: int, j: int) -> int:
        """Number of arrows ``i -> j`` (1-based)."""
        self._check(i)
        self._check(j)
        return self._arrows[i - 1][j - 1]

    def barQ(self, i: int, j: int) -> int:
        """Antisymmetric count ``Q(j,i) - Q(i,j)``."""
        return self.Q(j, i) - self.Q(i, j)

    def exchange_matrix(self) -> np.ndarray:
        """Matrix of ``barQ`` values, 0-based."""
        a = np.array(self._arrows, dtype=np.int64)
        return a.T - a

    def as_array(self) -> np.ndarray:
        return np.array(self._arrows, dtype=np.int64)

    def vertices(self) -> range:
        return range(1, self._n + 1)

    def num_arrows(self) -> int:
        return sum(map(sum, self._arrows))

    def is_acyclic(self) -> bool:
        indeg = [sum(self._arrows[i][j] > 0 for i in range(self._n)) for j in range(self._n)]
        stack = [j for j in range(self._n) if indeg[j] == 0]
        seen = 0
        while stack:
            i = stack.pop()
            seen += 1
            for j in range(self._n):
                if self._arrows[i][j]:
                    indeg[j] -= 1
                    if indeg[j] == 0:
                        stack.append(j)
        return seen == self._n

    def permuted(self, perm: Sequence[int]) -> "Quiver":
        """Relabel vertex ``i`` as ``perm[i-1]`` (1-based images)."""
        n = self._n
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                m[perm[i] - 1][perm[j] - 1] = self._arrows[i][j]
        return Quiver(m)

    def to_json(self) -> dict:
        return {"n": self._n, "arrows": [list(r) for r in self._arrows]}

    @classmethod
    def from_json(cls, obj: dict) -> "Quiver":
        q = cls(obj["arrows"])
        if "n" in obj and int(obj["n"]) != q.n:
            raise InvariantViolation(f"n={obj['n']} does not match matrix size {q.n}")
        return q

    def _check(self, k: int) -> None:
        if not (isinstance(k, (int, np.integer)) and 1 <= k <= self._n):
            raise InvalidVertex(f"vertex {k!r} outside 1..{self._n}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Quiver) and self._arrows == other._arrows

    def __hash__(self) -> int:
        return hash(self._arrows)

    def __repr__(self) -> str:
        return f"Quiver({[list(r) for r in self._arrows]})"


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    """Mutate ``q`` at vertex ``k`` by the arrow-level rule.

    Each path ``u -> k -> v`` contributes a new arrow ``u -> v``, arrows at
    ``k`` are reversed, and 2-cycles are cancelled pairwise.
    """
    q._check(k)
    n = q.n
    kk = k - 1
    a = [list(r) for r in q.arrows]
    m = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            if u == kk or v == kk:
                m[u][v] = a[v][u]
            else:
                m[u][v] = a[u][v] + a[u][kk] * a[kk][v]
    for u in range(n):
        for v in range(u + 1, n):
            c = min(m[u][v], m[v][u])
            m[u][v] -= c
            m[v][u] -= c
    return Quiver(m)


def matrix_mutation(b: np.ndarray, k: int) -> np.ndarray:
    """Exchange-matrix mutation at 1-based ``k``; rows may exceed columns."""
    b = np.asarray(b, dtype=np.int64)
    kk = k - 1
    col = b[:, kk]
    row = b[kk, :]
    out = b + (np.abs(col)[:, None] * row[None, :] + col[:, None] * np.abs(row)[None, :]) // 2
    out[kk, :] = -b[kk, :]
    out[:, kk] = -b[:, kk]
    return out


def principal_framing(q: Quiver) -> Quiver:
    """Add a frozen vertex ``n+i`` with a single arrow ``n+i -> i`` for each ``i``."""
    n = q.n
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            m[i][j] = q.arrows[i][j]
        m[n + i][i] = 1
    return Quiver(m)
