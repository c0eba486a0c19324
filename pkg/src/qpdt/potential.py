"""Quivers with potential: cyclic words, cyclic derivatives, mutation, reduction.

Paths are tuples of arrow labels read left to right, so ``(a, b)`` means
``a`` followed by ``b`` and requires ``t(a) == s(b)``.
"""

from __future__ import annotations

from fractions import Fraction
from string import ascii_lowercase
from typing import Iterable, Mapping, Sequence

from .errors import InvalidVertex, InvariantViolation, NotMutatable, ReductionDiverged, UnknownArrow
from .quiver import Quiver, mutate_quiver

__all__ = [
    "canonical_rotation",
    "Potential",
    "NCPolynomial",
    "QP",
    "cyclic_derivative",
    "premutate",
    "reduce",
    "mutate_qp",
    "jacobi_relations",
    "default_labels",
]

Word = tuple[str, ...]


def canonical_rotation(word: Sequence[str]) -> Word:
    """Lexicographically smallest rotation of ``word``."""
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def _clean(terms: Mapping) -> dict:
    return {k: Fraction(v) for k, v in terms.items() if v != 0}


class NCPolynomial:
    """Finite linear combination of paths with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        self.terms = _clean(terms or {})

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return NCPolynomial(out)

    def scale(self, c) -> "NCPolynomial":
        return NCPolynomial({p: c * v for p, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(p) for p in self.terms), default=0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, NCPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"NCPolynomial({_fmt(self.terms)})"


class Potential:
    """Finite linear combination of cycles up to rotation."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[str], object] | None = None):
        out: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            key = canonical_rotation(w)
            out[key] = out.get(key, Fraction(0)) + Fraction(c)
        self.terms = _clean(out)

    @classmethod
    def zero(cls) -> "Potential":
        return cls()

    def __add__(self, other: "Potential") -> "Potential":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Potential(out)

    def is_zero(self) -> bool:
        return not self.terms

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def arrows_used(self) -> set[str]:
        return {a for w in self.terms for a in w}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Potential) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"Potential({_fmt(self.terms)})"

    def to_json(self) -> list[dict]:
        return [{"cycle": list(w), "coeff": str(c)} for w, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, items: Iterable[dict]) -> "Potential":
        return cls({tuple(it["cycle"]): Fraction(str(it.get("coeff", "1"))) for it in items})


def _fmt(terms: Mapping[Word, Fraction]) -> str:
    if not terms:
        return "0"
    return " + ".join(f"{c}*{'.'.join(w)}" for w, c in sorted(terms.items()))


def default_labels(q: Quiver) -> list[tuple[str, int, int]]:
    """Arrow labels ``a, b, c, ...`` assigned in row-major order of the count matrix."""
    out = []
    idx = 0
    for i in q.vertices():
        for j in q.vertices():
            for _ in range(q.Q(i, j)):
                name = ascii_lowercase[idx] if idx < 26 else f"x{idx}"
                out.append((name, i, j))
                idx += 1
    return out


class QP:
    """Labelled quiver with a finite potential.

    ``arrows`` is a sequence of ``(label, source, target)`` with 1-based
    vertices. The arrow set may contain 2-cycles (premutations produce them);
    :meth:`quiver` validates and converts to a :class:`Quiver`.
    """

    __slots__ = ("n", "arrows", "potential", "_st")

    def __init__(self, n: int, arrows: Iterable[tuple[str, int, int]],
                 potential: Potential | None = None):
        self.n = int(n)
        self.arrows = tuple((str(a), int(s), int(t)) for a, s, t in arrows)
        self.potential = potential or Potential()
        st = {}
        for a, s, t in self.arrows:
            if a in st:
                raise InvariantViolation(f"duplicate arrow label {a!r}")
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise InvariantViolation(f"arrow {a!r} has endpoint outside 1..{self.n}")
            if s == t:
                raise InvariantViolation(f"arrow {a!r} is a loop at {s}")
            st[a] = (s, t)
        self._st = st
        for w in self.potential.terms:
            for x in w:
                if x not in st:
                    raise InvariantViolation(f"cycle {'.'.join(w)} uses unknown arrow {x!r}")
            for x, y in zip(w, w[1:] + w[:1]):
                if st[x][1] != st[y][0]:
                    raise InvariantViolation(f"cycle {'.'.join(w)} is not composable at {x!r}{y!r}")

    @classmethod
    def from_quiver(cls, q: Quiver, potential: Potential | None = None,
                    labels: Sequence[tuple[str, int, int]] | None = None) -> "QP":
        return cls(q.n, labels if labels is not None else default_labels(q), potential)

    def source(self, a: str) -> int:
        return self.endpoints(a)[0]

    def target(self, a: str) -> int:
        return self.endpoints(a)[1]

    def endpoints(self, a: str) -> tuple[int, int]:
        try:
            return self._st[a]
        except KeyError:
            raise UnknownArrow(a) from None

    def labels(self) -> list[str]:
        return [a for a, _, _ in self.arrows]

    def count_matrix(self) -> list[list[int]]:
        m = [[0] * self.n for _ in range(self.n)]
        for _, s, t in self.arrows:
            m[s - 1][t - 1] += 1
        return m

    def quiver(self) -> Quiver:
        return Quiver(self.count_matrix())

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, QP) and self.n == other.n
                and sorted(self.arrows) == sorted(other.arrows)
                and self.potential == other.potential)

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.arrows)), self.potential))

    def __repr__(self) -> str:
        arr = ", ".join(f"{a}:{s}->{t}" for a, s, t in self.arrows)
        return f"QP(n={self.n}, arrows=[{arr}], W={_fmt(self.potential.terms)})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "arrows": self.count_matrix(),
            "labels": [{"name": a, "source": s, "target": t} for a, s, t in self.arrows],
            "potential": self.potential.to_json(),
        }


def cyclic_derivative(w: Potential, a: str, qp: QP | None = None) -> NCPolynomial:
    """Cyclic derivative of ``w`` with respect to arrow ``a``."""
    if qp is not None:
        qp.endpoints(a)
    out: dict[Word, Fraction] = {}
    for word, c in w.terms.items():
        for i, x in enumerate(word):
            if x == a:
                p = word[i + 1:] + word[:i]
                out[p] = out.get(p, 0) + c
    return NCPolynomial(out)


def jacobi_relations(qp: QP) -> list[tuple[str, NCPolynomial]]:
    """One relation per arrow, in arrow order."""
    return [(a, cyclic_derivative(qp.potential, a)) for a in qp.labels()]


def _star(a: str) -> str:
    return a + "*"


def premutate(qp: QP, k: int) -> QP:
    """Premutation at ``k``: composite arrows, reversed arrows at ``k``, ``[W] + Delta``."""
    if not 1 <= k <= qp.n:
        raise InvalidVertex(f"vertex {k} outside 1..{qp.n}")
    into = [(a, s) for a, s, t in qp.arrows if t == k]
    out_of = [(b, t) for b, s, t in qp.arrows if s == k]
    arrows: list[tuple[str, int, int]] = []
    for a, s, t in qp.arrows:
        if s != k and t != k:
            arrows.append((a, s, t))
    composite = {}
    for a, u in into:
        for b, v in out_of:
            name = f"[{b}.{a}]"
            composite[(a, b)] = name
            arrows.append((name, u, v))
    for a, s, t in qp.arrows:
        if t == k or s == k:
            arrows.append((_star(a), t, s))

    terms: dict[Word, Fraction] = {}
    for word, c in qp.potential.terms.items():
        new = _substitute_composites(word, composite)
        terms[new] = terms.get(new, 0) + c
    for (a, b), name in composite.items():
        key = (name, _star(b), _star(a))
        terms[key] = terms.get(key, 0) + 1
    return QP(qp.n, arrows, Potential(terms))


def _substitute_composites(word: Word, composite: Mapping[tuple[str, str], str]) -> Word:
    """Replace each cyclically consecutive pair passing through ``k``."""
    n = len(word)
    start = 0
    # rotate so that the word does not begin in the middle of a pair
    for i in range(n):
        if (word[i - 1], word[i]) not in composite:
            start = i
            break
    w = word[start:] + word[:start]
    out = []
    i = 0
    while i < n:
        if i + 1 < n and (w[i], w[i + 1]) in composite:
            out.append(composite[(w[i], w[i + 1])])
            i += 2
        else:
            out.append(w[i])
            i += 1
    return tuple(out)


def _substitute_arrow(w: Potential, b: str, repl: NCPolynomial) -> Potential:
    """Substitute ``b -> repl`` in every cycle of ``w``."""
    out: dict[Word, Fraction] = {}
    for word, c in w.terms.items():
        partial: dict[Word, Fraction] = {(): c}
        for x in word:
            nxt: dict[Word, Fraction] = {}
            if x == b:
                for p, pc in partial.items():
                    for r, rc in repl.terms.items():
                        key = p + r
                        nxt[key] = nxt.get(key, 0) + pc * rc
            else:
                for p, pc in partial.items():
                    key = p + (x,)
                    nxt[key] = nxt.get(key, 0) + pc
            partial = nxt
        for p, pc in partial.items():
            if p:
                key = canonical_rotation(p)
                out[key] = out.get(key, 0) + pc
    return Potential(out)


def reduce(qp: QP, max_iter: int = 64) -> QP:
    """Split off the trivial part of ``qp`` by eliminating 2-cycles.

    Repeatedly pick the length-2 term ``c*ab`` with the smallest canonical
    word. Writing ``W = c*ab + W'``, substitute ``b -> b - c^-1 d_a W'``
    while ``W'`` involves ``a`` (otherwise ``a -> a - c^-1 d_b W'`` while it
    involves ``b``). Once ``W'`` is free of both, ``a`` and ``b`` are deleted
    together with the term ``c*ab``.

    Raises
    ------
    ReductionDiverged
        If more than ``max_iter`` substitutions are needed, or the potential
        degree exceeds twice the input's longest cycle.
    """
    w = qp.potential
    arrows = list(qp.arrows)
    deg_cap = 2 * max(w.max_length(), 2)
    steps = 0
    while True:
        quad = sorted(word for word in w.terms if len(word) == 2)
        if not quad:
            break
        a, b = quad[0]
        c = w.terms[(a, b)]
        while True:
            rest = Potential({x: v for x, v in w.terms.items() if x != (a, b)})
            used = rest.arrows_used()
            if a in used:
                target, var = b, a
            elif b in used:
                target, var = a, b
            else:
                break
            steps += 1
            if steps > max_iter:
                raise ReductionDiverged(f"more than {max_iter} substitutions")
            d = cyclic_derivative(rest, var).scale(-1 / c)
            repl = NCPolynomial({(target,): Fraction(1)}) + d
            w = _substitute_arrow(w, target, repl)
            if w.max_length() > deg_cap:
                raise ReductionDiverged(f"potential degree exceeded {deg_cap}")
            if w.terms.get((a, b), 0) != c:
                raise ReductionDiverged(f"lost the quadratic term {a}.{b} during elimination")
        w = Potential({x: v for x, v in w.terms.items() if x != (a, b)})
        arrows = [t for t in arrows if t[0] not in (a, b)]
    return QP(qp.n, arrows, w)


def mutate_qp(qp: QP, k: int, max_iter: int = 64) -> QP:
    """QP mutation: reduce the premutation and check the underlying quiver."""
    q = qp.quiver()
    out = reduce(premutate(qp, k), max_iter=max_iter)
    expected = mutate_quiver(q, k)
    if out.count_matrix() != [list(r) for r in expected.arrows]:
        raise NotMutatable(
            f"reduced quiver {out.count_matrix()} differs from mutated quiver "
            f"{[list(r) for r in expected.arrows]}"
        )
    return out
