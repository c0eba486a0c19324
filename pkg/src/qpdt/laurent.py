"""Exact multivariate Laurent polynomials with integer coefficients.

A Laurent polynomial is stored as ``x^shift * P`` where ``P`` is an
ordinary polynomial (python-flint ``fmpz_mpoly``) not divisible by any
variable. Arithmetic on ``P`` is delegated to FLINT.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import flint

from .errors import LaurentViolation

__all__ = ["Laurent", "ring"]


@lru_cache(maxsize=None)
def ring(prefix: str, n: int):
    """Polynomial context with generators ``prefix1 .. prefixn``."""
    return flint.fmpz_mpoly_ctx.get(tuple(f"{prefix}{i + 1}" for i in range(n)), "lex")


def _min_exps(p, n: int) -> tuple[int, ...]:
    if p.is_zero():
        return (0,) * n
    mins = None
    for m in p.monoms():
        mins = list(m) if mins is None else [min(a, b) for a, b in zip(mins, m)]
    return tuple(mins)


class Laurent:
    """Laurent polynomial in ``n`` variables named ``prefix1 .. prefixn``."""

    __slots__ = ("prefix", "n", "poly", "shift")

    def __init__(self, prefix: str, n: int, poly=None, shift: Sequence[int] | None = None):
        self.prefix = prefix
        self.n = n
        ctx = ring(prefix, n)
        p = ctx.from_dict({}) if poly is None else poly
        s = tuple(shift) if shift is not None else (0,) * n
        if p.is_zero():
            s = (0,) * n
        else:
            mins = _min_exps(p, n)
            if any(mins):
                p = ctx.from_dict({tuple(a - b for a, b in zip(m, mins)): c
                                   for m, c in zip(p.monoms(), p.coeffs())})
                s = tuple(a + b for a, b in zip(s, mins))
        self.poly = p
        self.shift = s

    # construction ---------------------------------------------------------
    @classmethod
    def from_dict(cls, prefix: str, n: int, terms: Mapping[Sequence[int], int]) -> "Laurent":
        terms = {tuple(e): int(c) for e, c in terms.items() if c}
        if not terms:
            return cls(prefix, n)
        mins = tuple(min(e[i] for e in terms) for i in range(n))
        ctx = ring(prefix, n)
        p = ctx.from_dict({tuple(a - b for a, b in zip(e, mins)): c for e, c in terms.items()})
        return cls(prefix, n, p, mins)

    @classmethod
    def monomial(cls, prefix: str, n: int, exps: Sequence[int], coeff: int = 1) -> "Laurent":
        return cls.from_dict(prefix, n, {tuple(exps): coeff})

    @classmethod
    def const(cls, prefix: str, n: int, c: int) -> "Laurent":
        return cls.monomial(prefix, n, (0,) * n, c)

    @classmethod
    def gen(cls, prefix: str, n: int, i: int) -> "Laurent":
        """Variable ``prefix{i}`` (1-based)."""
        return cls.monomial(prefix, n, [int(j == i - 1) for j in range(n)])

    # inspection -----------------------------------------------------------
    def to_dict(self) -> dict[tuple[int, ...], int]:
        s = self.shift
        return {tuple(a + b for a, b in zip(m, s)): int(c)
                for m, c in zip(self.poly.monoms(), self.poly.coeffs())}

    def terms(self) -> Iterable[tuple[tuple[int, ...], int]]:
        s = self.shift
        for m, c in zip(self.poly.monoms(), self.poly.coeffs()):
            yield tuple(a + b for a, b in zip(m, s)), int(c)

    def __len__(self) -> int:
        return len(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_polynomial(self) -> bool:
        return all(e >= 0 for e in self.shift)

    def is_monomial(self) -> bool:
        return len(self.poly) == 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.to_dict().get(tuple(exps), 0)

    # arithmetic -----------------------------------------------------------
    def _like(self, other: "Laurent") -> None:
        if self.prefix != other.prefix or self.n != other.n:
            raise TypeError(f"ring mismatch {self.prefix}{self.n} vs {other.prefix}{other.n}")

    def _lift(self, shift: Sequence[int]):
        """Polynomial ``x^(self.shift - shift) P`` for ``shift <= self.shift``."""
        d = tuple(a - b for a, b in zip(self.shift, shift))
        if not any(d):
            return self.poly
        ctx = ring(self.prefix, self.n)
        return self.poly * ctx.from_dict({d: 1})

    def __add__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(self.prefix, self.n, other)
        self._like(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        return Laurent(self.prefix, self.n, self._lift(s) + other._lift(s), s)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent(self.prefix, self.n, -self.poly, self.shift)

    def __sub__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(self.prefix, self.n, other)
        return self + (-other)

    def __rsub__(self, other: int) -> "Laurent":
        return Laurent.const(self.prefix, self.n, other) - self

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            return Laurent(self.prefix, self.n, self.poly * other, self.shift)
        self._like(other)
        return Laurent(self.prefix, self.n, self.poly * other.poly,
                       tuple(a + b for a, b in zip(self.shift, other.shift)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Laurent":
        if e >= 0:
            return Laurent(self.prefix, self.n, self.poly ** e, tuple(e * a for a in self.shift))
        if not self.is_monomial():
            raise LaurentViolation("negative power of a non-monomial")
        ((m, c),) = self.terms()
        if abs(c) != 1:
            raise LaurentViolation("negative power of a non-unit monomial")
        return Laurent.monomial(self.prefix, self.n, [-a * (-e) for a in m], c ** (-e))

    def divexact(self, other: "Laurent") -> "Laurent":
        """Exact quotient; raises :class:`LaurentViolation` if it is not Laurent."""
        self._like(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        try:
            p = self.poly / other.poly
        except Exception as exc:  # flint raises DomainError on inexact division
            raise LaurentViolation(f"inexact division: {exc}") from None
        return Laurent(self.prefix, self.n, p, tuple(a - b for a, b in zip(self.shift, other.shift)))

    __truediv__ = divexact

    # maps -----------------------------------------------------------------
    def monomial_map(self, prefix: str, n: int, images: Sequence[Sequence[int]]) -> "Laurent":
        """Substitute ``x_j -> z^{images[j]}`` (monomials in the target ring)."""
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms():
            t = [0] * n
            for j, a in enumerate(e):
                if a:
                    for r, b in enumerate(images[j]):
                        t[r] += a * b
            t = tuple(t)
            out[t] = out.get(t, 0) + c
        return Laurent.from_dict(prefix, n, out)

    def substitute(self, images: Sequence["Laurent"]) -> "Laurent":
        """Substitute each variable by a Laurent polynomial (monomials for negative powers)."""
        target = images[0]
        acc = Laurent(target.prefix, target.n)
        cache: dict[tuple[int, int], Laurent] = {}

        def power(j: int, a: int) -> Laurent:
            key = (j, a)
            if key not in cache:
                cache[key] = images[j] ** a
            return cache[key]

        for e, c in self.terms():
            term = Laurent.const(target.prefix, target.n, c)
            for j, a in enumerate(e):
                if a:
                    term = term * power(j, a)
            acc = acc + term
        return acc

    # comparison and printing ----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Laurent.const(self.prefix, self.n, other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return (self.prefix == other.prefix and self.n == other.n
                and self.shift == other.shift and self.poly == other.poly)

    def __hash__(self) -> int:
        return hash((self.prefix, self.n, self.shift, str(self.poly)))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms(), key=lambda t: (sum(t[0]), tuple(-a for a in t[0])))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{self.prefix}{j + 1}" + ("" if a == 1 else f"^{a}")
                for j, a in enumerate(e) if a
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Laurent({str(self)!r})"
