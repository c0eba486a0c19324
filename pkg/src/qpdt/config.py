"""Run-time configuration shared by the command-line front end and the suites."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field, replace

from .errors import InvariantViolation

__all__ = ["Config", "threads_from_env"]


@dataclass(frozen=True)
class Config:
    """Caps and truncation settings.

    Attributes
    ----------
    N : int
        Truncation order of torus series.
    primes : tuple of int
        Field sizes used for point counts, strictly increasing.
    max_dim : int
        Cap on the total dimension of enumerated representations.
    max_depth : int
        Cap on mutation-sequence length.
    max_reduction : int
        Cap on substitutions while reducing a potential.
    max_terms : int
        Term budget for Laurent polynomials in corpus sweeps.
    """

    N: int = 6
    primes: tuple[int, ...] = field(default=(2, 3, 5))
    max_dim: int = 4
    max_depth: int = 10
    max_reduction: int = 64
    max_terms: int = 20000

    def __post_init__(self):
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        for name in ("N", "max_dim", "max_depth", "max_reduction", "max_terms"):
            if int(getattr(self, name)) <= 0:
                raise InvariantViolation(f"{name} must be positive, got {getattr(self, name)}")
        if not self.primes:
            raise InvariantViolation("at least one prime is required")
        if any(p <= 1 for p in self.primes):
            raise InvariantViolation(f"primes must exceed 1, got {list(self.primes)}")
        if any(a >= b for a, b in zip(self.primes, self.primes[1:])):
            raise InvariantViolation(f"primes must be strictly increasing, got {list(self.primes)}")
        for p in self.primes:
            if any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise InvariantViolation(f"{p} is not prime")

    def updated(self, **changes) -> "Config":
        """Copy with the non-``None`` entries of ``changes`` applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_json(self) -> dict:
        out = asdict(self)
        out["primes"] = list(self.primes)
        return out


def threads_from_env(default: int = 1) -> int:
    """Parallelism cap from ``QDT_THREADS`` (at least 1)."""
    raw = os.environ.get("QDT_THREADS")
    if raw is None or raw.strip() == "":
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvariantViolation(f"QDT_THREADS must be an integer, got {raw!r}") from None
