"""End-to-end checks of the Caldero-Chapoton, transformation and factorization identities.

Every check returns a :class:`VerificationReport`. The corpus runners at the
bottom sweep families of quivers and mutation sequences and collect
violations of the cluster-algebra properties.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .cluster import (
    DEFAULT_MAX_TERMS,
    ClusterState,
    ComputationBudgetExceeded,
    cluster_state,
    fz,
    g_recursion_expected,
    g_vector,
    max_monomial,
    mutate_seed,
    reduced_word,
)
from .errors import QPDTError, SignIncoherent
from .lattice import class_matrix, chi_matrix, phi_inverse_matrix
from .laurent import Laurent
from .potential import QP, mutate_qp
from .quiver import Quiver, mutate_quiver
from .representations import (
    DEFAULT_MAX_DIM,
    ModuleRep,
    count_hilb_points,
    grass_series,
    hilb_series,
    projective_rep,
    simple_rep,
    zero_rep,
)
from .torus import (
    NEGATIVE,
    POSITIVE,
    TorusAutomorphism,
    TorusSeries,
    ad_minus_automorphism,
    ad_plus_automorphism,
    compose,
    dt_automorphism,
    inverse,
    mul,
    pi_project,
    power,
    rebase_automorphism,
    rebase_series,
)
from .torus import _integer_inverse, unit_family_automorphism

__all__ = [
    "VerificationReport",
    "verify_cc",
    "verify_transformation",
    "verify_factorization",
    "a2_cc_catalog",
    "ad_minus_original",
    "elementary_automorphism",
    "rank_quivers",
    "SuiteResult",
    "fz_property_suite",
    "consistency_suite",
]


@dataclass
class VerificationReport:
    """Outcome of one identity check; a failure always carries a witness."""

    identity: str
    params: dict
    status: str
    witness: dict | None = None

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"status must be 'pass' or 'fail', got {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"identity": self.identity, "params": self.params, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def to_text(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.identity}({params}): {self.status}"
        if self.witness:
            line += " " + ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return line


def _report(identity: str, params: dict, diff: dict | None) -> VerificationReport:
    return VerificationReport(identity, params, "pass" if diff is None else "fail", diff)


def _error_witness(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


def _qp_params(qp: QP) -> list[list[int]]:
    return [list(r) for r in qp.count_matrix()]


# --- building blocks --------------------------------------------------------

def _f_series(f: Laurent, N: int) -> TorusSeries:
    """``F(y^-1)`` as a pure ``y``-series in the negative cone."""
    return TorusSeries.from_y(f.n, N, {tuple(-e for e in exps): c for exps, c in f.terms()},
                              cone=NEGATIVE)


def _f_degree(f: Laurent) -> int:
    return max(sum(e) for e, _ in f.terms())


def ad_minus_original(state: ClusterState, N: int) -> TorusAutomorphism:
    """``Ad_{T_k[-1]}`` written on the generators of the initial torus.

    On the mutated generators it sends ``x^(g_i)`` to ``x^(g_i) F_i(y^-1)``.
    The initial generator ``x_l`` is ``prod_i (x^(g_i))^(G^-1)[i,l]``, which
    gives its unit; the ``y``-units follow from the exchange matrix.
    """
    n = state.base.n
    ginv = _integer_inverse(state.G)
    fs = [_f_series(state.f_polynomial(i), N) for i in range(1, n + 1)]
    cache: dict = {}
    us = []
    for l in range(n):
        acc = TorusSeries.one(n, N, cone=NEGATIVE)
        for i in range(n):
            e = int(ginv[i, l])
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = power(fs[i], e)
                acc = mul(acc, cache[(i, e)])
        us.append(acc)
    return unit_family_automorphism(us, state.base.exchange_matrix())


def elementary_automorphism(q: Quiver, gamma: Sequence[int], N: int) -> TorusAutomorphism:
    """Automorphism attached to one rigid simple of class ``gamma >= 0``.

    ``x^w -> x^w (1 + y^-gamma)^(-<w, gamma>)`` with ``y``-units from the
    exchange matrix of ``q``.
    """
    n = q.n
    gamma = [int(x) for x in gamma]
    if any(x < 0 for x in gamma):
        raise ValueError(f"class {gamma} is not positive")
    base = TorusSeries.from_y(n, N, {(0,) * n: 1, tuple(-x for x in gamma): 1}, cone=NEGATIVE)
    us = [power(base, -x) for x in gamma]
    return unit_family_automorphism(us, q.exchange_matrix())


# --- Caldero-Chapoton --------------------------------------------------------

def verify_cc(qp: QP, kseq: Sequence[int], i: int, r: ModuleRep,
              primes: Sequence[int] = (2, 3, 5), max_dim: int = DEFAULT_MAX_DIM) -> VerificationReport:
    """Compare ``pi(x^g * sum_v e(Grass(r, v)) y^-v)`` with the cluster variable."""
    q = qp.quiver()
    n = q.n
    kseq = tuple(kseq)
    params = {"quiver": _qp_params(qp), "kseq": list(kseq), "i": i, "module_dim": list(r.dim),
              "primes": list(primes), "sigma": "+"}
    N = max(1, sum(r.dim))
    g = g_vector(q, kseq, i).coords
    series = grass_series(r, N, primes, max_dim)
    xg = TorusSeries.monomial(n, N, g, (0,) * n, cone=NEGATIVE)
    projected = pi_project(mul(xg, series), class_matrix(q))
    coeffs = {}
    for (w, _), c in projected.terms.items():
        if c.denominator != 1:
            return _report("cc", params, {"generator": f"x_{i}", "w": [int(x) for x in w], "v": [],
                                          "expected": "integer", "got": str(c)})
        coeffs[w] = int(c)
    lhs = Laurent.from_dict("x", n, coeffs)
    rhs = fz(q, kseq, i)
    return _report("cc", params, _laurent_difference(lhs, rhs, f"x_{i}"))


def _laurent_difference(got: Laurent, expected: Laurent, name: str) -> dict | None:
    a, b = got.to_dict(), expected.to_dict()
    for e in sorted(set(a) | set(b)):
        if a.get(e, 0) != b.get(e, 0):
            return {"generator": name, "w": [int(x) for x in e], "v": [],
                    "expected": str(b.get(e, 0)), "got": str(a.get(e, 0))}
    return None


def a2_cc_catalog(qp: QP, q: int = 2) -> list[tuple[tuple[int, ...], int, ModuleRep]]:
    """The five cluster variables of ``1 -> 2`` with their modules ``0, s1, s2, P1``."""
    return [
        ((), 1, zero_rep(qp, q)),
        ((), 2, zero_rep(qp, q)),
        ((1,), 1, simple_rep(qp, 1, q)),
        ((2,), 2, simple_rep(qp, 2, q)),
        ((1, 2), 2, projective_rep(qp, 1, q)),
    ]


# --- transformation formula --------------------------------------------------

def _mutate_qp_along(qp: QP, kseq: Sequence[int]) -> QP:
    for k in kseq:
        qp = mutate_qp(qp, k)
    return qp


def verify_transformation(qp: QP, kseq: Sequence[int], N: int = 6, primes: Sequence[int] = (2, 3, 5),
                          max_dim: int = DEFAULT_MAX_DIM) -> VerificationReport:
    """``DT_{J_k} = Ad_{T_k}^-1 o DT_J o Ad_{T_k[-1]}`` to order ``N`` (sign ``+``).

    The left side uses point counts on the mutated QP. On the right,
    ``Ad_{T_k}^-1 o DT_J`` lives in the positive cone of the initial torus
    and is computed there to an order large enough to cover order ``N`` in
    the mutated coordinates, then rewritten on the generators
    ``x^(g_i), y^(c_i)``; any term leaving the positive cone of the new
    coordinates fails the check. ``Ad_{T_k[-1]}`` is built directly in the
    mutated coordinates from the F-polynomials.
    """
    kseq = tuple(kseq)
    params = {"quiver": _qp_params(qp), "kseq": list(kseq), "N": N, "primes": list(primes),
              "sigma": "+"}
    q = qp.quiver()
    n = q.n
    try:
        st = cluster_state(q, kseq)
        G, C, qk = st.G, st.C, st.quiver
        if not np.array_equal(q.exchange_matrix() @ C, G @ qk.exchange_matrix()):
            return _report("trans", params, {"error": "LatticeMismatch",
                                             "message": "K C differs from G K_k"})
        big = N * max(1, int(np.abs(C).sum(axis=0).max()))
        dt = dt_automorphism([hilb_series(qp, i, big, primes, max_dim) for i in q.vertices()], q)
        ad_t = ad_plus_automorphism(ad_minus_original(st, big))
        x = rebase_automorphism(compose(inverse(ad_t), dt), G, C, N)
        gs = []
        for i in q.vertices():
            f = st.f_polynomial(i)
            gs.append(rebase_series(_f_series(f, max(N, _f_degree(f))), C, N))
        rhs = compose(x, ad_minus_automorphism(gs, qk))
        qp_k = _mutate_qp_along(qp, kseq)
        lhs = dt_automorphism([hilb_series(qp_k, i, N, primes, max_dim) for i in qk.vertices()], qk)
    except QPDTError as exc:
        return _report("trans", params, _error_witness(exc))
    return _report("trans", params, rhs.first_difference(lhs))


# --- factorization -----------------------------------------------------------

def verify_factorization(qp: QP, kseq: Sequence[int], N: int = 6) -> VerificationReport:
    """Ordered product of single-step automorphisms against ``Ad_{T_k[-1]}``.

    Step ``r`` mutates at ``k`` with sign ``eps``. Its factor is the
    elementary automorphism of the simple of class ``eps * c_{(r-1),k}``,
    or its inverse when ``eps`` is negative. On the step-``r`` generators
    it sends ``x_{(r),k}`` to ``x_{(r),k} (1 + y_{(r-1),k}^-eps)`` and fixes
    the others. Both sides are compared on the initial torus.
    """
    kseq = tuple(kseq)
    params = {"quiver": _qp_params(qp), "kseq": list(kseq), "N": N, "sigma": "+"}
    q = qp.quiver()
    n = q.n
    try:
        target = ad_minus_original(cluster_state(q, kseq), N)
        acc = TorusAutomorphism.identity(n, N, cone=NEGATIVE)
        prev = ClusterState.initial(q)
        for k in kseq:
            nxt = prev.mutate(k)
            eps = nxt.signs[-1]
            gamma = eps * prev.C[:, k - 1]
            factor = elementary_automorphism(q, gamma, N)
            if eps < 0:
                factor = inverse(factor)
            acc = compose(acc, factor)
            prev = nxt
    except QPDTError as exc:
        return _report("factor", params, _error_witness(exc))
    return _report("factor", params, acc.first_difference(target))


# --- corpus suites -----------------------------------------------------------

def rank_quivers(n: int, max_mult: int = 2) -> list[Quiver]:
    """Acyclic quivers on ``n`` vertices with at most ``max_mult`` parallel arrows, up to relabelling."""
    pairs = list(itertools.combinations(range(n), 2))
    seen: set = set()
    out = []
    for choice in itertools.product(range(-max_mult, max_mult + 1), repeat=len(pairs)):
        m = [[0] * n for _ in range(n)]
        for (i, j), c in zip(pairs, choice):
            if c > 0:
                m[i][j] = c
            elif c < 0:
                m[j][i] = -c
        q = Quiver(m)
        if not q.is_acyclic():
            continue
        key = min(tuple(tuple(m[p[i]][p[j]] for j in range(n)) for i in range(n))
                  for p in itertools.permutations(range(n)))
        if key in seen:
            continue
        seen.add(key)
        out.append(Quiver([list(r) for r in key]))
    return out


@dataclass
class SuiteResult:
    """Counts of checks performed and the violations found."""

    checks: int = 0
    violations: list = field(default_factory=list)
    budget: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.budget

    def fail(self, kind: str, q: Quiver, kseq, detail) -> None:
        self.violations.append({"check": kind, "quiver": [list(r) for r in q.arrows],
                                "kseq": list(kseq), "detail": str(detail)})

    def summary(self) -> dict:
        return {"checks": self.checks, "violations": len(self.violations),
                "over_budget": len(self.budget), "first": (self.violations + self.budget)[:5]}


def _tropical_tree(q: Quiver, depth: int) -> dict:
    """Tropical states (no framed seed) for every sequence of length ``<= depth``."""
    root = ClusterState(q, (), q, None, np.eye(q.n, dtype=np.int64), np.eye(q.n, dtype=np.int64),
                        (), ())
    tree = {(): root}
    frontier = [root]
    for _ in range(depth):
        nxt = []
        for st in frontier:
            for k in q.vertices():
                try:
                    child = st.mutate(k)
                except SignIncoherent as exc:
                    tree[st.kseq + (k,)] = exc
                    continue
                tree[child.kseq] = child
                nxt.append(child)
        frontier = nxt
    return tree


def _framed_tree(q: Quiver, depth: int, max_terms: int | None) -> dict:
    """Framed seeds for reduced words of length ``<= depth`` (others coincide by involution)."""
    base = ClusterState.initial(q).framed
    tree = {(): base}
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            seed = tree[w]
            for k in q.vertices():
                if w and w[-1] == k:
                    continue
                child = w + (k,)
                if not isinstance(seed, Exception):
                    try:
                        tree[child] = mutate_seed(seed, k, max_terms)
                    except ComputationBudgetExceeded as exc:
                        tree[child] = exc
                else:
                    tree[child] = seed
                nxt.append(child)
        frontier = nxt
    return tree


def _sign_coherent(v) -> bool:
    return all(x >= 0 for x in v) or all(x <= 0 for x in v)


def _framed_readouts(q: Quiver, seed) -> tuple[list[Laurent], list[tuple[int, ...]]]:
    n = q.n
    fs, gs = [], []
    images = [[0] * n for _ in range(n)] + [[int(r == j) for r in range(n)] for j in range(n)]
    for x in seed.vars[:n]:
        fs.append(x.monomial_map("y", n, images))
        hits = [(e, c) for e, c in x.terms() if not any(e[n:])]
        gs.append(tuple(hits[0][0][:n]) if len(hits) == 1 and hits[0][1] == 1 else None)
    return fs, gs


def fz_property_suite(quivers: Iterable[Quiver], depth: int = 6,
                      max_terms: int | None = DEFAULT_MAX_TERMS) -> SuiteResult:
    """F-polynomial, sign-coherence, duality and recursion properties on every sequence."""
    res = SuiteResult()
    for q in quivers:
        n = q.n
        tree = _tropical_tree(q, depth)
        tails = {k: _tropical_tree(mutate_quiver(q, k), depth - 1) for k in q.vertices()}
        framed = _framed_tree(q, depth, max_terms)
        f_cache: dict = {}
        for kseq, st in tree.items():
            if isinstance(st, Exception):
                res.checks += 1
                res.fail("c_sign_coherence", q, kseq, st)
                continue
            G, C = st.G, st.C
            tg = _integer_inverse(C)
            for i in range(n):
                res.checks += 2
                if not _sign_coherent(C[:, i]):
                    res.fail("c_sign_coherence", q, kseq, C[:, i])
                if not _sign_coherent(tg[:, i]):
                    res.fail("tg_sign_coherence", q, kseq, tg[:, i])
            res.checks += 2
            if abs(round(np.linalg.det(G))) != 1:
                res.fail("g_determinant", q, kseq, G)
            if not np.array_equal(G.T @ C, np.eye(n, dtype=np.int64)):
                res.fail("duality", q, kseq, G.T @ C)
            if kseq:
                tail = tails[kseq[0]].get(kseq[1:])
                if isinstance(tail, Exception):
                    res.fail("g_recursion", q, kseq, tail)
                else:
                    tt = _integer_inverse(tail.C)
                    try:
                        expected = g_recursion_expected(q, tg, kseq[0], kseq)
                    except SignIncoherent as exc:
                        expected = exc
                    for i in range(n):
                        res.checks += 1
                        if isinstance(expected, Exception) or not np.array_equal(tt[:, i], expected[:, i]):
                            res.fail("g_recursion", q, kseq, (i + 1, tt[:, i], expected))
            word = reduced_word(kseq)
            seed = framed[word]
            if isinstance(seed, Exception):
                if word not in f_cache:
                    f_cache[word] = None
                    res.budget.append({"check": "f_polynomial", "quiver": [list(r) for r in q.arrows],
                                       "kseq": list(word), "detail": str(seed)})
                continue
            if word not in f_cache:
                f_cache[word] = _framed_readouts(q, seed)
            fs, _ = f_cache[word]
            for i, f in enumerate(fs):
                res.checks += 2
                if not f.is_polynomial() or f.coefficient((0,) * n) != 1:
                    res.fail("f_constant_term", q, kseq, (i + 1, str(f)))
                try:
                    max_monomial(f)
                except QPDTError as exc:
                    res.fail("f_max_monomial", q, kseq, (i + 1, exc))
    return res


def consistency_suite(quivers: Iterable[Quiver], depth: int = 6,
                      max_terms: int | None = DEFAULT_MAX_TERMS, hilb_total: int = 3,
                      hilb_primes: Sequence[int] = (2, 3)) -> SuiteResult:
    """Framing against recursion, pairing preservation and Hilb integrality."""
    res = SuiteResult()
    for q in quivers:
        n = q.n
        tree = _tropical_tree(q, depth)
        framed = _framed_tree(q, depth, max_terms)
        g_cache: dict = {}
        for kseq, st in tree.items():
            if isinstance(st, Exception):
                res.checks += 1
                res.fail("sign_coherence", q, kseq, st)
                continue
            if kseq:
                # last step: pairings of the quiver before and after it
                prev_q, k, eps = st.path[-1], kseq[-1], st.signs[-1]
                pm = phi_inverse_matrix(prev_q, k, eps, "M")
                pl = phi_inverse_matrix(prev_q, k, eps, "L")
                res.checks += 2
                if not np.array_equal(pm.T @ pl, np.eye(n, dtype=np.int64)):
                    res.fail("chi_ML", q, kseq, pm.T @ pl)
                if not np.array_equal(pl.T @ chi_matrix(prev_q) @ pl, chi_matrix(st.quiver)):
                    res.fail("chi_LL", q, kseq, pl.T @ chi_matrix(prev_q) @ pl)
            word = reduced_word(kseq)
            seed = framed[word]
            if isinstance(seed, Exception):
                if word not in g_cache:
                    g_cache[word] = None
                    res.budget.append({"check": "g_framing", "quiver": [list(r) for r in q.arrows],
                                       "kseq": list(word), "detail": str(seed)})
                continue
            if word not in g_cache:
                g_cache[word] = _framed_readouts(q, seed)[1]
            gs = g_cache[word]
            for i in range(n):
                res.checks += 1
                if gs[i] != tuple(int(x) for x in st.G[:, i]):
                    res.fail("g_framing", q, kseq, (i + 1, gs[i], st.G[:, i]))
        qp = QP.from_quiver(q)
        for total in range(1, hilb_total + 1):
            for v in itertools.product(range(total + 1), repeat=n):
                if sum(v) != total:
                    continue
                for i in q.vertices():
                    for p in hilb_primes:
                        res.checks += 1
                        try:
                            count_hilb_points(qp, i, v, p)
                        except QPDTError as exc:
                            res.fail("hilb_integrality", q, (i, v, p), exc)
    return res
