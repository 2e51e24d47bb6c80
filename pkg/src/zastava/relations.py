"""Exact verification of the shifted-Yangian relations on truncated weight spaces.

Each relation family is expanded into concrete instances (fixed indices and
superscripts). Both sides are linear combinations of words in the
generators; they are applied to every basis vector of every weight space of
total degree at most the cap and compared exactly, at several independent
generic points.

The commutator ``[e_i^(r), f_j^(s)]`` is checked against
``-delta_ij hbar^{-1} sum_t d'_i^(t) d_{i+1}^(r+s-1-t)``. With the
correspondence matrix coefficients and ``d_k^(r) = hbar^r [u^-r] d_k(u)``
this is the only power of hbar that closes; every other family holds with
the coefficients exactly as usually stated.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .patterns import as_composition, degree_vectors
from .scalar import ONE, ZERO, make_spec_env, scalar_str
from .yangian import GTModule, Normalization

RELATIONS = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "truncation")

# A word is a tuple of (kind, i, s) letters, leftmost applied last.
# An expression is a list of (coefficient, word).


def _comm(x, y, c=ONE):
    return [(c, x + y), (-c, y + x)]


def _scaled(expr, c):
    return [(c * k, w) for k, w in expr]


@dataclass
class RelationReport:
    relation: str
    pi: tuple[int, ...]
    ok: bool
    checked: int = 0
    witness: dict | None = None
    normalization: str = "geometric"

    def witness_json(self) -> str:
        return json.dumps(self.witness, sort_keys=False)


def superscript_bound(pi, degree_cap: int) -> int:
    comp = as_composition(pi)
    jumps = [comp.p(i + 1) - comp.p(i) for i in range(1, comp.n)] or [0]
    return degree_cap * max(comp.parts) + max(jumps) + 2


def instances(rel: str, pi, s_max: int, hbar: Fraction) -> Iterator[tuple[dict, list, list]]:
    """Yield (instance, lhs, rhs) for every admissible index choice."""
    comp = as_composition(pi)
    n = comp.n
    lo = {i: comp.p(i + 1) - comp.p(i) + 1 for i in range(1, n)}
    E = lambda i, s: (("e", i, s),)  # noqa: E731
    F = lambda i, s: (("f", i, s),)  # noqa: E731
    D = lambda i, s: (("d", i, s),) if s else ()  # noqa: E731
    DP = lambda i, s: (("dp", i, s),) if s else ()  # noqa: E731
    S = range(1, s_max + 1)

    if rel == "a":
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for r in S:
                    for s in S:
                        yield {"i": i, "j": j, "r": r, "s": s}, _comm(D(i, r), D(j, s)), []
    elif rel == "b":
        for i in range(1, n):
            for j in range(1, n):
                for r in range(lo[i], s_max + 1):
                    for s in S:
                        rhs = []
                        if i == j:
                            m = r + s - 1
                            rhs = [(-1 / hbar, DP(i, t) + D(i + 1, m - t)) for t in range(m + 1)]
                        yield {"i": i, "j": j, "r": r, "s": s}, _comm(E(i, r), F(j, s)), rhs
    elif rel in ("c", "d"):
        for i in range(1, n + 1):
            for j in range(1, n):
                if rel == "c":
                    c = hbar * ((i == j) - (i == j + 1))
                    srange = range(lo[j], s_max + 1)
                else:
                    c = hbar * ((i == j + 1) - (i == j))
                    srange = S
                for r in S:
                    for s in srange:
                        if rel == "c":
                            lhs = _comm(D(i, r), E(j, s))
                            rhs = [(c, D(i, t) + E(j, r + s - t - 1)) for t in range(r)] if c else []
                        else:
                            lhs = _comm(D(i, r), F(j, s))
                            rhs = [(c, F(j, r + s - t - 1) + D(i, t)) for t in range(r)] if c else []
                        yield {"i": i, "j": j, "r": r, "s": s}, lhs, rhs
    elif rel in ("e", "f"):
        for i in range(1, n):
            start = lo[i] if rel == "e" else 1
            for r in range(start, s_max + 1):
                for s in range(start, s_max + 1):
                    if rel == "e":
                        lhs = _comm(E(i, r), E(i, s + 1)) + _comm(E(i, r + 1), E(i, s), -ONE)
                        rhs = [(hbar, E(i, r) + E(i, s)), (hbar, E(i, s) + E(i, r))]
                    else:
                        lhs = _comm(F(i, r + 1), F(i, s)) + _comm(F(i, r), F(i, s + 1), -ONE)
                        rhs = [(hbar, F(i, r) + F(i, s)), (hbar, F(i, s) + F(i, r))]
                    yield {"i": i, "r": r, "s": s}, lhs, rhs
    elif rel in ("g", "h"):
        for i in range(1, n - 1):
            if rel == "g":
                rr, ss = range(lo[i], s_max + 1), range(lo[i + 1], s_max + 1)
            else:
                rr, ss = S, S
            for r in rr:
                for s in ss:
                    if rel == "g":
                        lhs = _comm(E(i, r), E(i + 1, s + 1)) + _comm(E(i, r + 1), E(i + 1, s), -ONE)
                        rhs = [(-hbar, E(i, r) + E(i + 1, s))]
                    else:
                        lhs = _comm(F(i, r + 1), F(i + 1, s)) + _comm(F(i, r), F(i + 1, s + 1), -ONE)
                        rhs = [(-hbar, F(i + 1, s) + F(i, r))]
                    yield {"i": i, "r": r, "s": s}, lhs, rhs
    elif rel in ("i", "j"):
        G = E if rel == "i" else F
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) <= 1:
                    continue
                for r in range(lo[i] if rel == "i" else 1, s_max + 1):
                    for s in range(lo[j] if rel == "i" else 1, s_max + 1):
                        yield {"i": i, "j": j, "r": r, "s": s}, _comm(G(i, r), G(j, s)), []
    elif rel in ("k", "l"):
        G = E if rel == "k" else F
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) != 1:
                    continue
                ri = range(lo[i] if rel == "k" else 1, s_max + 1)
                rj = range(lo[j] if rel == "k" else 1, s_max + 1)
                for r in ri:
                    for s in ri:
                        if s < r:
                            continue  # symmetric in r, s
                        for t in rj:
                            lhs = []
                            for a, b in ((r, s), (s, r)):
                                inner = _comm(G(i, b), G(j, t))
                                for c, w in inner:
                                    lhs += [(c, G(i, a) + w), (-c, w + G(i, a))]
                            yield {"i": i, "j": j, "r": r, "s": s, "t": t}, lhs, []
    elif rel == "truncation":
        for r in range(comp.p(1) + 1, s_max + 1):
            yield {"i": 1, "r": r}, [(ONE, D(1, r))], []
    else:
        raise ValueError(f"unknown relation {rel!r}")


class _Evaluator:
    def __init__(self, module: GTModule):
        self.m = module
        self.memo: dict = {}

    def column(self, letter, pat) -> dict:
        kind, i, s = letter
        m = self.m
        if kind == "e":
            return m.e_row(pat, i, s)
        if kind == "f":
            return m.f_row(pat, i, s)
        if kind == "d":
            c = m.d_gen(pat, i, s)
        elif kind == "dp":
            c = m.d_prime_gen(pat, i, s)
        else:
            raise ValueError(kind)
        return {pat: c} if c else {}

    def word(self, word: tuple, pat) -> dict:
        key = (word, pat)
        got = self.memo.get(key)
        if got is not None:
            return got
        if not word:
            out = {pat: ONE}
        else:
            inner = self.word(word[1:], pat)
            out = {}
            for q, c in inner.items():
                for t, v in self.column(word[0], q).items():
                    out[t] = out.get(t, ZERO) + c * v
            out = {k: v for k, v in out.items() if v != 0}
        self.memo[key] = out
        return out

    def expr(self, expr, pat) -> dict:
        out: dict = {}
        for c, w in expr:
            for t, v in self.word(w, pat).items():
                out[t] = out.get(t, ZERO) + c * v
        return {k: v for k, v in out.items() if v != 0}


def _check_one_env(rel, pi, degree_cap, env, normalization, s_max, mutate):
    comp = as_composition(pi)
    module = GTModule(comp, env, normalization)
    ev = _Evaluator(module)
    checked = 0
    mutated = False
    for inst, lhs, rhs in instances(rel, comp, s_max, env.hbar):
        for deg in degree_vectors(comp.n - 1, degree_cap):
            for pat in module.patterns(deg):
                left = ev.expr(lhs, pat)
                right = ev.expr(rhs, pat)
                if mutate and not mutated:
                    right = dict(right)
                    right[pat] = right.get(pat, ZERO) + 1
                    mutated = True
                checked += 1
                if left != right:
                    tgt = next(t for t in sorted(set(left) | set(right)) if left.get(t, ZERO) != right.get(t, ZERO))
                    witness = {
                        "relation": rel,
                        "pi": list(comp.parts),
                        "degree": list(deg),
                        "instance": inst,
                        "source": pat.to_json()["rows"],
                        "target": tgt.to_json()["rows"],
                        "lhs": scalar_str(left.get(tgt, ZERO)),
                        "rhs": scalar_str(right.get(tgt, ZERO)),
                        "seed": env.seed,
                    }
                    return False, checked, witness
    return True, checked, None


def verify_relation(
    rel: str,
    pi,
    degree_cap: int,
    trials: int = 3,
    seed: int = 0,
    normalization: Normalization = Normalization.GEOMETRIC,
    s_max: int | None = None,
    mutate: bool = False,
    workers: int = 1,
) -> RelationReport:
    """Check one relation family on all weight spaces up to ``degree_cap``.

    Failure is reported through the returned report (with a witness), never
    raised.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    comp = as_composition(pi)
    if s_max is None:
        s_max = superscript_bound(comp, degree_cap)
    guard = degree_cap + comp.N + s_max
    envs = [make_spec_env(comp.N, guard, seed + t) for t in range(trials)]
    jobs = [(rel, comp.parts, degree_cap, env, normalization, s_max, mutate and k == 0) for k, env in enumerate(envs)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_star_check, jobs))
    else:
        results = [_check_one_env(*job) for job in jobs]
    total = 0
    for ok, checked, witness in results:
        total += checked
        if not ok:
            return RelationReport(rel, comp.parts, False, total, witness, normalization.value)
    return RelationReport(rel, comp.parts, True, total, None, normalization.value)


def _star_check(job):
    return _check_one_env(*job)


def verify_all(pi, degree_cap, trials=3, seed=0, normalization=Normalization.GEOMETRIC, mutate: str | None = None, workers: int | None = None):
    if workers is None:
        workers = int(os.environ.get("ZASTAVA_THREADS", "1") or 1)
    return [
        verify_relation(r, pi, degree_cap, trials, seed, normalization, mutate=(mutate == r), workers=workers)
        for r in RELATIONS
    ]
