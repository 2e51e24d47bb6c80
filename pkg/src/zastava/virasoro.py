"""Virasoro Verma modules, Whittaker vectors and the AGT parameter maps.

Commutator convention: [L_m, L_n] = (m - n) L_{m+n} + c/12 (m^3 - m) delta_{m+n,0}.
A PBW word is a partition mu (weakly decreasing), standing for
L_{-mu_1} L_{-mu_2} ... L_{-mu_k} m.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .linalg import SingularSystemError, rank, solve_unique
from .scalar import ONE, ZERO, scalar_str, to_scalar


class DegenerateParameters(ArithmeticError):
    """The parameters sit on a locus where a Gram matrix is singular."""

    def __init__(self, level: int, what: str = "Gram"):
        super().__init__(f"degenerate {what} at level {level}")
        self.level = level


@dataclass(frozen=True)
class VirParams:
    delta: Fraction
    c: Fraction

    def to_json(self) -> dict:
        return {"delta": scalar_str(self.delta), "c": scalar_str(self.c)}


@dataclass
class VirState:
    level: int
    coeffs: dict = field(default_factory=dict)  # partition tuple -> Scalar

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v != 0}
        for mu in self.coeffs:
            if sum(mu) != self.level:
                raise ValueError(f"partition {mu} is not of level {self.level}")


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of n in reverse lexicographic order, e.g. (2,), (1, 1)."""
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


class VermaModule:
    """M_{delta, c} with memoized action of single modes on PBW words."""

    def __init__(self, params: VirParams):
        self.params = params
        self._memo: dict = {}

    def _central(self, m: int) -> Fraction:
        return self.params.c * (m**3 - m) / 12

    def act(self, n: int, word: tuple[int, ...]) -> dict:
        """L_n applied to the PBW word, as a dict of PBW words."""
        key = (n, word)
        got = self._memo.get(key)
        if got is not None:
            return got
        out: dict = {}
        if not word:
            if n < 0:
                out = {(-n,): ONE}
            elif n == 0:
                out = {(): self.params.delta} if self.params.delta else {}
        elif n < 0 and -n >= word[0]:
            out = {(-n,) + word: ONE}
        else:
            head, rest = word[0], word[1:]
            # L_n L_{-head} = L_{-head} L_n + (n + head) L_{n-head} + central
            for w, c in self.act(n, rest).items():
                for w2, c2 in self.act(-head, w).items():
                    out[w2] = out.get(w2, ZERO) + c * c2
            k = n + head
            if k:
                for w, c in self.act(n - head, rest).items():
                    out[w] = out.get(w, ZERO) + k * c
            if n == head:
                z = self._central(n)
                if z:
                    out[rest] = out.get(rest, ZERO) + z
            out = {w: v for w, v in out.items() if v != 0}
        self._memo[key] = out
        return out

    def apply(self, n: int, state: dict) -> dict:
        out: dict = {}
        for w, c in state.items():
            for w2, c2 in self.act(n, w).items():
                out[w2] = out.get(w2, ZERO) + c * c2
        return {w: v for w, v in out.items() if v != 0}

    def pair_words(self, mu: tuple[int, ...], nu: tuple[int, ...]) -> Fraction:
        """<L_{-mu} m, L_{-nu} m> with L_n adjoint to L_{-n}."""
        if sum(mu) != sum(nu):
            return ZERO
        state = {nu: ONE}
        for k in mu:
            state = self.apply(k, state)
        return state.get((), ZERO)

    def gram(self, level: int) -> list[list[Fraction]]:
        basis = partitions(level)
        return [[self.pair_words(a, b) for b in basis] for a in basis]


def vir_gram(params: VirParams, level: int) -> list[list[Fraction]]:
    if level < 0:
        raise ValueError("level must be nonnegative")
    return VermaModule(params).gram(level)


def _pair(G, u, v) -> Fraction:
    return sum((u[a] * G[a][b] * v[b] for a in range(len(u)) for b in range(len(v))), ZERO)


class WhittakerSeries:
    """Levels w_0, w_1, ... of the Virasoro Whittaker vector."""

    def __init__(self, params: VirParams):
        self.params = params
        self.module = VermaModule(params)
        self.levels: list[VirState] = [VirState(0, {(): ONE})]

    def level(self, d: int) -> VirState:
        while len(self.levels) <= d:
            self._extend()
        return self.levels[d]

    def _extend(self):
        d = len(self.levels)
        basis = partitions(d)
        G = self.module.gram(d)
        if rank(G, len(basis)) < len(basis):
            raise DegenerateParameters(d)
        prev = self.levels[d - 1].coeffs
        A, b = [], []
        # L_1 w_d = w_{d-1}
        imgs = [self.module.act(1, mu) for mu in basis]
        for t in partitions(d - 1):
            A.append([img.get(t, ZERO) for img in imgs])
            b.append(prev.get(t, ZERO))
        # L_2 w_d = 0
        if d >= 2:
            imgs = [self.module.act(2, mu) for mu in basis]
            for t in partitions(d - 2):
                A.append([img.get(t, ZERO) for img in imgs])
                b.append(ZERO)
        try:
            sol = solve_unique(A, b, len(basis))
        except SingularSystemError:
            raise DegenerateParameters(d, "Whittaker system") from None
        self.levels.append(VirState(d, dict(zip(basis, sol))))

    def norm(self, d: int) -> Fraction:
        w = self.level(d)
        basis = partitions(d)
        vec = [w.coeffs.get(mu, ZERO) for mu in basis]
        return _pair(self.module.gram(d), vec, vec)

    def norm_by_adjointness(self, d: int) -> Fraction:
        """<w_d, w_d> as the L_{-1}^d coefficient of w_d.

        Pairing w_d with L_{-mu} m moves L_{mu_1} onto w_d, which kills it
        unless mu_1 = 1; so only the word (1, ..., 1) survives, with value 1.
        """
        return self.level(d).coeffs.get((1,) * d, ZERO)

    def check_relations(self, d: int, top: int | None = None) -> bool:
        """L_1 w_d = w_{d-1} and L_n w_d = 0 for 2 <= n <= top."""
        w = self.level(d).coeffs
        if d == 0:
            return all(not self.module.apply(n, w) for n in range(1, (top or 2) + 1))
        if self.module.apply(1, w) != self.level(d - 1).coeffs:
            return False
        for n in range(2, (top or d) + 1):
            if self.module.apply(n, w):
                return False
        return True


def vir_whittaker(params: VirParams, level: int) -> VirState:
    return WhittakerSeries(params).level(level)


def nekrasov_series(params: VirParams, cap: int) -> list[Fraction]:
    """<w_d, w_d> for d = 0..cap (the conjectural instanton series)."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    ws = WhittakerSeries(params)
    return [ws.norm(d) for d in range(cap + 1)]


def agt_params(a, eps1, eps2) -> VirParams:
    a, e1, e2 = to_scalar(a), to_scalar(eps1), to_scalar(eps2)
    if e1 * e2 == 0:
        raise ValueError("eps1 * eps2 must be nonzero")
    delta = -(a**2) / (e1 * e2) + (e1 + e2) ** 2 / (4 * e1 * e2)
    c = 1 + 6 * (e1 + e2) ** 2 / (e1 * e2)
    return VirParams(delta, c)


def ff_params(chi, k, mutate: bool = False) -> VirParams:
    chi, k = to_scalar(chi), to_scalar(k)
    if k == -2:
        raise ValueError("k = -2 is the critical level")
    delta = ((chi + 1) ** 2 - (k + 1) ** 2) / (4 * (k + 2))
    c = 1 - 6 * (k + 1) ** 2 / (k + 2)
    if mutate:
        delta += 1
    return VirParams(delta, c)


def chic_map(a, eps1, eps2) -> tuple[Fraction, Fraction]:
    a, e1, e2 = to_scalar(a), to_scalar(eps1), to_scalar(eps2)
    if e2 == 0:
        raise ValueError("eps2 must be nonzero")
    return -2 * a / e2 - 1, -e1 / e2 - 2


def random_triple(rng: random.Random) -> tuple[Fraction, Fraction, Fraction]:
    def draw(nonzero):
        while True:
            v = Fraction(rng.randint(-30, 30), rng.randint(1, 7))
            if v or not nonzero:
                return v

    return draw(False), draw(True), draw(True)


def dictionary_check(trials: int = 20, seed: int = 0, mutate: bool = False) -> bool:
    """ff_params(chic_map(a, e1, e2)) == agt_params(a, e1, e2) at random points."""
    rng = random.Random(seed)
    for _ in range(trials):
        a, e1, e2 = random_triple(rng)
        chi, k = chic_map(a, e1, e2)
        if ff_params(chi, k, mutate) != agt_params(a, e1, e2):
            return False
    return True
