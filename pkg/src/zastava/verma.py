"""Whittaker vectors, Shapovalov norms and highest-weight checks.

Everything here works in the GEOMETRIC normalization. The Shapovalov form
is diagonal on the Gelfand-Tsetlin basis; its diagonal entries are built
up one increment at a time from the adjointness
``(f_i^(s) x, y) = (x, e_i^(s + p_{i+1} - p_i) y)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import SingularSystemError, solve_unique
from .patterns import GTPattern, as_composition, degree_vectors, zero_pattern
from .scalar import ONE, ZERO, SpecEnv, elementary_symmetric, scalar_str
from .yangian import GenLabel, GTModule, Normalization, WeightVector


class WhittakerError(ArithmeticError):
    def __init__(self, degree, reason):
        super().__init__(f"Whittaker system at degree {list(degree)}: {reason}")
        self.degree = tuple(degree)


class ShapovalovError(ArithmeticError):
    pass


@dataclass
class WhittakerComponent:
    degree: tuple[int, ...]
    vector: WeightVector

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree),
            "coeffs": {pat.key: scalar_str(c) for pat, c in sorted(self.vector.coeffs.items())},
        }


def chi(comp, i: int, s: int, hbar: Fraction) -> Fraction:
    """The regular character: hbar^-1 at s = p_{i+1}, zero below."""
    return 1 / hbar if s == comp.p(i + 1) else ZERO


def _geometric(module: GTModule) -> GTModule:
    if module.normalization is not Normalization.GEOMETRIC:
        raise ValueError("verma-engine works in the GEOMETRIC normalization")
    return module


class VermaEngine:
    """Per-(pi, env) cache of Whittaker components and Shapovalov norms."""

    def __init__(self, pi, env: SpecEnv, chi_scale=1):
        self.comp = as_composition(pi)
        self.env = env
        self.chi_scale = chi_scale  # != 1 only for detector tests
        self.module = _geometric(GTModule(self.comp, env))
        self._whit: dict = {}
        self._norm: dict = {zero_pattern(self.comp): ONE}

    @property
    def hbar(self) -> Fraction:
        return self.env.hbar

    def shift(self, i: int) -> int:
        return self.comp.p(i + 1) - self.comp.p(i)

    # -- Whittaker -------------------------------------------------------------

    def whittaker(self, d) -> WhittakerComponent:
        d = tuple(d)
        got = self._whit.get(d)
        if got is not None:
            return got
        if len(d) != self.comp.n - 1 or any(v < 0 for v in d):
            raise ValueError(f"bad degree vector {list(d)}")
        m = self.module
        pats = m.patterns(d)
        if not any(d):
            comp = WhittakerComponent(d, WeightVector(self.comp, d, {pats[0]: ONE}))
            self._whit[d] = comp
            return comp
        col = {p: k for k, p in enumerate(pats)}
        A, b = [], []
        for i in range(1, self.comp.n):
            if d[i - 1] == 0:
                continue
            lower = list(d)
            lower[i - 1] -= 1
            prev = self.whittaker(lower).vector
            tpats = m.patterns(lower)
            for s in range(m.e_min(i), self.comp.p(i + 1) + 1):
                rows = {t: [ZERO] * len(pats) for t in tpats}
                for src in pats:
                    for tgt, c in m.e_row(src, i, s).items():
                        rows[tgt][col[src]] += c
                ch = self.chi_scale * chi(self.comp, i, s, self.hbar)
                for t in tpats:
                    A.append(rows[t])
                    b.append(ch * prev[t])
        try:
            sol = solve_unique(A, b, len(pats))
        except SingularSystemError as exc:
            raise WhittakerError(d, str(exc)) from None
        comp = WhittakerComponent(d, WeightVector(self.comp, d, dict(zip(pats, sol))))
        self._whit[d] = comp
        return comp

    def whittaker_residuals(self, d) -> list[dict]:
        """Re-check every imposed condition on w_d; returns the violated ones.

        For s = p_{i+1} this is ``hbar * e_i^(s) w_d == w_{d - delta_i}``.
        """
        d = tuple(d)
        bad = []
        w = self.whittaker(d).vector
        for i in range(1, self.comp.n):
            if d[i - 1] == 0:
                continue
            lower = list(d)
            lower[i - 1] -= 1
            prev = self.whittaker(lower).vector
            for s in range(self.module.e_min(i), self.comp.p(i + 1) + 1):
                got = self.module.apply_dict(GenLabel("e", i, s), w.coeffs)
                if s == self.comp.p(i + 1):
                    got = {k: self.hbar * v for k, v in got.items()}
                    want = prev.coeffs
                else:
                    want = {}
                if got != want:
                    bad.append({"degree": list(d), "i": i, "s": s})
        return bad

    def chi_audit(self, d, extra: int = 2) -> dict:
        """Observed eigen-constants of e_i^(s) on w for s above p_{i+1}.

        Maps (i, s) to the constant c with e_i^(s) w_d = c w_{d - delta_i},
        or None when the image is not proportional to w_{d - delta_i}.
        """
        d = tuple(d)
        out = {}
        w = self.whittaker(d).vector
        for i in range(1, self.comp.n):
            if d[i - 1] == 0:
                continue
            lower = list(d)
            lower[i - 1] -= 1
            prev = self.whittaker(lower).vector.coeffs
            top = self.comp.p(i + 1)
            for s in range(top + 1, top + extra + 1):
                got = self.module.apply_dict(GenLabel("e", i, s), w.coeffs)
                out[(i, s)] = _ratio(got, prev)
        return out

    # -- Shapovalov ------------------------------------------------------------

    def _predecessors(self, pat: GTPattern):
        for (i, j, a) in self.comp.cells:
            pred = pat.shifted(i, j, a, -1)
            if pred is not None:
                yield i, pred

    def _step(self, pred: GTPattern, pat: GTPattern, i: int, s: int):
        """Norm of ``pat`` from that of ``pred`` through f_i^(s); None if F vanishes."""
        F = self.module.f_row(pred, i, s).get(pat, ZERO)
        if F == 0:
            return None
        E = self.module.e_row(pat, i, s + self.shift(i)).get(pred, ZERO)
        return E * self.norm(pred) / F

    def norm(self, pat: GTPattern, s_max: int = 4) -> Fraction:
        got = self._norm.get(pat)
        if got is not None:
            return got
        for i, pred in self._predecessors(pat):
            for s in range(1, s_max + 1):
                val = self._step(pred, pat, i, s)
                if val is not None:
                    self._norm[pat] = val
                    return val
        raise ShapovalovError(f"every recursion path to {pat.key} has vanishing f-coefficient")

    def norm_paths(self, pat: GTPattern, s_max: int = 3) -> list[Fraction]:
        """The norm of ``pat`` along every (predecessor, superscript) route."""
        vals = []
        for i, pred in self._predecessors(pat):
            for s in range(1, s_max + 1):
                val = self._step(pred, pat, i, s)
                if val is not None:
                    vals.append(val)
        return vals

    def pairing(self, v: WeightVector, w: WeightVector) -> Fraction:
        if v.degree != w.degree:
            raise ValueError(f"pairing of degrees {list(v.degree)} and {list(w.degree)}")
        return sum((c * w[pat] * self.norm(pat) for pat, c in v.coeffs.items()), ZERO)


def _ratio(got: dict, want: dict):
    if not want:
        return ZERO if not got else None
    if set(got) - set(want):
        return None
    k0 = next(iter(want))
    c = got.get(k0, ZERO) / want[k0]
    for k, v in want.items():
        if got.get(k, ZERO) != c * v:
            return None
    return c


_ENGINES: dict = {}


def engine_for(pi, env: SpecEnv) -> VermaEngine:
    key = (as_composition(pi).parts, env)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _ENGINES[key] = VermaEngine(pi, env)
    return eng


def whittaker_component(pi, d, env: SpecEnv) -> WhittakerComponent:
    return engine_for(pi, env).whittaker(d)


def shapovalov_norm(pi, pat: GTPattern, env: SpecEnv) -> Fraction:
    return engine_for(pi, env).norm(pat)


def shapovalov_pairing(pi, v: WeightVector, w: WeightVector, env: SpecEnv) -> Fraction:
    return engine_for(pi, env).pairing(v, w)


def path_independence(pi, cap: int, env: SpecEnv) -> list[dict]:
    """Patterns whose norm differs between recursion routes (empty means coherent)."""
    eng = engine_for(pi, env)
    bad = []
    for d in degree_vectors(eng.comp.n - 1, cap):
        for pat in eng.module.patterns(d):
            vals = eng.norm_paths(pat)
            if vals and any(v != vals[0] for v in vals):
                bad.append({"pattern": pat.key, "values": len(set(vals))})
    return bad


def multi_path_patterns(pi, cap: int, env: SpecEnv) -> int:
    eng = engine_for(pi, env)
    return sum(
        1
        for d in degree_vectors(eng.comp.n - 1, cap)
        for pat in eng.module.patterns(d)
        if len(eng.norm_paths(pat)) >= 2
    )


def random_vector(module: GTModule, d, rng: random.Random) -> WeightVector:
    pats = module.patterns(d)
    return WeightVector(module.pi, d, {p: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for p in pats})


def adjointness_audit(
    pi, cap: int, env: SpecEnv, pairs: int = 20, seed: int = 0, s_max: int = 3, superscript_offset: int = 0
) -> list[dict]:
    """(f v, w) = (v, e w) and (v, w) = (w, v) on random pairs; returns failures."""
    eng = engine_for(pi, env)
    m = eng.module
    rng = random.Random(seed)
    bad = []
    for d in degree_vectors(eng.comp.n - 1, cap):
        for _ in range(pairs):
            v = random_vector(m, d, rng)
            v2 = random_vector(m, d, rng)
            if eng.pairing(v, v2) != eng.pairing(v2, v):
                bad.append({"degree": list(d), "audit": "symmetry"})
            for i in range(1, eng.comp.n):
                up = list(d)
                up[i - 1] += 1
                if sum(up) > cap:
                    continue
                w = random_vector(m, up, rng)
                for s in range(1, s_max + 1):
                    fv = WeightVector(eng.comp, up, m.apply_dict(GenLabel("f", i, s), v.coeffs))
                    ew = WeightVector(eng.comp, d, m.apply_dict(GenLabel("e", i, s + eng.shift(i) + superscript_offset), w.coeffs))
                    if eng.pairing(fv, w) != eng.pairing(v, ew):
                        bad.append({"degree": list(d), "audit": "adjointness", "i": i, "s": s})
    return bad


def highest_weight_prediction(pi, env: SpecEnv, k: int, r: int, sign: int = 1) -> Fraction:
    """e_r of ``k - 1 + sign * x_j / hbar`` over the k-th block."""
    comp = as_composition(pi)
    block = comp.blocks()[k - 1]
    vals = [k - 1 + sign * env.x[j] / env.hbar for j in block]
    return elementary_symmetric(vals, r)


def highest_weight_check(pi, env: SpecEnv, order: int = 6, sign: int = 1, prediction_env: SpecEnv | None = None) -> bool:
    """d_k(u) on the highest vector against the elementary-symmetric prediction.

    ``sign = +1`` is the value forced by the A-eigenvalues; ``sign = -1``
    is the other sign, kept for comparison. ``prediction_env`` evaluates
    the prediction at a different point (detector tests).
    """
    comp = as_composition(pi)
    m = GTModule(comp, env)
    xi0 = zero_pattern(comp)
    for k in range(1, comp.n + 1):
        ser = m.d_series(xi0, k, order)
        for r in range(order + 1):
            if ser[r] != highest_weight_prediction(comp, prediction_env or env, k, r, sign):
                return False
    return True


def a_eigenvalue_audit(pi, cap: int, env: SpecEnv) -> list[dict]:
    """Every A_i on every pattern up to cap must be monic of degree p_1+..+p_i."""
    comp = as_composition(pi)
    m = GTModule(comp, env)
    bad = []
    for d in degree_vectors(comp.n - 1, cap):
        for pat in m.patterns(d):
            for i in range(comp.n + 1):
                poly = m.A_eigenvalue(pat, i)
                if not poly.is_monic() or poly.degree != comp.partial(i):
                    bad.append({"pattern": pat.key, "i": i})
    return bad
