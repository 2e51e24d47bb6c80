"""Verification suites shared by the CLI and the acceptance tests.

Every suite accepts ``mutate``: a controlled perturbation that must make it
fail. A suite that still passes under mutation is vacuous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partition import sl2_oracle, wl_invariance_check, z_coefficient
from .patterns import as_composition, degree_vectors
from .relations import RELATIONS, verify_relation
from .scalar import ONE, ZERO, UPoly, make_spec_env
from .verma import (
    VermaEngine,
    a_eigenvalue_audit,
    adjointness_audit,
    engine_for,
    highest_weight_check,
    path_independence,
)
from .virasoro import VirParams, WhittakerSeries, dictionary_check, partitions, vir_gram
from .yangian import GTModule, Normalization

CHECKS = ("relations", "highest-weight", "interpolation", "shapovalov", "whittaker", "sl2", "wl", "virasoro", "agt")


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)
    witness: dict | None = None


def env_for(pi, cap: int, seed: int):
    comp = as_composition(pi)
    return make_spec_env(comp.N, cap + comp.N + 4, seed)


def check_relations(pi, cap, trials=3, seed=0, normalization=Normalization.GEOMETRIC, mutate=None, workers=1):
    """All relation families; ``mutate`` names the family to perturb."""
    if mutate is True:
        mutate = "b"
    checked = 0
    for rel in RELATIONS:
        rep = verify_relation(rel, pi, cap, trials, seed, normalization, mutate=(rel == mutate), workers=workers)
        checked += rep.checked
        if not rep.ok:
            return CheckResult("relations", False, {"checked": checked}, rep.witness)
    return CheckResult("relations", True, {"checked": checked, "normalization": normalization.value})


def check_highest_weight(pi, cap, seed=0, order=6, mutate=False):
    env = env_for(pi, cap, seed)
    pred_env = env
    if mutate:
        x = list(env.x)
        x[0] += 1
        pred_env = env.with_x(x)
    ok = highest_weight_check(pi, env, order, prediction_env=pred_env)
    bad = a_eigenvalue_audit(pi, cap, env)
    other = highest_weight_check(pi, env, order, sign=-1)
    return CheckResult(
        "highest-weight",
        ok and not bad,
        {"order": order, "a_audit_failures": len(bad), "printed_sign_matches": other},
        None if ok else {"pi": list(as_composition(pi).parts), "seed": seed},
    )


def check_interpolation(pi, cap, seed=0, normalization=Normalization.GEOMETRIC, mutate=False):
    comp = as_composition(pi)
    env = env_for(comp, cap, seed)
    m = GTModule(comp, env, normalization)
    compared = 0
    for d in degree_vectors(comp.n - 1, cap):
        for pat in m.patterns(d):
            for i in range(1, comp.n):
                for which in "BC":
                    series = m.B_series(pat, i) if which == "B" else m.C_series(pat, i)
                    interp = m.interpolate_BC(pat, i, which)
                    if mutate and interp:
                        k = next(iter(sorted(interp)))
                        interp[k] = interp[k] + UPoly([ONE])
                        mutate = False
                    compared += 1
                    if series != interp:
                        return CheckResult(
                            "interpolation",
                            False,
                            {"compared": compared},
                            {"pattern": pat.key, "i": i, "which": which},
                        )
                    for poly in series.values():
                        if not poly.is_zero() and poly.degree != comp.partial(i) - 1:
                            return CheckResult("interpolation", False, {"compared": compared}, {"pattern": pat.key, "degree": poly.degree})
    return CheckResult("interpolation", True, {"compared": compared})


def check_shapovalov(pi, cap, seed=0, pairs=20, mutate=False):
    env = env_for(pi, cap, seed)
    bad = path_independence(pi, cap, env)
    audit = adjointness_audit(pi, cap, env, pairs=pairs, seed=seed, superscript_offset=1 if mutate else 0)
    ok = not bad and not audit
    return CheckResult(
        "shapovalov",
        ok,
        {"pairs_per_degree": pairs},
        None if ok else {"paths": bad[:1], "audit": audit[:1]},
    )


def check_whittaker(pi, cap, seed=0, mutate=False):
    """Unique solvability, and hbar e_i^(p_{i+1}) w_d = w_{d - delta_i} exactly."""
    comp = as_composition(pi)
    env = env_for(comp, cap, seed)
    eng = VermaEngine(comp, env, chi_scale=2 if mutate else 1) if mutate else engine_for(comp, env)
    for d in degree_vectors(comp.n - 1, cap):
        eng.whittaker(d)
        bad = eng.whittaker_residuals(d)
        if bad:
            return CheckResult("whittaker", False, {}, bad[0])
    return CheckResult("whittaker", True, {"degrees": len(degree_vectors(comp.n - 1, cap))})


def check_sl2(cap=5, seed=0, mutate=False):
    env = make_spec_env(2, cap + 6, seed)
    z = [z_coefficient((1, 1), (m,), env) for m in range(cap + 1)]
    if mutate:
        z[-1] += 1
    match = {
        o: all(z[m] == sl2_oracle(m, env, o) for m in range(cap + 1)) for o in ("x2-x1", "x1-x2")
    }
    ok = any(match.values())
    orientation = next((o for o, v in match.items() if v), None)
    return CheckResult("sl2", ok, {"orientation": orientation, "cap": cap}, None if ok else {"seed": seed})


def check_wl(pi, cap, seed=0, mutate=False):
    coefficient = None
    if mutate:
        def coefficient(comp, d, env):
            return z_coefficient(comp, d, env) + env.x[0] * sum(d)
    ok = wl_invariance_check(pi, cap, seed, coefficient)
    return CheckResult("wl", ok, {"cap": cap})


# -- Virasoro ------------------------------------------------------------------


def bruteforce_vev(params: VirParams, word: tuple[int, ...]) -> Fraction:
    """<m, L_{w_1} ... L_{w_k} m> by moving positive modes to the right."""

    @lru_cache(maxsize=None)
    def vev(w):
        if not w:
            return ONE
        if w[-1] > 0 or w[0] < 0:
            return ZERO
        if w[-1] == 0:
            return params.delta * vev(w[:-1])
        if w[0] == 0:
            return params.delta * vev(w[1:])
        k = max(i for i in range(len(w) - 1) if w[i] > 0)
        a, b = w[k], w[k + 1]
        out = vev(w[:k] + (b, a) + w[k + 2:])
        if a - b:
            out += (a - b) * vev(w[:k] + (a + b,) + w[k + 2:])
        if a + b == 0:
            out += params.c * (a**3 - a) / 12 * vev(w[:k] + w[k + 2:])
        return out

    return vev(tuple(word))


def bruteforce_gram(params: VirParams, level: int) -> list[list[Fraction]]:
    basis = partitions(level)
    # <L_{-mu} m, L_{-nu} m> = <m, L_{mu_k} .. L_{mu_1} L_{-nu_1} .. L_{-nu_k} m>
    return [[bruteforce_vev(params, tuple(reversed(mu)) + tuple(-k for k in nu)) for nu in basis] for mu in basis]


def check_virasoro(params: VirParams, levels=6, mutate=False):
    oracle_params = VirParams(params.delta, params.c + 1) if mutate else params
    for d in range(levels + 1):
        if vir_gram(params, d) != bruteforce_gram(oracle_params, d):
            return CheckResult("virasoro", False, {}, {"level": d, "what": "gram"})
    ws = WhittakerSeries(params)
    for d in range(levels + 1):
        if not ws.check_relations(d):
            return CheckResult("virasoro", False, {}, {"level": d, "what": "whittaker"})
        if ws.norm(d) != ws.norm_by_adjointness(d):
            return CheckResult("virasoro", False, {}, {"level": d, "what": "norm"})
    if levels >= 1 and ws.norm(1) != 1 / (2 * params.delta):
        return CheckResult("virasoro", False, {}, {"level": 1, "what": "norm"})
    return CheckResult("virasoro", True, {"levels": levels})


def check_agt(trials=20, seed=0, mutate=False):
    ok = dictionary_check(trials, seed, mutate)
    return CheckResult("agt", ok, {"trials": trials}, None if ok else {"seed": seed})
