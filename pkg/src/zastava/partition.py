"""The quasimaps partition series Z_{G,P} and its small-rank oracles."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain
from typing import Callable

from .patterns import Composition, as_composition, degree_vectors
from .scalar import ONE, ZERO, SpecEnv, make_spec_env, scalar_str
from .verma import engine_for

# Sign rule for the pairing: (-1)^{|d|} with |d| = sum_i d_i.
SIGN_RULE = "sum"


def sign_of(d, rule: str = SIGN_RULE) -> int:
    if rule == "sum":
        return (-1) ** sum(d)
    if rule == "none":
        return 1
    raise ValueError(f"unknown sign rule {rule!r}")


def z_coefficient(pi, d, env: SpecEnv, sign_rule: str = SIGN_RULE) -> Fraction:
    """(-1)^{|d|} <w_d, w_d> for the Whittaker component of degree d."""
    eng = engine_for(pi, env)
    w = eng.whittaker(d).vector
    return sign_of(d, sign_rule) * eng.pairing(w, w)


@dataclass
class ZSeries:
    pi: Composition
    cap: int
    env: SpecEnv
    terms: dict = field(default_factory=dict)  # degree tuple -> Scalar

    def to_json(self) -> dict:
        return {
            "pi": list(self.pi.parts),
            "env": self.env.to_json(),
            "terms": [{"d": list(d), "value": scalar_str(v)} for d, v in self.terms.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def csv_rows(self) -> list[list[str]]:
        return [["d", "value"]] + [["-".join(map(str, d)) or "0", scalar_str(v)] for d, v in self.terms.items()]


def z_series(pi, cap: int, env: SpecEnv, sign_rule: str = SIGN_RULE) -> ZSeries:
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    comp = as_composition(pi)
    terms = {d: z_coefficient(comp, d, env, sign_rule) for d in degree_vectors(comp.n - 1, cap)}
    return ZSeries(comp, cap, env, terms)


# -- rank-one oracle -------------------------------------------------------


def _sl2_e_on_fk(k: int, lam: Fraction) -> Fraction:
    """e f^k v = c f^{k-1} v in the sl2 Verma module of highest weight lam.

    Built by pushing e through f one step at a time with [e, f] = h.
    """
    c = ZERO
    for j in range(k):
        # f^j h f^{k-1-j} v: h sees weight lam - 2(k-1-j)
        c += lam - 2 * (k - 1 - j)
    return c


def sl2_oracle(m: int, env: SpecEnv, orientation: str = "x2-x1") -> Fraction:
    """Signed Whittaker norm of degree m for sl2, from a rank-one Verma module.

    The highest weight is ``lam = (x1 - x2)/hbar - 1`` (``x2 - x1`` orientation)
    and the character sends e to 1/hbar.
    """
    if env.N != 2:
        raise ValueError("sl2_oracle needs N = 2")
    x1, x2 = env.x
    h = env.hbar
    if orientation == "x2-x1":
        lam = (x1 - x2) / h - 1
    elif orientation == "x1-x2":
        lam = (x2 - x1) / h - 1
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    # <f^k v, f^k v> = <f^{k-1} v, e f^k v>
    gram = [ONE]
    coef = [ONE]  # w_k = coef[k] f^k v
    for k in range(1, m + 1):
        ek = _sl2_e_on_fk(k, lam)
        gram.append(ek * gram[k - 1])
        coef.append(coef[k - 1] / (h * ek))
    return (-1) ** m * coef[m] ** 2 * gram[m]


def sl2_closed_form(m: int, env: SpecEnv, orientation: str = "x2-x1") -> Fraction:
    x1, x2 = env.x
    h = env.hbar
    diff = x2 - x1 if orientation == "x2-x1" else x1 - x2
    out = ONE
    for k in range(1, m + 1):
        out /= (k * h) * (k * h + diff)
    return out


def sl2_match(cap: int, env: SpecEnv) -> dict:
    """Which x-orientation of the oracle reproduces z((m)) for m <= cap."""
    z = {m: z_coefficient((1, 1), (m,), env) for m in range(cap + 1)}
    return {
        o: all(z[m] == sl2_oracle(m, env, o) for m in range(cap + 1))
        for o in ("x2-x1", "x1-x2")
    }


# -- block symmetry ----------------------------------------------------------


def block_transpositions(pi) -> list[tuple[int, int]]:
    comp = as_composition(pi)
    return list(chain.from_iterable(((b[k], b[k + 1]) for k in range(len(b) - 1)) for b in comp.blocks()))


def wl_invariance_check(
    pi,
    cap: int,
    seed: int = 0,
    coefficient: Callable | None = None,
) -> bool:
    """Every z_coefficient is unchanged by adjacent swaps of x inside a block."""
    comp = as_composition(pi)
    coefficient = coefficient or z_coefficient
    env = make_spec_env(comp.N, cap + comp.N + 2, seed)
    degrees = degree_vectors(comp.n - 1, cap)
    base = {d: coefficient(comp, d, env) for d in degrees}
    for a, b in block_transpositions(comp):
        x = list(env.x)
        x[a], x[b] = x[b], x[a]
        swapped = env.with_x(x)
        for d in degrees:
            if coefficient(comp, d, swapped) != base[d]:
                return False
    return True
