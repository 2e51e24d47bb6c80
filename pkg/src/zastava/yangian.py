"""Shifted-Yangian generators acting on the Gelfand-Tsetlin basis.

The canonical normalization is GEOMETRIC: the basis is the set of fixed-point
classes of the based parabolic Laumon spaces and ``e``/``f`` act by the
correspondence matrix coefficients. FMO is the algebraic normalization on
the Gelfand-Tsetlin vectors ``xi_d``; the two are intertwined by the
diagonal rescaling :func:`to_fmo`.

Conventions fixed here (see the README for the reasoning):

* every ``p``-value in a matrix coefficient is read off the SOURCE pattern;
* ``e_i`` lowers ``d_i`` by one, ``f_i`` raises it;
* the operator ``d_k^{(r)}`` equals ``hbar**r`` times the ``u**-r``
  coefficient of the eigenvalue series ``d_k(u)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .patterns import (
    Composition,
    GTPattern,
    as_composition,
    degree_of,
    enumerate_patterns,
)
from .scalar import (
    ONE,
    ZERO,
    SpecEnv,
    UPoly,
    USeries,
    default_order,
    lagrange_interpolate,
    poly_from_roots,
    series_inverse,
)


class Normalization(enum.Enum):
    GEOMETRIC = "geometric"
    FMO = "fmo"


class Anchor(enum.Enum):
    SOURCE = "source"
    TARGET = "target"


# Which pattern the p-values of a matrix coefficient are read from.
P_VALUE_ANCHOR = Anchor.SOURCE


class GeneratorRangeError(ValueError):
    """The requested generator does not exist in the shifted Yangian."""


@dataclass(frozen=True)
class GenLabel:
    kind: str  # "e", "f" or "d"
    i: int
    s: int

    def __str__(self) -> str:
        return f"{self.kind}_{self.i}^({self.s})"


@dataclass
class WeightVector:
    pi: Composition
    degree: tuple[int, ...]
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        self.pi = as_composition(self.pi)
        self.degree = tuple(self.degree)
        self.coeffs = {k: Fraction(v) for k, v in self.coeffs.items() if v != 0}
        for pat in self.coeffs:
            if degree_of(pat) != self.degree:
                raise ValueError(f"pattern {pat.key} is not of degree {self.degree}")

    @classmethod
    def basis(cls, pat: GTPattern) -> WeightVector:
        return cls(pat.comp, degree_of(pat), {pat: ONE})

    def __getitem__(self, pat: GTPattern) -> Fraction:
        return self.coeffs.get(pat, ZERO)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: WeightVector) -> WeightVector:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return WeightVector(self.pi, self.degree, _add(self.coeffs, other.coeffs))

    def __sub__(self, other: WeightVector) -> WeightVector:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return WeightVector(self.pi, self.degree, _add(self.coeffs, other.coeffs, -ONE))

    def scale(self, c) -> WeightVector:
        return WeightVector(self.pi, self.degree, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeightVector)
            and self.pi == other.pi
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )


def _add(a: dict, b: dict, c=ONE) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, ZERO) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


@dataclass
class OperatorMatrix:
    pi: Composition
    source_degree: tuple[int, ...]
    target_degree: tuple[int, ...]
    label: GenLabel
    entries: dict  # (source, target) -> Scalar

    def apply(self, v: WeightVector) -> WeightVector:
        out: dict = {}
        for (src, tgt), c in self.entries.items():
            if src in v.coeffs:
                out[tgt] = out.get(tgt, ZERO) + c * v.coeffs[src]
        return WeightVector(self.pi, self.target_degree, out)


class GTModule:
    """The Gelfand-Tsetlin module for one composition at one generic point.

    All matrix coefficients are memoized per (pattern, generator), so one
    instance should be reused for everything computed at a given env.
    """

    def __init__(
        self,
        pi,
        env: SpecEnv,
        normalization: Normalization = Normalization.GEOMETRIC,
        anchor: Anchor | None = None,
    ):
        self.pi = as_composition(pi)
        if env.N != self.pi.N:
            raise ValueError(f"env has N={env.N}, composition needs N={self.pi.N}")
        self.env = env
        self.hbar = env.hbar
        self.normalization = normalization
        self.anchor = anchor or P_VALUE_ANCHOR
        self._pv: dict = {}
        self._rows: dict = {}
        self._dser: dict = {}
        self._patterns: dict = {}

    # -- bookkeeping ---------------------------------------------------

    def patterns(self, degree) -> list[GTPattern]:
        degree = tuple(degree)
        if degree not in self._patterns:
            self._patterns[degree] = enumerate_patterns(self.pi, degree)
        return self._patterns[degree]

    def pvals(self, pat: GTPattern) -> tuple[tuple[tuple[int, int, Fraction], ...], ...]:
        """``rows[i]`` lists ``(j, a, p_ij^(a))`` for rows 0..n (row 0 empty)."""
        got = self._pv.get(pat)
        if got is not None:
            return got
        comp = self.pi
        h = self.hbar
        x = self.env.x
        rows = [()]
        for i in range(1, comp.n + 1):
            row = []
            for (j, a) in comp.row_cells(i):
                xv = x[comp.offset(j) + a - 1]
                row.append((j, a, -xv if i == comp.n else h * pat.get(i, j, a) - xv))
            rows.append(tuple(row))
        got = tuple(rows)
        self._pv[pat] = got
        return got

    def p(self, pat: GTPattern, i: int, j: int, a: int) -> Fraction:
        for (jj, aa, v) in self.pvals(pat)[i]:
            if (jj, aa) == (j, a):
                return v
        raise IndexError((i, j, a))

    def e_min(self, i: int) -> int:
        return self.pi.p(i + 1) - self.pi.p(i) + 1

    # -- e and f -----------------------------------------------------------

    def _moves(self, pat: GTPattern, i: int, kind: str):
        """Per reachable target: (target, base, K) with coefficient prefactor*base**power*K."""
        key = (pat, i, kind)
        got = self._rows.get(key)
        if got is not None:
            return got
        delta = -1 if kind == "e" else 1
        moves = []
        for (j, a) in self.pi.row_cells(i):
            tgt = pat.shifted(i, j, a, delta)
            if tgt is None:
                continue
            anchor = pat if self.anchor is Anchor.SOURCE else tgt
            rows = self.pvals(anchor)
            pv = next(v for (jj, aa, v) in rows[i] if (jj, aa) == (j, a))
            K = ONE
            for (k, b, q) in rows[i]:
                if (k, b) != (j, a):
                    K /= pv - q
            other = rows[i + 1] if kind == "e" else rows[i - 1]
            for (_, _, q) in other:
                K *= pv - q
            if kind == "e":
                base = pv - i * self.hbar
            else:
                base = pv + (1 - i) * self.hbar
            moves.append((tgt, base, K))
        got = tuple(moves)
        self._rows[key] = got
        return got

    def e_row(self, pat: GTPattern, i: int, s: int) -> dict:
        """Column of e_i^(s) at ``pat``: target -> coefficient."""
        if not 1 <= i < self.pi.n:
            raise GeneratorRangeError(f"no e_{i} for n={self.pi.n}")
        lo = self.e_min(i)
        if s < lo:
            raise GeneratorRangeError(f"e_{i}^({s}) needs s >= {lo}")
        h = self.hbar
        if self.normalization is Normalization.GEOMETRIC:
            pref = 1 / h
        else:
            pref = -(h ** (-1 - self.pi.p(i)))
        power = s - lo
        return {tgt: pref * base**power * K for (tgt, base, K) in self._moves(pat, i, "e")}

    def f_row(self, pat: GTPattern, i: int, s: int) -> dict:
        if not 1 <= i < self.pi.n:
            raise GeneratorRangeError(f"no f_{i} for n={self.pi.n}")
        if s < 1:
            raise GeneratorRangeError(f"f_{i}^({s}) needs s >= 1")
        h = self.hbar
        if self.normalization is Normalization.GEOMETRIC:
            pref = -1 / h
        else:
            pref = h ** (-1 + self.pi.p(i))
        return {tgt: pref * base ** (s - 1) * K for (tgt, base, K) in self._moves(pat, i, "f")}

    def e_coeff(self, source: GTPattern, target: GTPattern, i: int, s: int) -> Fraction:
        return self.e_row(source, i, s).get(target, ZERO)

    def f_coeff(self, source: GTPattern, target: GTPattern, i: int, s: int) -> Fraction:
        return self.f_row(source, i, s).get(target, ZERO)

    # -- diagonal part -------------------------------------------------

    def A_roots(self, pat: GTPattern, i: int) -> list[Fraction]:
        """Roots of A_i(u): the values hbar^{-1} p_ij^(a) over row i."""
        if i == 0:
            return []
        return [v / self.hbar for (_, _, v) in self.pvals(pat)[i]]

    def A_eigenvalue(self, pat: GTPattern, i: int) -> UPoly:
        if not 0 <= i <= self.pi.n:
            raise IndexError(f"A_{i} undefined for n={self.pi.n}")
        return poly_from_roots(-r for r in self.A_roots(pat, i))

    def d_series(self, pat: GTPattern, k: int, order: int | None = None) -> USeries:
        """Eigenvalue series of d_k(u) on ``pat`` (coefficients of u**-s)."""
        if order is None:
            order = default_order(sum(degree_of(pat)), self.pi.parts)
        key = (pat, k, order)
        got = self._dser.get(key)
        if got is not None:
            return got
        num = USeries.from_shifted_poly(self.A_eigenvalue(pat, k), k - 1, order)
        den = USeries.from_shifted_poly(self.A_eigenvalue(pat, k - 1), k - 1, order)
        got = num * series_inverse(den)
        self._dser[key] = got
        return got

    def d_gen(self, pat: GTPattern, k: int, r: int) -> Fraction:
        """Eigenvalue of the generator d_k^(r) on ``pat``; d_k^(0) = 1."""
        if r == 0:
            return ONE
        if not 1 <= k <= self.pi.n:
            raise GeneratorRangeError(f"no d_{k} for n={self.pi.n}")
        ser = self.d_series(pat, k, max(r, default_order(0, self.pi.parts)))
        if r > ser.order:
            ser = self.d_series(pat, k, r)
        return self.hbar**r * ser[r]

    def d_prime_gen(self, pat: GTPattern, k: int, r: int) -> Fraction:
        """Eigenvalue of d'_k^(r), defined by sum_t d^(t) d'^(r-t) = delta_{r0}."""
        vals = [ONE]
        for m in range(1, r + 1):
            vals.append(-sum((self.d_gen(pat, k, t) * vals[m - t] for t in range(1, m + 1)), ZERO))
        return vals[r]

    # -- B and C -------------------------------------------------------------

    def _series_poly_part(self, poly: UPoly, series: dict, order: int) -> UPoly:
        """Polynomial part of poly(u) * sum_s series[s] u**-s; negative part must vanish."""
        out: dict[int, Fraction] = {}
        for k, c in enumerate(poly.coeffs):
            for s, v in series.items():
                out[k - s] = out.get(k - s, ZERO) + c * v
        valid_from = poly.degree - order
        tail = [p for p, v in out.items() if valid_from <= p < 0 and v != 0]
        if tail:
            raise ArithmeticError(f"generating-series product has a nonzero u^{max(tail)} term")
        return UPoly([out.get(k, ZERO) for k in range(max(poly.degree, 0) + 1)])

    def _shifted_series(self, coeffs: dict, shift: Fraction, order: int) -> dict:
        """Re-expand sum_s c_s hbar^{1-s} (u + shift)**-s in powers of u**-1."""
        from math import comb

        h = self.hbar
        out: dict[int, Fraction] = {}
        for s, c in coeffs.items():
            c = c * h ** (1 - s)
            # (u + shift)^{-s} = sum_m comb(-s, m) shift^m u^{-s-m}
            for m in range(0, order - s + 1):
                coef = (-1) ** m * comb(s + m - 1, m) * shift**m
                out[s + m] = out.get(s + m, ZERO) + c * coef
        return out

    def _bc_order(self, pat: GTPattern, i: int) -> int:
        return default_order(sum(degree_of(pat)) + 1, self.pi.parts) + self.pi.partial(i) + 2

    def B_series(self, pat: GTPattern, i: int, order: int | None = None) -> dict:
        """B_i(u) = (u-i+1)^{p_{i+1}-p_i} A_i(u) e_i(u-i+1) on ``pat``: target -> UPoly."""
        order = order or self._bc_order(pat, i)
        lo = self.e_min(i)
        targets = {t for (t, _, _) in self._moves(pat, i, "e")}
        out = {}
        for tgt in sorted(targets):
            coeffs = {s: self.e_coeff(pat, tgt, i, s) for s in range(lo, order + 1)}
            ser = self._shifted_series(coeffs, Fraction(1 - i), order)
            pre = UPoly([1 - i, 1])
            poly = self.A_eigenvalue(tgt, i)
            for _ in range(lo - 1):
                poly = poly * pre
            out[tgt] = self._series_poly_part(poly, ser, order)
        return out

    def C_series(self, pat: GTPattern, i: int, order: int | None = None) -> dict:
        """C_i(u) = f_i(u-i+1) A_i(u) on ``pat``: target -> UPoly."""
        order = order or self._bc_order(pat, i)
        targets = {t for (t, _, _) in self._moves(pat, i, "f")}
        poly = self.A_eigenvalue(pat, i)
        out = {}
        for tgt in sorted(targets):
            coeffs = {s: self.f_coeff(pat, tgt, i, s) for s in range(1, order + 1)}
            ser = self._shifted_series(coeffs, Fraction(1 - i), order)
            out[tgt] = self._series_poly_part(poly, ser, order)
        return out

    def B_point_value(self, pat: GTPattern, i: int, j: int, a: int) -> Fraction:
        """Value of B_i at u = hbar^{-1} p_ij^(a) on the target pat - delta_ij^(a).

        This is the closed product -prod_k lambda_{i+1,k}(u - k + 1) in the
        FMO normalization, converted to the active normalization.
        """
        u = self.p(pat, i, j, a) / self.hbar
        val = -ONE
        for (_, _, q) in self.pvals(pat)[i + 1]:
            val *= u - q / self.hbar
        if self.normalization is Normalization.GEOMETRIC:
            val *= -(self.hbar ** self.pi.p(i))
        return val

    def C_point_value(self, pat: GTPattern, i: int, j: int, a: int) -> Fraction:
        u = self.p(pat, i, j, a) / self.hbar
        val = ONE
        for (_, _, q) in self.pvals(pat)[i - 1]:
            val *= u - q / self.hbar
        if self.normalization is Normalization.GEOMETRIC:
            val *= -(self.hbar ** (-self.pi.p(i)))
        return val

    def interpolate_BC(self, pat: GTPattern, i: int, which: str = "B") -> dict:
        """Rebuild B_i or C_i on ``pat`` from point values at the row-i nodes."""
        cells = self.pi.row_cells(i)
        nodes = [self.p(pat, i, j, a) / self.hbar for (j, a) in cells]
        if len(set(nodes)) != len(nodes):
            raise ArithmeticError("coincident interpolation nodes: non-generic env")
        delta = -1 if which == "B" else 1
        value = self.B_point_value if which == "B" else self.C_point_value
        out = {}
        for (j, a) in cells:
            tgt = pat.shifted(i, j, a, delta)
            if tgt is None:
                continue
            vals = [value(pat, i, j, a) if (k, b) == (j, a) else ZERO for (k, b) in cells]
            out[tgt] = lagrange_interpolate(nodes, vals)
        return out

    # -- assembled operators ---------------------------------------------------

    def column(self, label: GenLabel, pat: GTPattern) -> dict:
        if label.kind == "e":
            return self.e_row(pat, label.i, label.s)
        if label.kind == "f":
            return self.f_row(pat, label.i, label.s)
        if label.kind == "d":
            c = self.d_gen(pat, label.i, label.s)
            return {pat: c} if c else {}
        raise ValueError(f"unknown generator kind {label.kind!r}")

    def apply_dict(self, label: GenLabel, vec: dict) -> dict:
        out: dict = {}
        for pat, c in vec.items():
            for tgt, v in self.column(label, pat).items():
                out[tgt] = out.get(tgt, ZERO) + c * v
        return {k: v for k, v in out.items() if v != 0}

    def target_degree(self, label: GenLabel, degree) -> tuple[int, ...]:
        degree = list(degree)
        if label.kind == "e":
            degree[label.i - 1] -= 1
        elif label.kind == "f":
            degree[label.i - 1] += 1
        return tuple(degree)

    def apply_generator(self, label: GenLabel, v: WeightVector) -> WeightVector:
        tgt_deg = self.target_degree(label, v.degree)
        if any(t < 0 for t in tgt_deg):
            return WeightVector(self.pi, tgt_deg, {})
        return WeightVector(self.pi, tgt_deg, self.apply_dict(label, v.coeffs))

    def operator_matrix(self, label: GenLabel, degree) -> OperatorMatrix:
        degree = tuple(degree)
        tgt_deg = self.target_degree(label, degree)
        entries = {}
        if all(t >= 0 for t in tgt_deg):
            for pat in self.patterns(degree):
                for tgt, c in self.column(label, pat).items():
                    entries[(pat, tgt)] = c
        return OperatorMatrix(self.pi, degree, tgt_deg, label, entries)


def psi_factor(pat: GTPattern, hbar: Fraction) -> Fraction:
    """(-1)^{|d|} hbar^{sum_i d_i p_i}: the rescaling [d] -> xi_d."""
    deg = degree_of(pat)
    weight = sum(di * pat.comp.p(i) for i, di in enumerate(deg, start=1))
    return (-1) ** sum(deg) * hbar**weight


def to_fmo(v: WeightVector, env: SpecEnv, inverse: bool = False) -> WeightVector:
    """Transport a vector from the fixed-point basis to the xi basis (or back)."""
    out = {}
    for pat, c in v.coeffs.items():
        f = psi_factor(pat, env.hbar)
        out[pat] = c / f if inverse else c * f
    return WeightVector(v.pi, v.degree, out)


def module_for(pi, env: SpecEnv, normalization: Normalization = Normalization.GEOMETRIC) -> GTModule:
    return GTModule(pi, env, normalization)


def all_labels(pi, kinds: Iterable[str], s_max: int) -> list[GenLabel]:
    comp = as_composition(pi)
    out = []
    for kind in kinds:
        top = comp.n if kind == "d" else comp.n - 1
        for i in range(1, top + 1):
            lo = 1
            if kind == "e":
                lo = comp.p(i + 1) - comp.p(i) + 1
            for s in range(lo, s_max + 1):
                out.append(GenLabel(kind, i, s))
    return out
