"""Exact scalars, generic-point environments and univariate u-polynomials/series.

Every quantity in the package is an exact rational. The ground field of
rational functions in ``x_1..x_N`` and ``hbar`` is never manipulated
symbolically; instead it is specialized at a seeded random rational point
(a :class:`SpecEnv`) and identities are certified by agreement at several
such points.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

MAX_REDRAWS = 1000


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {value!r} to an exact scalar")


def scalar_str(value: Fraction) -> str:
    """Canonical "num/den" form; the denominator is omitted when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class GenericityError(RuntimeError):
    """No generic specialization point was found within the redraw budget."""


@dataclass(frozen=True)
class SpecEnv:
    """A generic rational point (x_1..x_N, hbar) of the parameter space."""

    N: int
    x: tuple[Fraction, ...]
    hbar: Fraction
    seed: int
    degree_cap: int = 0

    def with_x(self, x: Sequence[Fraction]) -> SpecEnv:
        """Same point with the x-values replaced (used for block permutations)."""
        if len(x) != self.N:
            raise ValueError("x has the wrong length")
        return SpecEnv(self.N, tuple(x), self.hbar, self.seed, self.degree_cap)

    def to_json(self) -> dict:
        return {
            "x": [scalar_str(v) for v in self.x],
            "hbar": scalar_str(self.hbar),
            "seed": self.seed,
        }


def _draw(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-40, 40), rng.randint(1, 9))


def is_generic(x: Sequence[Fraction], hbar: Fraction, degree_cap: int) -> bool:
    if hbar == 0:
        return False
    for i, xi in enumerate(x):
        for xj in x[i + 1:]:
            diff = (xi - xj) / hbar
            if diff.denominator == 1 and abs(diff.numerator) <= degree_cap:
                return False
    return True


def make_spec_env(N: int, degree_cap: int, seed: int) -> SpecEnv:
    """Draw a reproducible generic point for ``N`` x-variables.

    Genericity: ``hbar != 0`` and ``x_i - x_j - m*hbar != 0`` for all
    ``|m| <= degree_cap``. Draws are repeated until this holds.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if degree_cap < 0:
        raise ValueError("degree_cap must be nonnegative")
    rng = random.Random(seed)
    for _ in range(MAX_REDRAWS):
        hbar = _draw(rng)
        x = tuple(_draw(rng) for _ in range(N))
        if is_generic(x, hbar, degree_cap):
            return SpecEnv(N, x, hbar, seed, degree_cap)
    raise GenericityError(f"no generic point after {MAX_REDRAWS} draws (N={N}, cap={degree_cap})")


# -- polynomials in u -------------------------------------------------------


class UPoly:
    """Polynomial in u with exact coefficients; ``coeffs[k]`` multiplies u**k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> UPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, u) -> Fraction:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __add__(self, other: UPoly) -> UPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UPoly:
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other: UPoly) -> UPoly:
        return self + (-other)

    def __mul__(self, other) -> UPoly:
        if not isinstance(other, UPoly):
            return UPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return UPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def shift(self, c) -> UPoly:
        """The polynomial u -> p(u + c)."""
        out = UPoly()
        lin = UPoly([c, 1])
        for coeff in reversed(self.coeffs):
            out = out * lin + UPoly([coeff])
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UPoly({[scalar_str(c) for c in self.coeffs]})"


def poly_from_roots(roots: Iterable) -> UPoly:
    """Monic ``prod (u + r)`` over ``roots``."""
    out = UPoly([ONE])
    for r in roots:
        out = out * UPoly([to_scalar(r), ONE])
    return out


def lagrange_interpolate(nodes: Sequence, values: Sequence) -> UPoly:
    """Unique polynomial of degree < len(nodes) through the given points."""
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    nodes = [to_scalar(v) for v in nodes]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes are not pairwise distinct")
    out = UPoly()
    for k, (xk, yk) in enumerate(zip(nodes, values)):
        if yk == 0:
            continue
        basis = UPoly([ONE])
        denom = ONE
        for m, xm in enumerate(nodes):
            if m != k:
                basis = basis * UPoly([-xm, ONE])
                denom *= xk - xm
        out = out + basis * (to_scalar(yk) / denom)
    return out


# -- truncated series in u^{-1} ---------------------------------------------


class USeries:
    """Truncated power series in u^{-1}: ``coeffs[s]`` multiplies u**(-s).

    Coefficients with index > ``order`` are unknown and never stored.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        cs = [to_scalar(c) for c in coeffs][: order + 1]
        cs += [ZERO] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> USeries:
        return cls([ONE], order)

    @classmethod
    def from_shifted_poly(cls, poly: UPoly, shift, order: int) -> USeries:
        """``poly(u + shift) / u**deg`` for a nonzero polynomial, as a series in u^{-1}."""
        if poly.is_zero():
            raise ValueError("zero polynomial")
        shifted = poly.shift(shift).coeffs
        deg = len(shifted) - 1
        return cls([shifted[deg - s] for s in range(min(deg, order) + 1)], order)

    def __getitem__(self, s: int) -> Fraction:
        return self.coeffs[s]

    def __mul__(self, other: USeries) -> USeries:
        order = min(self.order, other.order)
        out = [ZERO] * (order + 1)
        for i, a in enumerate(self.coeffs[: order + 1]):
            if a == 0:
                continue
            for j in range(order + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return USeries(out, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        order = min(self.order, other.order)
        return self.coeffs[: order + 1] == other.coeffs[: order + 1]

    def __repr__(self) -> str:
        return f"USeries({[scalar_str(c) for c in self.coeffs]}, order={self.order})"


def series_inverse(s: USeries) -> USeries:
    """Inverse of a series with constant term 1, to the same order."""
    if s.coeffs[0] != 1:
        raise ValueError("series_inverse needs constant term 1")
    inv = [ONE]
    for m in range(1, s.order + 1):
        inv.append(-sum((s.coeffs[t] * inv[m - t] for t in range(1, m + 1)), ZERO))
    return USeries(inv, s.order)


def default_order(degree_cap: int, parts: Sequence[int]) -> int:
    return degree_cap * max(parts) + sum(parts) + 2


def elementary_symmetric(values: Sequence, r: int) -> Fraction:
    """r-th elementary symmetric polynomial evaluated at ``values``."""
    e = [ONE] + [ZERO] * r
    for v in values:
        for k in range(r, 0, -1):
            e[k] += e[k - 1] * v
    return e[r]
