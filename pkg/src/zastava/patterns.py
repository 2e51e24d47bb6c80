"""Compositions, Gelfand-Tsetlin patterns and their enumeration by degree.

A pattern is an array of nonnegative integers ``d[i, j, a]`` for
``n-1 >= i >= j >= 1`` and ``1 <= a <= p_j``. The same arrays label the
torus fixed points of based parabolic Laumon spaces; column monotonicity
``d[k, j, a] >= d[i, j, a]`` for ``i >= k >= j`` is the only constraint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .scalar import SpecEnv


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")
        if any(a > b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be weakly increasing")

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def N(self) -> int:
        return sum(self.parts)

    def p(self, i: int) -> int:
        """Part p_i, 1-based."""
        return self.parts[i - 1]

    def offset(self, j: int) -> int:
        """p_1 + ... + p_{j-1}."""
        return sum(self.parts[: j - 1])

    def partial(self, i: int) -> int:
        """p_1 + ... + p_i."""
        return sum(self.parts[:i])

    def blocks(self) -> list[range]:
        """0-based index ranges of the x-variables in each block."""
        return [range(self.offset(j), self.offset(j) + self.p(j)) for j in range(1, self.n + 1)]

    @property
    def cells(self) -> tuple[tuple[int, int, int], ...]:
        return _cells(self.parts)

    @property
    def cell_index(self) -> dict:
        return _cell_index(self.parts)

    def row_cells(self, i: int) -> tuple[tuple[int, int], ...]:
        """(j, a) pairs of row i, for any 1 <= i <= n."""
        return tuple((j, a) for j in range(1, i + 1) for a in range(1, self.p(j) + 1))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@lru_cache(maxsize=None)
def _cells(parts: tuple[int, ...]) -> tuple[tuple[int, int, int], ...]:
    n = len(parts)
    return tuple(
        (i, j, a) for i in range(1, n) for j in range(1, i + 1) for a in range(1, parts[j - 1] + 1)
    )


@lru_cache(maxsize=None)
def _cell_index(parts: tuple[int, ...]) -> dict:
    return {c: k for k, c in enumerate(_cells(parts))}


def as_composition(pi) -> Composition:
    if isinstance(pi, Composition):
        return pi
    return Composition(tuple(pi))


@dataclass(frozen=True)
class GTPattern:
    """Entries d[i, j, a] stored flat in the order of ``comp.cells``."""

    comp: Composition
    entries: tuple[int, ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.comp.parts, self.entries)))

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: GTPattern) -> bool:
        return self.entries < other.entries

    def get(self, i: int, j: int, a: int) -> int:
        return self.entries[self.comp.cell_index[(i, j, a)]]

    def row(self, i: int) -> list[int]:
        return [self.get(i, j, a) for (j, a) in self.comp.row_cells(i)]

    def shifted(self, i: int, j: int, a: int, delta: int) -> GTPattern | None:
        """Pattern with d[i, j, a] changed by delta, or None if it is invalid."""
        k = self.comp.cell_index[(i, j, a)]
        vals = list(self.entries)
        vals[k] += delta
        new = GTPattern(self.comp, tuple(vals))
        return new if is_valid(new) else None

    @property
    def key(self) -> str:
        return ";".join(f"{i},{j},{a}={v}" for (i, j, a), v in zip(self.comp.cells, self.entries))

    def to_json(self) -> dict:
        rows = {}
        n = self.comp.n
        for i in range(1, n):
            for j in range(1, i + 1):
                rows[f"{i},{j}"] = [self.get(i, j, a) for a in range(1, self.comp.p(j) + 1)]
        return {"pi": list(self.comp.parts), "rows": rows}

    @classmethod
    def from_json(cls, data: dict) -> GTPattern:
        comp = Composition(tuple(data["pi"]))
        vals = []
        for (i, j, a) in comp.cells:
            vals.append(int(data["rows"][f"{i},{j}"][a - 1]))
        pat = cls(comp, tuple(vals))
        if not is_valid(pat):
            raise ValueError("pattern violates column monotonicity")
        return pat


def zero_pattern(pi) -> GTPattern:
    comp = as_composition(pi)
    return GTPattern(comp, (0,) * len(comp.cells))


def is_valid(pat: GTPattern) -> bool:
    comp = pat.comp
    e = pat.entries
    idx = comp.cell_index
    if any(v < 0 for v in e):
        return False
    for (i, j, a), v in zip(comp.cells, e):
        if i > j and e[idx[(i - 1, j, a)]] < v:
            return False
    return True


def degree_of(pat: GTPattern) -> tuple[int, ...]:
    """Row sums d_i = sum_j |d_ij|."""
    comp = pat.comp
    out = [0] * (comp.n - 1)
    for (i, _, _), v in zip(comp.cells, pat.entries):
        out[i - 1] += v
    return tuple(out)


def _compositions_bounded(total: int, bounds: Sequence[int | None]) -> Iterator[tuple[int, ...]]:
    """Tuples of nonnegative ints with the given sum and per-slot upper bounds."""
    if not bounds:
        if total == 0:
            yield ()
        return
    first, rest = bounds[0], bounds[1:]
    top = total if first is None else min(total, first)
    # remaining slots must be able to absorb the rest
    cap_rest = None if any(b is None for b in rest) else sum(rest)
    for v in range(top, -1, -1):
        if cap_rest is not None and total - v > cap_rest:
            break
        for tail in _compositions_bounded(total - v, rest):
            yield (v,) + tail


def enumerate_patterns(pi, d: Sequence[int]) -> list[GTPattern]:
    """All patterns with row sums ``d``, in lexicographic order of entries.

    Rows are generated top to bottom; each entry of row i is bounded by the
    entry above it in the same column.
    """
    comp = as_composition(pi)
    d = tuple(int(v) for v in d)
    if len(d) != comp.n - 1:
        raise ValueError(f"degree vector has length {len(d)}, expected {comp.n - 1}")
    if any(v < 0 for v in d):
        return []
    return [GTPattern(comp, e) for e in _enumerate(comp.parts, d)]


@lru_cache(maxsize=4096)
def _enumerate(parts: tuple[int, ...], d: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    n = len(parts)
    comp = Composition(parts)
    out = []

    def rec(i: int, prev: dict, acc: list[int]):
        if i == n:
            out.append(tuple(acc))
            return
        cells = comp.row_cells(i)
        bounds = [prev.get((j, a)) if j < i else None for (j, a) in cells]
        for row in _compositions_bounded(d[i - 1], bounds):
            rec(i + 1, dict(zip(cells, row)), acc + list(row))

    rec(1, {}, [])
    return tuple(sorted(out))


def degree_vectors(n_minus_1: int, cap: int) -> list[tuple[int, ...]]:
    """All degree vectors with total at most ``cap``, by total then lexicographically."""
    out = []

    def rec(k: int, left: int, acc: tuple):
        if k == 0:
            out.append(acc)
            return
        for v in range(left + 1):
            rec(k - 1, left - v, acc + (v,))

    rec(n_minus_1, cap, ())
    return sorted(out, key=lambda t: (sum(t), tuple(-v for v in t)))


def p_value(pat: GTPattern, i: int, j: int, a: int, env: SpecEnv) -> Fraction:
    """hbar * d[i, j, a] - x_{p_1+...+p_{j-1}+a}; row n uses d = 0."""
    comp = pat.comp
    if not (1 <= j <= i <= comp.n) or not (1 <= a <= comp.p(j)):
        raise IndexError(f"no cell ({i},{j},{a}) for pi={comp.parts}")
    x = env.x[comp.offset(j) + a - 1]
    if i == comp.n:
        return -x
    return env.hbar * pat.get(i, j, a) - x


def quasiflag_dimension(pi, d: Sequence[int], based: bool = True) -> int:
    """Dimension of the (based) parabolic Laumon space of degree d."""
    comp = as_composition(pi)
    if len(d) != comp.n - 1:
        raise ValueError("degree vector has the wrong length")
    dim = sum(di * (comp.p(i) + comp.p(i + 1)) for i, di in enumerate(d, start=1))
    if not based:
        parts = comp.parts
        dim += sum(parts[a] * parts[b] for a in range(len(parts)) for b in range(a + 1, len(parts)))
    return dim
