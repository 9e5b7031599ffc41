"""Permutations and permutation groups.

Points are ``0 .. degree-1``.  A permutation is stored as its image table and
acts on the right: ``p * q`` applies ``p`` first, then ``q``, so that
``(i^p)^q == i^(p*q)`` and ``h ** g`` style conjugation reads ``g^-1 h g``.

Group order and membership come from a deterministic Schreier-Sims stabilizer
chain, built on first use.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import ELEMENT_CAP, BudgetExceeded


def _compose(p: tuple, q: tuple) -> tuple:
    return tuple([q[x] for x in p])


def _invert(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


class Permutation:
    """A bijection of ``range(degree)`` given by its image table."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(x) for x in images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images) - 1}: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 0-indexed disjoint cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for x in cycle:
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in cycle notation")
                seen.add(x)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a] = b
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise ValueError("degree mismatch in composition")
        return Permutation(_compose(self.images, other.images), check=False)

    def inverse(self) -> Permutation:
        return Permutation(_invert(self.images), check=False)

    def __pow__(self, n: int) -> Permutation:
        base = self if n >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        n = abs(n)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: Permutation) -> Permutation:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point, sorted by that point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        return f"Permutation.from_cycles({self.degree}, {body})"


@dataclass
class _Level:
    point: int
    gens: list
    transversal: dict  # orbit point -> u with u[point] == orbit point
    inverses: dict


def _build_level(point: int, gens: list, degree: int) -> _Level:
    ident = tuple(range(degree))
    trans = {point: ident}
    queue = [point]
    for beta in queue:
        u = trans[beta]
        for s in gens:
            gamma = s[beta]
            if gamma not in trans:
                trans[gamma] = _compose(u, s)
                queue.append(gamma)
    return _Level(point, gens, trans, {b: _invert(u) for b, u in trans.items()})


def _strip(g: tuple, levels: list, start: int = 0) -> tuple[tuple, int]:
    for j in range(start, len(levels)):
        lv = levels[j]
        beta = g[lv.point]
        if beta not in lv.transversal:
            return g, j
        g = _compose(g, lv.inverses[beta])
    return g, len(levels)


def _schreier_sims(degree: int, gens: list[tuple]) -> list[_Level]:
    ident = tuple(range(degree))
    strong = []
    for g in gens:
        if g != ident and g not in strong:
            strong.append(g)
    base: list[int] = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(degree) if g[i] != i))

    def fixes(g, pts):
        return all(g[b] == b for b in pts)

    levels = [
        _build_level(b, [g for g in strong if fixes(g, base[:i])], degree)
        for i, b in enumerate(base)
    ]
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        found = None
        for beta, u in lv.transversal.items():
            for s in lv.gens:
                gamma = s[beta]
                sg = _compose(_compose(u, s), lv.inverses[gamma])
                if sg == ident:
                    continue
                h, j = _strip(sg, levels, i + 1)
                if j < len(levels) or h != ident:
                    found = (h, j)
                    break
            if found:
                break
        if found is None:
            i -= 1
            continue
        h, j = found
        if j == len(levels):
            point = next(x for x in range(degree) if h[x] != x)
            levels.append(_Level(point, [], {}, {}))
        for l in range(i + 1, j + 1):
            gens_l = levels[l].gens + [h]
            levels[l] = _build_level(levels[l].point, gens_l, degree)
        i = j
    return levels


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built lazily (and under a lock) by ``finalize``;
    after that the group is read-only and safe to share.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = ()):
        if degree < 1:
            raise ValueError("degree must be positive")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens
        self.name: str | None = None
        self._levels: list[_Level] | None = None
        self._order: int | None = None
        self._table = None
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    # -- stabilizer chain -------------------------------------------------

    def finalize(self) -> PermGroup:
        with self._lock:
            if self._levels is None:
                self._levels = _schreier_sims(self.degree, [g.images for g in self.generators])
                self._order = math.prod(len(lv.transversal) for lv in self._levels)
        return self

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.finalize()._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        seen = []
        for lv in self.finalize()._levels:
            for g in lv.gens:
                if g not in seen:
                    seen.append(g)
        return [Permutation(g, check=False) for g in seen]

    @property
    def basic_orbits(self) -> list[list[int]]:
        return [list(lv.transversal) for lv in self.finalize()._levels]

    def order(self) -> int:
        self.finalize()
        return self._order

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError("degree mismatch in membership test")
        h, j = _strip(p.images, self.finalize()._levels)
        return j == len(self._levels) and h == tuple(range(self.degree))

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # -- enumeration ------------------------------------------------------

    def element_array(self, cap: int = ELEMENT_CAP) -> np.ndarray:
        """All elements as rows of an ``(order, degree)`` array, sorted lexicographically."""
        n = self.order()
        if n > cap:
            raise BudgetExceeded(f"group of order {n} exceeds the element cap {cap}")
        dtype = np.int16 if self.degree < 2**15 else np.int32
        arr = np.arange(self.degree, dtype=dtype)[None, :]
        for lv in reversed(self._levels):
            us = np.array(list(lv.transversal.values()), dtype=dtype)
            # rows a*u for every current a and every coset representative u
            arr = us[:, arr].transpose(1, 0, 2).reshape(-1, self.degree)
        order = np.lexsort(arr.T[::-1])
        return np.ascontiguousarray(arr[order])

    def elements(self, cap: int = ELEMENT_CAP) -> list[Permutation]:
        return [Permutation(row.tolist(), check=False) for row in self.element_array(cap)]

    def orbit(self, point: int) -> set[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def orbits(self) -> list[list[int]]:
        out, covered = [], set()
        for x in range(self.degree):
            if x not in covered:
                orb = sorted(self.orbit(x))
                covered.update(orb)
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def table(self):
        """Dense multiplication table (built once, see ``hallmark.table``)."""
        with self._lock:
            if self._table is None:
                from .table import ElementTable

                self._table = ElementTable(self)
            return self._table


def group_from_generators(degree: int, gens: Iterable[Permutation]) -> PermGroup:
    return PermGroup(degree, gens)
