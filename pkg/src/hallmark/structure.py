"""Subgroups, conjugacy of subgroups, normal structure and quotients.

All subgroups of one group live in that group's ``ElementTable`` and are
identified by their full element set (a boolean mask over the table).  An
"ambient" argument may be a ``PermGroup`` or a ``Subgroup`` of it, so the
same routines compute normalizers in ``N_G(HB)`` or classes inside ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

import numpy as np

from .config import COSET_DEGREE_LIMIT, BudgetExceeded, default_budget
from .perm import Permutation, PermGroup
from .table import ElementTable


class Subgroup:
    """A subgroup of ``table.group`` given by its element mask and generators.

    ``gens`` are element indices.  Equality and hashing use the element set.
    """

    __slots__ = ("table", "mask", "gens", "order", "key", "_elements", "_group")

    def __init__(self, table: ElementTable, mask: np.ndarray, gens: Iterable[int]):
        self.table = table
        mask.setflags(write=False)
        self.mask = mask
        self.gens = tuple(int(g) for g in gens if g != 0)
        self.order = int(mask.sum())
        self.key = np.packbits(mask).tobytes()
        self._elements = None
        self._group = None

    @property
    def ambient(self) -> PermGroup:
        return self.table.group

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            self._elements = np.flatnonzero(self.mask)
        return self._elements

    def sort_key(self) -> tuple:
        """Canonical key: the sorted element-index list."""
        return tuple(self.elements.tolist())

    def generators(self) -> list[Permutation]:
        return [self.table.perm(g) for g in self.gens]

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            self._group = PermGroup(self.table.degree, self.generators())
        return self._group

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, x) -> bool:
        if isinstance(x, Permutation):
            try:
                x = self.table.index(x)
            except KeyError:
                return False
        return bool(self.mask[x])

    def issubgroup(self, other: Subgroup) -> bool:
        return not (self.mask & ~other.mask).any()

    __le__ = issubgroup

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self.table is other.table and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} gens={len(self.gens)}>"


Ambient = Union[PermGroup, Subgroup]


@dataclass
class SubgroupClass:
    """A conjugacy class of subgroups; ``members`` are in canonical order."""

    representative: Subgroup
    members: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.members)

    def keys(self) -> set:
        return {m.key for m in self.members}

    def __contains__(self, H: Subgroup) -> bool:
        return any(H == m for m in self.members)


# -- construction -----------------------------------------------------------


def _closure(table: ElementTable, gens, start: np.ndarray | None = None, limit: int | None = None):
    """Closure of ``start`` (default: identity) under right multiplication by ``gens``.

    Returns None as soon as the set grows past ``limit`` elements.
    """
    if start is None:
        mask = np.zeros(table.n, dtype=bool)
        mask[0] = True
        frontier = np.array([0])
    else:
        mask = start.copy()
        frontier = np.flatnonzero(mask)
    gens = np.asarray([g for g in gens if g != 0], dtype=np.int64)
    if gens.size == 0:
        return mask
    count = int(mask.sum())
    while frontier.size:
        nxt = table.mul[np.ix_(frontier, gens)].ravel()
        nxt = nxt[~mask[nxt]]
        if nxt.size == 0:
            break
        nxt = np.unique(nxt)
        mask[nxt] = True
        count += nxt.size
        if limit is not None and count > limit:
            return None
        frontier = nxt
    return mask


def as_subgroup(G: Ambient) -> Subgroup:
    if isinstance(G, Subgroup):
        return G
    table = G.table()
    mask = np.ones(table.n, dtype=bool)
    return Subgroup(table, mask, (table.index(g) for g in G.generators))


def trivial(G: Ambient) -> Subgroup:
    table = as_subgroup(G).table
    mask = np.zeros(table.n, dtype=bool)
    mask[0] = True
    return Subgroup(table, mask, ())


def generated(table: ElementTable, gens: Iterable[int], start: Subgroup | None = None,
              limit: int | None = None) -> Subgroup | None:
    """``<start, gens>`` inside the table; None if it exceeds ``limit`` elements."""
    gens = list(start.gens if start is not None else ()) + [int(g) for g in gens]
    mask = _closure(table, gens, None if start is None else start.mask, limit)
    if mask is None:
        return None
    return Subgroup(table, mask, gens)


def from_mask(table: ElementTable, mask: np.ndarray) -> Subgroup:
    """Wrap a mask known to be a subgroup, choosing a small generating set."""
    els = np.flatnonzero(mask)
    # high-order elements first keeps generating sets short
    els = els[np.argsort(-table.orders[els], kind="stable")]
    cur = np.zeros(table.n, dtype=bool)
    cur[0] = True
    gens = []
    for x in els:
        if not cur[x]:
            gens.append(int(x))
            cur = _closure(table, gens, cur)
    if not np.array_equal(cur, mask):
        raise ValueError("mask is not closed under multiplication")
    return Subgroup(table, cur, gens)


def subgroup(G: Ambient, gens: Iterable[Permutation]) -> Subgroup:
    """The subgroup of ``G`` generated by the given permutations."""
    G = as_subgroup(G)
    idx = []
    for p in gens:
        try:
            i = G.table.index(p)
        except KeyError:
            raise ValueError(f"{p!r} is not an element of the ambient group") from None
        if not G.mask[i]:
            raise ValueError(f"{p!r} is not an element of the ambient group")
        idx.append(i)
    return generated(G.table, idx)


def _same_table(*groups: Subgroup):
    t = groups[0].table
    for H in groups[1:]:
        if H.table is not t:
            raise ValueError("subgroups belong to different ambient groups")


def _coerce(G: Subgroup, H) -> Subgroup:
    if isinstance(H, PermGroup):
        return subgroup(G, H.generators)
    _same_table(G, H)
    return H


# -- operations -------------------------------------------------------------


def join(G: Ambient, H: Subgroup, K: Subgroup) -> Subgroup:
    G = as_subgroup(G)
    H, K = _coerce(G, H), _coerce(G, K)
    if K.issubgroup(H):
        return H
    if H.issubgroup(K):
        return K
    return generated(G.table, K.gens, start=H)


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_table(H, K)
    if H.issubgroup(K):
        return H
    if K.issubgroup(H):
        return K
    return from_mask(H.table, H.mask & K.mask)


def conjugate(H: Subgroup, g) -> Subgroup:
    """``H^g = g^-1 H g``; ``g`` is an element index or a Permutation of the ambient group."""
    t = H.table
    if isinstance(g, Permutation):
        try:
            g = t.index(g)
        except KeyError:
            raise ValueError("conjugating element is outside the ambient group") from None
    if g == 0:
        return H
    mask = np.zeros(t.n, dtype=bool)
    mask[t.conj(H.elements, g)] = True
    return Subgroup(t, mask, (t.conj(x, g) for x in H.gens))


def normalizes(H: Subgroup, g: int) -> bool:
    t = H.table
    return bool(H.mask[t.conj(np.asarray(H.gens, dtype=np.int64), g)].all()) if H.gens else True


def normalizer(G: Ambient, H: Subgroup) -> Subgroup:
    """``N_G(H)`` by filtering the elements of ``G``."""
    G = as_subgroup(G)
    H = _coerce(G, H)
    t = G.table
    els = G.elements
    ok = np.ones(els.size, dtype=bool)
    for h in H.gens:
        ok &= H.mask[t.conj(h, els)]
    mask = np.zeros(t.n, dtype=bool)
    mask[els[ok]] = True
    if mask.sum() == G.order:
        return G
    return from_mask(t, mask)


def right_transversal(G: Ambient, H: Subgroup) -> list[int]:
    """Least element of each right coset ``H g`` of ``H`` in ``G``, ascending."""
    G = as_subgroup(G)
    t = G.table
    covered = np.zeros(t.n, dtype=bool)
    reps = []
    h = H.elements
    for g in G.elements:
        if not covered[g]:
            covered[t.mul[h, g]] = True
            reps.append(int(g))
    return reps


def is_normal(G: Ambient, H: Subgroup) -> bool:
    G = as_subgroup(G)
    H = _coerce(G, H)
    if not H.issubgroup(G):
        return False
    return all(normalizes(H, s) for s in G.gens)


def conjugacy_class(G: Ambient, H: Subgroup) -> SubgroupClass:
    """Orbit of ``H`` under conjugation by ``G`` (breadth-first over generators)."""
    G = as_subgroup(G)
    H = _coerce(G, H)
    seen = {H.key: H}
    queue = [H]
    for K in queue:
        for s in G.gens:
            if normalizes(K, s):
                continue
            L = conjugate(K, s)
            if L.key not in seen:
                seen[L.key] = L
                queue.append(L)
    members = sorted(seen.values(), key=Subgroup.sort_key)
    return SubgroupClass(H, members)


def conjugacy_classes(G: Ambient, subs: Iterable[Subgroup]) -> list[SubgroupClass]:
    """Partition ``subs`` (closed under G-conjugation) into classes, canonical order."""
    G = as_subgroup(G)
    done: set = set()
    out = []
    for H in sorted(subs, key=lambda S: (S.order, S.sort_key())):
        if H.key in done:
            continue
        cls = conjugacy_class(G, H)
        cls.representative = cls.members[0]
        done |= cls.keys()
        out.append(cls)
    return out


def element_classes(G: Ambient) -> list[np.ndarray]:
    G = as_subgroup(G)
    t = G.table
    seen = np.zeros(t.n, dtype=bool)
    out = []
    for x in G.elements:
        if not seen[x]:
            cls = np.unique(t.conj(x, G.elements))
            seen[cls] = True
            out.append(cls)
    return out


def cyclic_subgroups(G: Ambient, prime_power_only: bool = False) -> list[Subgroup]:
    G = as_subgroup(G)
    t = G.table
    covered = np.zeros(t.n, dtype=bool)
    out = []
    for x in G.elements:
        if covered[x]:
            continue
        n = int(t.orders[x])
        if prime_power_only and len(_prime_factors(n)) > 1:
            continue
        C = generated(t, [x])
        # every generator of <x> yields the same subgroup
        powers = [0]
        for _ in range(n - 1):
            powers.append(int(t.mul[powers[-1], x]))
        for k, y in enumerate(powers):
            if np.gcd(k, n) == 1:
                covered[y] = True
        out.append(C)
    return out


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def subgroups(G: Ambient, budget: int | None = None, start: Subgroup | None = None,
              accept: Callable[[int], bool] | None = None,
              max_order: int | None = None) -> list[Subgroup]:
    """All subgroups of ``G`` (containing ``start``, if given).

    Cyclic extension: starting from the bottom subgroup, repeatedly join with
    cyclic subgroups of prime-power order and deduplicate by element set.
    ``accept`` filters by order and must be closed under taking divisors
    (e.g. "divides m") for the search to stay complete.
    """
    budget = default_budget() if budget is None else budget
    G = as_subgroup(G)
    t = G.table
    bottom = trivial(G) if start is None else _coerce(G, start)
    cyclics = [C for C in cyclic_subgroups(G, prime_power_only=True) if C.order > 1]
    if accept is not None:
        cyclics = [C for C in cyclics if accept(C.order)]
    found = {bottom.key: bottom}
    queue = [bottom]
    for S in queue:
        for C in cyclics:
            x = C.gens[0]
            if S.mask[x]:
                continue
            T = generated(t, [x], start=S, limit=max_order)
            if T is None or T.key in found:
                continue
            if accept is not None and not accept(T.order):
                continue
            found[T.key] = T
            queue.append(T)
            if len(found) > budget:
                raise BudgetExceeded(f"more than {budget} subgroups")
    return sorted(found.values(), key=lambda S: (S.order, S.sort_key()))


def normal_closure(G: Ambient, xs: Iterable[int]) -> Subgroup:
    G = as_subgroup(G)
    t = G.table
    cur = trivial(G)
    for x in xs:
        for y in np.unique(t.conj(int(x), G.elements)):
            if not cur.mask[y]:
                cur = generated(t, [int(y)], start=cur)
    return cur


def normal_subgroups(G: Ambient) -> list[Subgroup]:
    """Every normal subgroup of ``G``, as products of normal closures of classes."""
    G = as_subgroup(G)
    t = G.table
    closures: dict = {}
    for cls in element_classes(G):
        if cls[0] == 0:
            continue
        N = normal_closure(G, [cls[0]])
        closures.setdefault(N.key, N)
    ncs = sorted(closures.values(), key=lambda S: (S.order, S.sort_key()))
    bottom = trivial(G)
    found = {bottom.key: bottom}
    queue = [bottom]
    for N in queue:
        for C in ncs:
            if C.issubgroup(N):
                continue
            J = generated(t, C.gens, start=N)
            if J.key not in found:
                found[J.key] = J
                queue.append(J)
    return sorted(found.values(), key=lambda S: (S.order, S.sort_key()))


def minimal_normal_in(G: Ambient, A: Subgroup) -> Subgroup:
    """Least-order nontrivial normal subgroup of ``G`` inside ``A``; ties by canonical key."""
    G = as_subgroup(G)
    A = _coerce(G, A)
    if A.is_trivial():
        raise ValueError("A is trivial; it contains no minimal normal subgroup")
    if not is_normal(G, A):
        raise ValueError("A is not normal in G")
    cands = [N for N in normal_subgroups(G) if N.order > 1 and N.issubgroup(A)]
    return min(cands, key=lambda S: (S.order, S.sort_key()))


# -- quotients --------------------------------------------------------------


class Epimorphism:
    """``G -> G/B`` realized by the action of ``G`` on the right cosets of ``B``."""

    def __init__(self, source: Subgroup, kernel: Subgroup, target: PermGroup,
                 reps: np.ndarray, fwd: np.ndarray):
        self.source = source
        self.kernel = kernel
        self.target = target
        self.reps = reps
        self._fwd = fwd

    @property
    def target_table(self) -> ElementTable:
        return self.target.table()

    def whole_target(self) -> Subgroup:
        return as_subgroup(self.target)

    def image(self, g) -> Permutation:
        if isinstance(g, Permutation):
            g = self.source.table.index(g)
        return self.target_table.perm(int(self._fwd[g]))

    def forward_index(self, g: int) -> int:
        return int(self._fwd[g])

    def forward(self, H: Subgroup) -> Subgroup:
        _same_table(self.source, H)
        tt = self.target_table
        mask = np.zeros(tt.n, dtype=bool)
        mask[self._fwd[H.elements]] = True
        return Subgroup(tt, mask, self._fwd[list(H.gens)] if H.gens else ())

    def preimage(self, Kbar: Subgroup) -> Subgroup:
        if Kbar.table is not self.target_table:
            raise ValueError("subgroup does not belong to the quotient")
        src = self.source
        els = src.elements
        mask = np.zeros(src.table.n, dtype=bool)
        mask[els[Kbar.mask[self._fwd[els]]]] = True
        lifts = [int(els[np.argmax(self._fwd[els] == y)]) for y in Kbar.gens]
        K = generated(src.table, lifts, start=self.kernel)
        if not np.array_equal(K.mask, mask) or K.order != self.kernel.order * Kbar.order:
            raise AssertionError("preimage generators do not span the full preimage")
        return K


def quotient(G: Ambient, B: Subgroup, max_index: int = COSET_DEGREE_LIMIT) -> Epimorphism:
    G = as_subgroup(G)
    B = _coerce(G, B)
    if not is_normal(G, B):
        raise ValueError("B is not a normal subgroup of G")
    t = G.table
    index = G.order // B.order
    if index > max_index:
        raise BudgetExceeded(f"coset action of degree {index} exceeds the limit {max_index}")
    label = np.full(t.n, -1, dtype=np.int64)
    reps = []
    b = B.elements
    for g in G.elements:
        if label[g] < 0:
            label[t.mul[b, g]] = len(reps)
            reps.append(int(g))
    reps = np.asarray(reps, dtype=np.int64)
    gens = []
    for s in G.gens:
        p = Permutation(label[t.mul[reps, s]].tolist(), check=False)
        if not p.is_identity() and p not in gens:
            gens.append(p)
    target = PermGroup(index, gens)
    target.name = "quotient"
    tt = target.table()
    fwd = np.full(t.n, -1, dtype=np.int64)
    rows = label[t.mul[np.ix_(reps, G.elements)]].T
    fwd[G.elements] = tt.lookup(rows)
    if not np.array_equal(fwd[G.elements] == 0, B.mask[G.elements]):
        raise AssertionError("coset action kernel differs from B")
    return Epimorphism(G, B, target, reps, fwd)


def stabilizer(G: Ambient, points: Iterable[int], setwise: bool = False) -> Subgroup:
    """Pointwise (or setwise) stabilizer of ``points`` in ``G``."""
    G = as_subgroup(G)
    t = G.table
    pts = np.asarray(sorted(set(points)), dtype=np.int64)
    imgs = t.array[G.elements][:, pts]
    if setwise:
        ok = np.isin(imgs, pts).all(axis=1)
    else:
        ok = (imgs == pts).all(axis=1)
    mask = np.zeros(t.n, dtype=bool)
    mask[G.elements[ok]] = True
    return from_mask(t, mask)
