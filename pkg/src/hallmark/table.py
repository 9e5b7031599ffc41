"""Dense element tables for groups small enough to enumerate.

Elements are numbered in lexicographic order of their image tables, so the
identity is always element 0.  ``mul[a, b]`` is the index of ``a * b``.
"""

from __future__ import annotations

import numpy as np

from .config import TABLE_CAP, BudgetExceeded
from .perm import Permutation


class ElementTable:
    def __init__(self, group, cap: int = TABLE_CAP):
        n = group.order()
        if n > cap:
            raise BudgetExceeded(f"group of order {n} exceeds the table cap {cap}")
        self.group = group
        self.n = n
        self.degree = group.degree
        self.array = group.element_array(cap)
        self.base = group.base or [0]
        self._setup_codes()
        dtype = np.int16 if n < 2**15 else np.int32
        sub = self.array[:, self.base]
        mul = np.empty((n, n), dtype=dtype)
        for b in range(n):
            # base images of a*b are b's images of a's base images
            mul[:, b] = self._lookup_codes(self._encode(self.array[b][sub]))
        self.mul = mul
        self.mul.setflags(write=False)
        self.inv = np.argmax(mul == 0, axis=1).astype(dtype)
        self.orders = self._element_orders()

    def _setup_codes(self):
        d, b = self.degree, len(self.base)
        self._radix = None
        if b * np.log2(max(d, 2)) < 62:
            self._radix = (d ** np.arange(b, dtype=np.int64)).astype(np.int64)
        codes = self._encode(self.array[:, self.base])
        if self._radix is None:
            self._code_index = {c: i for i, c in enumerate(codes)}
        else:
            self._order = np.argsort(codes, kind="stable")
            self._sorted = codes[self._order]

    def _encode(self, rows: np.ndarray):
        if self._radix is not None:
            return rows.astype(np.int64) @ self._radix
        return [r.tobytes() for r in rows.astype(np.int16)]

    def _lookup_codes(self, codes) -> np.ndarray:
        if self._radix is None:
            return np.array([self._code_index[c] for c in codes], dtype=np.int64)
        pos = np.searchsorted(self._sorted, codes)
        pos = np.minimum(pos, self.n - 1)
        if not np.array_equal(self._sorted[pos], codes):
            raise KeyError("permutation not in group")
        return self._order[pos]

    def _element_orders(self) -> np.ndarray:
        orders = np.zeros(self.n, dtype=np.int64)
        idx = np.arange(self.n)
        cur = idx.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                return orders
            cur = self.mul[cur, idx]
            k += 1

    # -- conversions ------------------------------------------------------

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Indices of full image rows; raises KeyError for non-members."""
        rows = np.asarray(rows)
        idx = self._lookup_codes(self._encode(rows[:, self.base]))
        if not np.array_equal(self.array[idx], rows):
            raise KeyError("permutation not in group")
        return idx

    def index(self, p: Permutation) -> int:
        if p.degree != self.degree:
            raise ValueError("degree mismatch")
        return int(self.lookup(np.array([p.images]))[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.array[i].tolist(), check=False)

    def conj(self, x, g):
        """Index (or index array) of ``g^-1 x g``."""
        return self.mul[self.mul[self.inv[g], x], g]
