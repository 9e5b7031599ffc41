"""Deterministic constructors for the test groups, and the group file format.

File format (text)::

    degree 4
    name S4
    (1 2 3 4)
    (1 2)

Generators are written one per line in 1-indexed disjoint-cycle notation;
``()`` is the identity.  Lines starting with ``#`` are comments.  The JSON
mirror is ``{"degree": N, "name": S, "generators": [[[1, 2, 3, 4]], [[1, 2]]]}``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .config import DEGREE_LIMIT
from .perm import Permutation, PermGroup
from .structure import Subgroup, as_subgroup, intersection, normal_subgroups, stabilizer, subgroup


class GroupFileError(ValueError):
    """Malformed group file or cycle notation."""


def _check_degree(degree: int):
    if not 1 <= degree <= DEGREE_LIMIT:
        raise ValueError(f"degree {degree} outside 1..{DEGREE_LIMIT}")


def _named(group: PermGroup, name: str) -> PermGroup:
    group.name = name
    return group


# -- families ---------------------------------------------------------------


def cyclic(n: int) -> PermGroup:
    _check_degree(n)
    gens = [Permutation([(i + 1) % n for i in range(n)])] if n > 1 else []
    return _named(PermGroup(n, gens), f"C{n}")


def dihedral(n: int) -> PermGroup:
    """Symmetries of the regular n-gon on its n vertices (order 2n, n >= 3)."""
    if n < 3:
        raise ValueError("dihedral(n) needs n >= 3 for a faithful action on n points")
    _check_degree(n)
    rot = Permutation([(i + 1) % n for i in range(n)])
    ref = Permutation([(-i) % n for i in range(n)])
    return _named(PermGroup(n, [rot, ref]), f"D{2 * n}")


def symmetric(n: int) -> PermGroup:
    _check_degree(n)
    gens = []
    if n > 1:
        gens.append(Permutation([(i + 1) % n for i in range(n)]))
    if n > 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    return _named(PermGroup(n, gens), f"S{n}")


def alternating(n: int) -> PermGroup:
    _check_degree(n)
    gens = [Permutation.from_cycles(n, [(0, 1, i)]) for i in range(2, n)]
    return _named(PermGroup(n, gens), f"A{n}")


def make_named(family: str, n: int) -> PermGroup:
    makers = {"cyclic": cyclic, "dihedral": dihedral,
              "symmetric": symmetric, "alternating": alternating}
    if family not in makers:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("n must be positive")
    return makers[family](n)


def klein_four() -> PermGroup:
    gens = [Permutation.from_cycles(4, [(0, 1), (2, 3)]),
            Permutation.from_cycles(4, [(0, 2), (1, 3)])]
    return _named(PermGroup(4, gens), "V4")


# -- products ---------------------------------------------------------------


def direct_product(groups: list[PermGroup]) -> PermGroup:
    """Action on the disjoint union of the factors' point sets."""
    if not groups:
        raise ValueError("direct product of an empty list")
    degree = sum(G.degree for G in groups)
    gens, offset = [], 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            for i, x in enumerate(g.images):
                images[offset + i] = offset + x
            gens.append(Permutation(images, check=False))
        offset += G.degree
    name = " x ".join(G.name or "?" for G in groups)
    return _named(PermGroup(degree, gens), name)


def factor_subgroups(P: PermGroup, factors: list[PermGroup]) -> list[Subgroup]:
    """The factor copies inside a ``direct_product(factors)``."""
    out = []
    gens = list(P.generators)
    for G in factors:
        k = len(G.generators)
        out.append(subgroup(P, gens[:k]))
        gens = gens[k:]
    return out


def wreath_product(X: PermGroup, p: int) -> PermGroup:
    """``X wr Z_p`` in its imprimitive action on ``p`` blocks of ``X.degree`` points."""
    if p < 2 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not a prime")
    d = X.degree
    degree = p * d
    if degree > DEGREE_LIMIT:
        raise ValueError(f"wreath product degree {degree} exceeds {DEGREE_LIMIT}")
    gens = []
    for g in X.generators:
        gens.append(Permutation(list(g.images) + list(range(d, degree)), check=False))
    shift = [(i + d) % degree for i in range(degree)]
    gens.append(Permutation(shift, check=False))
    return _named(PermGroup(degree, gens), f"{X.name or 'X'} wr Z{p}")


def wreath_base(W: PermGroup, X: PermGroup, p: int) -> PermGroup:
    """The base group ``X^p`` of ``wreath_product(X, p)`` as a PermGroup."""
    d = X.degree
    gens = []
    for k in range(p):
        for g in X.generators:
            images = list(range(p * d))
            for i, x in enumerate(g.images):
                images[k * d + i] = k * d + x
            gens.append(Permutation(images, check=False))
    return PermGroup(W.degree, gens)


# -- GL(3, 2) and its extension by inverse-transpose ------------------------

# F_2^3 vectors are encoded as integers 1..7 (bit i = coordinate i); point v-1 is vector v.
GL32_MATRICES = {
    # cyclic shift of coordinates and the transvection adding row 2 to row 1
    "shift": ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    "transvection": ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
}


def _vec(v: int) -> tuple:
    return tuple((v >> i) & 1 for i in range(3))


def _code(vec) -> int:
    return sum((x & 1) << i for i, x in enumerate(vec))


def _row_times(v, m):
    return tuple(sum(v[i] * m[i][j] for i in range(3)) % 2 for j in range(3))


def _mat_times_col(m, w):
    return tuple(sum(m[i][j] * w[j] for j in range(3)) % 2 for i in range(3))


def mat_mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) % 2 for j in range(3))
                 for i in range(3))


def mat_transpose(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def mat_inverse(m):
    """Inverse over F_2 by search; the group is tiny."""
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for bits in product((0, 1), repeat=9):
        cand = (bits[0:3], bits[3:6], bits[6:9])
        if mat_mul(m, cand) == ident:
            return cand
    raise ValueError("singular matrix")


def row_action(m) -> list[int]:
    """Images of the 7 points under ``v -> v m``."""
    return [_code(_row_times(_vec(v), m)) - 1 for v in range(1, 8)]


def column_action(m) -> list[int]:
    """Images of the 7 column vectors under ``w -> m^-1 w``."""
    inv = mat_inverse(m)
    return [_code(_mat_times_col(inv, _vec(w))) - 1 for w in range(1, 8)]


def make_gl32() -> PermGroup:
    gens = [Permutation(row_action(m)) for m in GL32_MATRICES.values()]
    return _named(PermGroup(7, gens), "GL(3,2)")


def extension_matrix_element(m) -> Permutation:
    """A matrix acting on rows (points 0-6) and on columns (points 7-13)."""
    return Permutation(row_action(m) + [7 + x for x in column_action(m)])


def extension_tau() -> Permutation:
    """Swap each row vector with the column vector carrying the same coordinates."""
    return Permutation([i + 7 for i in range(7)] + list(range(7)))


def make_gl32_extension() -> tuple[PermGroup, Subgroup]:
    """``GL(3,2) : <inverse-transpose>`` on 14 points, and its normal subgroup GL(3,2)."""
    a_gens = [extension_matrix_element(m) for m in GL32_MATRICES.values()]
    G = _named(PermGroup(14, a_gens + [extension_tau()]), "GL(3,2):2")
    A = subgroup(G, a_gens)
    return G, A


# -- corpus -----------------------------------------------------------------


@dataclass
class CorpusEntry:
    name: str
    constructor: str
    params: tuple
    expected_order: int
    notes: str = ""
    factors: list = field(default_factory=list)

    def build(self) -> PermGroup:
        G = _CONSTRUCTORS[self.constructor](*self.params)
        if isinstance(G, tuple):
            G = G[0]
        G.name = self.name
        if G.order() != self.expected_order:
            raise AssertionError(f"{self.name}: order {G.order()} != {self.expected_order}")
        return G


def _dp(*names):
    return direct_product([builtin(n) for n in names])


_CONSTRUCTORS: dict[str, Callable] = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
    "alternating": alternating,
    "klein_four": klein_four,
    "direct_product": _dp,
    "wreath": lambda x, p: wreath_product(builtin(x), p),
    "gl32": make_gl32,
    "gl32_extension": make_gl32_extension,
}


def default_corpus() -> list[CorpusEntry]:
    out = []
    for n in range(1, 31):
        out.append(CorpusEntry(f"c{n}", "cyclic", (n,), n))
    for n in range(3, 13):
        out.append(CorpusEntry(f"d{n}", "dihedral", (n,), 2 * n))
    for n in range(2, 6):
        out.append(CorpusEntry(f"s{n}", "symmetric", (n,), math.factorial(n)))
    for n in range(4, 7):
        out.append(CorpusEntry(f"a{n}", "alternating", (n,), math.factorial(n) // 2))
    out += [
        CorpusEntry("v4", "klein_four", (), 4),
        CorpusEntry("a4xc2", "direct_product", ("a4", "c2"), 24, factors=["a4", "c2"]),
        CorpusEntry("s3xs3", "direct_product", ("s3", "s3"), 36, "Lemma 12 instance",
                    factors=["s3", "s3"]),
        CorpusEntry("a5xa5", "direct_product", ("a5", "a5"), 3600, "Lemma 12 instance",
                    factors=["a5", "a5"]),
        CorpusEntry("c2wrz2", "wreath", ("c2", 2), 8),
        CorpusEntry("s3wrz2", "wreath", ("s3", 2), 72),
        CorpusEntry("gl32", "gl32", (), 168, "two fused Hall {2,3} classes"),
        CorpusEntry("gl32ext", "gl32_extension", (), 336, "not in E_{2,3}"),
    ]
    return out


_FAMILY = re.compile(r"^([cdsa])(\d+)$")
_FAMILIES = {"c": "cyclic", "d": "dihedral", "s": "symmetric", "a": "alternating"}
_SPECIAL = {
    "v4": klein_four,
    "gl32": make_gl32,
    "gl32ext": lambda: make_gl32_extension()[0],
    "a4xc2": lambda: _dp("a4", "c2"),
    "s3xs3": lambda: _dp("s3", "s3"),
    "a5xa5": lambda: _dp("a5", "a5"),
    "c2wrz2": lambda: wreath_product(cyclic(2), 2),
    "s3wrz2": lambda: wreath_product(symmetric(3), 2),
    "gl32wrz5": lambda: wreath_product(make_gl32(), 5),
}


def builtin_names() -> list[str]:
    return sorted(_SPECIAL) + ["cN", "dN", "sN", "aN"]


def builtin(name: str) -> PermGroup:
    """A corpus constructor by short name: ``s4``, ``a5``, ``gl32ext``, ``d6``, ..."""
    key = name.lower()
    if key in _SPECIAL:
        G = _SPECIAL[key]()
    else:
        m = _FAMILY.match(key)
        if not m:
            raise ValueError(f"unknown builtin group {name!r}")
        G = make_named(_FAMILIES[m.group(1)], int(m.group(2)))
    G.name = key
    return G


# -- group files ------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, degree: int) -> Permutation:
    """Parse 1-indexed disjoint-cycle notation such as ``(1 2 3)(4 5)``."""
    s = text.strip()
    if not s or _CYCLE.sub("", s).strip():
        raise GroupFileError(f"malformed cycle notation: {text!r}")
    cycles, seen = [], set()
    for body in _CYCLE.findall(s):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        if not all(t.isdigit() for t in tokens):
            raise GroupFileError(f"malformed cycle notation: {text!r}")
        pts = [int(t) for t in tokens]
        for x in pts:
            if not 1 <= x <= degree:
                raise GroupFileError(f"point {x} out of range 1..{degree}")
            if x in seen:
                raise GroupFileError(f"point {x} repeated in {text!r}")
            seen.add(x)
        if len(pts) > 1:
            cycles.append([x - 1 for x in pts])
    return Permutation.from_cycles(degree, cycles)


def format_perm(p: Permutation) -> str:
    """Canonical 1-indexed disjoint-cycle form; ``()`` for the identity."""
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in p.cycles()) or "()"


def parse_gens(text: str, degree: int) -> list[Permutation]:
    """Semicolon-separated generators, as given on the command line."""
    gens = [parse_perm(part, degree) for part in text.split(";") if part.strip()]
    return [g for g in gens if not g.is_identity()]


def parse_group(text: str) -> PermGroup:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return group_from_json(json.loads(stripped))
    degree, name, gens = None, None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise GroupFileError(f"line {lineno}: expected 'degree N'")
            degree = int(m.group(1))
            if not 1 <= degree <= DEGREE_LIMIT:
                raise GroupFileError(f"degree {degree} outside 1..{DEGREE_LIMIT}")
            continue
        m = re.fullmatch(r"name\s+(.+)", line)
        if m and name is None and not gens:
            name = m.group(1).strip()
            continue
        try:
            g = parse_perm(line, degree)
        except GroupFileError as exc:
            raise GroupFileError(f"line {lineno}: {exc}") from None
        if not g.is_identity():
            gens.append(g)
    if degree is None:
        raise GroupFileError("missing 'degree N' line")
    G = PermGroup(degree, gens)
    G.name = name
    return G


def emit_group(G: PermGroup, name: str | None = None) -> str:
    lines = [f"degree {G.degree}"]
    name = name if name is not None else G.name
    if name:
        lines.append(f"name {name}")
    gens = [g for g in G.generators if not g.is_identity()]
    lines += [format_perm(g) for g in gens] or ["()"]
    return "\n".join(lines) + "\n"


def group_to_json(G: PermGroup) -> dict:
    gens = [[[x + 1 for x in c] for c in g.cycles()] for g in G.generators if not g.is_identity()]
    return {"degree": G.degree, "name": G.name, "generators": gens}


def group_from_json(data: dict) -> PermGroup:
    try:
        degree = int(data["degree"])
        raw = data.get("generators", [])
    except (KeyError, TypeError, ValueError):
        raise GroupFileError("JSON group needs 'degree' and 'generators'") from None
    if not 1 <= degree <= DEGREE_LIMIT:
        raise GroupFileError(f"degree {degree} outside 1..{DEGREE_LIMIT}")
    gens = []
    for cycles in raw:
        text = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles) or "()"
        g = parse_perm(text, degree)
        if not g.is_identity():
            gens.append(g)
    G = PermGroup(degree, gens)
    G.name = data.get("name")
    return G


def named_subgroups(name: str, G: PermGroup) -> dict[str, Subgroup]:
    """Subgroups of some builtins that are referred to by name on the command line."""
    key = name.lower()
    out: dict[str, Subgroup] = {}
    if key == "s4":
        normals = normal_subgroups(G)
        out["V4"] = next(N for N in normals if N.order == 4)
        out["A4"] = next(N for N in normals if N.order == 12)
    elif key == "a5":
        out["A4"] = stabilizer(G, [4])
    elif key in ("gl32", "gl32ext"):
        A = as_subgroup(G)
        if key == "gl32ext":
            A = next(N for N in normal_subgroups(G) if N.order == 168)
            out["A"] = A
            # the stabilizer of a column vector fixes the plane orthogonal to it
            out["H2"] = intersection(A, stabilizer(G, [7]))
        else:
            # row vectors with first coordinate 0 form a plane
            out["H2"] = stabilizer(G, [v - 1 for v in range(1, 8) if not v & 1], setwise=True)
        out["H1"] = intersection(A, stabilizer(G, [0]))
    return out
