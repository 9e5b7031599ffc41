"""Hall subgroups, pi-separability and (strong) pronormality."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .perm import PermGroup
from .structure import (
    Ambient,
    Subgroup,
    as_subgroup,
    conjugacy_class,
    conjugacy_classes,
    conjugate,
    generated,
    intersection,
    is_normal,
    join,
    normal_subgroups,
    normalizer,
    normalizes,
    quotient,
    right_transversal,
    subgroups,
    trivial,
    _coerce,
    _prime_factors,
)


def is_prime(n: int) -> bool:
    return n >= 2 and _prime_factors(n) == [n]


@dataclass(frozen=True)
class PrimeSet:
    """A set of primes; membership of any other prime means membership in the complement."""

    primes: tuple = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not a prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def parse(cls, text: str) -> PrimeSet:
        parts = [s for s in text.replace(" ", "").split(",") if s]
        try:
            values = [int(s) for s in parts]
        except ValueError:
            raise ValueError(f"primes must be integers: {text!r}") from None
        if len(values) != len(set(values)):
            raise ValueError(f"repeated prime in {text!r}")
        return cls(tuple(values))

    @classmethod
    def of(cls, n: int) -> PrimeSet:
        """The prime divisors of ``n``."""
        return cls(tuple(_prime_factors(n)))

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self) -> int:
        return len(self.primes)

    def is_pi_number(self, n: int) -> bool:
        return all(p in self for p in _prime_factors(n))

    def is_pi_prime_number(self, n: int) -> bool:
        """True when no prime of this set divides ``n``."""
        return all(p not in self for p in _prime_factors(n))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.primes)) + "}"


def pi_part(n: int, pi: PrimeSet) -> int:
    """Largest divisor of ``n`` all of whose prime factors lie in ``pi``."""
    if n < 1:
        raise ValueError("n must be positive")
    m = 1
    for p in pi:
        while n % p == 0:
            n //= p
            m *= p
    return m


def is_hall_subgroup(G: Ambient, H: Subgroup, pi: PrimeSet) -> bool:
    G = as_subgroup(G)
    H = _coerce(G, H)
    if not H.issubgroup(G):
        raise ValueError("H is not a subgroup of G")
    return H.order == pi_part(G.order, pi)


def sylow_subgroup(G: Ambient, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown inside successive normalizers."""
    G = as_subgroup(G)
    t = G.table
    target = pi_part(G.order, PrimeSet((p,)))
    P = trivial(G)
    while P.order < target:
        N = normalizer(G, P)
        els = N.elements
        ords = t.orders[els]
        is_p = np.array([o > 1 and pi_part(int(o), PrimeSet((p,))) == o for o in ords])
        cand = els[is_p & ~P.mask[els]]
        # x normalizes P and is a p-element, so P<x> is a larger p-subgroup
        P = generated(t, [int(cand[0])], start=P)
    return P


@dataclass
class HallReport:
    pi: PrimeSet
    hall_order: int
    classes: list
    satisfies_E: bool = field(init=False)
    satisfies_C: bool = field(init=False)

    def __post_init__(self):
        self.satisfies_E = bool(self.classes)
        self.satisfies_C = len(self.classes) == 1

    def members(self) -> list[Subgroup]:
        return [H for cls in self.classes for H in cls.members]

    def representatives(self) -> list[Subgroup]:
        return [cls.representative for cls in self.classes]


def _trivial_cases(G: Subgroup, m: int):
    if m == 1:
        return [trivial(G)]
    if m == G.order:
        return [G]
    return None


def hall_subgroups(G: Ambient, pi: PrimeSet) -> HallReport:
    """All pi-Hall subgroups of ``G`` grouped into ``G``-classes.

    Every pi-Hall subgroup is generated by one Sylow subgroup of ``G`` for each
    prime of ``pi`` dividing ``|G|``; up to conjugacy the first Sylow subgroup can
    be fixed, so only joins with the remaining Sylow classes are searched.
    Intermediate joins whose order does not divide the Hall order are pruned.
    """
    G = as_subgroup(G)
    m = pi_part(G.order, pi)
    found = _trivial_cases(G, m)
    if found is None:
        t = G.table
        primes = sorted((p for p in pi if G.order % p == 0),
                        key=lambda p: (-pi_part(G.order, PrimeSet((p,))), p))
        level = [sylow_subgroup(G, primes[0])]
        for p in primes[1:]:
            sylows = conjugacy_class(G, sylow_subgroup(G, p)).members
            nxt: dict = {}
            for T in level:
                for P in sylows:
                    J = T if P.issubgroup(T) else generated(t, P.gens, start=T, limit=m)
                    if J is None or m % J.order:
                        continue
                    nxt.setdefault(J.key, J)
            level = sorted(nxt.values(), key=Subgroup.sort_key)
        found = [T for T in level if T.order == m]
    return HallReport(pi, m, conjugacy_classes(G, found))


def hall_subgroups_by_filter(G: Ambient, pi: PrimeSet, budget: int | None = None) -> HallReport:
    """Reference route: filter the complete subgroup list by order."""
    G = as_subgroup(G)
    m = pi_part(G.order, pi)
    subs = subgroups(G, budget, accept=lambda k: m % k == 0, max_order=m)
    return HallReport(pi, m, conjugacy_classes(G, [H for H in subs if H.order == m]))


def satisfies_E(G: Ambient, pi: PrimeSet) -> bool:
    return hall_subgroups(G, pi).satisfies_E


# -- pi-separability ----------------------------------------------------------


def _largest_normal(G: Subgroup, ok) -> Subgroup:
    # the product of all normal subgroups with the property is the largest one
    cands = [N for N in normal_subgroups(G) if ok(N.order)]
    return max(cands, key=lambda N: N.order)


def pi_series(G: Ambient, pi: PrimeSet) -> list[tuple[str, int]] | None:
    """Factor orders of the reduction by O_pi / O_pi', or None if it stalls."""
    cur = as_subgroup(G)
    steps = []
    while cur.order > 1:
        N = _largest_normal(cur, pi.is_pi_number)
        kind = "pi"
        if N.is_trivial():
            N = _largest_normal(cur, pi.is_pi_prime_number)
            kind = "pi'"
        if N.is_trivial():
            return None
        steps.append((kind, N.order))
        cur = quotient(cur, N).whole_target()
    return steps


def is_pi_separable(G: Ambient, pi: PrimeSet) -> bool:
    return pi_series(G, pi) is not None


# -- pronormality -------------------------------------------------------------


@dataclass
class PronormalityWitness:
    """Per coset representative ``g``: a conjugator ``x`` in ``<H, H^g>``, or None."""

    subject: Subgroup
    verdict: bool
    trace: list = field(default_factory=list)  # (g, x) element indices

    def failing(self) -> int | None:
        for g, x in self.trace:
            if x is None:
                return g
        return None

    def __bool__(self) -> bool:
        return self.verdict


def find_conjugator(J: Subgroup, H: Subgroup, target: Subgroup) -> int | None:
    """Some ``x`` in ``J`` with ``H^x == target``, by the J-orbit of ``H``."""
    if H == target:
        return 0
    t = J.table
    seen = {H.key}
    queue = [(H, 0)]
    for K, x in queue:
        for s in J.gens:
            if normalizes(K, s):
                continue
            L = conjugate(K, s)
            if L.key in seen:
                continue
            y = int(t.mul[x, s])
            if L == target:
                return y
            seen.add(L.key)
            queue.append((L, y))
    return None


def is_pronormal(G: Ambient, H: Subgroup, exhaustive: bool = False) -> PronormalityWitness:
    """Test whether ``H`` and ``H^g`` are conjugate in ``<H, H^g>`` for all ``g``.

    Only right coset representatives of ``N_G(H)`` are tried.  Stops at the
    first failure unless ``exhaustive``.
    """
    G = as_subgroup(G)
    H = _coerce(G, H)
    if not H.issubgroup(G):
        raise ValueError("H is not a subgroup of G")
    N = normalizer(G, H)
    trace = []
    verdict = True
    for g in right_transversal(G, N):
        Hg = conjugate(H, g)
        x = find_conjugator(join(G, H, Hg), H, Hg)
        trace.append((g, x))
        if x is None:
            verdict = False
            if not exhaustive:
                break
    return PronormalityWitness(H, verdict, trace)


def recheck_witness(w: PronormalityWitness) -> bool:
    """Re-validate every recorded conjugator with stabilizer-chain membership only."""
    H = w.subject
    t = H.table
    hgens = H.generators()
    degree = t.degree
    ok = True
    for g, x in w.trace:
        if x is None:
            continue
        gp, xp = t.perm(g), t.perm(x)
        hg = [h.conjugate(gp) for h in hgens]
        J = PermGroup(degree, hgens + hg)
        if not J.contains(xp):
            ok = False
            continue
        Hg = PermGroup(degree, hg)
        Hx = PermGroup(degree, [h.conjugate(xp) for h in hgens])
        if Hx.order() != Hg.order() or not all(Hg.contains(y) for y in Hx.generators):
            ok = False
    return ok


def is_strongly_pronormal(G: Ambient, H: Subgroup, budget: int | None = None) -> bool:
    """For each ``K <= H`` and ``g``: some ``x`` in ``<H, K^g>`` has ``K^(gx) <= H``."""
    G = as_subgroup(G)
    H = _coerce(G, H)
    reps = [c.representative for c in conjugacy_classes(H, subgroups(H, budget))]
    for K in reps:
        for L in conjugacy_class(G, K).members:
            if L.issubgroup(H):
                continue
            J = join(G, H, L)
            if not any(M.issubgroup(H) for M in conjugacy_class(J, L).members):
                return False
    return True


def frattini_holds(G: Ambient, A: Subgroup, H: Subgroup) -> bool:
    """``G = A N_G(H)``, cross-checked against ``H^G == H^A``."""
    G = as_subgroup(G)
    A, H = _coerce(G, A), _coerce(G, H)
    if not is_normal(G, A):
        raise ValueError("A is not normal in G")
    if not H.issubgroup(A):
        raise ValueError("H is not contained in A")
    N = normalizer(G, H)
    by_order = A.order * N.order // intersection(A, N).order == G.order
    by_class = conjugacy_class(G, H).keys() == conjugacy_class(A, H).keys()
    if by_order != by_class:
        raise AssertionError("Frattini order identity disagrees with class comparison")
    return by_order


@dataclass
class Lemma16Result:
    quotient_pronormal: bool
    intersection_pronormal: bool
    classes_agree: bool
    pronormal: bool | None = None  # only evaluated when all premises hold

    @property
    def premises(self) -> bool:
        return self.quotient_pronormal and self.intersection_pronormal and self.classes_agree


def lemma16_test(G: Ambient, B: Subgroup, A: Subgroup, H: Subgroup, pi: PrimeSet,
                 conclude: bool = True) -> Lemma16Result:
    """Evaluate the three premises; when they hold, ``H`` must be pronormal in ``G``."""
    G = as_subgroup(G)
    B, A, H = _coerce(G, B), _coerce(G, A), _coerce(G, H)
    if not (B.issubgroup(A) and is_normal(G, A) and is_normal(G, B)):
        raise ValueError("need B <= A, both normal in G")
    if not (H.issubgroup(A) and is_hall_subgroup(A, H, pi)):
        raise ValueError("H is not a pi-Hall subgroup of A")
    if B.is_trivial():
        p1 = is_pronormal(G, H).verdict
    else:
        phi = quotient(G, B)
        p1 = is_pronormal(phi.whole_target(), phi.forward(H)).verdict
    HB = intersection(H, B)
    p2 = is_pronormal(B, HB).verdict
    p3 = frattini_holds(G, B, HB)
    res = Lemma16Result(p1, p2, p3)
    if conclude and res.premises:
        res.pronormal = is_pronormal(G, H).verdict
        if not res.pronormal:
            raise AssertionError("premises hold but H is not pronormal")
    return res
