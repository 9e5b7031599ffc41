"""Constructive versions of the existence results for pronormal Hall subgroups.

``pronormal_hall_in_normal`` recurses on a minimal normal subgroup ``B`` of
``G`` inside ``A``: it builds a pronormal Hall subgroup ``K/B`` of ``A/B`` in
``G/B``, picks a Hall subgroup ``V`` of ``B`` whose ``B``-class is
``G``-invariant, and extends ``V`` to a Hall subgroup of the preimage ``K``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .hall import (
    PrimeSet,
    frattini_holds,
    hall_subgroups,
    is_hall_subgroup,
    is_pronormal,
    pi_part,
)
from .structure import (
    Ambient,
    Epimorphism,
    Subgroup,
    as_subgroup,
    conjugacy_class,
    conjugate,
    intersection,
    is_normal,
    join,
    minimal_normal_in,
    quotient,
    trivial,
    _coerce,
)


class NotEPi(ValueError):
    """The group has no pi-Hall subgroup."""


class NoInvariantClass(RuntimeError):
    """No B-class of pi-Hall subgroups of B is G-invariant."""


class ExtensionMissing(RuntimeError):
    """No pi-Hall subgroup of K meets B in the given U."""


class LiftMissing(RuntimeError):
    """No pi-Hall subgroup H of G with HA equal to the given preimage."""


@dataclass
class LevelRecord:
    depth: int
    group_order: int
    B_order: int
    quotient_order: int
    V_order: int
    K_order: int
    H_order: int


@dataclass
class Theorem1Trace:
    levels: list = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.levels)


def frattini_hall(G: Ambient, B: Subgroup, pi: PrimeSet) -> Subgroup:
    """A pi-Hall subgroup ``V`` of ``B`` with ``V^G == V^B``, i.e. ``G = B N_G(V)``."""
    G = as_subgroup(G)
    B = _coerce(G, B)
    if not is_normal(G, B):
        raise ValueError("B is not normal in G")
    for cls in hall_subgroups(B, pi).classes:
        keys = cls.keys()
        V = cls.representative
        if all(conjugate(V, s).key in keys for s in G.gens):
            if not frattini_holds(G, B, V):
                raise AssertionError("G-stable B-class without the Frattini factorization")
            return V
    raise NoInvariantClass("no B-class of pi-Hall subgroups of B is G-invariant")


def extend_hall(K: Ambient, B: Subgroup, U: Subgroup, pi: PrimeSet) -> Subgroup:
    """A pi-Hall subgroup ``H`` of ``K`` with ``H ∩ B == U``.

    Requires ``K/B`` to be a pi-group and the ``K``-class of ``U`` to equal its
    ``B``-class; under those conditions such ``H`` always exists.
    """
    K = as_subgroup(K)
    B, U = _coerce(K, B), _coerce(K, U)
    if not is_normal(K, B):
        raise ValueError("B is not normal in K")
    if not pi.is_pi_number(K.order // B.order):
        raise ValueError("K/B is not a pi-group")
    if not (U.issubgroup(B) and is_hall_subgroup(B, U, pi)):
        raise ValueError("U is not a pi-Hall subgroup of B")
    if conjugacy_class(K, U).keys() != conjugacy_class(B, U).keys():
        raise ValueError("U^K differs from U^B")
    for H in hall_subgroups(K, pi).members():
        if intersection(H, B) == U:
            return H
    raise ExtensionMissing("no pi-Hall subgroup of K meets B in U")


def lift_hall_from_quotient(G: Ambient, A: Subgroup, Kbar: Subgroup, pi: PrimeSet,
                            phi: Epimorphism | None = None) -> Subgroup:
    """A pi-Hall subgroup ``H`` of ``G`` with ``HA`` the preimage of ``Kbar``."""
    G = as_subgroup(G)
    A = _coerce(G, A)
    phi = phi if phi is not None else quotient(G, A)
    if not is_hall_subgroup(phi.whole_target(), Kbar, pi):
        raise ValueError("Kbar is not a pi-Hall subgroup of G/A")
    K = phi.preimage(Kbar)
    for H in hall_subgroups(G, pi).members():
        if join(G, H, A) == K:
            return H
    raise LiftMissing("no pi-Hall subgroup H of G with HA = K")


def pronormal_hall_in_normal(G: Ambient, A: Subgroup, pi: PrimeSet,
                             verify: bool = True) -> tuple[Subgroup, Theorem1Trace]:
    """A pi-Hall subgroup of ``A`` pronormal in ``G``, for ``A`` normal and ``G`` in E_pi."""
    G = as_subgroup(G)
    A = _coerce(G, A)
    if not is_normal(G, A):
        raise ValueError("A is not normal in G")
    if not hall_subgroups(G, pi).satisfies_E:
        raise NotEPi(f"G has no {pi}-Hall subgroup")
    trace = Theorem1Trace()
    H = _construct(G, A, pi, trace, 0)
    if not is_hall_subgroup(A, H, pi):
        raise AssertionError("constructed subgroup is not a Hall subgroup of A")
    if verify and not is_pronormal(G, H).verdict:
        raise AssertionError("constructed Hall subgroup is not pronormal")
    return H, trace


def _construct(G: Subgroup, A: Subgroup, pi: PrimeSet, trace: Theorem1Trace, depth: int) -> Subgroup:
    # A = 1 has the trivial Hall subgroup; |G| = 1 is the base of the induction
    if G.order == 1 or A.order == 1:
        return trivial(G)
    B = minimal_normal_in(G, A)
    phi = quotient(G, B)
    Gbar = phi.whole_target()
    Kbar = _construct(Gbar, phi.forward(A), pi, trace, depth + 1)
    K = phi.preimage(Kbar)
    V = frattini_hall(G, B, pi)
    H = extend_hall(K, B, V, pi)
    if H.order != pi_part(A.order, pi) or phi.forward(H) != Kbar:
        raise AssertionError("order identities fail at recursion level")
    trace.levels.insert(0, LevelRecord(depth, G.order, B.order, Gbar.order, V.order,
                                       K.order, H.order))
    return H


@dataclass
class EPiCriterion:
    verdict: bool
    quotient_in_E: bool
    witness: Subgroup | None  # a Hall subgroup of A with a G-stable A-class
    direct: bool


def e_pi_criterion(G: Ambient, A: Subgroup, pi: PrimeSet) -> EPiCriterion:
    """``G`` in E_pi iff ``G/A`` in E_pi and some pi-Hall ``H`` of ``A`` has ``H^A == H^G``.

    The right-hand side is evaluated and compared with the direct decision.
    """
    G = as_subgroup(G)
    A = _coerce(G, A)
    if not is_normal(G, A):
        raise ValueError("A is not normal in G")
    if A.is_trivial():
        # G/1 is isomorphic to G; no need for the regular action
        q_in_E = hall_subgroups(G, pi).satisfies_E
    else:
        phi = quotient(G, A)
        q_in_E = hall_subgroups(phi.whole_target(), pi).satisfies_E
    witness = None
    if q_in_E:
        for cls in hall_subgroups(A, pi).classes:
            keys = cls.keys()
            H = cls.representative
            if all(conjugate(H, s).key in keys for s in G.gens):
                witness = H
                break
    verdict = q_in_E and witness is not None
    direct = hall_subgroups(G, pi).satisfies_E
    if verdict != direct:
        raise AssertionError("E_pi criterion disagrees with the direct decision")
    return EPiCriterion(verdict, q_in_E, witness, direct)
