import math

import pytest

from hallmark import (
    NoInvariantClass,
    NotEPi,
    PrimeSet,
    PermGroup,
    e_pi_criterion,
    extend_hall,
    frattini_hall,
    hall_subgroups,
    is_hall_subgroup,
    lift_hall_from_quotient,
    normal_subgroups,
    pronormal_hall_in_normal,
    subgroups,
)
from hallmark.harness import pi_subsets
from hallmark.structure import as_subgroup, intersection, join, normalizer, quotient, trivial

import oracles
from test_structure import by_order, elset


def P(*ps):
    return PrimeSet(tuple(ps))


def test_frattini_hall(groups, ext):
    S4 = groups("s4")
    V4, A4 = by_order(S4, 4), by_order(S4, 12)
    assert frattini_hall(S4, V4, P(2)) == V4
    V = frattini_hall(S4, A4, P(3))
    assert V.order == 3
    N = normalizer(S4, V)
    assert A4.order * N.order // intersection(A4, N).order == 24
    G, A, _, _ = ext
    with pytest.raises(NoInvariantClass):
        frattini_hall(G, A, P(2, 3))


def test_extend_hall(groups):
    A4 = groups("a4")
    V4 = by_order(A4, 4)
    assert extend_hall(A4, V4, V4, P(2, 3)) == as_subgroup(A4)
    H = extend_hall(A4, V4, trivial(A4), P(3))
    assert H.order == 3 and intersection(H, V4).is_trivial()
    S4 = groups("s4")
    with pytest.raises(ValueError):
        extend_hall(S4, by_order(S4, 12), trivial(S4), P(3))


def test_lift_hall(groups):
    S4 = groups("s4")
    V4, A4 = by_order(S4, 4), by_order(S4, 12)
    phi = quotient(S4, V4)
    C3 = next(H for H in subgroups(phi.target) if H.order == 3)
    H = lift_hall_from_quotient(S4, V4, C3, P(3), phi)
    assert H.order == 3 and join(S4, H, V4) == A4
    # pi covering pi(G): H = G
    full = lift_hall_from_quotient(S4, V4, phi.whole_target(), P(2, 3), phi)
    assert full == as_subgroup(S4)


def test_lift_trivial_kernel(groups):
    S3 = groups("s3")
    phi = quotient(S3, trivial(S3))
    Kbar = next(H for H in subgroups(phi.target) if H.order == 3)
    H = lift_hall_from_quotient(S3, trivial(S3), Kbar, P(3), phi)
    assert phi.forward(H) == Kbar


def test_theorem1_s4(groups):
    S4 = groups("s4")
    A4 = by_order(S4, 12)
    H, trace = pronormal_hall_in_normal(S4, A4, P(3))
    assert H.order == 3 and H <= A4
    assert oracles.is_pronormal(elset(as_subgroup(S4)), elset(H), 4)
    assert trace.depth == 2


def test_theorem1_gl32(groups):
    GL = groups("gl32")
    H, _ = pronormal_hall_in_normal(GL, as_subgroup(GL), P(2, 3))
    assert H.order == 24
    assert H in hall_subgroups(GL, P(2, 3)).members()


def test_theorem1_trivial():
    G = PermGroup(3)
    H, trace = pronormal_hall_in_normal(G, as_subgroup(G), P(2))
    assert H.order == 1 and trace.depth == 0


def test_theorem1_not_e(ext):
    G, A, _, _ = ext
    with pytest.raises(NotEPi):
        pronormal_hall_in_normal(G, A, P(2, 3))


@pytest.mark.parametrize("name", ["s4", "a4xc2", "s3wrz2", "d12", "s5"])
def test_theorem1_sweep_small(groups, name):
    G = groups(name)
    Gset = elset(as_subgroup(G))
    for A in normal_subgroups(G):
        for pi in pi_subsets(G.order()):
            if not hall_subgroups(G, pi).satisfies_E:
                continue
            H, trace = pronormal_hall_in_normal(G, A, pi)
            assert is_hall_subgroup(A, H, pi)
            if G.order() <= 72:
                assert oracles.is_pronormal(Gset, elset(H), G.degree)
            assert trace.depth <= math.log2(G.order())


def test_e_pi_criterion(groups, ext):
    G, A, _, _ = ext
    r = e_pi_criterion(G, A, P(2, 3))
    assert not r.verdict and r.quotient_in_E and r.witness is None and not r.direct
    S4 = groups("s4")
    assert e_pi_criterion(S4, by_order(S4, 4), P(3)).verdict
    A5 = groups("a5")
    r = e_pi_criterion(A5, trivial(A5), P(2, 5))
    assert r.verdict == hall_subgroups(A5, P(2, 5)).satisfies_E == False  # noqa: E712
