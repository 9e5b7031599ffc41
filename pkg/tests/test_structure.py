import numpy as np
import pytest
from hypothesis import given, strategies as st

from hallmark import Permutation, normal_subgroups, subgroup, subgroups
from hallmark.corpus import alternating, cyclic, make_gl32
from hallmark.structure import (
    as_subgroup,
    conjugacy_class,
    conjugacy_classes,
    conjugate,
    intersection,
    is_normal,
    join,
    minimal_normal_in,
    normalizer,
    quotient,
    trivial,
)

import oracles

# frozen from the brute-force oracle (closures of all element pairs)
SUBGROUP_COUNTS = {"s3": 6, "s4": 30, "gl32": 179, "a5": 59}


def elset(H):
    return frozenset(tuple(r) for r in H.table.array[H.elements].tolist())


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def by_order(G, n):
    return next(N for N in normal_subgroups(G) if N.order == n)


@pytest.mark.parametrize("name", sorted(SUBGROUP_COUNTS))
def test_subgroup_count(groups, name):
    G = groups(name)
    subs = subgroups(G)
    assert len(subs) == SUBGROUP_COUNTS[name]
    Gs = as_subgroup(G)
    ref = oracles.all_subgroups_2gen(elset(Gs), G.degree)
    assert {elset(H) for H in subs} == ref


def test_s3_subgroup_orders(groups):
    assert sorted(H.order for H in subgroups(groups("s3"))) == [1, 2, 2, 2, 3, 6]


def test_normal_subgroups(groups):
    S4 = groups("s4")
    assert [N.order for N in normal_subgroups(S4)] == [1, 4, 12, 24]
    ref = {H for H in oracles.all_subgroups_2gen(elset(as_subgroup(S4)), 4)
           if oracles.is_normal(elset(as_subgroup(S4)), H)}
    assert {elset(N) for N in normal_subgroups(S4)} == ref
    assert len(normal_subgroups(cyclic(6))) == 4
    assert [N.order for N in normal_subgroups(alternating(5))] == [1, 60]


def test_minimal_normal(groups):
    S4 = groups("s4")
    A4 = by_order(S4, 12)
    assert minimal_normal_in(S4, A4).order == 4
    assert minimal_normal_in(S4, as_subgroup(S4)).order == 4
    A5 = groups("a5")
    assert minimal_normal_in(A5, as_subgroup(A5)).order == 60


def test_normalizer(groups):
    S4 = groups("s4")
    Gs = as_subgroup(S4)
    C3 = subgroup(S4, [cyc(4, (0, 1, 2))])
    N = normalizer(S4, C3)
    assert N.order == 6
    assert elset(N) == oracles.normalizer(elset(Gs), elset(C3))
    assert normalizer(S4, Gs) == Gs
    P = subgroup(S4, [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 2))])
    assert P.order == 8 and normalizer(S4, P) == P


def test_join_and_conjugate(groups):
    S3 = groups("s3")
    A3 = subgroup(S3, [cyc(3, (0, 1, 2))])
    T = subgroup(S3, [cyc(3, (0, 1))])
    assert join(S3, A3, T).order == 6
    assert join(S3, T, T) == T
    S4 = groups("s4")
    j = join(S4, subgroup(S4, [cyc(4, (0, 1))]), subgroup(S4, [cyc(4, (2, 3))]))
    assert j.order == 4
    assert conjugate(T, cyc(3, (1, 2))) == subgroup(S3, [cyc(3, (0, 2))])
    assert conjugate(A3, cyc(3, (0, 1))) == A3


def test_class_sizes(groups):
    S4 = groups("s4")
    P = subgroup(S4, [cyc(4, (0, 1, 2, 3)), cyc(4, (0, 2))])
    assert conjugacy_class(S4, P).size == 3
    assert conjugacy_class(S4, by_order(S4, 4)).size == 1
    GL = make_gl32()
    from hallmark.structure import stabilizer
    H1 = stabilizer(GL, [0])
    assert H1.order == 24 and conjugacy_class(GL, H1).size == 7


def test_quotient_examples(groups):
    S4 = groups("s4")
    V4, A4 = by_order(S4, 4), by_order(S4, 12)
    phi = quotient(S4, V4)
    Q = phi.whole_target()
    assert Q.order == 6 and phi.target.degree == 6
    C3 = next(H for H in subgroups(phi.target) if H.order == 3)
    assert phi.preimage(C3) == A4
    assert phi.preimage(trivial(Q)) == V4
    assert phi.preimage(Q) == as_subgroup(S4)
    one = quotient(S4, trivial(S4))
    assert one.target.order() == 24 and one.target.degree == 24
    assert quotient(S4, as_subgroup(S4)).target.order() == 1
    with pytest.raises(ValueError):
        quotient(S4, subgroup(S4, [cyc(4, (0, 1))]))


@pytest.mark.parametrize("name", ["s4", "d6", "a4xc2", "s3xs3"])
def test_class_equation(groups, name):
    G = groups(name)
    subs = subgroups(G)
    classes = conjugacy_classes(G, subs)
    assert sum(c.size for c in classes) == len(subs)
    for c in classes:
        assert c.size * normalizer(G, c.representative).order == G.order()
        assert c.representative == min(c.members, key=lambda H: H.sort_key())


@pytest.mark.parametrize("name", ["s4", "d6", "a4xc2", "s3wrz2"])
def test_quotient_roundtrip(groups, name):
    G = groups(name)
    for B in normal_subgroups(G):
        phi = quotient(G, B)
        assert phi.target.order() * B.order == G.order()
        for Kbar in subgroups(phi.target):
            K = phi.preimage(Kbar)
            assert B <= K and phi.forward(K) == Kbar


@given(st.data())
def test_lattice_invariants(groups, data):
    G = groups("s4")
    subs = subgroups(G)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    g = data.draw(st.integers(0, 23))
    assert G.order() % H.order == 0
    I, J = intersection(H, K), join(G, H, K)
    assert I <= H and I <= K and H <= J and K <= J
    assert elset(J) == oracles.closure(list(elset(H) | elset(K)), 4)
    assert H.order * K.order <= J.order * I.order  # |HK| <= |<H, K>|
    Hg = conjugate(H, g)
    gp = tuple(G.table().array[g].tolist())
    assert elset(Hg) == oracles.conj_set(elset(H), gp)
    assert is_normal(G, H) == (conjugacy_class(G, H).size == 1)


def test_masks_are_read_only(groups):
    H = as_subgroup(groups("s3"))
    with pytest.raises(ValueError):
        H.mask[0] = False
    assert isinstance(H.mask, np.ndarray)
