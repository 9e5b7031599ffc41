import pytest
from hypothesis import given, strategies as st

from hallmark import (
    PrimeSet,
    frattini_holds,
    hall_subgroups,
    is_hall_subgroup,
    is_pi_separable,
    is_pronormal,
    is_strongly_pronormal,
    lemma16_test,
    normal_subgroups,
    pi_part,
    subgroups,
)
from hallmark.corpus import extension_tau, make_gl32
from hallmark.hall import hall_subgroups_by_filter, pi_series, recheck_witness, sylow_subgroup
from hallmark.structure import as_subgroup, conjugacy_class, conjugate, stabilizer, trivial
from hallmark.harness import pi_subsets

import oracles
from test_structure import by_order, elset


def P(*ps):
    return PrimeSet(tuple(ps))


def test_prime_set_parse():
    assert PrimeSet.parse("3,2").primes == (2, 3)
    assert PrimeSet.parse("").primes == ()
    for bad in ("4", "2,2", "x", "1"):
        with pytest.raises(ValueError):
            PrimeSet.parse(bad)
    assert PrimeSet.of(168).primes == (2, 3, 7)


def test_pi_part():
    assert pi_part(360, P(2, 3)) == 72
    assert pi_part(360, PrimeSet(())) == 1
    assert pi_part(168, P(2, 3)) == 24


@given(st.integers(1, 10**6), st.sets(st.sampled_from([2, 3, 5, 7, 11, 13])))
def test_pi_part_divides(n, ps):
    pi = PrimeSet(tuple(sorted(ps)))
    m = pi_part(n, pi)
    assert n % m == 0 and pi.is_pi_number(m) and pi.is_pi_prime_number(n // m)


def test_is_hall(groups):
    A5 = groups("a5")
    A4 = stabilizer(A5, [4])
    assert is_hall_subgroup(A5, A4, P(2, 3))
    S4 = groups("s4")
    assert is_hall_subgroup(S4, as_subgroup(S4), P(2, 3))
    assert not is_hall_subgroup(S4, by_order(S4, 12), P(2, 3))


def test_hall_examples(groups):
    rep = hall_subgroups(make_gl32(), P(2, 3))
    assert [c.size for c in rep.classes] == [7, 7]
    assert rep.satisfies_E and not rep.satisfies_C
    assert hall_subgroups(groups("a5"), P(2, 5)).classes == []
    a = hall_subgroups(groups("a5"), P(2, 3))
    assert [c.size for c in a.classes] == [5] and a.hall_order == 12


def test_no_order_20_in_a5(groups):
    A5 = groups("a5")
    ref = oracles.all_subgroups_2gen(elset(as_subgroup(A5)), 5)
    assert len(ref) == 59 and not any(len(H) == 20 for H in ref)
    assert sorted(len(H) for H in ref if len(H) == 12) == [12] * 5


@pytest.mark.parametrize("name", ["s4", "a5", "gl32", "d12", "s3xs3", "s3wrz2", "a4xc2", "c30"])
def test_targeted_matches_filter(groups, name):
    G = groups(name)
    for pi in pi_subsets(G.order()):
        fast, slow = hall_subgroups(G, pi), hall_subgroups_by_filter(G, pi)
        assert {H.key for H in fast.members()} == {H.key for H in slow.members()}
        assert [c.size for c in fast.classes] == [c.size for c in slow.classes]


def test_sylow_order(groups):
    for name in ("s5", "gl32", "a6"):
        G = groups(name)
        for p in PrimeSet.of(G.order()):
            S = sylow_subgroup(G, p)
            assert S.order == pi_part(G.order(), P(p))


def test_pi_separable(groups):
    S4 = groups("s4")
    assert is_pi_separable(S4, P(2))
    assert [k for k, _ in pi_series(S4, P(2))] == ["pi", "pi'", "pi"]
    assert not is_pi_separable(groups("a5"), P(2, 3))
    assert is_pi_separable(groups("d8"), P(2))


def test_pronormal_examples(groups, ext):
    A5 = groups("a5")
    assert is_pronormal(A5, stabilizer(A5, [4])).verdict
    G, A, H1, H2 = ext
    w = is_pronormal(G, H1)
    assert not w.verdict
    g = w.failing()
    assert g is not None
    S4 = groups("s4")
    assert is_pronormal(S4, as_subgroup(S4)).verdict
    assert is_pronormal(S4, trivial(S4)).verdict


@pytest.mark.parametrize("name", ["s3", "s4", "d6", "a4"])
def test_pronormal_against_oracle(groups, name):
    G = groups(name)
    Gset = elset(as_subgroup(G))
    for H in subgroups(G):
        assert is_pronormal(G, H).verdict == oracles.is_pronormal(Gset, elset(H), G.degree)


def test_failing_g_is_genuine(ext):
    G, A, H1, _ = ext
    w = is_pronormal(G, H1, exhaustive=True)
    t = G.table()
    Gset = elset(as_subgroup(G))
    Hs = elset(H1)
    for g, x in w.trace:
        gp = tuple(t.array[g].tolist())
        Hg = oracles.conj_set(Hs, gp)
        J = oracles.closure(list(Hs | Hg), G.degree)
        found = any(oracles.conj_set(Hs, y) == Hg for y in J)
        assert found == (x is not None)
    assert len(Gset) == 336


def test_witness_recheck(groups):
    G = groups("s4")
    for H in subgroups(G):
        w = is_pronormal(G, H, exhaustive=True)
        assert recheck_witness(w)


def test_witness_recheck_detects_tampering(groups):
    G = groups("s4")
    H = sylow_subgroup(G, 3)
    w = is_pronormal(G, H)
    g, x = next((g, x) for g, x in w.trace if x not in (None, 0))
    w.trace = [(g, 0)]
    assert not recheck_witness(w)


def test_strongly_pronormal(groups):
    S4 = groups("s4")
    P2 = sylow_subgroup(S4, 2)
    assert is_strongly_pronormal(S4, P2)
    assert oracles.is_strongly_pronormal(elset(as_subgroup(S4)), elset(P2), 4)
    assert is_strongly_pronormal(S4, trivial(S4))
    assert is_strongly_pronormal(S4, as_subgroup(S4))


@pytest.mark.parametrize("name", ["s3", "a4", "d6"])
def test_strongly_pronormal_oracle(groups, name):
    G = groups(name)
    Gset = elset(as_subgroup(G))
    for H in subgroups(G):
        assert is_strongly_pronormal(G, H) == oracles.is_strongly_pronormal(Gset, elset(H), G.degree)


def test_frattini(groups, ext):
    S4 = groups("s4")
    A4 = by_order(S4, 12)
    assert frattini_holds(S4, A4, sylow_subgroup(A4, 3))
    G, A, H1, _ = ext
    assert not frattini_holds(G, A, H1)
    assert frattini_holds(G, A, A)


@pytest.mark.parametrize("name", ["s4", "a4xc2", "s3wrz2"])
def test_frattini_argument_for_pronormal(groups, name):
    # a pronormal subgroup of a normal A gives G = A N_G(H)
    G = groups(name)
    for A in normal_subgroups(G):
        for H in subgroups(A):
            if is_pronormal(G, H).verdict:
                assert frattini_holds(G, A, H)


def test_lemma16_examples(groups, ext):
    G, A, H1, _ = ext
    r = lemma16_test(G, A, A, H1, P(2, 3))
    assert r.intersection_pronormal and not r.classes_agree and not r.premises
    S4 = groups("s4")
    A4 = by_order(S4, 12)
    H = sylow_subgroup(A4, 3)
    r = lemma16_test(S4, by_order(S4, 4), A4, H, P(3))
    assert r.premises and r.pronormal
    r = lemma16_test(S4, trivial(S4), A4, H, P(3))
    assert r.intersection_pronormal and r.classes_agree
    assert r.quotient_pronormal == is_pronormal(S4, H).verdict


def test_tau_swaps_classes(ext):
    G, A, H1, H2 = ext
    rep = hall_subgroups(A, P(2, 3))
    c1 = next(c for c in rep.classes if H1 in c)
    c2 = next(c for c in rep.classes if H2 in c)
    assert c1 is not c2
    tau = G.table().index(extension_tau())
    assert {conjugate(H, tau).key for H in c1.members} == c2.keys()
    assert conjugacy_class(G, H1).size == 14
