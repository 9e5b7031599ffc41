import itertools
import json

import pytest
from hypothesis import given, strategies as st

from hallmark import Permutation, PermGroup, normal_subgroups
from hallmark.corpus import (
    GL32_MATRICES,
    GroupFileError,
    alternating,
    builtin,
    cyclic,
    default_corpus,
    dihedral,
    direct_product,
    emit_group,
    extension_matrix_element,
    extension_tau,
    factor_subgroups,
    format_perm,
    group_from_json,
    group_to_json,
    make_gl32,
    make_gl32_extension,
    make_named,
    mat_inverse,
    mat_mul,
    mat_transpose,
    parse_group,
    parse_perm,
    symmetric,
    wreath_base,
    wreath_product,
)
from hallmark.structure import as_subgroup, is_normal, quotient, stabilizer


def test_named_families():
    assert make_named("symmetric", 4).order() == 24
    D = make_named("dihedral", 6)
    assert D.order() == 12 and D.degree == 6
    assert make_named("alternating", 5).order() == 60
    assert make_named("cyclic", 7).order() == 7
    with pytest.raises(ValueError):
        make_named("quaternion", 8)
    with pytest.raises(ValueError):
        dihedral(2)


@pytest.mark.parametrize("entry", default_corpus(), ids=lambda e: e.name)
def test_corpus_orders(entry):
    assert entry.build().order() == entry.expected_order


def test_direct_products():
    P = direct_product([alternating(5), alternating(5)])
    assert P.order() == 3600 and P.degree == 10
    G = symmetric(3)
    padded = direct_product([G, PermGroup(2)])
    assert padded.order() == 6 and padded.degree == 5
    C6 = direct_product([cyclic(2), cyclic(3)])
    assert C6.order() == 6
    assert any(g.order() == 6 for g in C6.elements())


def test_factor_subgroups_commute():
    factors = [symmetric(3), symmetric(3)]
    P = direct_product(factors)
    F1, F2 = factor_subgroups(P, factors)
    assert F1.order == F2.order == 6
    assert is_normal(P, F1) and is_normal(P, F2)
    for a, b in itertools.product(F1.generators(), F2.generators()):
        assert a * b == b * a


def test_wreath():
    W = wreath_product(cyclic(2), 2)
    assert W.order() == 8 and W.degree == 4
    assert not any(g.order() == 8 for g in W.elements())
    assert wreath_product(symmetric(3), 2).order() == 72
    X = make_gl32()
    big = wreath_product(X, 5)
    assert big.order() == 168**5 * 5 and big.degree == 35
    base = wreath_base(big, X, 5)
    assert base.order() == 168**5
    assert all(big.contains(g) for g in base.generators)
    with pytest.raises(ValueError):
        wreath_product(X, 4)


def test_gl32():
    G = make_gl32()
    assert G.order() == 168 and G.is_transitive()
    assert stabilizer(G, [0]).order == 24


def test_extension_orders():
    G, A = make_gl32_extension()
    assert G.order() == 336 and A.order == 168
    assert is_normal(G, A)
    phi = quotient(G, A)
    assert phi.target.order() == 2


def test_tau_is_inverse_transpose():
    tau = extension_tau()
    assert (tau * tau).is_identity()
    for m in GL32_MATRICES.values():
        it = mat_transpose(mat_inverse(m))
        assert mat_mul(m, mat_inverse(m)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert extension_matrix_element(m).conjugate(tau) == extension_matrix_element(it)


def test_parse_examples():
    G = parse_group("degree 4\n(1 2 3 4)\n(1 2)\n")
    assert G.order() == 24
    with pytest.raises(GroupFileError):
        parse_perm("(1 1 2)", 3)
    with pytest.raises(GroupFileError):
        parse_perm("(1 5)", 4)
    with pytest.raises(GroupFileError):
        parse_perm("(1 2", 4)
    with pytest.raises(GroupFileError):
        parse_group("(1 2)\n")


def test_emit_canonical():
    G = parse_group("degree 5\nname demo\n(3 1)(5 4)\n")
    assert emit_group(G) == "degree 5\nname demo\n(1 3)(4 5)\n"
    assert emit_group(parse_group(emit_group(G))) == emit_group(G)
    assert format_perm(Permutation.identity(3)) == "()"


@given(st.integers(1, 9).flatmap(lambda n: st.lists(st.permutations(range(n)), max_size=4)))
def test_file_roundtrip(raw):
    n = len(raw[0]) if raw else 3
    G = PermGroup(n, [Permutation(p) for p in raw])
    text = emit_group(G)
    H = parse_group(text)
    assert emit_group(H) == text
    assert H.order() == G.order()
    J = group_from_json(json.loads(json.dumps(group_to_json(G))))
    assert emit_group(J) == text
    assert parse_group(json.dumps(group_to_json(G))).order() == G.order()


@given(st.integers(2, 12).flatmap(lambda n: st.permutations(range(n))))
def test_perm_text_roundtrip(images):
    p = Permutation(images)
    assert parse_perm(format_perm(p), len(images)) == p


def test_builtins():
    assert builtin("s4").order() == 24
    assert builtin("gl32ext").order() == 336
    assert builtin("D5").order() == 10
    with pytest.raises(ValueError):
        builtin("nope")
    assert [N.order for N in normal_subgroups(builtin("gl32ext"))] == [1, 168, 336]
    assert as_subgroup(builtin("v4")).order == 4
