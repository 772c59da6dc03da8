import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlat import constructions as cons
from cdlat.errors import EnumerationLimitError, GroupMismatchError, NotNormalError
from cdlat.groups import (
    PcGroup,
    as_group,
    center,
    centralizer,
    commutator_subgroup,
    conjugate_subgroup,
    derived_subgroup,
    element_orders,
    exponent,
    is_abelian,
    is_elementary_abelian,
    is_extraspecial,
    is_normal,
    join,
    meet,
    normalizer,
    product_set,
    quotient_group,
    subgroup_as_group,
    subgroup_closure,
    trivial_subgroup,
    upper_central_series,
    whole_group,
)


def brute_centralizer(G, xs):
    t = G.table
    return {g for g in range(G.order) if all(t[g, x] == t[x, g] for x in xs)}


def test_table_matches_collection(d4):
    G = as_group(d4)
    for a in d4.elements():
        for b in d4.elements():
            assert G.table[a.index, b.index] == (a * b).index


def test_pc_tables_agree_with_collection_large(l2n2):
    G = as_group(l2n2)
    rng = np.random.default_rng(0)
    a = rng.integers(0, G.order, 300)
    b = rng.integers(0, G.order, 300)
    got = G.mul_arrays(a, b)
    for x, y, z in zip(a, b, got):
        assert (l2n2.element_from_index(int(x)) * l2n2.element_from_index(int(y))).index == z
    inv = G.inverse[a]
    assert np.all(G.mul_arrays(a, inv) == 0)


def test_enumeration_bound():
    with pytest.raises(EnumerationLimitError):
        PcGroup(cons.build_l2n(3), bound=1000)


def test_center_examples(d4, q8, s3):
    assert center(as_group(d4)).order == 2
    assert center(as_group(q8)).order == 2
    assert center(as_group(s3)).order == 1
    assert center(as_group(cons.build_l1n(2))).order == 8


@pytest.mark.parametrize("name", ["D8", "Q8", "C2xS3", "3^1+2_exp3", "l1n(2)"])
def test_centralizer_brute_force(name):
    G = as_group(cons.corpus_group(name))
    rng = np.random.default_rng(3)
    for _ in range(10):
        xs = [int(x) for x in rng.integers(0, G.order, 2)]
        assert set(centralizer(G, xs).elements.tolist()) == brute_centralizer(G, xs)


def test_derived_and_central_series(d4):
    G = as_group(d4)
    D = derived_subgroup(G)
    assert D.order == 2 and D == center(G)
    series = upper_central_series(G)
    assert [Z.order for Z in series] == [2, 8]
    S = as_group(cons.symmetric3())
    assert derived_subgroup(S).order == 3
    assert upper_central_series(S) == []


def test_class_two_constructions():
    for pres in (cons.build_l1n(2), cons.build_l2n(2), cons.build_l1n(3)):
        G = as_group(pres)
        orders = [Z.order for Z in upper_central_series(G)]
        assert orders[-1] == G.order and len(orders) == 2
        assert derived_subgroup(G) <= center(G)
    # the odd-prime families have class three
    for pres in (cons.build_l1odd(3), cons.build_l2odd(3)):
        assert len(upper_central_series(as_group(pres))) == 3


def test_quotients(d4):
    G = as_group(d4)
    Z = center(G)
    Q = quotient_group(G, Z)
    assert Q.order == 4
    assert is_elementary_abelian(Q)
    cosets = {Q.coset(x) for x in range(Q.order)}
    assert sum(c.bit_count() for c in cosets) == 8
    H = subgroup_closure(G, [d4.generator(0).index])
    with pytest.raises(NotNormalError):
        quotient_group(G, H)


def test_quotient_of_l1n_by_center(l1n2):
    G = as_group(l1n2)
    Q = quotient_group(G, center(G))
    assert Q.order == 8 and is_elementary_abelian(Q)


def test_normalizer_and_conjugates(d4):
    G = as_group(d4)
    b = d4.generator(0).index
    H = subgroup_closure(G, [b])
    assert normalizer(G, H).order == 4
    assert not is_normal(G, H)
    a = d4.generator(1).index
    K = conjugate_subgroup(H, a)
    assert K != H and K.order == 2


def test_join_meet_product(d4):
    G = as_group(d4)
    b, a = d4.generator(0).index, d4.generator(1).index
    B, A = subgroup_closure(G, [b]), subgroup_closure(G, [a])
    assert join(A, B).is_whole
    assert meet(A, B).is_trivial
    assert product_set(A, B).bit_count() == 8
    B2 = conjugate_subgroup(B, a)
    # two non-commuting reflections: the product set is not a subgroup
    assert product_set(B, B2).bit_count() == 4
    assert join(B, B2).order == 4


def test_commutator_subgroup_large_path(l2n2):
    G = as_group(l2n2)
    W = whole_group(G)
    small = commutator_subgroup(W, W)
    big = commutator_subgroup(W, W, pair_limit=0)
    assert small == big


def test_cross_group_errors(d4, q8):
    A, B = whole_group(as_group(d4)), whole_group(as_group(q8))
    with pytest.raises(GroupMismatchError):
        join(A, B)
    with pytest.raises(GroupMismatchError):
        meet(A, B)
    with pytest.raises(GroupMismatchError):
        _ = A <= B


def test_predicates():
    assert is_extraspecial(as_group(cons.quaternion()))
    assert is_extraspecial(as_group(cons.extraspecial(3, True)))
    assert is_extraspecial(as_group(cons.extraspecial(3, False)))
    assert not is_extraspecial(as_group(cons.build_l1n(2)))
    assert exponent(as_group(cons.extraspecial(3, True))) == 3
    assert exponent(as_group(cons.extraspecial(3, False))) == 9
    assert is_abelian(as_group(cons.cyclic(2, 3)))
    assert not is_elementary_abelian(as_group(cons.cyclic(2, 2)))
    orders = element_orders(as_group(cons.quaternion()))
    assert sorted(orders.tolist()) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_subgroup_as_group(l1n2):
    G = as_group(l1n2)
    Z = center(G)
    T, emb = subgroup_as_group(Z)
    assert T.order == 8 and is_elementary_abelian(T)
    assert np.array_equal(np.sort(emb), Z.elements)
    assert trivial_subgroup(T).order == 1


SMALL = [p for p in cons.corpus(include_large=False) if p.order <= 256]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_generated_subgroups_obey_lagrange(pres, data):
    G = as_group(pres)
    seeds = data.draw(st.lists(st.integers(0, G.order - 1), min_size=1, max_size=3))
    H = subgroup_closure(G, seeds)
    assert G.order % H.order == 0
    elems = H.elements
    # closed under products and inverses
    t = G.table
    assert H.mask[t[np.ix_(elems, elems)]].all()
    assert H.mask[G.inverse[elems]].all()
    N = normalizer(G, H)
    assert H <= N
    assert centralizer(G, H) <= N
