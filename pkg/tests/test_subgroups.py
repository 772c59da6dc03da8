import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdlat import constructions as cons
from cdlat.errors import EnumerationLimitError, GroupMismatchError
from cdlat.groups import as_group, conjugate_subgroup, is_normal, normalizer, subgroup_closure, whole_group
from cdlat.subgroups import (
    SubgroupSet,
    all_subgroups,
    all_subgroups_closure,
    all_subgroups_layered,
    cyclic_subgroups,
    hasse,
    normal_subgroups,
    to_dot,
)

# independently known subgroup counts
KNOWN_COUNTS = {
    "C2^2": 5, "C2^3": 16, "C2^4": 67, "C3^2": 6, "C3^3": 28, "C3^4": 212,
    "C8": 4, "C9": 3, "C2xC4": 8,
    "D4": 10, "D8": 19, "D16": 36, "Q8": 6, "C2xD4": 35, "C2xQ8": 19,
    "S3": 6, "C2xS3": 16,
    "3^1+2_exp3": 19, "3^1+2_exp9": 10,
}


@pytest.mark.parametrize("name,count", sorted(KNOWN_COUNTS.items()))
def test_known_subgroup_counts(name, count):
    G = as_group(cons.corpus_group(name))
    assert len(all_subgroups(G)) == count


@pytest.mark.parametrize("pres", [p for p in cons.corpus(include_large=False)
                                  if p.order <= 256 and len(set(p.relative_orders)) == 1],
                         ids=lambda p: p.name)
def test_layered_matches_closure_oracle(pres):
    G = as_group(pres)
    assert all_subgroups_layered(G).member_sets == all_subgroups_closure(G).member_sets


def test_normal_subgroups_match_filter(d4, q8, l1n2):
    for pres in (d4, q8, cons.extraspecial(3, True), l1n2):
        G = as_group(pres)
        expected = {H.members for H in all_subgroups(G) if is_normal(G, H)}
        assert normal_subgroups(G).member_sets == expected
    assert len(normal_subgroups(as_group(d4))) == 6
    assert len(normal_subgroups(as_group(q8))) == 6


def test_closure_oracle_bound():
    with pytest.raises(EnumerationLimitError):
        all_subgroups_closure(as_group(cons.build_l1n(2)), bound=32)


def test_layered_requires_p_group(s3):
    with pytest.raises(ValueError):
        all_subgroups_layered(as_group(s3))
    subs = all_subgroups(as_group(s3))
    assert sum(is_normal(subs.group, H) for H in subs) == 3


def test_cyclic_subgroups_of_q8(q8):
    assert sorted(H.order for H in cyclic_subgroups(as_group(q8))) == [1, 2, 4, 4, 4]


def test_thread_count_does_not_change_result(l2n2):
    G = as_group(l2n2)
    a = all_subgroups_layered(G, threads=1)
    b = all_subgroups_layered(G, threads=3)
    assert [H.members for H in a] == [H.members for H in b]
    assert len(a) == 932


def test_layered_with_base(l1n2):
    from cdlat.groups import center
    G = as_group(l1n2)
    Z = center(G)
    above = all_subgroups_layered(G, base=Z)
    assert above.member_sets == {H.members for H in all_subgroups(G) if Z <= H}


def test_hasse_of_d4():
    G = as_group(cons.dihedral(3))
    S = all_subgroups(G).sorted()
    edges = hasse(S)
    # 5 involutions over 1; two Klein groups cover 3 each, C4 covers 1; 3 maximal
    assert len(edges) == 5 + 3 + 3 + 1 + 3
    for i, j in edges:
        assert S[i] < S[j]
        assert S[j].order == 2 * S[i].order


def test_dot_output(d4):
    S = all_subgroups(as_group(d4)).sorted()
    dot = to_dot(S, name="D4")
    assert dot.startswith('digraph "D4"')
    assert dot.count("->") == len(S.hasse_edges)
    assert '"2^3\\n' in dot


def test_subgroup_set_behaviour(d4, q8):
    G = as_group(d4)
    S = all_subgroups(G)
    W = whole_group(G)
    assert W in S and S.find(W.members) == W
    assert not S.add(W)
    assert sum(S.order_counts().values()) == len(S)
    with pytest.raises(GroupMismatchError):
        SubgroupSet(G, [whole_group(as_group(q8))])


SMALL = [p for p in cons.corpus(include_large=False) if p.order <= 256]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10_000))
def test_enumeration_closed_under_conjugation(pres, k):
    G = as_group(pres)
    S = all_subgroups(G)
    g = k % G.order
    for H in list(S)[:: max(1, len(S) // 25)]:
        assert G.order % H.order == 0
        assert conjugate_subgroup(H, g) in S
        assert normalizer(G, H).order % H.order == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.lists(st.integers(0, 10_000), min_size=1, max_size=3))
def test_generated_subgroups_are_enumerated(pres, seeds):
    G = as_group(pres)
    H = subgroup_closure(G, [s % G.order for s in seeds])
    assert H in all_subgroups(G)


def test_enumeration_l2n3_count():
    G = as_group(cons.build_l2n(3))
    S = all_subgroups(G)
    assert len(S) == 24659
    assert np.all(np.diff([H.order for H in S]) >= 0)
