import json

import pytest

from cdlat import constructions as cons
from cdlat.cd import (
    cd_lattice,
    cd_measure,
    check_direct_product,
    check_maxmember,
    check_omnibus,
    is_chain,
)
from cdlat.errors import NotSubgroupError
from cdlat.groups import as_group, center, centralizer, whole_group
from cdlat.subgroups import all_subgroups


def brute_cd(G):
    """Maximal-measure subgroups with centralizers computed from the table."""
    t = G.table
    best, out = 0, set()
    for H in all_subgroups(G, enumerator="closure"):
        els = H.elements
        cen = sum(1 for g in range(G.order) if all(t[g, h] == t[h, g] for h in els))
        m = H.order * cen
        if m > best:
            best, out = m, {H.members}
        elif m == best:
            out.add(H.members)
    return best, out


@pytest.mark.parametrize("name", ["D4", "Q8", "S3", "C2xS3", "C3xS3", "C2xD4", "3^1+2_exp3", "C2^3", "D8"])
def test_cd_matches_brute_force(name):
    G = as_group(cons.corpus_group(name))
    L = cd_lattice(G)
    m, sets = brute_cd(G)
    assert L.m == m
    assert L.member_sets() == sets


def test_known_lattices(d4, q8, s3):
    L = cd_lattice(d4)
    assert L.m == 16 and L.orders == [2, 4, 4, 4, 8]
    assert L.chain_length is None
    assert cd_lattice(q8).orders == [2, 4, 4, 4, 8]
    L = cd_lattice(s3)
    assert L.m == 9 and L.orders == [3]
    assert is_chain(L) == 0
    for e in ("3^1+2_exp3", "3^1+2_exp9"):
        L = cd_lattice(cons.corpus_group(e))
        assert L.orders == [3, 9, 9, 9, 9, 27] and L.m == 81


def test_abelian_group_lattice_is_whole_group():
    for pres in (cons.cyclic(2, 3), cons.elementary_abelian(3, 3)):
        L = cd_lattice(pres)
        assert len(L) == 1 and L.maximum.is_whole and L.m == pres.order ** 2


def test_constructed_chains():
    expected = {
        "l1n(2)": ([8, 64], 512),
        "l2n(2)": ([8, 32, 128], 1024),
        "l1odd(3)": ([9, 243], 2187),
        "l2odd(3)": ([9, 81, 729], 6561),
    }
    for name, (orders, m) in expected.items():
        L = cd_lattice(cons.corpus_group(name))
        assert L.orders == orders and L.m == m
        assert L.chain_length == len(orders) - 1


def test_measure_requires_own_subgroup(d4, q8):
    with pytest.raises(NotSubgroupError):
        cd_measure(as_group(d4), whole_group(as_group(q8)))


def test_measure_of_center_and_whole(l1n2):
    G = as_group(l1n2)
    Z = center(G)
    assert cd_measure(G, Z) == Z.order * G.order
    assert cd_measure(G, whole_group(G)) == G.order * Z.order


def test_enumerators_agree(l1n2):
    a = cd_lattice(l1n2, enumerator="layered")
    b = cd_lattice(l1n2, enumerator="closure")
    assert a.member_sets() == b.member_sets() and a.m == b.m


@pytest.mark.parametrize("pres", [p for p in cons.corpus(include_large=False) if p.order <= 729],
                         ids=lambda p: p.name)
def test_omnibus_on_corpus(pres):
    rep = check_omnibus(cd_lattice(pres))
    assert rep.passed, rep.summary()


def test_omnibus_minimum_contains_center(l2n2):
    G = as_group(l2n2)
    L = cd_lattice(G)
    assert center(G) <= L.minimum
    for H in L:
        assert centralizer(G, H) in L.members


@pytest.mark.parametrize("name", ["D4", "C2xS3", "l1n(2)", "3^1+2_exp9", "S3"])
def test_max_member(name):
    assert check_maxmember(cons.corpus_group(name)).passed


@pytest.mark.parametrize("a,b", [("D4", "Q8"), ("S3", "C3"), ("C2", "D4"), ("3^1+2_exp3", "C3")])
def test_direct_products(a, b):
    rep = check_direct_product(cons.corpus_group(a), cons.corpus_group(b))
    assert rep.passed, rep.summary()


def test_json_export(d4):
    L = cd_lattice(d4)
    data = json.loads(L.to_json())
    assert data["m"] == 16
    assert [m["order"] for m in data["members"]] == [2, 4, 4, 4, 8]
    assert data["members"][0]["is_center"] and data["members"][-1]["is_group"]
    assert data["chain_length"] is None
    assert len(data["hasse"]) == 6
    for m in data["members"]:
        for word in m["generators"]:
            assert all(1 <= g <= 3 for g, e in word)
    assert L.to_dot().count("->") == 6


def test_chain_json(l2n2):
    data = json.loads(cd_lattice(l2n2).to_json())
    assert data["chain_length"] == 2
    assert data["hasse"] == [[0, 1], [1, 2]]
