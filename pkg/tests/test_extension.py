import pytest

from cdlat import constructions as cons
from cdlat.cd import cd_lattice, cd_measure
from cdlat.errors import HypothesisError
from cdlat.extension import (
    check_invariants,
    chain_group,
    chain_step,
    class2_structure,
    expected_chain_order,
    extend,
    predicted_cd,
    predicted_subgroups,
    random_subgroup_probe,
    resolve_tier,
    verify_extension,
    verify_gcentralizers,
)
from cdlat.groups import as_group, center
from cdlat.pcgroup import check_consistency


@pytest.fixture(scope="module")
def ext_c2():
    return extend(cons.cyclic(2))


@pytest.fixture(scope="module")
def ext_l1n2():
    return extend(cons.build_l1n(2))


def test_class2_structure_matches_enumeration():
    for pres in (cons.build_l1n(2), cons.dihedral(3), cons.quaternion(), cons.build_l2n(3),
                 cons.extraspecial(3, False), cons.cyclic(2, 2)):
        s = class2_structure(pres)
        Z = center(as_group(pres))
        assert s.center.order == Z.order
        assert all(pres.element_from_index(int(z)) in s.center for z in Z.elements)
        assert pres.order == Z.order * s.p ** s.rank


def test_class2_structure_rejects():
    with pytest.raises(HypothesisError):
        class2_structure(cons.build_l1odd(3))   # class 3
    with pytest.raises(HypothesisError):
        class2_structure(cons.dihedral(4))      # class 3
    with pytest.raises(HypothesisError):
        class2_structure(cons.symmetric3())     # not a p-group
    with pytest.raises(HypothesisError):
        extend(cons.build_l2odd(3))


def test_coordinates_are_additive():
    pres = cons.build_l1n(2)
    s = class2_structure(pres)
    for a in list(pres.elements())[::7]:
        for b in list(pres.elements())[::11]:
            lhs = s.coordinates(a * b)
            rhs = [(x + y) % 2 for x, y in zip(s.coordinates(a), s.coordinates(b))]
            assert lhs == rhs


def test_extend_c2_shape(ext_c2):
    X = ext_c2
    assert X.G.order == 256 and X.r == 0
    assert X.G.generator_names[:7] == ("x1", "x2", "a1", "a2", "z", "z1", "z2")
    assert X.G.generator_names[7] == "h_g1"
    assert check_consistency(X.G).ok
    assert [m.order for m in predicted_cd(X)] == [16, 64, 256]


def test_extend_c2_full_tier(ext_c2):
    rep = verify_extension(ext_c2, tier="auto")
    assert rep.tier == "full"
    assert rep.passed, rep.summary()
    assert rep.status_of("cd_exact") == "pass"
    L = cd_lattice(ext_c2.G)
    assert L.m == 2 ** 12 and L.chain_length == 2


def test_extend_l1n2_structure(ext_l1n2):
    X = ext_l1n2
    assert X.G.order == 2 ** 16 and X.r == 3
    G = as_group(X.G)
    Z = center(G)
    assert Z.order == 2 ** 9 and Z == X.subgroup("Z(G)")
    pred = predicted_cd(X)
    # Z(G), N Z(H), N H, G
    assert [m.order for m in pred] == [2 ** 9, 2 ** 11, 2 ** 14, 2 ** 16]
    for K in predicted_subgroups(X, pred):
        assert cd_measure(G, K) == 2 ** 25


def test_extend_l1n2_reports(ext_l1n2):
    rep = check_invariants(ext_l1n2, predicted_cd(ext_l1n2))
    assert rep.passed, rep.summary()
    rep = verify_gcentralizers(ext_l1n2, samples=100, seed=1)
    assert rep.passed, rep.summary()
    for cid in ("3_ch_of_x", "4_cp_of_h", "5_cg_split", "6_cg_cyclic"):
        assert rep.status_of(cid) == "pass"
    rep = random_subgroup_probe(ext_l1n2, trials=150, seed=2)
    assert rep.passed, rep.summary()


def test_probe_independent_of_threads(ext_l1n2):
    a = random_subgroup_probe(ext_l1n2, trials=30, seed=4, threads=1)
    b = random_subgroup_probe(ext_l1n2, trials=30, seed=4, threads=3)
    assert a.to_dict()["checks"] == b.to_dict()["checks"]


def test_certificates():
    H = cons.build_l1n(2)
    L = cd_lattice(H)
    X = extend(H, cd_certificate=list(L.members))
    assert X.cd_source == "certificate (measures re-verified)"
    words = [[[[g + 1, e] for g, e in H.element_from_index(int(x)).word()] for x in M.generators]
             for M in L.members]
    Y = extend(H, cd_certificate=words)
    assert [m.order for m in predicted_cd(Y)] == [m.order for m in predicted_cd(X)]
    with pytest.raises(HypothesisError):
        extend(H, cd_certificate=[[H.generator(5)]])
    # a member with the wrong measure
    bad = [[H.generator(0)], list(H.generators)]
    with pytest.raises(HypothesisError):
        extend(H, cd_certificate=bad)


def test_large_h_needs_certificate():
    with pytest.raises(HypothesisError):
        extend(chain_group(2, 3))


def test_tiers():
    assert resolve_tier(256) == "full"
    assert resolve_tier(2 ** 16) == "structural"
    assert resolve_tier(2 ** 30) == "none"
    assert resolve_tier(2 ** 30, "full") == "full"


@pytest.mark.parametrize("n,exp", [(0, 1), (1, 6), (2, 7), (3, 16), (4, 18)])
def test_chain_orders(n, exp):
    pres = chain_group(2, n)
    assert pres.order == 2 ** exp == expected_chain_order(2, n)
    assert check_consistency(pres).ok


def test_chain_small_members_verified():
    for n in (0, 1, 2):
        assert cd_lattice(chain_group(2, n)).chain_length == n
    step = chain_step(2, 3)
    assert [m.order for m in step.predicted] == [2 ** 9, 2 ** 11, 2 ** 14, 2 ** 16]
    rep = verify_extension(step.extension, samples=30, trials=60, seed=0)
    assert rep.tier == "structural" and rep.passed, rep.summary()


def test_chain_at_order_2_30_is_unverified_tier():
    step = chain_step(2, 5)
    assert step.pres.order == 2 ** 30
    rep = verify_extension(step.extension)
    assert rep.tier == "none"
    assert rep.status_of("cd_prediction") == "skipped"
    assert not rep.failures
    assert step.extension.cd_source.startswith("certificate")


def test_chain_rejects_negative():
    with pytest.raises(ValueError):
        chain_step(2, -1)
