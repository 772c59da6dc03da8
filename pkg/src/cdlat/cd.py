"""Chermak-Delgado measures and lattices.

The measure of ``H <= G`` is ``|H| * |C_G(H)|``; the CD lattice collects the
subgroups of maximal measure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from .errors import NotSubgroupError
from .groups import (
    FiniteGroup,
    PcGroup,
    Subgroup,
    as_group,
    center,
    centralizer,
    is_normal,
    join,
    mask_to_bits,
    meet,
    product_set,
    subgroup_as_group,
)
from .pcgroup import PcPresentation, direct_product
from .report import VerificationReport
from .subgroups import SubgroupSet, all_subgroups, to_dot


def cd_measure(G: FiniteGroup, H: Subgroup) -> int:
    """``|H| * |C_G(H)|`` with the centralizer taken over generators of ``H``."""
    if H.group is not G:
        raise NotSubgroupError("H is not a subgroup of this group")
    return H.order * int(G.centralizer_of(H.generators).sum())


@dataclass
class CdLattice:
    group: FiniteGroup
    m: int
    members: SubgroupSet
    subgroup_count: int = 0
    enumerator: str = ""
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def m_of_G(self) -> int:
        return self.m

    @cached_property
    def chain_length(self) -> int | None:
        return is_chain(self)

    @property
    def hasse_edges(self) -> list[tuple[int, int]]:
        return self.members.hasse_edges

    @property
    def minimum(self) -> Subgroup:
        return min(self.members, key=lambda H: H.order)

    @property
    def maximum(self) -> Subgroup:
        return max(self.members, key=lambda H: H.order)

    @property
    def orders(self) -> list[int]:
        return [H.order for H in self.members]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def member_sets(self) -> frozenset[int]:
        return self.members.member_sets

    def to_dict(self) -> dict:
        G = self.group
        Z = center(G)
        members = []
        for H in self.members:
            if isinstance(G, PcGroup):
                gens = [G.word(g) for g in H.generators]
            else:
                gens = [G.label(g) for g in H.generators]
            members.append({
                "order": H.order,
                "generators": gens,
                "is_center": H.members == Z.members,
                "is_group": H.is_whole,
            })
        return {
            "m": self.m,
            "members": members,
            "hasse": [list(e) for e in self.hasse_edges],
            "chain_length": self.chain_length,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self) -> str:
        return to_dot(self.members, name=f"CD({self.group.name})")


def cd_lattice(G: FiniteGroup | PcPresentation, enumerator: str = "auto",
               subgroups: SubgroupSet | None = None, threads: int = 1) -> CdLattice:
    """All subgroups of maximal measure, found by exhaustive enumeration."""
    G = as_group(G)
    S = subgroups if subgroups is not None else all_subgroups(G, enumerator, threads)
    best = 0
    members: list[Subgroup] = []
    for H in S:
        m = cd_measure(G, H)
        if m > best:
            best, members = m, [H]
        elif m == best:
            members.append(H)
    members.sort(key=lambda H: (H.order, H.members))
    return CdLattice(G, best, SubgroupSet(G, members), len(S), enumerator)


def is_chain(L: CdLattice | Sequence[Subgroup]) -> int | None:
    """Length ``n`` when the members are totally ordered (``n + 1`` members), else ``None``."""
    subs = sorted(L.members if isinstance(L, CdLattice) else L, key=lambda H: H.order)
    for a, b in zip(subs, subs[1:]):
        if a.order == b.order or a.members & ~b.members:
            return None
    return len(subs) - 1


def _is_abelian_subgroup(G: FiniteGroup, H: Subgroup) -> bool:
    gens = H.generators
    return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def check_omnibus(L: CdLattice) -> VerificationReport:
    """Lattice properties of the CD members (sublattice, duality, extremes)."""
    G = L.group
    rep = VerificationReport(G.name)
    subs = list(L.members)
    sets = L.member_sets()

    bad_join = []
    bad_meet = []
    for i, H in enumerate(subs):
        for K in subs[i:]:
            J = join(H, K)
            if product_set(H, K) != J.members or J.members not in sets:
                bad_join.append((H.order, K.order))
            if meet(H, K).members not in sets:
                bad_meet.append((H.order, K.order))
    rep.add("a_join_is_product", not bad_join, failures=bad_join[:5], pairs=len(subs) * (len(subs) + 1) // 2)

    cent = {}
    bad_cent = []
    for H in subs:
        C = centralizer(G, H)
        cent[H.members] = C
        CC = centralizer(G, C)
        if C.members not in sets or CC.members != H.members:
            bad_cent.append(H.order)
    rep.add("b_double_centralizer", not bad_cent, failures=bad_cent[:5])
    rep.add("c_meet_closed", not bad_meet, failures=bad_meet[:5])

    Z = center(G)
    low = L.minimum
    rep.add("d_minimum_abelian_normal_central", _is_abelian_subgroup(G, low)
            and is_normal(G, low) and Z <= low, order=low.order)
    high = L.maximum
    rep.add("e_maximum_normal", is_normal(G, high), order=high.order,
            note="normality checked in place of characteristic")

    images = {H.members: cent[H.members].members for H in subs}
    bijective = set(images.values()) == set(images)
    reversing = all(
        images[K.members] & ~images[H.members] == 0
        for H in subs for K in subs if H.members & ~K.members == 0
    )
    rep.add("f_centralizer_duality", bijective and reversing,
            fixed=sum(1 for H in subs if images[H.members] == H.members))
    return rep.finish()


def check_maxmember(G: FiniteGroup | PcPresentation, L: CdLattice | None = None,
                    enumerator: str = "auto") -> VerificationReport:
    """The CD lattice of the largest member ``M`` equals the CD lattice of ``G``."""
    G = as_group(G)
    L = L or cd_lattice(G, enumerator)
    rep = VerificationReport(G.name)
    M = L.maximum
    if M.is_whole:
        rep.add("cd_of_max_member", True, trivial=True, order=M.order)
        return rep.finish()
    MG, embed = subgroup_as_group(M, name=f"{G.name}:M")
    LM = cd_lattice(MG, enumerator)
    mapped = set()
    for H in LM.members:
        mask = np.zeros(G.order, dtype=bool)
        mask[embed[H.elements]] = True
        mapped.add(mask_to_bits(mask))
    rep.add("cd_of_max_member", mapped == set(L.member_sets()),
            max_order=M.order, members=len(L), members_of_M=len(LM))
    return rep.finish()


def product_members(G1: FiniteGroup, G2: FiniteGroup, H1: Subgroup, H2: Subgroup) -> int:
    """Bitset of ``H1 x H2`` inside the pc direct product ``G1 x G2``."""
    idx = (H1.elements[:, None] * G2.order + H2.elements[None, :]).ravel()
    mask = np.zeros(G1.order * G2.order, dtype=bool)
    mask[idx] = True
    return mask_to_bits(mask)


def check_direct_product(P1: PcPresentation, P2: PcPresentation,
                         enumerator: str = "auto") -> VerificationReport:
    """CD of a direct product is the product of the factors' CD lattices."""
    G1, G2 = as_group(P1), as_group(P2)
    G = as_group(direct_product(P1, P2))
    L1, L2, L = cd_lattice(G1, enumerator), cd_lattice(G2, enumerator), cd_lattice(G, enumerator)
    expected = {product_members(G1, G2, A, B) for A in L1.members for B in L2.members}
    rep = VerificationReport(G.name)
    rep.add("cd_product", expected == set(L.member_sets()), members=len(L),
            factors=[len(L1), len(L2)], m=L.m, m_factors=[L1.m, L2.m])
    rep.add("measure_product", L.m == L1.m * L2.m)
    return rep.finish()

