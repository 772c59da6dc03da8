"""Subgroup enumeration, subgroup sets and Hasse diagrams."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import EnumerationLimitError, GroupMismatchError
from .groups import (
    FiniteGroup,
    Subgroup,
    closure_mask,
    coset_labels,
    mask_to_bits,
    normalizer_mask,
    trivial_subgroup,
)

log = logging.getLogger(__name__)

ORACLE_BOUND = 512
SUBGROUP_LIMIT = 5_000_000


class SubgroupSet:
    """A deduplicated family of subgroups of one group."""

    def __init__(self, group: FiniteGroup, subgroups: Iterable[Subgroup] = ()):
        self.group = group
        self._subs: list[Subgroup] = []
        self._index: dict[int, int] = {}
        for H in subgroups:
            self.add(H)
        self._hasse: list[tuple[int, int]] | None = None

    def add(self, H: Subgroup) -> bool:
        if H.group is not self.group:
            raise GroupMismatchError("subgroup belongs to a different group")
        if H.members in self._index:
            return False
        self._index[H.members] = len(self._subs)
        self._subs.append(H)
        self._hasse = None
        return True

    def __len__(self) -> int:
        return len(self._subs)

    def __iter__(self) -> Iterator[Subgroup]:
        return iter(self._subs)

    def __getitem__(self, i: int) -> Subgroup:
        return self._subs[i]

    def __contains__(self, H: object) -> bool:
        return isinstance(H, Subgroup) and H.group is self.group and H.members in self._index

    def index_of(self, H: Subgroup) -> int:
        return self._index[H.members]

    def find(self, members: int) -> Subgroup | None:
        i = self._index.get(members)
        return None if i is None else self._subs[i]

    @property
    def member_sets(self) -> frozenset[int]:
        return frozenset(self._index)

    def sorted(self) -> "SubgroupSet":
        """Same family ordered by (order, members)."""
        return SubgroupSet(self.group, sorted(self._subs, key=lambda H: (H.order, H.members)))

    def order_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for H in self._subs:
            out[H.order] = out.get(H.order, 0) + 1
        return dict(sorted(out.items()))

    @property
    def hasse_edges(self) -> list[tuple[int, int]]:
        if self._hasse is None:
            self._hasse = hasse(self)
        return self._hasse

    def __repr__(self) -> str:
        return f"SubgroupSet({self.group.name}, {len(self)} subgroups)"


def hasse(S: SubgroupSet | Sequence[Subgroup]) -> list[tuple[int, int]]:
    """Covering pairs ``(i, j)`` (``S[i] < S[j]``, nothing strictly between)."""
    subs = list(S)
    order = sorted(range(len(subs)), key=lambda i: subs[i].order)
    bits = [subs[i].members for i in range(len(subs))]
    edges = []
    for jpos, j in enumerate(order):
        below = [i for i in order[:jpos]
                 if bits[i] != bits[j] and bits[i] & ~bits[j] == 0]
        # keep only maximal elements among those below j
        below.sort(key=lambda i: -subs[i].order)
        maximal: list[int] = []
        for i in below:
            if not any(bits[i] & ~bits[k] == 0 for k in maximal):
                maximal.append(i)
        edges.extend((i, j) for i in maximal)
    return sorted(edges)


def to_dot(S: SubgroupSet | Sequence[Subgroup], name: str = "lattice",
           edges: Sequence[tuple[int, int]] | None = None) -> str:
    """Graphviz rendering: one node per subgroup labelled by its order and generators."""
    subs = list(S)
    if edges is None:
        edges = S.hasse_edges if isinstance(S, SubgroupSet) else hasse(subs)
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for i, H in enumerate(subs):
        lines.append(f'  n{i} [label="{_order_label(H)}\\n<{", ".join(H.labels())}>"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _order_label(H: Subgroup) -> str:
    p = H.group.prime
    if p is not None and H.order > 1:
        k = round(np.log(H.order) / np.log(p))
        if p ** k == H.order:
            return f"{p}^{k}"
    return str(H.order)


def _guard(count: int) -> None:
    if count > SUBGROUP_LIMIT:
        raise EnumerationLimitError(
            f"subgroup enumeration exceeded {SUBGROUP_LIMIT} subgroups", count, SUBGROUP_LIMIT)


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    seen: dict[int, Subgroup] = {}
    for x in range(G.order):
        bits = mask_to_bits(closure_mask(G, [x]))
        if bits not in seen:
            seen[bits] = Subgroup(G, bits, (x,) if x else ())
    return list(seen.values())


def all_subgroups_closure(G: FiniteGroup, bound: int = ORACLE_BOUND) -> SubgroupSet:
    """Every subgroup, as the closure of the cyclic subgroups under pairwise joins."""
    if G.order > bound:
        raise EnumerationLimitError(
            f"closure enumeration needs order <= {bound}, got {G.order}", G.order, bound)
    cyclics = cyclic_subgroups(G)
    found: dict[int, Subgroup] = {C.members: C for C in cyclics}
    queue = list(found.values())
    while queue:
        H = queue.pop()
        hmask = None
        for C in cyclics:
            if C.members & ~H.members == 0:
                continue
            if hmask is None:
                hmask = H.mask
            gens = H.generators + C.generators
            bits = mask_to_bits(closure_mask(G, gens, hmask))
            if bits not in found:
                K = Subgroup(G, bits, gens)
                found[bits] = K
                queue.append(K)
                _guard(len(found))
    subs = sorted(found.values(), key=lambda H: (H.order, H.members))
    return SubgroupSet(G, subs)


def _p_power_map(G: FiniteGroup, p: int) -> np.ndarray:
    return G.power_arrays(np.arange(G.order), p)


def _extend_layer(G: FiniteGroup, H: Subgroup, candidate_mask: np.ndarray) -> list[Subgroup]:
    """All ``H<x>`` of index ``p`` over ``H`` for ``x`` in ``candidate_mask``."""
    out = []
    cand = candidate_mask.copy()
    hmask = H.mask
    while True:
        rest = np.flatnonzero(cand)
        if not rest.size:
            return out
        x = int(rest[0])
        gens = H.generators + (x,)
        kmask = closure_mask(G, gens, hmask)
        cand &= ~kmask
        out.append(Subgroup(G, mask_to_bits(kmask), gens))


def _layered(G: FiniteGroup, start: Subgroup, candidates: Callable[[Subgroup], np.ndarray],
             threads: int = 1) -> SubgroupSet:
    found: list[Subgroup] = [start]
    layer = [start]
    total = 1
    while layer:
        if threads > 1 and len(layer) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda H: _extend_layer(G, H, candidates(H)), layer))
        else:
            results = [_extend_layer(G, H, candidates(H)) for H in layer]
        nxt: dict[int, Subgroup] = {}
        for ext in results:
            for K in ext:
                nxt.setdefault(K.members, K)
        layer = [nxt[k] for k in sorted(nxt)]
        total += len(layer)
        _guard(total)
        found.extend(layer)
        if layer:
            log.debug("%s: layer of order %d has %d subgroups", G.name, layer[0].order, len(layer))
    return SubgroupSet(G, found)


def _require_p_group(G: FiniteGroup) -> int:
    p = G.prime
    if G.order == 1:
        return 2
    if p is None:
        raise ValueError(f"layered enumeration needs a group of prime-power order, got {G.order}")
    return p


def all_subgroups_layered(G: FiniteGroup, base: Subgroup | None = None, threads: int = 1) -> SubgroupSet:
    """Every subgroup (containing ``base``, if given) of a p-group, built by cyclic extension.

    A subgroup ``K`` of order ``p^(k+1)`` is ``H<x>`` for some ``H`` of order
    ``p^k`` normal in ``K``, with ``x`` normalizing ``H`` and ``x^p`` in ``H``.
    Above a fixed ``base`` the same holds since ``K`` is a p-group containing it.
    """
    from .groups import max_order

    bound = max_order()
    if G.order > bound:
        raise EnumerationLimitError(f"order {G.order} above enumeration bound {bound}", G.order, bound)
    p = _require_p_group(G)
    pmap = _p_power_map(G, p)
    start = trivial_subgroup(G) if base is None else base
    if start.group is not G:
        raise GroupMismatchError("base subgroup belongs to a different group")

    def candidates(H: Subgroup) -> np.ndarray:
        hmask = H.mask
        return normalizer_mask(G, H) & ~hmask & hmask[pmap]

    return _layered(G, start, candidates, threads)


def normal_subgroups(G: FiniteGroup, threads: int = 1) -> SubgroupSet:
    """Normal subgroups of a p-group: ``K = M<x>`` with ``xM`` central of order ``p`` in ``G/M``."""
    p = _require_p_group(G)
    pmap = _p_power_map(G, p)
    ar = np.arange(G.order)
    conj = [G.conj_arrays(ar, g) for g in G.gens]

    def candidates(M: Subgroup) -> np.ndarray:
        lab = coset_labels(G, M)
        mask = M.mask
        out = ~mask & mask[pmap]
        for c in conj:
            out &= lab[c] == lab
        return out

    return _layered(G, trivial_subgroup(G), candidates, threads)


def all_subgroups(G: FiniteGroup, enumerator: str = "auto", threads: int = 1) -> SubgroupSet:
    if enumerator == "auto":
        enumerator = "layered" if G.prime is not None or G.order == 1 else "closure"
    if enumerator == "layered":
        return all_subgroups_layered(G, threads=threads)
    if enumerator == "closure":
        return all_subgroups_closure(G)
    raise ValueError(f"unknown enumerator {enumerator!r}")
