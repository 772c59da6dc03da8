"""Enumerated finite groups and their basic structural operations.

Elements of an enumerated group are the integers ``0 .. order-1`` with the
identity at 0. Subgroups are bit vectors over those indices stored as Python
ints. Three realizations share the :class:`FiniteGroup` interface:

* :class:`PcGroup` - a pc presentation with right/left multiplication
  permutations for every pc generator, built without scalar collection;
* :class:`TableGroup` - an explicit Cayley table (used for subgroups viewed
  as groups in their own right);
* :class:`CosetGroup` - a quotient ``G/N`` whose elements are cosets,
  multiplied through representatives.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import kernels
from .errors import (
    EnumerationLimitError,
    GroupMismatchError,
    NotNormalError,
    NotSubgroupError,
)
from .pcgroup import Element, PcPresentation

DEFAULT_MAX_ORDER = 2 ** 18
TABLE_BOUND = 4096

_max_order_override: int | None = None


def max_order() -> int:
    """Current element-enumeration bound (``CDLAT_MAX_ORDER`` overrides the default)."""
    if _max_order_override is not None:
        return _max_order_override
    env = os.environ.get("CDLAT_MAX_ORDER")
    if env:
        return int(env)
    return DEFAULT_MAX_ORDER


def set_max_order(bound: int | None) -> None:
    global _max_order_override
    _max_order_override = bound


# -- bitsets -------------------------------------------------------------


def mask_to_bits(mask: np.ndarray) -> int:
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    nbytes = (n + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little", count=n).astype(bool)


def bits_members(bits: int, n: int) -> np.ndarray:
    return np.flatnonzero(bits_to_mask(bits, n))


# -- groups --------------------------------------------------------------


class FiniteGroup:
    """Common interface for enumerated groups."""

    name: str
    order: int
    gens: list[int]

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._centralizer_cache: dict[int, np.ndarray] = {}

    # subclasses provide: inverse, mul_arrays, right_perm, left_perm, label

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        if self.has_table:
            return int(self.table[a, b])
        return int(self.mul_arrays(np.array([a]), np.array([b]))[0])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, a)
            k >>= 1
            if k:
                a = self.mul(a, a)
        return out

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def conjugate(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(b), a), b)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def has_table(self) -> bool:
        return self.order <= TABLE_BOUND

    @cached_property
    def table(self) -> np.ndarray:
        """Full Cayley table ``table[a, b] = a*b`` (small groups only)."""
        if not self.has_table:
            raise EnumerationLimitError(
                f"Cayley table needs order <= {TABLE_BOUND}, got {self.order}",
                self.order, TABLE_BOUND)
        return self._build_table()

    def _build_table(self) -> np.ndarray:
        cols = np.empty((self.order, self.order), dtype=np.int32)
        for b in range(self.order):
            cols[b] = self.right_perm(b)
        return np.ascontiguousarray(cols.T)

    @cached_property
    def commuting(self) -> np.ndarray:
        """Boolean matrix of commuting pairs (small groups only)."""
        t = self.table
        return t == t.T

    def centralizer_mask(self, x: int) -> np.ndarray:
        cached = self._centralizer_cache.get(x)
        if cached is not None:
            return cached
        if self.has_table:
            mask = self.commuting[x]
        else:
            mask = self._centralizer_mask(x)
            if len(self._centralizer_cache) > 256:
                self._centralizer_cache.clear()
        self._centralizer_cache[x] = mask
        return mask

    def _centralizer_mask(self, x: int) -> np.ndarray:
        return self.right_perm(x) == self.left_perm(x)

    def centralizer_of(self, elements: Iterable[int]) -> np.ndarray:
        mask = np.ones(self.order, dtype=bool)
        for x in elements:
            mask &= self.centralizer_mask(int(x))
        return mask

    def conj_arrays(self, xs: np.ndarray, g: int) -> np.ndarray:
        """``x^g`` for every ``x`` in ``xs``."""
        return self.left_perm(self.inv(g))[self.right_perm(g)[xs]]

    def power_arrays(self, xs: np.ndarray, k: int) -> np.ndarray:
        out = np.zeros_like(xs)
        base = xs.copy()
        while k:
            if k & 1:
                out = self.mul_arrays(out, base)
            k >>= 1
            if k:
                base = self.mul_arrays(base, base)
        return out

    @cached_property
    def order_factors(self) -> dict[int, int]:
        n, out, d = self.order, {}, 2
        while d * d <= n:
            while n % d == 0:
                out[d] = out.get(d, 0) + 1
                n //= d
            d += 1
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out

    @property
    def prime(self) -> int | None:
        """The prime ``p`` if this is a nontrivial p-group."""
        f = self.order_factors
        return next(iter(f)) if len(f) == 1 else None

    def label(self, x: int) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, order={self.order})"


class PcGroup(FiniteGroup):
    """Enumerated group of a pc presentation; element index is mixed-radix."""

    def __init__(self, pres: PcPresentation, bound: int | None = None):
        super().__init__()
        bound = max_order() if bound is None else bound
        if pres.order > bound:
            raise EnumerationLimitError(
                f"{pres.name} has order {pres.order}, above the enumeration bound {bound}",
                pres.order, bound)
        self.pres = pres
        self.name = pres.name
        self.order = pres.order
        self.rel = np.array(pres.relative_orders, dtype=np.int64)
        self.weights = np.array(pres.radix_weights, dtype=np.int64)
        self.gens = [int(w) for w in self.weights]
        self._right, self._left, self.inverse = self._build_tables()

    def digits(self, xs: np.ndarray, i: int) -> np.ndarray:
        return (xs // self.weights[i]) % self.rel[i]

    def _apply(self, right: np.ndarray, word: Sequence[tuple[int, int]], cur: np.ndarray,
               where: np.ndarray | None = None) -> np.ndarray:
        for g, e in word:
            for _ in range(e):
                nxt = right[g][cur]
                cur = nxt if where is None else np.where(where, nxt, cur)
        return cur

    def _build_tables(self):
        pres = self.pres
        n, N = pres.ngens, self.order
        ar = np.arange(N, dtype=np.int32)
        right = np.empty((n, N), dtype=np.int32)
        for i in range(n - 1, -1, -1):
            p, w = int(self.rel[i]), int(self.weights[i])
            d = self.digits(ar, i)
            block = w * p
            # x*g_i = prefix * g_i^{d+1} * (tail)^{g_i}
            cur = ((ar // block) * block + ((d + 1) % p) * w).astype(np.int32)
            over = d == p - 1
            if over.any() and pres.power_word(i):
                cur = self._apply(right, pres.power_word(i), cur, over)
            for j in range(i + 1, n):
                dj = self.digits(ar, j)
                word = pres.conjugation_word(i, j)
                for t in range(1, int(self.rel[j])):
                    m = dj >= t
                    if m.any():
                        cur = self._apply(right, word, cur, m)
            right[i] = cur
        # inverses: right-multiply by g_i^{k} to clear digit i, left to right
        y = ar.copy()
        b = np.zeros(N, dtype=np.int32)
        for i in range(n):
            p = int(self.rel[i])
            k = (-self.digits(y, i)) % p
            for t in range(1, p):
                m = k >= t
                y = np.where(m, right[i][y], y)
                b = np.where(m, right[i][b], b)
        inverse = b
        left = np.empty_like(right)
        for i in range(n):
            rinv = np.empty(N, dtype=np.int32)
            rinv[right[i]] = ar
            # g*x = (x^-1 g^-1)^-1
            left[i] = inverse[rinv[inverse]]
        return right, left, inverse

    def letters(self, x: int) -> list[int]:
        out = []
        for i in range(self.pres.ngens):
            e = (x // int(self.weights[i])) % int(self.rel[i])
            out.extend([i] * e)
        return out

    def right_perm(self, x: int) -> np.ndarray:
        cur = np.arange(self.order, dtype=np.int32)
        for g in self.letters(x):
            cur = self._right[g][cur]
        return cur

    def left_perm(self, x: int) -> np.ndarray:
        cur = np.arange(self.order, dtype=np.int32)
        for g in reversed(self.letters(x)):
            cur = self._left[g][cur]
        return cur

    def mul(self, a: int, b: int) -> int:
        if self.has_table and "table" in self.__dict__:
            return int(self.table[a, b])
        for g in self.letters(b):
            a = int(self._right[g][a])
        return a

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        cur = np.asarray(a, dtype=np.int32).copy()
        b = np.asarray(b)
        for i in range(self.pres.ngens):
            d = self.digits(b, i)
            for t in range(1, int(self.rel[i])):
                m = d >= t
                if m.any():
                    cur = np.where(m, self._right[i][cur], cur)
        return cur

    def _build_table(self) -> np.ndarray:
        N = self.order
        cols = np.empty((N, N), dtype=np.int32)
        cols[0] = np.arange(N, dtype=np.int32)
        n = self.pres.ngens
        for b in range(1, N):
            # b = b' * g_i with i the last nonzero digit of b
            for i in range(n - 1, -1, -1):
                if (b // int(self.weights[i])) % int(self.rel[i]):
                    break
            cols[b] = self._right[i][cols[b - int(self.weights[i])]]
        return np.ascontiguousarray(cols.T)

    def _centralizer_mask(self, x: int) -> np.ndarray:
        return kernels.centralizer_mask(self._right, self._left, self.letters(x)).astype(bool)

    def element(self, x: int) -> Element:
        return self.pres.element_from_index(int(x))

    def index(self, g: Element) -> int:
        if g.pres is not self.pres and g.pres != self.pres:
            raise GroupMismatchError("element does not belong to this group")
        return g.index

    def label(self, x: int) -> str:
        return str(self.element(x))

    def word(self, x: int) -> list[list[int]]:
        """Normal-form word of element ``x`` in the JSON encoding (1-indexed)."""
        return [[g + 1, e] for g, e in self.element(x).word()]


class TableGroup(FiniteGroup):
    """A group given by its Cayley table; identity must be element 0."""

    def __init__(self, table: np.ndarray, gens: Sequence[int] | None = None, name: str = "G",
                 labels: Sequence[str] | None = None):
        super().__init__()
        table = np.ascontiguousarray(table, dtype=np.int32)
        self.__dict__["table"] = table
        self.order = table.shape[0]
        self.name = name
        self.inverse = np.argmax(table == 0, axis=1).astype(np.int32)
        self.gens = list(gens) if gens is not None else _generating_set_from_table(table)
        self._labels = list(labels) if labels is not None else None

    @property
    def has_table(self) -> bool:
        return True

    def right_perm(self, x: int) -> np.ndarray:
        return self.table[:, x]

    def left_perm(self, x: int) -> np.ndarray:
        return self.table[x]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.table[np.asarray(a), np.asarray(b)]

    def label(self, x: int) -> str:
        return self._labels[x] if self._labels else str(x)


def _generating_set_from_table(table: np.ndarray) -> list[int]:
    n = table.shape[0]
    mask = np.zeros(n, dtype=np.uint8)
    mask[0] = 1
    gens: list[int] = []
    while not mask.all():
        x = int(np.flatnonzero(mask == 0)[0])
        gens.append(x)
        mask = kernels.table_closure(table, gens, mask)
    return gens


class CosetGroup(FiniteGroup):
    """The quotient ``G/N`` realized on cosets with representative-wise products."""

    def __init__(self, parent: FiniteGroup, normal: "Subgroup"):
        super().__init__()
        self.parent = parent
        self.normal = normal
        labels = coset_labels(parent, normal)
        reps, coset_of = np.unique(labels, return_inverse=True)
        self.reps = reps.astype(np.int32)
        self.coset_of = coset_of.astype(np.int32)
        self.order = len(reps)
        self.name = f"{parent.name}/{normal.order}"
        self.inverse = self.coset_of[parent.inverse[self.reps]]
        self.gens = sorted({int(self.coset_of[g]) for g in parent.gens} - {0})

    def right_perm(self, x: int) -> np.ndarray:
        return self.coset_of[self.parent.right_perm(int(self.reps[x]))[self.reps]]

    def left_perm(self, x: int) -> np.ndarray:
        return self.coset_of[self.parent.left_perm(int(self.reps[x]))[self.reps]]

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.coset_of[self.parent.mul_arrays(self.reps[np.asarray(a)], self.reps[np.asarray(b)])]

    def coset(self, x: int) -> int:
        """Members of coset ``x`` as a bitset of the parent group."""
        return mask_to_bits(self.coset_of == x)

    def label(self, x: int) -> str:
        return f"{self.parent.label(int(self.reps[x]))}N"


_GROUP_CACHE_ATTR = "_enumerated_group"


def as_group(obj: FiniteGroup | PcPresentation) -> FiniteGroup:
    """Enumerated group for a presentation (cached on the presentation)."""
    if isinstance(obj, FiniteGroup):
        return obj
    if isinstance(obj, PcPresentation):
        cached = obj.__dict__.get(_GROUP_CACHE_ATTR)
        if cached is None:
            cached = PcGroup(obj)
            obj.__dict__[_GROUP_CACHE_ATTR] = cached
        return cached
    raise TypeError(f"cannot interpret {type(obj).__name__} as a group")


# -- subgroups -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup as a member bitset plus a generating list."""

    group: FiniteGroup
    members: int
    generators: tuple[int, ...]

    @cached_property
    def order(self) -> int:
        return self.members.bit_count()

    @property
    def mask(self) -> np.ndarray:
        return bits_to_mask(self.members, self.group.order)

    @property
    def elements(self) -> np.ndarray:
        return bits_members(self.members, self.group.order)

    def __contains__(self, x: int) -> bool:
        return bool((self.members >> int(x)) & 1)

    def _same_group(self, other: "Subgroup") -> None:
        if not isinstance(other, Subgroup):
            raise TypeError(f"expected Subgroup, got {type(other).__name__}")
        if other.group is not self.group:
            raise GroupMismatchError("subgroups of different groups")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        self._same_group(other)
        return self.members & ~other.members == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.members != other.members

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __gt__(self, other: "Subgroup") -> bool:
        return other < self

    @property
    def is_trivial(self) -> bool:
        return self.members == 1

    @property
    def is_whole(self) -> bool:
        return self.order == self.group.order

    def labels(self) -> list[str]:
        return [self.group.label(g) for g in self.generators]

    def __repr__(self) -> str:
        gens = ", ".join(self.labels())
        return f"Subgroup(order={self.order}, <{gens}>)"


def _check_elements(G: FiniteGroup, xs: Iterable[int]) -> list[int]:
    out = []
    for x in xs:
        x = int(x)
        if not 0 <= x < G.order:
            raise NotSubgroupError(f"element {x} not in {G.name}")
        out.append(x)
    return out


def closure_mask(G: FiniteGroup, seeds: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
    """Member mask of the subgroup generated by ``seeds`` (and ``start``, which must lie inside it)."""
    seeds = [int(s) for s in seeds if int(s) != 0]
    if start is None:
        start = np.zeros(G.order, dtype=np.uint8)
        start[0] = 1
    else:
        start = np.asarray(start, dtype=np.uint8).copy()
        start[0] = 1
    if not seeds:
        return start.astype(bool)
    if G.has_table:
        return kernels.table_closure(G.table, seeds, start).astype(bool)
    mask = start.astype(bool)
    perms = [G.right_perm(s) for s in seeds]
    frontier = np.flatnonzero(mask)
    while frontier.size:
        prods = np.concatenate([perm[frontier] for perm in perms])
        fresh = np.unique(prods[~mask[prods]])
        if not fresh.size:
            break
        mask[fresh] = True
        frontier = fresh
    return mask


def subgroup_closure(G: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seeds``."""
    seeds = _check_elements(G, seeds)
    gens = tuple(s for s in seeds if s != 0)
    return Subgroup(G, mask_to_bits(closure_mask(G, gens)), gens)


def subgroup_from_mask(G: FiniteGroup, mask: np.ndarray, generators: Sequence[int] | None = None) -> Subgroup:
    """Wrap a member mask known to be a subgroup, deriving generators if needed."""
    mask = np.asarray(mask, dtype=bool)
    if generators is None:
        generators = generators_of_mask(G, mask)
    return Subgroup(G, mask_to_bits(mask), tuple(int(g) for g in generators))


def generators_of_mask(G: FiniteGroup, mask: np.ndarray) -> list[int]:
    """Greedy generating set: repeatedly add the smallest member not yet generated."""
    current = np.zeros(G.order, dtype=bool)
    current[0] = True
    gens: list[int] = []
    while True:
        rest = np.flatnonzero(mask & ~current)
        if not rest.size:
            return gens
        x = int(rest[0])
        gens.append(x)
        current = closure_mask(G, gens, current)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, 1, ())


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (1 << G.order) - 1, tuple(G.gens))


def is_subgroup_mask(G: FiniteGroup, mask: np.ndarray) -> bool:
    mask = np.asarray(mask, dtype=bool)
    if not mask[0]:
        return False
    members = np.flatnonzero(mask)
    if not mask[G.inverse[members]].all():
        return False
    return bool(closure_mask(G, members.tolist()).sum() == mask.sum())


def centralizer(G: FiniteGroup, H: Subgroup | Iterable[int]) -> Subgroup:
    """``C_G(H)`` from the intersection of element centralizers of generators."""
    gens = H.generators if isinstance(H, Subgroup) else _check_elements(G, H)
    return subgroup_from_mask(G, G.centralizer_of(gens))


def center(G: FiniteGroup) -> Subgroup:
    return subgroup_from_mask(G, G.centralizer_of(G.gens))


def coset_labels(G: FiniteGroup, N: Subgroup) -> np.ndarray:
    """Label each element by the smallest index in its right coset ``xN``."""
    if N.is_trivial:
        return np.arange(G.order, dtype=np.int64)
    n = G.order
    rows, cols = [], []
    ar = np.arange(n)
    for g in N.generators:
        rows.append(ar)
        cols.append(G.right_perm(g))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n)).tocsr()
    _, comp = connected_components(graph, directed=True, connection="weak")
    first = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, comp, ar)
    return first[comp]


def normalizer_mask(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    """Elements ``x`` with ``H^x = H``."""
    if H.is_trivial or H.is_whole:
        return np.ones(G.order, dtype=bool)
    if G.has_table:
        t = G.table
        hmask = H.mask
        ar = np.arange(G.order)
        out = np.ones(G.order, dtype=bool)
        for h in H.generators:
            conj = t[t[G.inverse, h], ar]
            out &= hmask[conj]
        return out
    lab = coset_labels(G, H)
    out = np.ones(G.order, dtype=bool)
    for h in H.generators:
        # x^-1 h x in H  <=>  h x H = x H
        out &= lab[G.left_perm(h)] == lab
    return out


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, normalizer_mask(G, H))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    if H.group is not G:
        raise GroupMismatchError("subgroup belongs to a different group")
    hmask = H.mask
    members = np.flatnonzero(hmask)
    for g in G.gens:
        if not hmask[G.conj_arrays(members, g)].all():
            return False
    return True


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    G = H.group
    members = H.elements
    conj = G.conj_arrays(members, g)
    mask = np.zeros(G.order, dtype=bool)
    mask[conj] = True
    gens = G.conj_arrays(np.array(H.generators, dtype=np.int64), g) if H.generators else []
    return Subgroup(G, mask_to_bits(mask), tuple(int(x) for x in gens))


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    H._same_group(K)
    G = H.group
    if K <= H:
        return H
    if H <= K:
        return K
    gens = H.generators + tuple(g for g in K.generators if g not in H)
    return Subgroup(G, mask_to_bits(closure_mask(G, gens, H.mask)), gens)


def meet(H: Subgroup, K: Subgroup) -> Subgroup:
    H._same_group(K)
    bits = H.members & K.members
    if bits == H.members:
        return H
    if bits == K.members:
        return K
    G = H.group
    return subgroup_from_mask(G, bits_to_mask(bits, G.order))


def product_set(H: Subgroup, K: Subgroup) -> int:
    """The set ``HK`` as a bitset (not necessarily a subgroup)."""
    H._same_group(K)
    G = H.group
    hs, ks = H.elements, K.elements
    mask = np.zeros(G.order, dtype=bool)
    if G.has_table:
        mask[G.table[np.ix_(hs, ks)].ravel()] = True
    else:
        for k in ks:
            mask[G.right_perm(int(k))[hs]] = True
    return mask_to_bits(mask)


def normal_closure(G: FiniteGroup, S: Subgroup, conjugators: Sequence[int] | None = None) -> Subgroup:
    """Smallest subgroup containing ``S`` normalized by ``conjugators`` (default: ``G``)."""
    conjugators = list(G.gens if conjugators is None else conjugators)
    mask = S.mask.copy()
    gens = list(S.generators)
    changed = True
    while changed:
        changed = False
        for c in conjugators:
            conj = G.conj_arrays(np.array(gens, dtype=np.int64), c) if gens else np.array([], dtype=np.int64)
            new = [int(x) for x in conj if not mask[x]]
            if new:
                gens.extend(new)
                mask = closure_mask(G, gens, mask)
                changed = True
    return Subgroup(G, mask_to_bits(mask), tuple(gens))


def commutator_subgroup(A: Subgroup, B: Subgroup, pair_limit: int = 1 << 16) -> Subgroup:
    """``[A, B]``: all commutators ``[a, b]`` and their closure, normalized by ``A`` and ``B``."""
    A._same_group(B)
    G = A.group
    if A.order * B.order <= pair_limit:
        a = np.repeat(A.elements, B.order)
        b = np.tile(B.elements, A.order)
        comm = G.mul_arrays(G.mul_arrays(G.inverse[a], G.inverse[b]), G.mul_arrays(a, b))
        seeds = np.unique(comm)
        S = subgroup_from_mask(G, closure_mask(G, seeds.tolist()))
    else:
        seeds = {G.commutator(x, y) for x in A.generators for y in B.generators}
        S = subgroup_closure(G, sorted(seeds))
    return normal_closure(G, S, list(A.generators) + list(B.generators))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    W = whole_group(G)
    return commutator_subgroup(W, W)


def upper_central_series(G: FiniteGroup) -> list[Subgroup]:
    """``Z_1 <= Z_2 <= ...`` until it stabilizes (at ``G`` for nilpotent ``G``)."""
    series: list[Subgroup] = []
    current = trivial_subgroup(G)
    ar = np.arange(G.order)
    while True:
        lab = coset_labels(G, current)
        mask = np.ones(G.order, dtype=bool)
        for g in G.gens:
            # [x, g] in Z_i  <=>  x^g Z_i = x Z_i
            mask &= lab[G.conj_arrays(ar, g)] == lab
        nxt = subgroup_from_mask(G, mask)
        if nxt.members == current.members:
            return series
        series.append(nxt)
        current = nxt
        if nxt.is_whole:
            return series


def quotient_group(G: FiniteGroup, N: Subgroup) -> CosetGroup:
    if N.group is not G:
        raise GroupMismatchError("subgroup belongs to a different group")
    if not is_normal(G, N):
        raise NotNormalError("quotient needs a normal subgroup")
    return CosetGroup(G, N)


def subgroup_as_group(H: Subgroup, name: str | None = None) -> tuple[TableGroup, np.ndarray]:
    """``H`` as a group in its own right, plus the map from its indices to ``H.group``."""
    G = H.group
    members = H.elements
    local = np.full(G.order, -1, dtype=np.int64)
    local[members] = np.arange(members.size)
    if G.has_table:
        sub = G.table[np.ix_(members, members)]
    else:
        sub = np.stack([G.right_perm(int(b))[members] for b in members], axis=1)
    table = local[sub]
    gens = [int(local[g]) for g in H.generators]
    labels = [G.label(int(x)) for x in members]
    return TableGroup(table, gens, name=name or f"{G.name}[{H.order}]", labels=labels), members


# -- predicates ----------------------------------------------------------


def is_abelian(G: FiniteGroup) -> bool:
    gens = G.gens
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            if G.mul(a, b) != G.mul(b, a):
                return False
    return True


def element_orders(G: FiniteGroup) -> np.ndarray:
    ar = np.arange(G.order)
    orders = np.zeros(G.order, dtype=np.int64)
    cur = ar.copy()
    k = 1
    pending = np.ones(G.order, dtype=bool)
    while pending.any():
        done = pending & (cur == 0)
        orders[done] = k
        pending &= ~done
        if not pending.any():
            break
        cur = G.mul_arrays(cur, ar)
        k += 1
    return orders


def exponent(G: FiniteGroup) -> int:
    return math.lcm(*(int(o) for o in np.unique(element_orders(G))))


def is_elementary_abelian(G: FiniteGroup) -> bool:
    p = G.prime
    if G.order == 1:
        return True
    if p is None or not is_abelian(G):
        return False
    return all(G.power(g, p) == 0 for g in G.gens)


def is_extraspecial(G: FiniteGroup) -> bool:
    """``Z(G) = G' = Phi(G)`` of order ``p``."""
    p = G.prime
    if p is None:
        return False
    Z = center(G)
    if Z.order != p:
        return False
    D = derived_subgroup(G)
    if D.members != Z.members:
        return False
    return is_elementary_abelian(quotient_group(G, Z))
