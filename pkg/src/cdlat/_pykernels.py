"""Pure-Python implementations of the hot kernels.

Same signatures as the compiled ``_ckernels`` module; selected by
:mod:`cdlat.kernels` when the extension is unavailable.
"""

from __future__ import annotations

import numpy as np

from .errors import CollectionError

BACKEND = "python"


class Collector:
    """Collection from the left for a consistent pc presentation.

    Relations are passed in flattened form. ``pow_ptr``/``pow_let`` hold the
    letters of each power word ``g_i^{p_i}``; ``conj_ptr``/``conj_let`` hold
    the letters of ``g_j^{g_i}`` at slot ``i*n + j``.
    """

    def __init__(self, rel, pow_ptr, pow_let, conj_ptr, conj_let, budget=1_000_000):
        self.n = n = len(rel)
        self.rel = [int(p) for p in rel]
        self.budget = int(budget)
        pow_ptr = [int(v) for v in pow_ptr]
        pow_let = [int(v) for v in pow_let]
        conj_ptr = [int(v) for v in conj_ptr]
        conj_let = [int(v) for v in conj_let]
        self.power = [pow_let[pow_ptr[i]:pow_ptr[i + 1]] for i in range(n)]
        self.conj = [
            [conj_let[conj_ptr[i * n + j]:conj_ptr[i * n + j + 1]] for j in range(n)]
            for i in range(n)
        ]
        # commute[i][j]: g_j^{g_i} == g_j
        self.commute = [
            [j <= i or self.conj[i][j] == [j] for j in range(n)] for i in range(n)
        ]

    def collect(self, exps, word):
        """Multiply the normal form ``exps`` by the letters of ``word``."""
        v = [int(e) for e in exps]
        n = self.n
        rel = self.rel
        power = self.power
        conj = self.conj
        commute = self.commute
        stack = [int(g) for g in reversed(word)]
        steps = 0
        budget = self.budget
        while stack:
            g = stack.pop()
            steps += 1
            if steps > budget:
                raise CollectionError(f"collection exceeded {budget} steps")
            if g < 0 or g >= n:
                raise IndexError(f"generator index {g} out of range")
            e = v[g] + 1
            overflow = e == rel[g]
            com = commute[g]
            tail_zero = True
            all_commute = True
            for j in range(g + 1, n):
                if v[j]:
                    tail_zero = False
                    if not com[j]:
                        all_commute = False
                        break
            if tail_zero:
                if overflow:
                    v[g] = 0
                    stack.extend(reversed(power[g]))
                else:
                    v[g] = e
                continue
            if all_commute and not overflow:
                v[g] = e
                continue
            pending = []
            if overflow:
                pending.extend(power[g])
            cg = conj[g]
            for j in range(g + 1, n):
                k = v[j]
                if k:
                    pending.extend(cg[j] * k)
                    v[j] = 0
            v[g] = 0 if overflow else e
            stack.extend(reversed(pending))
        return tuple(v)


def table_closure(table, gens, start):
    """Close the member mask ``start`` under right multiplication by ``gens``.

    ``start`` must lie inside the subgroup generated by ``gens`` (the
    identity alone always does); the result is then that subgroup.
    """
    mask = np.array(start, dtype=np.uint8, copy=True)
    gens = [int(g) for g in gens]
    if not gens:
        return mask
    members = np.flatnonzero(mask)
    frontier = members
    while frontier.size:
        prods = table[np.ix_(frontier, gens)].ravel()
        fresh = prods[mask[prods] == 0]
        if not fresh.size:
            break
        fresh = np.unique(fresh)
        mask[fresh] = 1
        frontier = fresh
    return mask


def centralizer_mask(right, left, letters):
    """Mask of elements commuting with the word ``letters``.

    ``right[i]``/``left[i]`` are right/left multiplication permutations of
    the i-th generator.
    """
    order = right.shape[1]
    a = np.arange(order, dtype=right.dtype)
    b = a.copy()
    for g in letters:
        a = right[g][a]
    for g in reversed(letters):
        b = left[g][b]
    return (a == b).view(np.uint8)
