# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: pc collection, table closure, centralizer scans."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, realloc, free

from .errors import CollectionError

cnp.import_array()

BACKEND = "cython"


cdef class Collector:
    """Collection from the left for a consistent pc presentation."""

    cdef int n
    cdef long budget
    cdef long[:] rel
    cdef long[:] pow_ptr
    cdef long[:] pow_let
    cdef long[:] conj_ptr
    cdef long[:] conj_let
    cdef unsigned char[:] commute

    def __init__(self, rel, pow_ptr, pow_let, conj_ptr, conj_let, budget=1_000_000):
        cdef int i, j, n
        self.n = n = len(rel)
        self.budget = budget
        self.rel = np.ascontiguousarray(rel, dtype=np.int_)
        self.pow_ptr = np.ascontiguousarray(pow_ptr, dtype=np.int_)
        self.pow_let = np.ascontiguousarray(np.append(pow_let, 0), dtype=np.int_)
        self.conj_ptr = np.ascontiguousarray(conj_ptr, dtype=np.int_)
        self.conj_let = np.ascontiguousarray(np.append(conj_let, 0), dtype=np.int_)
        com = np.ones(n * n, dtype=np.uint8)
        for i in range(n):
            for j in range(i + 1, n):
                s = self.conj_ptr[i * n + j]
                t = self.conj_ptr[i * n + j + 1]
                if not (t - s == 1 and self.conj_let[s] == j):
                    com[i * n + j] = 0
        self.commute = com

    def collect(self, exps, word):
        """Multiply the normal form ``exps`` by the letters of ``word``."""
        cdef int n = self.n
        cdef long[:] w = np.ascontiguousarray(word, dtype=np.int_)
        cdef long[:] v = np.array(exps, dtype=np.int_)
        cdef long cap = 64 + 2 * w.shape[0]
        cdef long top = 0
        cdef long *stack = <long *> malloc(cap * sizeof(long))
        cdef long *grown
        cdef long steps = 0
        cdef long g, e, j, k, r, s, t, need
        cdef bint overflow, tail_zero, all_commute
        cdef long i
        if stack == NULL:
            raise MemoryError()
        try:
            for i in range(w.shape[0] - 1, -1, -1):
                stack[top] = w[i]
                top += 1
            while top > 0:
                top -= 1
                g = stack[top]
                steps += 1
                if steps > self.budget:
                    raise CollectionError(f"collection exceeded {self.budget} steps")
                if g < 0 or g >= n:
                    raise IndexError(f"generator index {g} out of range")
                e = v[g] + 1
                overflow = e == self.rel[g]
                tail_zero = True
                all_commute = True
                for j in range(g + 1, n):
                    if v[j] != 0:
                        tail_zero = False
                        if not self.commute[g * n + j]:
                            all_commute = False
                            break
                if tail_zero and overflow:
                    v[g] = 0
                    s = self.pow_ptr[g]
                    t = self.pow_ptr[g + 1]
                    need = top + (t - s)
                    if need > cap:
                        cap = 2 * need
                        grown = <long *> realloc(stack, cap * sizeof(long))
                        if grown == NULL:
                            raise MemoryError()
                        stack = grown
                    for k in range(t - 1, s - 1, -1):
                        stack[top] = self.pow_let[k]
                        top += 1
                    continue
                if tail_zero or (all_commute and not overflow):
                    v[g] = e
                    continue
                # general case: push power word then conjugated tail
                need = top
                if overflow:
                    need += self.pow_ptr[g + 1] - self.pow_ptr[g]
                for j in range(g + 1, n):
                    if v[j] != 0:
                        need += v[j] * (self.conj_ptr[g * n + j + 1] - self.conj_ptr[g * n + j])
                if need > cap:
                    cap = 2 * need
                    grown = <long *> realloc(stack, cap * sizeof(long))
                    if grown == NULL:
                        raise MemoryError()
                    stack = grown
                # letters are pushed in reverse so the power word is popped first
                for j in range(n - 1, g, -1):
                    r = v[j]
                    if r != 0:
                        s = self.conj_ptr[g * n + j]
                        t = self.conj_ptr[g * n + j + 1]
                        for i in range(r):
                            for k in range(t - 1, s - 1, -1):
                                stack[top] = self.conj_let[k]
                                top += 1
                        v[j] = 0
                if overflow:
                    s = self.pow_ptr[g]
                    t = self.pow_ptr[g + 1]
                    for k in range(t - 1, s - 1, -1):
                        stack[top] = self.pow_let[k]
                        top += 1
                    v[g] = 0
                else:
                    v[g] = e
        finally:
            free(stack)
        return tuple([int(x) for x in v])


def table_closure(table, gens, start):
    """Close the member mask ``start`` under right multiplication by ``gens``."""
    cdef int[:, :] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef long[:] gv = np.ascontiguousarray(gens, dtype=np.int_)
    out = np.array(start, dtype=np.uint8, copy=True)
    cdef unsigned char[:] mask = out
    cdef long order = tab.shape[0]
    cdef int[:] queue = np.empty(order, dtype=np.int32)
    cdef long head = 0, tail = 0, x, k, ng = gv.shape[0]
    cdef int y
    if ng == 0:
        return out
    for x in range(order):
        if mask[x]:
            queue[tail] = x
            tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        for k in range(ng):
            y = tab[x, gv[k]]
            if not mask[y]:
                mask[y] = 1
                queue[tail] = y
                tail += 1
    return out


def centralizer_mask(right, left, letters):
    """Mask of elements commuting with the word ``letters``."""
    cdef int[:, :] R = np.ascontiguousarray(right, dtype=np.int32)
    cdef int[:, :] L = np.ascontiguousarray(left, dtype=np.int32)
    cdef long[:] w = np.ascontiguousarray(letters, dtype=np.int_)
    cdef long order = R.shape[1], nl = w.shape[0]
    out = np.empty(order, dtype=np.uint8)
    cdef unsigned char[:] mask = out
    cdef long y, k
    cdef int a, b
    for y in range(order):
        a = y
        b = y
        for k in range(nl):
            a = R[w[k], a]
        for k in range(nl - 1, -1, -1):
            b = L[w[k], b]
        mask[y] = a == b
    return out
