"""Explicit pc presentations, structural criteria checkers and the test corpus.

The four families below are p-groups whose CD lattice is a short chain:

* ``l1odd(p)`` order p^5 (p odd), ``l1n(p)`` order p^6: chains of length 1;
* ``l2odd(p)`` order p^6 (p odd), ``l2n(p)`` order p^7: chains of length 2.

Generators are ordered with central generators last so every relation is a
legal pc conjugation word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import HypothesisError, PresentationError
from .groups import (
    FiniteGroup,
    Subgroup,
    as_group,
    center,
    closure_mask,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    is_extraspecial,
    is_normal,
    quotient_group,
    subgroup_closure,
    upper_central_series,
    whole_group,
)
from .pcgroup import PcPresentation, _is_prime, direct_product, elementary_abelian

FAMILIES = ("l1odd", "l1n", "l2odd", "l2n")


def find_c(p: int) -> int:
    """Smallest ``c`` in ``[0, p)`` outside the image of ``m -> m(m+1) mod p``."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    image = {m * (m + 1) % p for m in range(p)}
    return min(c for c in range(p) if c not in image)


def quadratic_form_anisotropic(p: int, c: int) -> bool:
    """``i^2 + ij - c j^2`` is nonzero mod ``p`` for every ``(i, j) != (0, 0)``."""
    i, j = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    vals = (i * i + i * j - c * j * j) % p
    vals[0, 0] = 1
    return bool((vals != 0).all())


@dataclass(frozen=True)
class ConstructionRecipe:
    family: str
    p: int
    c: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.family.endswith("odd") and self.p == 2:
            raise ValueError(f"{self.family} needs an odd prime")
        if self.c is not None and self.c in {m * (m + 1) % self.p for m in range(self.p)}:
            raise ValueError(f"c={self.c} lies in the image of m(m+1) mod {self.p}")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"family": self.family, "p": self.p}
        if self.c is not None:
            out["c"] = self.c
        return out


def _recipe_meta(recipe: ConstructionRecipe) -> dict:
    return {"recipe": recipe.to_dict()}


def build_l1odd(p: int) -> PcPresentation:
    """Order p^5: ``[x1,x2] = t``, ``[t,x1] = z1``, ``[t,x2] = z2``; exponent p."""
    recipe = ConstructionRecipe("l1odd", p)
    x1, x2, t, z1, z2 = range(5)
    conj = {
        (x1, x2): [(x2, 1), (t, p - 1)],
        (x1, t): [(t, 1), (z1, 1)],
        (x2, t): [(t, 1), (z2, 1)],
    }
    return PcPresentation([p] * 5, {}, conj, name=f"l1odd({p})",
                          generator_names=["x1", "x2", "t", "z1", "z2"],
                          metadata=_recipe_meta(recipe))


def build_l1n(p: int) -> PcPresentation:
    """Order p^6: ``[xi,xj] = zij`` for ``i < j``, the ``zij`` central."""
    recipe = ConstructionRecipe("l1n", p)
    z = {(0, 1): 3, (0, 2): 4, (1, 2): 5}
    conj = {(i, j): [(j, 1), (k, p - 1)] for (i, j), k in z.items()}
    return PcPresentation([p] * 6, {}, conj, name=f"l1n({p})",
                          generator_names=["x1", "x2", "x3", "z12", "z13", "z23"],
                          metadata=_recipe_meta(recipe))


def _l2_action(p: int, c: int, a1: int, a2: int, z1: int, z2: int) -> dict:
    x1, x2 = 0, 1
    cz = [(z2, c)] if c % p else []
    return {
        (x1, a1): [(a1, 1), (z1, 1)],
        (x2, a1): [(a1, 1), (z1, 1)] + cz,
        (x1, a2): [(a2, 1), (z2, 1)],
        (x2, a2): [(a2, 1), (z1, 1)],
    }


def build_l2odd(p: int) -> PcPresentation:
    """Order p^6: ``[x1,x2] = a1`` and the ``a_i`` bracketing into ``<z1,z2>``."""
    c = find_c(p)
    recipe = ConstructionRecipe("l2odd", p, c)
    x1, x2, a1, a2, z1, z2 = range(6)
    conj = {(x1, x2): [(x2, 1), (a1, p - 1)]}
    conj.update(_l2_action(p, c, a1, a2, z1, z2))
    return PcPresentation([p] * 6, {}, conj, name=f"l2odd({p})",
                          generator_names=["x1", "x2", "a1", "a2", "z1", "z2"],
                          metadata=_recipe_meta(recipe))


def build_l2n(p: int) -> PcPresentation:
    """Order p^7: as ``l2odd`` but ``[x1,x2] = z`` is a new central generator."""
    c = find_c(p)
    recipe = ConstructionRecipe("l2n", p, c)
    x1, x2, a1, a2, z, z1, z2 = range(7)
    conj = {(x1, x2): [(x2, 1), (z, p - 1)]}
    conj.update(_l2_action(p, c, a1, a2, z1, z2))
    return PcPresentation([p] * 7, {}, conj, name=f"l2n({p})",
                          generator_names=["x1", "x2", "a1", "a2", "z", "z1", "z2"],
                          metadata=_recipe_meta(recipe))


_BUILDERS = {"l1odd": build_l1odd, "l1n": build_l1n, "l2odd": build_l2odd, "l2n": build_l2n}


def build(family: str, p: int) -> PcPresentation:
    if family not in _BUILDERS:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return _BUILDERS[family](p)


def named_subgroup(pres: PcPresentation, *names: str) -> Subgroup:
    """Subgroup of the enumerated group generated by the named pc generators."""
    G = as_group(pres)
    idx = []
    for nm in names:
        if nm not in pres.generator_names:
            raise PresentationError(f"{pres.name} has no generator named {nm!r}")
        idx.append(G.gens[pres.generator_names.index(nm)])
    return subgroup_closure(G, idx)


# -- small groups ----------------------------------------------------------


def cyclic(p: int, k: int = 1) -> PcPresentation:
    """Cyclic group of order p^k, generators ``g, g^p, g^(p^2), ...``."""
    powers = {i: [(i + 1, 1)] for i in range(k - 1)}
    return PcPresentation([p] * k, powers, {}, name=f"C{p ** k}")


def dihedral(n: int) -> PcPresentation:
    """Dihedral group of order 2^n (n >= 3): ``b, a, a^2, ..., a^(2^(n-2))``."""
    if n < 3:
        raise ValueError("dihedral 2-groups need order at least 8")
    half = 2 ** (n - 1)
    powers = {i: [(i + 1, 1)] for i in range(1, n - 1)}
    conj = {}
    for i in range(1, n):
        inv = half - 2 ** (i - 1)
        conj[(0, i)] = [(k, 1) for k in range(1, n) if (inv >> (k - 1)) & 1]
    names = ["b", "a"] + [f"a{2 ** (k - 1)}" for k in range(2, n)]
    return PcPresentation([2] * n, powers, conj, name=f"D{2 ** (n - 1)}", generator_names=names)


def quaternion() -> PcPresentation:
    return PcPresentation([2, 2, 2], {0: [(2, 1)], 1: [(2, 1)]}, {(0, 1): [(1, 1), (2, 1)]},
                          name="Q8", generator_names=["i", "j", "k2"])


def extraspecial(p: int, exponent_p: bool = True) -> PcPresentation:
    """Extraspecial group of order p^3.

    For odd p: exponent p (Heisenberg) or exponent p^2 (``y^p = z``). For
    p = 2 the two types are D4 and Q8.
    """
    if p == 2:
        return dihedral(3) if exponent_p else quaternion()
    conj = {(0, 1): [(1, 1), (2, 1)]}
    if exponent_p:
        return PcPresentation([p] * 3, {}, conj, name=f"{p}^1+2_exp{p}",
                              generator_names=["x", "y", "z"])
    return PcPresentation([p] * 3, {1: [(2, 1)]}, conj, name=f"{p}^1+2_exp{p * p}",
                          generator_names=["x", "y", "z"])


def symmetric3() -> PcPresentation:
    return PcPresentation([2, 3], {}, {(0, 1): [(1, 2)]}, name="S3", generator_names=["s", "r"])


# -- criteria ----------------------------------------------------------------


@dataclass
class CriteriaResult:
    """Outcome of a structural criteria check; ``witness`` is set on success where relevant."""

    holds: bool
    diagnostics: dict[str, Any] = field(default_factory=dict)
    witness: Subgroup | None = None

    def __bool__(self) -> bool:
        return self.holds


def _p_and_exp(G: FiniteGroup) -> tuple[int | None, int]:
    p = G.prime
    if p is None:
        return None, 0
    k = 0
    n = G.order
    while n > 1:
        n //= p
        k += 1
    return p, k


def check_l1_criteria(P: FiniteGroup | PcPresentation) -> CriteriaResult:
    """Sufficient conditions for a CD chain of length 1 at order p^5.

    Odd p, ``|Z(P)| = p^2``, ``P/Z(P)`` extraspecial of exponent p and
    ``[Z_2(P), P] = Z(P)``.
    """
    G = as_group(P)
    p, k = _p_and_exp(G)
    diag: dict[str, Any] = {"order": G.order, "p": p}
    if p is None or p == 2:
        diag["failed"] = "p odd"
        return CriteriaResult(False, diag)
    if k != 5:
        diag["failed"] = "order p^5"
        return CriteriaResult(False, diag)
    Z = center(G)
    diag["center_order"] = Z.order
    if Z.order != p * p:
        diag["failed"] = "|Z| = p^2"
        return CriteriaResult(False, diag)
    Q = quotient_group(G, Z)
    ex = is_extraspecial(Q)
    qexp = exponent(Q)
    diag["quotient_extraspecial"] = ex
    diag["quotient_exponent"] = qexp
    if not ex or qexp != p:
        diag["failed"] = "P/Z extraspecial of exponent p"
        return CriteriaResult(False, diag)
    series = upper_central_series(G)
    Z2 = series[1] if len(series) > 1 else series[0]
    diag["z2_order"] = Z2.order
    bracket = commutator_subgroup(Z2, whole_group(G))
    if bracket != Z:
        diag["failed"] = "[Z2, P] = Z"
        return CriteriaResult(False, diag)
    return CriteriaResult(True, diag)


def _normal_subgroups_between(G: FiniteGroup, base: Subgroup, top_order: int) -> list[Subgroup]:
    """Normal subgroups ``K >= base`` with ``|K| <= top_order`` (p-groups)."""
    from .subgroups import _layered, _p_power_map

    p = G.prime
    pmap = _p_power_map(G, p)
    ar = np.arange(G.order)
    conj = [G.conj_arrays(ar, g) for g in G.gens]
    from .groups import coset_labels

    def candidates(M: Subgroup) -> np.ndarray:
        if M.order * p > top_order:
            return np.zeros(G.order, dtype=bool)
        lab = coset_labels(G, M)
        mask = M.mask
        out = ~mask & mask[pmap]
        for c in conj:
            out &= lab[c] == lab
        return out

    return list(_layered(G, base, candidates))


def check_l2_criteria(P: FiniteGroup | PcPresentation) -> CriteriaResult:
    """Sufficient conditions for a CD chain of length 2 at order p^6.

    Odd p, ``|Z(P)| = p^2``, ``|P'| = p^3`` and an abelian normal ``A`` of
    order p^4 with ``[A, x] = Z(P)`` for every ``x`` outside ``A``. Such an
    ``A`` contains ``[A, x] = Z(P)``, so the search runs over normal
    subgroups above the center.
    """
    G = as_group(P)
    p, k = _p_and_exp(G)
    diag: dict[str, Any] = {"order": G.order, "p": p}
    if p is None or p == 2:
        diag["failed"] = "p odd"
        return CriteriaResult(False, diag)
    if k != 6:
        diag["failed"] = "order p^6"
        return CriteriaResult(False, diag)
    Z = center(G)
    diag["center_order"] = Z.order
    if Z.order != p * p:
        diag["failed"] = "|Z| = p^2"
        return CriteriaResult(False, diag)
    D = derived_subgroup(G)
    diag["derived_order"] = D.order
    if D.order != p ** 3:
        diag["failed"] = "|P'| = p^3"
        return CriteriaResult(False, diag)
    candidates = [A for A in _normal_subgroups_between(G, Z, p ** 4) if A.order == p ** 4]
    diag["normal_candidates"] = len(candidates)
    zmask = Z.mask
    ar = np.arange(G.order)
    for A in candidates:
        if not _subgroup_abelian(G, A):
            continue
        if _bracket_is_center(G, A, Z, zmask, ar):
            diag["witness_order"] = A.order
            return CriteriaResult(True, diag, A)
    diag["failed"] = "abelian normal A with [A,x] = Z"
    return CriteriaResult(False, diag)


def _subgroup_abelian(G: FiniteGroup, A: Subgroup) -> bool:
    gens = A.generators
    return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


def _bracket_is_center(G: FiniteGroup, A: Subgroup, Z: Subgroup, zmask: np.ndarray,
                       ar: np.ndarray) -> bool:
    """``[A, x] = Z`` for all ``x`` outside ``A``; ``a -> [a, x]`` is a homomorphism on abelian ``A``."""
    outside = ar[~A.mask]
    if not outside.size:
        return False
    comms = []
    for a in A.generators:
        av = np.full(outside.size, a)
        c = G.mul_arrays(G.mul_arrays(G.inverse[av], G.inverse[outside]), G.mul_arrays(av, outside))
        if not zmask[c].all():
            return False
        comms.append(c)
    comms = np.stack(comms, axis=1)
    seen: dict[tuple, bool] = {}
    for row in comms:
        key = tuple(sorted(set(int(v) for v in row)))
        if key not in seen:
            seen[key] = closure_mask(G, list(key)).sum() == Z.order
        if not seen[key]:
            return False
    return True


@dataclass
class LemmaResult:
    """Outcome of the centralizer-size lemma check."""

    status: str  # "witness" or "hypothesis-violation"
    witness: int | None = None
    centralizer_order: int | None = None
    bound: int = 0
    q_times_bracket: int = 0


def check_lemma_centr(P: FiniteGroup | PcPresentation, R: Subgroup, Q: Subgroup,
                      centralizer_orders: np.ndarray | None = None) -> LemmaResult:
    """Look for ``x`` outside ``Q`` with ``|C_P(x)| >= p^2 |Z(P)|``.

    Requires ``R``, ``Q`` normal, ``Z(P) < R <= Q`` and ``|R : Z(P)| = p``.
    When ``|P| > |Q| |[R, P]|`` such an ``x`` must exist.
    """
    G = as_group(P)
    p = G.prime
    if p is None:
        raise HypothesisError("P must be a p-group")
    Z = center(G)
    if R.group is not G or Q.group is not G:
        raise HypothesisError("R and Q must be subgroups of P")
    if not (is_normal(G, R) and is_normal(G, Q)):
        raise HypothesisError("R and Q must be normal in P")
    if not (Z < R and R <= Q):
        raise HypothesisError("need Z(P) < R <= Q")
    if R.order != p * Z.order:
        raise HypothesisError("need |R : Z(P)| = p")
    bracket = commutator_subgroup(R, whole_group(G))
    qb = Q.order * bracket.order
    bound = p * p * Z.order
    if G.order <= qb:
        return LemmaResult("hypothesis-violation", bound=bound, q_times_bracket=qb)
    if centralizer_orders is None:
        centralizer_orders = centralizer_order_table(G)
    ok = (~Q.mask) & (centralizer_orders >= bound)
    hits = np.flatnonzero(ok)
    if not hits.size:
        return LemmaResult("witness", None, None, bound, qb)
    x = int(hits[0])
    return LemmaResult("witness", x, int(centralizer_orders[x]), bound, qb)


def centralizer_order_table(G: FiniteGroup) -> np.ndarray:
    """``|C_G(x)|`` for every element ``x``."""
    if G.has_table:
        return G.commuting.sum(axis=1)
    return np.array([int(G.centralizer_mask(x).sum()) for x in range(G.order)])


# -- corpus --------------------------------------------------------------------


def corpus(include_large: bool = True) -> list[PcPresentation]:
    """Deterministic test corpus; ``include_large`` adds the order-2187 member."""
    out = [cyclic(2), cyclic(3), cyclic(2, 2), cyclic(5), cyclic(2, 3), cyclic(3, 2)]
    for r in (2, 3, 4):
        out.append(elementary_abelian(2, r))
    for r in (2, 3, 4):
        out.append(elementary_abelian(3, r))
    out += [dihedral(3), dihedral(4), dihedral(5), quaternion()]
    out += [extraspecial(3, True), extraspecial(3, False)]
    s3 = symmetric3()
    out += [s3, direct_product(cyclic(2), s3, name="C2xS3")]
    out += [
        direct_product(cyclic(2), dihedral(3), name="C2xD4"),
        direct_product(cyclic(2), quaternion(), name="C2xQ8"),
        direct_product(cyclic(3), s3, name="C3xS3"),
        direct_product(cyclic(2), cyclic(2, 2), name="C2xC4"),
    ]
    out += [build_l1n(2), build_l2n(2), build_l1odd(3), build_l2odd(3), build_l1n(3)]
    if include_large:
        out.append(build_l2n(3))
    return out


def corpus_group(name: str) -> PcPresentation:
    for pres in corpus():
        if pres.name == name:
            return pres
    raise KeyError(name)


__all__ = [
    "FAMILIES", "ConstructionRecipe", "CriteriaResult", "LemmaResult",
    "build", "build_l1n", "build_l1odd", "build_l2n", "build_l2odd",
    "centralizer_order_table", "check_l1_criteria", "check_l2_criteria", "check_lemma_centr",
    "corpus", "corpus_group", "cyclic", "dihedral", "extraspecial", "find_c", "named_subgroup",
    "quadratic_form_anisotropic", "quaternion", "symmetric3",
]
