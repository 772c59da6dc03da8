"""Polycyclic presentations with prime relative orders.

A presentation on generators ``g_0 .. g_{n-1}`` (0-indexed internally,
1-indexed in the JSON format) fixes a power word for each ``g_i^{p_i}`` and
a conjugation word for each ``g_j^{g_i}`` (``i < j``), both over generators
of index ``> i``. Every element has the normal form
``g_0^{e_0} ... g_{n-1}^{e_{n-1}}`` with ``0 <= e_i < p_i``.

Conventions: ``[a, b] = a^-1 b^-1 a b`` and ``a^b = b^-1 a b``.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .errors import CollectionError, GroupMismatchError, PresentationError

Word = tuple[tuple[int, int], ...]

DEFAULT_COLLECTION_BUDGET = 1_000_000


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def _as_word(word: Iterable[Sequence[int]] | None) -> Word:
    if word is None:
        return ()
    out = []
    for item in word:
        g, e = item
        out.append((int(g), int(e)))
    return tuple(out)


def _trim(word: Word) -> Word:
    return tuple((g, e) for g, e in word if e != 0)


class PcPresentation:
    """A polycyclic presentation with prime relative orders.

    Parameters
    ----------
    relative_orders
        One prime per generator.
    power_words
        ``{i: word}`` giving ``g_i^{p_i}`` as a word over generators ``> i``;
        absent entries mean the identity.
    conjugation_words
        ``{(i, j): word}`` for ``i < j`` giving ``g_j^{g_i}`` as a word over
        generators ``> i``; absent entries mean ``g_j`` (commuting).
    """

    def __init__(
        self,
        relative_orders: Sequence[int],
        power_words: Mapping[int, Iterable[Sequence[int]]] | None = None,
        conjugation_words: Mapping[tuple[int, int], Iterable[Sequence[int]]] | None = None,
        name: str = "G",
        generator_names: Sequence[str] | None = None,
        metadata: Mapping | None = None,
    ):
        self.name = name
        self.relative_orders: tuple[int, ...] = tuple(int(p) for p in relative_orders)
        n = len(self.relative_orders)
        powers = {}
        for i, w in (power_words or {}).items():
            w = _trim(_as_word(w))
            if w:
                powers[int(i)] = w
        conjugates = {}
        for key, w in (conjugation_words or {}).items():
            i, j = (int(k) for k in key)
            w = _trim(_as_word(w))
            if w != ((j, 1),):
                conjugates[(i, j)] = w
        self._powers = dict(sorted(powers.items()))
        self._conjugates = dict(sorted(conjugates.items()))
        if generator_names is None:
            generator_names = [f"g{i + 1}" for i in range(n)]
        self.generator_names: tuple[str, ...] = tuple(generator_names)
        self.metadata = dict(metadata or {})
        self._validate()

    # -- structure -----------------------------------------------------

    @property
    def power_words(self) -> Mapping[int, Word]:
        return MappingProxyType(self._powers)

    @property
    def conjugation_words(self) -> Mapping[tuple[int, int], Word]:
        return MappingProxyType(self._conjugates)

    @property
    def ngens(self) -> int:
        return len(self.relative_orders)

    @property
    def order(self) -> int:
        return math.prod(self.relative_orders)

    @property
    def primes(self) -> set[int]:
        return set(self.relative_orders)

    def power_word(self, i: int) -> Word:
        return self._powers.get(i, ())

    def conjugation_word(self, i: int, j: int) -> Word:
        return self._conjugates.get((i, j), ((j, 1),))

    def _validate(self) -> None:
        n = self.ngens
        for p in self.relative_orders:
            if not _is_prime(p):
                raise PresentationError(f"relative order {p} is not prime")
        if len(self.generator_names) != n:
            raise PresentationError("generator_names must have one entry per generator")

        def check_word(word: Word, lo: int, what: str) -> None:
            for g, e in word:
                if not lo < g < n:
                    raise PresentationError(f"{what}: generator {g + 1} must lie in ({lo + 1}, {n}]")
                if not 0 <= e < self.relative_orders[g]:
                    raise PresentationError(f"{what}: exponent {e} of generator {g + 1} out of range")

        for i, w in self._powers.items():
            if not 0 <= i < n:
                raise PresentationError(f"power word for unknown generator {i + 1}")
            check_word(w, i, f"power word of g{i + 1}")
        for (i, j), w in self._conjugates.items():
            if not 0 <= i < j < n:
                raise PresentationError(f"conjugation word key ({i + 1},{j + 1}) must satisfy i < j <= n")
            check_word(w, i, f"conjugation word g{j + 1}^g{i + 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PcPresentation):
            return NotImplemented
        return (
            self.relative_orders == other.relative_orders
            and self._powers == other._powers
            and self._conjugates == other._conjugates
        )

    def __hash__(self) -> int:
        return hash((self.relative_orders, tuple(self._powers.items()), tuple(self._conjugates.items())))

    def __repr__(self) -> str:
        return f"PcPresentation({self.name!r}, order={self.order}, ngens={self.ngens})"

    def renamed(self, name: str, metadata: Mapping | None = None) -> "PcPresentation":
        return PcPresentation(
            self.relative_orders, self._powers, self._conjugates, name=name,
            generator_names=self.generator_names,
            metadata=self.metadata if metadata is None else metadata,
        )

    # -- collection ----------------------------------------------------

    @staticmethod
    def _letters(word: Word) -> list[int]:
        return [g for g, e in word for _ in range(e)]

    @cached_property
    def collector(self):
        n = self.ngens
        pow_ptr, pow_let = [0], []
        for i in range(n):
            pow_let.extend(self._letters(self.power_word(i)))
            pow_ptr.append(len(pow_let))
        conj_ptr, conj_let = [0], []
        for i in range(n):
            for j in range(n):
                if i < j:
                    conj_let.extend(self._letters(self.conjugation_word(i, j)))
                conj_ptr.append(len(conj_let))
        return kernels.Collector(
            self.relative_orders, pow_ptr, pow_let, conj_ptr, conj_let, DEFAULT_COLLECTION_BUDGET
        )

    def _collect_letters(self, exps: Sequence[int], letters: Sequence[int]) -> tuple[int, ...]:
        return self.collector.collect(exps, letters)

    def collect(self, word: Iterable[Sequence[int]]) -> "Element":
        """Normal form of an arbitrary word ``[(gen, exp), ...]`` (0-indexed).

        Negative exponents are allowed; they multiply by generator inverses.
        """
        exps = self.identity.exponents
        for g, e in _as_word(word):
            if not 0 <= g < self.ngens:
                raise PresentationError(f"invalid generator index {g}")
            if e >= 0:
                exps = self._collect_letters(exps, [g] * e)
            else:
                ginv = self.generator(g).inverse()
                exps = self._collect_letters(exps, ginv.letters() * (-e))
        return Element(self, exps)

    # -- elements ------------------------------------------------------

    @cached_property
    def identity(self) -> "Element":
        return Element(self, (0,) * self.ngens)

    def generator(self, i: int) -> "Element":
        if not 0 <= i < self.ngens:
            raise PresentationError(f"invalid generator index {i}")
        exps = [0] * self.ngens
        exps[i] = 1
        return Element(self, tuple(exps))

    @property
    def generators(self) -> list["Element"]:
        return [self.generator(i) for i in range(self.ngens)]

    def element(self, exponents: Sequence[int]) -> "Element":
        exps = tuple(int(e) for e in exponents)
        if len(exps) != self.ngens or any(not 0 <= e < p for e, p in zip(exps, self.relative_orders)):
            raise PresentationError(f"{exps} is not a normal-form exponent vector")
        return Element(self, exps)

    @cached_property
    def radix_weights(self) -> tuple[int, ...]:
        w, acc = [], 1
        for p in reversed(self.relative_orders):
            w.append(acc)
            acc *= p
        return tuple(reversed(w))

    def element_from_index(self, index: int) -> "Element":
        if not 0 <= index < self.order:
            raise IndexError(index)
        exps = []
        for w, p in zip(self.radix_weights, self.relative_orders):
            exps.append(index // w % p)
        return Element(self, tuple(exps))

    def elements(self) -> Iterator["Element"]:
        for exps in itertools.product(*(range(p) for p in self.relative_orders)):
            yield Element(self, exps)

    def word_from_names(self, text: str) -> "Element":
        """Parse ``"x1*x2^2*z"`` using ``generator_names``."""
        lookup = {name: i for i, name in enumerate(self.generator_names)}
        word = []
        for part in filter(None, (s.strip() for s in text.split("*"))):
            name, _, exp = part.partition("^")
            if name not in lookup:
                raise PresentationError(f"unknown generator {name!r}")
            word.append((lookup[name], int(exp) if exp else 1))
        return self.collect(word)


@dataclass(frozen=True, eq=False)
class Element:
    """An element in normal form; ``index`` is its mixed-radix position."""

    pres: PcPresentation
    exponents: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.exponents == other.exponents and (
            self.pres is other.pres or self.pres == other.pres)

    def __hash__(self) -> int:
        return hash(self.exponents)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.pres is not self.pres and other.pres != self.pres:
            raise GroupMismatchError("elements belong to different groups")

    def letters(self) -> list[int]:
        return [g for g, e in enumerate(self.exponents) for _ in range(e)]

    def word(self) -> Word:
        return tuple((g, e) for g, e in enumerate(self.exponents) if e)

    @property
    def index(self) -> int:
        return sum(e * w for e, w in zip(self.exponents, self.pres.radix_weights))

    @property
    def is_identity(self) -> bool:
        return not any(self.exponents)

    @property
    def depth(self) -> int:
        for i, e in enumerate(self.exponents):
            if e:
                return i
        return len(self.exponents)

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.pres, self.pres._collect_letters(self.exponents, other.letters()))

    def inverse(self) -> "Element":
        pres = self.pres
        y = self.exponents
        letters: list[int] = []
        for i, p in enumerate(pres.relative_orders):
            k = (-y[i]) % p
            if k:
                y = pres._collect_letters(y, [i] * k)
                letters.extend([i] * k)
        return Element(pres, pres._collect_letters(pres.identity.exponents, letters))

    def __invert__(self) -> "Element":
        return self.inverse()

    def __pow__(self, k: int) -> "Element":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.pres.identity
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def commutator(self, other: "Element") -> "Element":
        """``[self, other] = self^-1 other^-1 self other``."""
        self._check(other)
        return self.inverse() * other.inverse() * self * other

    def conjugate(self, other: "Element") -> "Element":
        """``self^other = other^-1 self other``."""
        self._check(other)
        return other.inverse() * self * other

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity:
            x = x * self
            k += 1
        return k

    def __repr__(self) -> str:
        return f"Element({self.pres.name}: {self})"

    def __str__(self) -> str:
        names = self.pres.generator_names
        parts = [names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.word()]
        return "*".join(parts) or "1"


# -- free-function forms -------------------------------------------------


def collect(pres: PcPresentation, word: Iterable[Sequence[int]]) -> Element:
    return pres.collect(word)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def inverse(a: Element) -> Element:
    return a.inverse()


def power(a: Element, k: int) -> Element:
    return a ** k


def commutator(a: Element, b: Element) -> Element:
    return a.commutator(b)


def conjugate(a: Element, b: Element) -> Element:
    return a.conjugate(b)


# -- consistency -----------------------------------------------------------


@dataclass(frozen=True)
class ConsistencyResult:
    """Outcome of the overlap tests; ``overlap`` names the first failure."""

    ok: bool
    overlap: str | None = None
    lhs: tuple[int, ...] | None = None
    rhs: tuple[int, ...] | None = None
    tests_run: int = 0

    def __bool__(self) -> bool:
        return self.ok


def check_consistency(pres: PcPresentation) -> ConsistencyResult:
    """Run the standard overlap tests for a finite pc presentation.

    Checks ``g_k (g_j g_i) = (g_k g_j) g_i`` for ``k > j > i``, the two
    power overlaps for ``j > i`` and ``g_i g_i^p = g_i^p g_i``. Returns the
    first failing overlap, or an ok result.
    """
    n = pres.ngens
    rel = pres.relative_orders
    col = pres._collect_letters
    ident = pres.identity.exponents
    unit = [pres.generator(i).exponents for i in range(n)]
    count = 0

    def letters(exps):
        return [g for g, e in enumerate(exps) for _ in range(e)]

    try:
        power_nf = [col(ident, pres._letters(pres.power_word(i))) for i in range(n)]
        prod_nf = {}
        for j in range(n):
            for i in range(j):
                prod_nf[(j, i)] = col(unit[j], [i])

        for k in range(n):
            for j in range(k):
                for i in range(j):
                    count += 1
                    lhs = col(col(unit[k], [j]), [i])
                    rhs = col(unit[k], letters(prod_nf[(j, i)]))
                    if lhs != rhs:
                        return ConsistencyResult(
                            False, f"g{k + 1}*g{j + 1}*g{i + 1}", lhs, rhs, count)
        for j in range(n):
            for i in range(j):
                count += 1
                lhs = col(power_nf[j], [i])
                start = tuple((rel[j] - 1) if t == j else 0 for t in range(n))
                rhs = col(start, letters(prod_nf[(j, i)]))
                if lhs != rhs:
                    return ConsistencyResult(
                        False, f"g{j + 1}^{rel[j]}*g{i + 1}", lhs, rhs, count)
                count += 1
                lhs = col(unit[j], letters(power_nf[i]))
                rhs = col(prod_nf[(j, i)], [i] * (rel[i] - 1))
                if lhs != rhs:
                    return ConsistencyResult(
                        False, f"g{j + 1}*g{i + 1}^{rel[i]}", lhs, rhs, count)
        for i in range(n):
            count += 1
            lhs = col(unit[i], letters(power_nf[i]))
            rhs = col(power_nf[i], [i])
            if lhs != rhs:
                return ConsistencyResult(False, f"g{i + 1}^{rel[i] + 1}", lhs, rhs, count)
    except CollectionError as exc:
        return ConsistencyResult(False, f"collection budget exceeded: {exc}", None, None, count)
    return ConsistencyResult(True, None, None, None, count)


# -- products --------------------------------------------------------------


def _shift(word: Word, offset: int) -> Word:
    return tuple((g + offset, e) for g, e in word)


def direct_product(g1: PcPresentation, g2: PcPresentation, name: str | None = None) -> PcPresentation:
    """``g1 x g2`` with the generators of ``g1`` first."""
    off = g1.ngens
    powers = dict(g1.power_words)
    powers.update({i + off: _shift(w, off) for i, w in g2.power_words.items()})
    conj = dict(g1.conjugation_words)
    conj.update({(i + off, j + off): _shift(w, off) for (i, j), w in g2.conjugation_words.items()})
    names = _disambiguate(list(g1.generator_names) + list(g2.generator_names))
    return PcPresentation(
        g1.relative_orders + g2.relative_orders, powers, conj,
        name=name or f"{g1.name} x {g2.name}", generator_names=names,
    )


def _disambiguate(names: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for nm in names:
        if nm in seen:
            seen[nm] += 1
            out.append(f"{nm}_{seen[nm]}")
        else:
            seen[nm] = 0
            out.append(nm)
    return out


class ActionError(PresentationError):
    """A proposed action does not define a valid semidirect product."""


def _evaluate(word: Word, images: Sequence[Element], identity: Element) -> Element:
    out = identity
    for g, e in word:
        out = out * images[g] ** e
    return out


def semidirect_product(
    K: PcPresentation,
    Q: PcPresentation,
    action: Mapping[int, Sequence[Element]],
    name: str | None = None,
    generator_names: Sequence[str] | None = None,
) -> PcPresentation:
    """``K`` semidirect ``Q`` with ``Q``'s generators first.

    ``action[q]`` lists the images ``k_j^{q}`` of each generator of ``K``
    under conjugation by generator ``q`` of ``Q``; missing entries act
    trivially.
    """
    from .pcgs import subgroup_order

    off = Q.ngens
    conj = dict(Q.conjugation_words)
    for (i, j), w in K.conjugation_words.items():
        conj[(i + off, j + off)] = _shift(w, off)
    powers = dict(Q.power_words)
    powers.update({i + off: _shift(w, off) for i, w in K.power_words.items()})

    for q, images in action.items():
        if not 0 <= q < Q.ngens:
            raise ActionError(f"action given for unknown generator {q + 1} of Q")
        images = list(images)
        if len(images) != K.ngens:
            raise ActionError(f"action of q{q + 1} must give {K.ngens} images")
        for img in images:
            if img.pres is not K and img.pres != K:
                raise ActionError("action images must be elements of K")
        _check_automorphism(K, images, q)
        if subgroup_order(K, images) != K.order:
            raise ActionError(f"images under q{q + 1} do not generate K")
        for j, img in enumerate(images):
            conj[(q, j + off)] = _shift(img.word(), off)

    if generator_names is None:
        generator_names = _disambiguate(list(Q.generator_names) + list(K.generator_names))
    result = PcPresentation(
        Q.relative_orders + K.relative_orders, powers, conj,
        name=name or f"{K.name} : {Q.name}", generator_names=generator_names,
    )
    check = check_consistency(result)
    if not check.ok:
        raise ActionError(f"action incompatible with the relations of Q (overlap {check.overlap})")
    return result


def _check_automorphism(K: PcPresentation, images: Sequence[Element], q: int) -> None:
    ident = K.identity
    for i in range(K.ngens):
        lhs = images[i] ** K.relative_orders[i]
        rhs = _evaluate(K.power_word(i), images, ident)
        if lhs != rhs:
            raise ActionError(f"q{q + 1}: power relation of k{i + 1} not preserved")
        for j in range(i + 1, K.ngens):
            lhs = images[j].conjugate(images[i])
            rhs = _evaluate(K.conjugation_word(i, j), images, ident)
            if lhs != rhs:
                raise ActionError(f"q{q + 1}: conjugation relation k{j + 1}^k{i + 1} not preserved")


def elementary_abelian(p: int, rank: int, name: str | None = None,
                       generator_names: Sequence[str] | None = None) -> PcPresentation:
    return PcPresentation([p] * rank, name=name or f"C{p}^{rank}", generator_names=generator_names)


# -- JSON ------------------------------------------------------------------


def _word_to_json(word: Word) -> list[list[int]]:
    return [[g + 1, e] for g, e in word]


def _word_from_json(data) -> Word:
    return tuple((int(g) - 1, int(e)) for g, e in data)


def to_dict(pres: PcPresentation) -> dict:
    data = {
        "name": pres.name,
        "relative_orders": list(pres.relative_orders),
        "powers": {str(i + 1): _word_to_json(w) for i, w in pres.power_words.items()},
        "conjugates": {f"{i + 1},{j + 1}": _word_to_json(w) for (i, j), w in pres.conjugation_words.items()},
        "generator_names": list(pres.generator_names),
    }
    for key, value in pres.metadata.items():
        data[key] = value
    return data


def from_dict(data: Mapping) -> PcPresentation:
    try:
        rel = [int(p) for p in data["relative_orders"]]
        powers = {int(k) - 1: _word_from_json(v) for k, v in data.get("powers", {}).items()}
        conj = {}
        for key, v in data.get("conjugates", {}).items():
            i, j = (int(s) - 1 for s in key.split(","))
            conj[(i, j)] = _word_from_json(v)
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed presentation JSON: {exc}") from exc
    core = {"name", "relative_orders", "powers", "conjugates", "generator_names"}
    metadata = {k: v for k, v in data.items() if k not in core}
    return PcPresentation(
        rel, powers, conj, name=str(data.get("name", "G")),
        generator_names=data.get("generator_names"), metadata=metadata,
    )


def to_json(pres: PcPresentation) -> str:
    return json.dumps(to_dict(pres), indent=2) + "\n"


def from_json(text: str) -> PcPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"invalid JSON: {exc}") from exc
    return from_dict(data)
