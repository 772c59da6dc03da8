"""Induced polycyclic sequences for subgroups of pc groups.

These work on presentation-level arithmetic only, so subgroup orders and
membership are available for groups far too large to enumerate.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .pcgroup import Element, PcPresentation


class InducedPcgs:
    """A subgroup given by one element per occupied depth.

    Each stored element has leading exponent 1, so sifting an element through
    the sequence yields its exponents relative to the subgroup's pcgs.
    """

    def __init__(self, pres: PcPresentation, gens: Iterable[Element] = ()):
        self.pres = pres
        self.by_depth: dict[int, Element] = {}
        self.extend(gens)

    def sift(self, g: Element) -> Element:
        """Strip leading terms of ``g`` using stored elements."""
        rel = self.pres.relative_orders
        while not g.is_identity:
            d = g.depth
            h = self.by_depth.get(d)
            if h is None:
                return g
            e = g.exponents[d]
            g = (h ** (rel[d] - e)) * g
        return g

    def extend(self, gens: Iterable[Element]) -> None:
        queue = list(gens)
        rel = self.pres.relative_orders
        while queue:
            g = self.sift(queue.pop())
            if g.is_identity:
                continue
            d = g.depth
            lead = g.exponents[d]
            if lead != 1:
                g = g ** pow(lead, -1, rel[d])
            self.by_depth[d] = g
            queue.append(g ** rel[d])
            queue.extend(g.commutator(h) for h in self.by_depth.values() if h is not g)

    @property
    def elements(self) -> list[Element]:
        return [self.by_depth[d] for d in sorted(self.by_depth)]

    @property
    def depths(self) -> list[int]:
        return sorted(self.by_depth)

    @property
    def order(self) -> int:
        rel = self.pres.relative_orders
        out = 1
        for d in self.by_depth:
            out *= rel[d]
        return out

    def __contains__(self, g: Element) -> bool:
        return self.sift(g).is_identity

    def exponents(self, g: Element) -> list[int] | None:
        """Exponents of ``g`` on :attr:`elements`, or ``None`` if ``g`` is outside."""
        coeffs = {}
        while not g.is_identity:
            d = g.depth
            h = self.by_depth.get(d)
            if h is None:
                return None
            e = g.exponents[d]
            coeffs[d] = e
            g = (h ** e).inverse() * g
        return [coeffs.get(d, 0) for d in self.depths]


def induced_pcgs(pres: PcPresentation, gens: Iterable[Element]) -> InducedPcgs:
    return InducedPcgs(pres, gens)


def subgroup_order(pres: PcPresentation, gens: Sequence[Element]) -> int:
    return InducedPcgs(pres, gens).order
