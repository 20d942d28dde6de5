"""Finite monoids given by full multiplication tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Hashable


@dataclass(frozen=True)
class FiniteMonoid:
    elements: tuple[Hashable, ...]
    unit: Hashable
    table: dict[tuple[Hashable, Hashable], Hashable]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "table", dict(self.table))
        problem = check_monoid(self)
        if problem is not None:
            raise ValueError(problem)

    def mult(self, a, b):
        return self.table[(a, b)]

    def product(self, items) -> Hashable:
        out = self.unit
        for x in items:
            out = self.table[(out, x)]
        return out


def check_monoid(m: FiniteMonoid) -> str | None:
    """None when the table is a total, unital, associative multiplication."""
    elems = set(m.elements)
    if m.unit not in elems:
        return f"unit {m.unit!r} not among elements"
    for a, b in product(m.elements, repeat=2):
        if (a, b) not in m.table:
            return f"missing product {a!r}*{b!r}"
        if m.table[(a, b)] not in elems:
            return f"product {a!r}*{b!r} escapes the carrier"
    for a in m.elements:
        if m.table[(m.unit, a)] != a or m.table[(a, m.unit)] != a:
            return f"unit law fails at {a!r}"
    for a, b, c in product(m.elements, repeat=3):
        if m.table[(m.table[(a, b)], c)] != m.table[(a, m.table[(b, c)])]:
            return f"associativity fails at ({a!r},{b!r},{c!r})"
    return None


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(("e",), "e", {("e", "e"): "e"})


def cyclic_monoid(n: int) -> FiniteMonoid:
    elems = tuple(range(n))
    return FiniteMonoid(elems, 0, {(a, b): (a + b) % n for a in elems for b in elems})


def truncated_free_monoid(alphabet: str, max_len: int = 2, absorber: str = "#") -> FiniteMonoid:
    """Words up to ``max_len`` over ``alphabet``; longer products collapse to
    an absorbing element.  The smallest convenient witness that letter order
    is observable."""
    words = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + c for w in frontier for c in alphabet]
        words.extend(frontier)
    elems = tuple(words) + (absorber,)
    table = {}
    for a in elems:
        for b in elems:
            if a == absorber or b == absorber or len(a) + len(b) > max_len:
                table[(a, b)] = absorber
            else:
                table[(a, b)] = a + b
    return FiniteMonoid(elems, "", table)


def direct_product(m: FiniteMonoid, n: FiniteMonoid) -> FiniteMonoid:
    elems = tuple((a, b) for a in m.elements for b in n.elements)
    table = {
        ((a1, b1), (a2, b2)): (m.table[(a1, a2)], n.table[(b1, b2)])
        for (a1, b1) in elems
        for (a2, b2) in elems
    }
    return FiniteMonoid(elems, (m.unit, n.unit), table)
