"""Diagrams of the free strict monoidal category over a signature.

A diagram is a typed sequence of one-generator slices; composition is
slice concatenation and tensoring shifts the right factor past the left
cod.  Two diagrams are equal when connected by exchange moves swapping
adjacent slices with disjoint wire footprints; ``normalize`` picks the
canonical representative of that class and ``bfs_equal`` is the
independent brute-force oracle for the same relation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from . import _schedule
from .polygraph import Polygraph

DEFAULT_ORACLE_BUDGET = 100_000


class BoundaryError(ValueError):
    """Wires fail to line up."""


@dataclass(frozen=True)
class Slice:
    """One generator applied after ``offset`` untouched wires."""

    offset: int
    gen: str


@dataclass(frozen=True, eq=False)
class Diagram:
    graph: Polygraph
    dom: tuple[str, ...]
    cod: tuple[str, ...]
    slices: tuple[Slice, ...]

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "slices", tuple(self.slices))
        boundary = self.dom
        for s in self.slices:
            boundary = apply_slice(self.graph, boundary, s)
        if boundary != self.cod:
            raise BoundaryError(f"cod {self.cod} does not match computed {boundary}")

    def boundary_chain(self) -> list[tuple[str, ...]]:
        """All intermediate boundaries, dom first and cod last."""
        chain = [self.dom]
        for s in self.slices:
            chain.append(apply_slice(self.graph, chain[-1], s))
        return chain

    def __eq__(self, other) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.slices == other.slices
        )

    def __rshift__(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __matmul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)

    def __repr__(self):
        body = " ; ".join(f"({s.offset},{s.gen})" for s in self.slices) or "id"
        return f"<Diagram {list(self.dom)} -> {list(self.cod)} : {body}>"


def apply_slice(graph: Polygraph, boundary: tuple[str, ...], s: Slice) -> tuple[str, ...]:
    g = graph.gens.get(s.gen)
    if g is None:
        raise BoundaryError(f"unknown generator {s.gen!r}")
    if s.offset < 0 or s.offset + g.arity > len(boundary):
        raise BoundaryError(f"slice ({s.offset},{s.gen}) does not fit boundary {boundary}")
    if boundary[s.offset : s.offset + g.arity] != g.inputs:
        raise BoundaryError(
            f"slice ({s.offset},{s.gen}) expects {g.inputs} at {s.offset}, found "
            f"{boundary[s.offset:s.offset + g.arity]}"
        )
    return boundary[: s.offset] + g.outputs + boundary[s.offset + g.arity :]


def identity(graph: Polygraph, objs) -> Diagram:
    objs = tuple(objs)
    return Diagram(graph, objs, objs, ())


def from_gen(graph: Polygraph, name: str) -> Diagram:
    g = graph.gens.get(name)
    if g is None:
        raise BoundaryError(f"unknown generator {name!r}")
    return Diagram(graph, g.inputs, g.outputs, (Slice(0, name),))


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    if d1.cod != d2.dom:
        raise BoundaryError(f"cannot compose: {d1.cod} != {d2.dom}")
    return Diagram(d1.graph, d1.dom, d2.cod, d1.slices + d2.slices)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Left-first tensor: all of d1, then d2 shifted past d1's cod."""
    shift = len(d1.cod)
    shifted = tuple(Slice(s.offset + shift, s.gen) for s in d2.slices)
    return Diagram(d1.graph, d1.dom + d2.dom, d1.cod + d2.cod, d1.slices + shifted)


def whisker(left_ctx, d: Diagram, right_ctx) -> Diagram:
    left_ctx, right_ctx = tuple(left_ctx), tuple(right_ctx)
    shift = len(left_ctx)
    shifted = tuple(Slice(s.offset + shift, s.gen) for s in d.slices)
    return Diagram(
        d.graph, left_ctx + d.dom + right_ctx, left_ctx + d.cod + right_ctx, shifted
    )


def _exchanger(graph: Polygraph):
    gens = graph.gens

    def exchange(first: Slice, second: Slice) -> tuple[tuple[Slice, Slice], ...]:
        g1, g2 = gens[first.gen], gens[second.gen]
        o1, o2 = first.offset, second.offset
        options = []
        if o2 + g2.arity <= o1:
            # second acts entirely left of first's footprint
            options.append(
                (Slice(o2, second.gen), Slice(o1 + g2.coarity - g2.arity, first.gen))
            )
        if o2 >= o1 + g1.coarity:
            # second acts entirely right of first's outputs; when first has no
            # outputs and second no inputs both sides are legal passings
            alt = (Slice(o2 - g1.coarity + g1.arity, second.gen), Slice(o1, first.gen))
            if alt not in options:
                options.append(alt)
        return tuple(options)

    return exchange


def _slice_key(s: Slice) -> tuple:
    return (s.offset, s.gen)


def normalize(d: Diagram) -> Diagram:
    """Canonical representative of the exchange class of ``d``.

    Slices are scheduled at the earliest level their blockers allow;
    levels are linearized in order and sorted by (offset, generator).
    Idempotent, and preserves dom, cod and the generator multiset.
    """
    out = _schedule.canonical_order(d.slices, _exchanger(d.graph), _slice_key)
    return Diagram(d.graph, d.dom, d.cod, tuple(out))


def equal(d1: Diagram, d2: Diagram) -> bool:
    """Decidable equality in the free strict monoidal category.

    Identical normal forms settle almost every instance.  Differing normal
    forms are not yet a disproof: zero-width layers passing each other
    admit two transports, and those classes are decided exactly on the
    move graph (raising on budget exhaustion rather than guessing).
    """
    if d1.dom != d2.dom or d1.cod != d2.cod:
        return False
    n1, n2 = normalize(d1), normalize(d2)
    if n1.slices == n2.slices:
        return True
    if Counter(s.gen for s in n1.slices) != Counter(s.gen for s in n2.slices):
        return False
    return _schedule.decide_equal(
        n1.slices, n2.slices, _exchanger(d1.graph), DEFAULT_ORACLE_BUDGET
    )


def bfs_equal(d1: Diagram, d2: Diagram, max_states: int = DEFAULT_ORACLE_BUDGET) -> bool | None:
    """Breadth-first oracle for ``equal``.

    Explores single adjacent exchange moves from ``d1``; True when ``d2``
    is reached, False when the class is exhausted without finding it, and
    None when the state budget runs out first.
    """
    if d1.dom != d2.dom or d1.cod != d2.cod:
        return False
    return _schedule.reachable(d1.slices, d2.slices, _exchanger(d1.graph), max_states)


def exchange_class(d: Diagram, max_states: int | None = None) -> set[tuple[Slice, ...]] | None:
    """All slice lists exchange-equivalent to ``d`` (oracle helper)."""
    return _schedule.exchange_closure(d.slices, _exchanger(d.graph), max_states)


def enumerate_diagrams(graph: Polygraph, dom, max_slices: int) -> Iterator[Diagram]:
    """Every well-typed diagram from ``dom`` with at most ``max_slices`` slices.

    Raw slice lists are pairwise distinct; exchange-equivalent variants are
    all produced.
    """
    dom = tuple(dom)
    names = sorted(graph.gens)

    def walk(boundary: tuple[str, ...], prefix: tuple[Slice, ...]):
        yield Diagram(graph, dom, boundary, prefix)
        if len(prefix) == max_slices:
            return
        for name in names:
            g = graph.gens[name]
            for offset in range(len(boundary) - g.arity + 1):
                if boundary[offset : offset + g.arity] == g.inputs:
                    s = Slice(offset, name)
                    yield from walk(
                        apply_slice(graph, boundary, s), prefix + (s,)
                    )

    yield from walk(dom, ())


def diagram_to_data(d: Diagram) -> dict:
    return {
        "dom": list(d.dom),
        "cod": list(d.cod),
        "slices": [[s.offset, s.gen] for s in d.slices],
    }


def diagram_from_data(graph: Polygraph, data: dict) -> Diagram:
    slices = tuple(Slice(int(o), name) for o, name in data["slices"])
    return Diagram(graph, tuple(data["dom"]), tuple(data["cod"]), slices)
