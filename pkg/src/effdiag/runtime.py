"""Free effectful morphisms and their runtime-threaded diagram form.

An effectful morphism is an interleaving of pure slices with effectful
slices that implicitly consume and return the runtime wire.  Pure layers
may exchange when their footprints are disjoint; effectful layers never
exchange with each other because they share the runtime, so their order
is structural.  ``embed_monrun``/``parse_monrun`` realize the bijection
with single-runtime diagrams over the threaded signature, where the
runtime is moved around explicitly with braid slices.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Union

from . import _schedule, diagram as dg
from .diagram import BoundaryError, Diagram, Slice
from .polygraph import RUNTIME, PolygraphCouple, braid_name, run_polygraph


class RuntimeWireError(ValueError):
    """A diagram does not thread a single runtime wire correctly."""


@dataclass(frozen=True)
class PureSlice:
    """A pure generator at ``offset`` in runtime-less coordinates."""

    offset: int
    gen: str


@dataclass(frozen=True)
class EffSlice:
    """An effectful generator with ``ctx`` wires on its left.

    The slice stands for: braid the runtime right past ``ctx`` wires,
    apply the generator, braid back.  Keeping the braids implicit makes
    the braid axioms hold by construction.
    """

    gen: str
    ctx: int


EffLayer = Union[PureSlice, EffSlice]


def _layer_gen(couple: PolygraphCouple, layer: EffLayer):
    if isinstance(layer, PureSlice):
        g = couple.pure.gens.get(layer.gen)
        if g is None:
            raise BoundaryError(f"unknown pure generator {layer.gen!r}")
        return g
    g = couple.effectful.gens.get(layer.gen)
    if g is None:
        raise BoundaryError(f"unknown effectful generator {layer.gen!r}")
    return g


def _layer_offset(layer: EffLayer) -> int:
    return layer.offset if isinstance(layer, PureSlice) else layer.ctx


def _with_offset(layer: EffLayer, offset: int) -> EffLayer:
    if isinstance(layer, PureSlice):
        return PureSlice(offset, layer.gen)
    return EffSlice(layer.gen, offset)


def apply_layer(couple: PolygraphCouple, boundary: tuple[str, ...], layer: EffLayer):
    g = _layer_gen(couple, layer)
    o = _layer_offset(layer)
    if o < 0 or o + g.arity > len(boundary):
        raise BoundaryError(f"layer {layer} does not fit boundary {boundary}")
    if boundary[o : o + g.arity] != g.inputs:
        raise BoundaryError(
            f"layer {layer} expects {g.inputs} at {o}, found {boundary[o:o + g.arity]}"
        )
    return boundary[:o] + g.outputs + boundary[o + g.arity :]


@dataclass(frozen=True, eq=False)
class EffMorphism:
    couple: PolygraphCouple
    dom: tuple[str, ...]
    cod: tuple[str, ...]
    layers: tuple[EffLayer, ...]

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "layers", tuple(self.layers))
        boundary = self.dom
        for layer in self.layers:
            boundary = apply_layer(self.couple, boundary, layer)
        if boundary != self.cod:
            raise BoundaryError(f"cod {self.cod} does not match computed {boundary}")

    def boundary_chain(self) -> list[tuple[str, ...]]:
        chain = [self.dom]
        for layer in self.layers:
            chain.append(apply_layer(self.couple, chain[-1], layer))
        return chain

    def __eq__(self, other) -> bool:
        if not isinstance(other, EffMorphism):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.layers == other.layers
        )

    def __rshift__(self, other: "EffMorphism") -> "EffMorphism":
        return eff_compose(self, other)

    def __repr__(self):
        def one(layer):
            if isinstance(layer, PureSlice):
                return f"pure({layer.offset},{layer.gen})"
            return f"eff({layer.gen},{layer.ctx})"

        body = " ; ".join(one(l) for l in self.layers) or "id"
        return f"<EffMorphism {list(self.dom)} -> {list(self.cod)} : {body}>"


def eff_identity(couple: PolygraphCouple, objs) -> EffMorphism:
    objs = tuple(objs)
    return EffMorphism(couple, objs, objs, ())


def eff_compose(e1: EffMorphism, e2: EffMorphism) -> EffMorphism:
    if e1.cod != e2.dom:
        raise BoundaryError(f"cannot compose: {e1.cod} != {e2.dom}")
    return EffMorphism(e1.couple, e1.dom, e2.cod, e1.layers + e2.layers)


def eff_whisker(left_ctx, e: EffMorphism, right_ctx) -> EffMorphism:
    left_ctx, right_ctx = tuple(left_ctx), tuple(right_ctx)
    shift = len(left_ctx)
    layers = tuple(_with_offset(l, _layer_offset(l) + shift) for l in e.layers)
    return EffMorphism(
        e.couple, left_ctx + e.dom + right_ctx, left_ctx + e.cod + right_ctx, layers
    )


def lift_pure(couple: PolygraphCouple, d: Diagram) -> EffMorphism:
    """Identity-on-objects inclusion of a pure diagram."""
    for s in d.slices:
        if s.gen not in couple.pure.gens:
            raise BoundaryError(f"generator {s.gen!r} is not pure")
    layers = tuple(PureSlice(s.offset, s.gen) for s in d.slices)
    return EffMorphism(couple, d.dom, d.cod, layers)


def _eff_exchanger(couple: PolygraphCouple):
    def exchange(first: EffLayer, second: EffLayer) -> tuple[tuple[EffLayer, EffLayer], ...]:
        if isinstance(first, EffSlice) and isinstance(second, EffSlice):
            return ()  # both need the runtime: order is invariant
        g1, g2 = _layer_gen(couple, first), _layer_gen(couple, second)
        o1, o2 = _layer_offset(first), _layer_offset(second)
        options = []
        if o2 + g2.arity <= o1:
            options.append(
                (_with_offset(second, o2), _with_offset(first, o1 + g2.coarity - g2.arity))
            )
        if o2 >= o1 + g1.coarity:
            alt = (_with_offset(second, o2 - g1.coarity + g1.arity), _with_offset(first, o1))
            if alt not in options:
                options.append(alt)
        return tuple(options)

    return exchange


def _layer_key(layer: EffLayer) -> tuple:
    if isinstance(layer, PureSlice):
        return (layer.offset, 0, layer.gen)
    return (layer.ctx, 1, layer.gen)


def eff_normalize(e: EffMorphism) -> EffMorphism:
    """Canonical representative: pure layers reshuffle as in plain diagrams,
    pure layers pass effectful ones with disjoint footprints, and the
    relative order of effectful layers is preserved."""
    out = _schedule.canonical_order(e.layers, _eff_exchanger(e.couple), _layer_key)
    return EffMorphism(e.couple, e.dom, e.cod, tuple(out))


def eff_equal(e1: EffMorphism, e2: EffMorphism) -> bool:
    """Decidable equality of free effectful morphisms.

    Matching normal forms decide almost everything; the residue left by
    double-transport passings is settled exactly on the move graph.
    """
    if e1.dom != e2.dom or e1.cod != e2.cod:
        return False
    n1, n2 = eff_normalize(e1), eff_normalize(e2)
    if n1.layers == n2.layers:
        return True
    effs1 = [l for l in n1.layers if isinstance(l, EffSlice)]
    effs2 = [l for l in n2.layers if isinstance(l, EffSlice)]
    if [l.gen for l in effs1] != [l.gen for l in effs2]:
        return False
    pures1 = Counter(l.gen for l in n1.layers if isinstance(l, PureSlice))
    pures2 = Counter(l.gen for l in n2.layers if isinstance(l, PureSlice))
    if pures1 != pures2:
        return False
    return _schedule.decide_equal(
        n1.layers, n2.layers, _eff_exchanger(e1.couple), dg.DEFAULT_ORACLE_BUDGET
    )


def eff_bfs_equal(
    e1: EffMorphism, e2: EffMorphism, max_states: int = dg.DEFAULT_ORACLE_BUDGET
) -> bool | None:
    """Brute-force oracle for ``eff_equal`` over single exchange moves."""
    if e1.dom != e2.dom or e1.cod != e2.cod:
        return False
    return _schedule.reachable(e1.layers, e2.layers, _eff_exchanger(e1.couple), max_states)


# -- bijection with runtime-threaded diagrams --------------------------------

def embed_monrun(e: EffMorphism) -> Diagram:
    """The leftmost component of ``e`` as an explicit diagram on [R]+dom.

    Effectful layers expand into braids carrying the runtime to their
    context position and back, so the runtime always re-enters at the far
    left.
    """
    graph = run_polygraph(e.couple)
    slices: list[Slice] = []
    boundary = list(e.dom)
    for layer in e.layers:
        if isinstance(layer, PureSlice):
            slices.append(Slice(layer.offset + 1, layer.gen))
        else:
            c = layer.ctx
            for i in range(c):
                slices.append(Slice(i, braid_name(RUNTIME, boundary[i])))
            slices.append(Slice(c, layer.gen))
            boundary2 = list(apply_layer(e.couple, tuple(boundary), layer))
            for i in reversed(range(c)):
                slices.append(Slice(i, braid_name(boundary2[i], RUNTIME)))
        boundary = list(apply_layer(e.couple, tuple(boundary), layer))
    return Diagram(graph, (RUNTIME,) + e.dom, (RUNTIME,) + e.cod, tuple(slices))


def _require_single_runtime(label: str, objs: tuple[str, ...]) -> None:
    if objs.count(RUNTIME) != 1 or not objs or objs[0] != RUNTIME:
        raise RuntimeWireError(
            f"{label} must be the runtime followed by plain objects, got {list(objs)}"
        )


def parse_monrun(couple: PolygraphCouple, d: Diagram) -> EffMorphism:
    """Read an effectful morphism back off a runtime-threaded diagram.

    Walks the slices tracking the runtime position: braids only move it,
    pure slices are recorded in runtime-less coordinates, and effectful
    slices must consume the runtime at their own leftmost port.
    """
    _require_single_runtime("dom", d.dom)
    _require_single_runtime("cod", d.cod)
    graph = d.graph
    layers: list[EffLayer] = []
    boundary = d.dom
    p = 0  # current runtime position
    for s in d.slices:
        g = graph.gens.get(s.gen)
        if g is None:
            raise RuntimeWireError(f"unknown generator {s.gen!r}")
        if g.kind == "braid":
            if g.inputs[0] == RUNTIME:
                if s.offset != p:
                    raise RuntimeWireError(f"braid at {s.offset} away from runtime at {p}")
                p += 1
            else:
                if s.offset + 1 != p:
                    raise RuntimeWireError(f"braid at {s.offset} away from runtime at {p}")
                p -= 1
        elif g.kind == "pure":
            if s.offset <= p < s.offset + g.arity:
                raise RuntimeWireError(
                    f"pure slice ({s.offset},{s.gen}) covers the runtime at {p}"
                )
            if s.offset > p:
                layers.append(PureSlice(s.offset - 1, s.gen))
            else:
                layers.append(PureSlice(s.offset, s.gen))
                p += g.coarity - g.arity
        else:  # effectful, runtime-prepended
            if s.offset != p:
                raise RuntimeWireError(
                    f"effectful slice ({s.offset},{s.gen}) not aligned with runtime at {p}"
                )
            layers.append(EffSlice(s.gen, p))
        boundary = dg.apply_slice(graph, boundary, s)
        if boundary.count(RUNTIME) != 1:
            raise RuntimeWireError("runtime wire duplicated or dropped")
    return EffMorphism(couple, d.dom[1:], d.cod[1:], tuple(layers))


def monrun_equal(couple: PolygraphCouple, d1: Diagram, d2: Diagram) -> bool:
    """Decides equality of runtime-threaded diagrams through parsing, i.e.
    modulo the braid axioms on top of exchange moves."""
    return eff_equal(parse_monrun(couple, d1), parse_monrun(couple, d2))


@dataclass(frozen=True)
class BraidClique:
    """A plain object list with a chosen runtime insertion position."""

    objects: tuple[str, ...]
    representative_position: int = 0

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        if not 0 <= self.representative_position <= len(self.objects):
            raise RuntimeWireError("runtime position outside the object list")

    def with_runtime(self) -> tuple[str, ...]:
        i = self.representative_position
        return self.objects[:i] + (RUNTIME,) + self.objects[i:]


def clique_component(e: EffMorphism, i: int, j: int) -> Diagram:
    """Component of ``e`` with the runtime entering at ``i`` and leaving at
    ``j``, obtained by conjugating the leftmost component with braids."""
    if not 0 <= i <= len(e.dom):
        raise RuntimeWireError(f"domain insertion {i} out of range")
    if not 0 <= j <= len(e.cod):
        raise RuntimeWireError(f"codomain insertion {j} out of range")
    graph = run_polygraph(e.couple)
    dom = BraidClique(e.dom, i).with_runtime()
    cod = BraidClique(e.cod, j).with_runtime()
    slices: list[Slice] = []
    for k in reversed(range(i)):
        slices.append(Slice(k, braid_name(e.dom[k], RUNTIME)))
    slices.extend(embed_monrun(e).slices)
    for k in range(j):
        slices.append(Slice(k, braid_name(RUNTIME, e.cod[k])))
    return Diagram(graph, dom, cod, tuple(slices))


# -- centrality ---------------------------------------------------------------

def interchanges_with(a: EffMorphism, b: EffMorphism) -> bool:
    """Both interchange equations for ``a`` against ``b``."""
    left_first = eff_compose(eff_whisker((), a, b.dom), eff_whisker(a.cod, b, ()))
    right_first = eff_compose(eff_whisker(a.dom, b, ()), eff_whisker((), a, b.cod))
    if not eff_equal(left_first, right_first):
        return False
    b_first = eff_compose(eff_whisker((), b, a.dom), eff_whisker(b.cod, a, ()))
    a_second = eff_compose(eff_whisker(b.dom, a, ()), eff_whisker((), b, a.cod))
    return eff_equal(b_first, a_second)


def centrality_check(p: Diagram, e: EffMorphism) -> bool:
    """Whether the lifted pure diagram ``p`` interchanges with ``e``."""
    return interchanges_with(lift_pure(e.couple, p), e)


# -- corpus helpers -----------------------------------------------------------

def enumerate_eff(couple: PolygraphCouple, dom, max_layers: int) -> Iterator[EffMorphism]:
    """Every effectful morphism from ``dom`` with at most ``max_layers`` layers."""
    dom = tuple(dom)

    def options(boundary):
        for name in sorted(couple.pure.gens):
            g = couple.pure.gens[name]
            for o in range(len(boundary) - g.arity + 1):
                if boundary[o : o + g.arity] == g.inputs:
                    yield PureSlice(o, name)
        for name in sorted(couple.effectful.gens):
            g = couple.effectful.gens[name]
            for o in range(len(boundary) - g.arity + 1):
                if boundary[o : o + g.arity] == g.inputs:
                    yield EffSlice(name, o)

    def walk(boundary, prefix):
        yield EffMorphism(couple, dom, boundary, prefix)
        if len(prefix) == max_layers:
            return
        for layer in options(boundary):
            yield from walk(apply_layer(couple, boundary, layer), prefix + (layer,))

    yield from walk(dom, ())


def random_eff(
    couple: PolygraphCouple,
    rng: random.Random,
    dom=None,
    max_layers: int = 6,
) -> EffMorphism:
    """A uniformly-grown random effectful morphism, for sampling tests."""
    objs = sorted(couple.objects)
    if dom is None:
        dom = tuple(rng.choice(objs) for _ in range(rng.randint(0, 3)))
    dom = tuple(dom)
    boundary = dom
    layers: list[EffLayer] = []
    for _ in range(rng.randint(0, max_layers)):
        opts: list[EffLayer] = []
        for name, g in couple.pure.gens.items():
            for o in range(len(boundary) - g.arity + 1):
                if boundary[o : o + g.arity] == g.inputs:
                    opts.append(PureSlice(o, name))
        for name, g in couple.effectful.gens.items():
            for o in range(len(boundary) - g.arity + 1):
                if boundary[o : o + g.arity] == g.inputs:
                    opts.append(EffSlice(name, o))
        if not opts:
            break
        layer = rng.choice(sorted(opts, key=_layer_key))
        layers.append(layer)
        boundary = apply_layer(couple, boundary, layer)
    return EffMorphism(couple, dom, boundary, tuple(layers))


# -- serialization ------------------------------------------------------------

def eff_to_data(e: EffMorphism) -> dict:
    def one(layer):
        if isinstance(layer, PureSlice):
            return ["pure", layer.offset, layer.gen]
        return ["eff", layer.gen, layer.ctx]

    return {"dom": list(e.dom), "cod": list(e.cod), "layers": [one(l) for l in e.layers]}


def eff_from_data(couple: PolygraphCouple, data: dict) -> EffMorphism:
    layers: list[EffLayer] = []
    for entry in data["layers"]:
        if entry[0] == "pure":
            layers.append(PureSlice(int(entry[1]), entry[2]))
        elif entry[0] == "eff":
            layers.append(EffSlice(entry[1], int(entry[2])))
        else:
            raise ValueError(f"unknown layer tag {entry[0]!r}")
    return EffMorphism(couple, tuple(data["dom"]), tuple(data["cod"]), tuple(layers))
