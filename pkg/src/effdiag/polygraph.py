"""Generator signatures over a shared object alphabet.

A signature ("polygraph") declares typed multi-input multi-output
generators; a couple splits the generators of one object alphabet into a
pure and an effectful family.  The runtime construction threads a fresh
reserved wire ``R`` through every effectful generator and provides braid
generators letting ``R`` cross any other wire.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

RUNTIME = "R"

_KINDS = ("pure", "effectful", "braid")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PolygraphError(ValueError):
    """Malformed signature, couple, or couple morphism."""


def braid_name(a: str, b: str) -> str:
    """Canonical name of the braid generator [a, b] -> [b, a]."""
    return f"braid({a},{b})"


def swap_name(a: str, b: str) -> str:
    """Canonical name of an auto-declared pure wire swap [a, b] -> [b, a]."""
    return f"swap({a},{b})"


@dataclass(frozen=True)
class GenDecl:
    """One generator: a named box with ordered input and output wires."""

    name: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    kind: str = "pure"

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if not self.name:
            raise PolygraphError("generator name must be nonempty")
        if self.kind not in _KINDS:
            raise PolygraphError(f"unknown generator kind {self.kind!r}")
        if self.kind == "braid":
            ok = (
                len(self.inputs) == 2
                and self.outputs == (self.inputs[1], self.inputs[0])
                and RUNTIME in self.inputs
            )
            if not ok:
                raise PolygraphError(
                    f"braid generator {self.name!r} must swap two wires, one of them {RUNTIME}"
                )

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def coarity(self) -> int:
        return len(self.outputs)


@dataclass(frozen=True)
class Polygraph:
    """A set of objects together with generators whose wires use them.

    Construction is permissive about dangling object references so that
    ill-formed data can still be inspected; ``validate_couple`` reports
    such problems instead of raising.
    """

    objects: frozenset[str]
    gens: dict[str, GenDecl] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "objects", frozenset(self.objects))
        object.__setattr__(self, "gens", dict(self.gens))
        for name, g in self.gens.items():
            if name != g.name:
                raise PolygraphError(f"generator {g.name!r} keyed as {name!r}")

    @classmethod
    def of(cls, objects, gens=()) -> "Polygraph":
        table: dict[str, GenDecl] = {}
        for g in gens:
            if g.name in table:
                raise PolygraphError(f"duplicate generator {g.name!r}")
            table[g.name] = g
        return cls(frozenset(objects), table)

    def boundary_violations(self) -> list[str]:
        out = []
        for g in self.gens.values():
            for obj in (*g.inputs, *g.outputs):
                if obj not in self.objects:
                    out.append(f"generator {g.name!r} references undeclared object {obj!r}")
        return out


@dataclass(frozen=True)
class PolygraphCouple:
    """Pure and effectful generator families over one object alphabet."""

    pure: Polygraph
    effectful: Polygraph

    @property
    def objects(self) -> frozenset[str]:
        return self.pure.objects


def validate_couple(c: PolygraphCouple) -> list[str]:
    """All invariant violations of a couple; empty means well-formed."""
    out: list[str] = []
    if c.pure.objects != c.effectful.objects:
        out.append("object sets differ between the pure and effectful signatures")
    if RUNTIME in c.pure.objects or RUNTIME in c.effectful.objects:
        out.append(f"object name {RUNTIME!r} is reserved for the runtime construction")
    shared = set(c.pure.gens) & set(c.effectful.gens)
    for name in sorted(shared):
        out.append(f"generator name {name!r} declared on both sides")
    for g in c.pure.gens.values():
        if g.kind != "pure":
            out.append(f"generator {g.name!r} in the pure signature has kind {g.kind!r}")
    for g in c.effectful.gens.values():
        if g.kind != "effectful":
            out.append(f"generator {g.name!r} in the effectful signature has kind {g.kind!r}")
    out.extend(c.pure.boundary_violations())
    out.extend(c.effectful.boundary_violations())
    return out


def run_polygraph(c: PolygraphCouple) -> Polygraph:
    """Thread the runtime wire through a couple.

    Produces a single signature with objects extended by ``R``: pure
    generators unchanged, effectful generators with ``R`` prepended to
    both boundaries, and a pair of braid generators for every object so
    ``R`` can cross it in either direction.
    """
    violations = validate_couple(c)
    if violations:
        raise PolygraphError("; ".join(violations))
    gens: dict[str, GenDecl] = {}
    for g in c.pure.gens.values():
        gens[g.name] = GenDecl(g.name, g.inputs, g.outputs, "pure")
    for g in c.effectful.gens.values():
        gens[g.name] = GenDecl(
            g.name, (RUNTIME,) + g.inputs, (RUNTIME,) + g.outputs, "effectful"
        )
    for a in sorted(c.objects):
        out_name = braid_name(RUNTIME, a)
        in_name = braid_name(a, RUNTIME)
        gens[out_name] = GenDecl(out_name, (RUNTIME, a), (a, RUNTIME), "braid")
        gens[in_name] = GenDecl(in_name, (a, RUNTIME), (RUNTIME, a), "braid")
    return Polygraph(c.objects | {RUNTIME}, gens)


@dataclass(frozen=True)
class CoupleMorphism:
    """Rename objects and generators of one couple into another.

    Carries its codomain so boundary preservation can be checked against
    the target declarations; the two generator maps share ``obj_map``.
    """

    src: PolygraphCouple
    dst: PolygraphCouple
    obj_map: dict[str, str]
    pure_gen_map: dict[str, str]
    eff_gen_map: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", dict(self.obj_map))
        object.__setattr__(self, "pure_gen_map", dict(self.pure_gen_map))
        object.__setattr__(self, "eff_gen_map", dict(self.eff_gen_map))


def identity_morphism(c: PolygraphCouple) -> CoupleMorphism:
    return CoupleMorphism(
        c,
        c,
        {o: o for o in c.objects},
        {n: n for n in c.pure.gens},
        {n: n for n in c.effectful.gens},
    )


def compose_morphisms(first: CoupleMorphism, second: CoupleMorphism) -> CoupleMorphism:
    """Apply ``first`` then ``second``."""
    if first.dst != second.src:
        raise PolygraphError("couple morphisms do not compose: middle couples differ")
    return CoupleMorphism(
        first.src,
        second.dst,
        {o: second.obj_map[v] for o, v in first.obj_map.items()},
        {n: second.pure_gen_map[v] for n, v in first.pure_gen_map.items()},
        {n: second.eff_gen_map[v] for n, v in first.eff_gen_map.items()},
    )


def _image_polygraph(
    m: CoupleMorphism, src: Polygraph, dst: Polygraph, gen_map: dict[str, str], side: str
) -> Polygraph:
    objects = set()
    for o in src.objects:
        if o not in m.obj_map:
            raise PolygraphError(f"object {o!r} missing from obj_map")
        objects.add(m.obj_map[o])
    gens = {}
    for g in src.gens.values():
        if g.name not in gen_map:
            raise PolygraphError(f"{side} generator {g.name!r} missing from generator map")
        target_name = gen_map[g.name]
        target = dst.gens.get(target_name)
        if target is None:
            raise PolygraphError(f"{side} generator {g.name!r} maps to unknown {target_name!r}")
        want_in = tuple(m.obj_map[x] for x in g.inputs)
        want_out = tuple(m.obj_map[x] for x in g.outputs)
        if target.inputs != want_in or target.outputs != want_out:
            raise PolygraphError(
                f"boundary mismatch: {g.name!r} -> {target_name!r} "
                f"({'->'.join([' '.join(want_in), ' '.join(want_out)])} expected)"
            )
        gens[target_name] = target
    return Polygraph(frozenset(objects), gens)


def apply_couple_morphism(m: CoupleMorphism, c: PolygraphCouple) -> PolygraphCouple:
    """Image of ``c`` under ``m`` inside the codomain couple."""
    if c != m.src:
        raise PolygraphError("morphism source does not match the given couple")
    pure = _image_polygraph(m, c.pure, m.dst.pure, m.pure_gen_map, "pure")
    eff = _image_polygraph(m, c.effectful, m.dst.effectful, m.eff_gen_map, "effectful")
    return PolygraphCouple(pure, eff)


# -- textual and machine formats ---------------------------------------------

def print_couple(c: PolygraphCouple) -> str:
    """Canonical one-declaration-per-line form; parse_couple round-trips it."""
    lines = ["objects " + " ".join(sorted(c.objects))]
    for g in sorted(c.pure.gens.values(), key=lambda g: g.name):
        lines.append(f"pure {g.name} : {' '.join(g.inputs)} -> {' '.join(g.outputs)}".replace("  ", " "))
    for g in sorted(c.effectful.gens.values(), key=lambda g: g.name):
        lines.append(f"effect {g.name} : {' '.join(g.inputs)} -> {' '.join(g.outputs)}".replace("  ", " "))
    return "\n".join(lines) + "\n"


def parse_couple(text: str) -> PolygraphCouple:
    objects: list[str] = []
    pure: list[GenDecl] = []
    eff: list[GenDecl] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "objects":
            for name in rest.split():
                _check_name(name, lineno)
                objects.append(name)
            continue
        if head not in ("pure", "effect"):
            raise PolygraphError(f"line {lineno}: unknown declaration {head!r}")
        name_part, colon, sig = rest.partition(":")
        if not colon:
            raise PolygraphError(f"line {lineno}: missing ':' in generator declaration")
        name = name_part.strip()
        _check_name(name, lineno)
        ins_part, arrow, outs_part = sig.partition("->")
        if not arrow:
            raise PolygraphError(f"line {lineno}: missing '->' in generator declaration")
        ins = tuple(ins_part.split())
        outs = tuple(outs_part.split())
        if head == "pure":
            pure.append(GenDecl(name, ins, outs, "pure"))
        else:
            eff.append(GenDecl(name, ins, outs, "effectful"))
    objset = frozenset(objects)
    return PolygraphCouple(Polygraph.of(objset, pure), Polygraph.of(objset, eff))


def _check_name(name: str, lineno: int) -> None:
    if not _NAME_RE.match(name):
        raise PolygraphError(f"line {lineno}: invalid identifier {name!r}")


def couple_to_data(c: PolygraphCouple) -> dict:
    def gens(p: Polygraph):
        return [
            {"name": g.name, "inputs": list(g.inputs), "outputs": list(g.outputs)}
            for g in sorted(p.gens.values(), key=lambda g: g.name)
        ]

    return {
        "objects": sorted(c.objects),
        "pure": gens(c.pure),
        "effectful": gens(c.effectful),
    }


def couple_from_data(data: dict) -> PolygraphCouple:
    objects = frozenset(data["objects"])
    pure = [
        GenDecl(g["name"], tuple(g["inputs"]), tuple(g["outputs"]), "pure")
        for g in data.get("pure", ())
    ]
    eff = [
        GenDecl(g["name"], tuple(g["inputs"]), tuple(g["outputs"]), "effectful")
        for g in data.get("effectful", ())
    ]
    return PolygraphCouple(Polygraph.of(objects, pure), Polygraph.of(objects, eff))


def load_couple(path: str) -> PolygraphCouple:
    """Read a couple from a ``.json`` machine file or a textual declaration file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return couple_from_data(json.loads(text))
    return parse_couple(text)
