import pytest

from effdiag.polygraph import GenDecl, Polygraph, PolygraphCouple


def print_couple_fixture() -> PolygraphCouple:
    """Objects {A}; pure hello, world : [] -> [A]; effectful print : [A] -> []."""
    objs = frozenset({"A"})
    pure = Polygraph.of(
        objs,
        [
            GenDecl("hello", (), ("A",), "pure"),
            GenDecl("world", (), ("A",), "pure"),
        ],
    )
    eff = Polygraph.of(objs, [GenDecl("print", ("A",), (), "effectful")])
    return PolygraphCouple(pure, eff)


def print_plus_merge_couple() -> PolygraphCouple:
    """The print couple extended with a binary pure generator m : [A,A] -> [A]."""
    base = print_couple_fixture()
    pure = Polygraph.of(
        base.objects,
        list(base.pure.gens.values()) + [GenDecl("m", ("A", "A"), ("A",), "pure")],
    )
    return PolygraphCouple(pure, base.effectful)


@pytest.fixture
def print_couple() -> PolygraphCouple:
    return print_couple_fixture()


@pytest.fixture
def merge_couple() -> PolygraphCouple:
    return print_plus_merge_couple()
