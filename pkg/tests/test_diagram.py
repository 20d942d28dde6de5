import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effdiag import diagram as dg
from effdiag.diagram import (
    BoundaryError,
    Diagram,
    Slice,
    bfs_equal,
    compose,
    diagram_from_data,
    diagram_to_data,
    enumerate_diagrams,
    equal,
    exchange_class,
    from_gen,
    identity,
    normalize,
    tensor,
    whisker,
)
from effdiag.polygraph import GenDecl, Polygraph

PURE = Polygraph.of(
    {"A"},
    [
        GenDecl("hello", (), ("A",)),
        GenDecl("world", (), ("A",)),
        GenDecl("v", ("A",), ("A",)),
        GenDecl("m", ("A", "A"), ("A",)),
    ],
)


def hello():
    return from_gen(PURE, "hello")


def world():
    return from_gen(PURE, "world")


def v():
    return from_gen(PURE, "v")


def test_identity_shapes():
    assert identity(PURE, ()).slices == ()
    assert identity(PURE, ("A",)).dom == ("A",)
    d = identity(PURE, ("A", "A"))
    assert d.dom == d.cod == ("A", "A")


def test_compose_identities():
    i = identity(PURE, ("A",))
    assert compose(i, i) == i


def test_compose_boundary_mismatch():
    with pytest.raises(BoundaryError):
        compose(hello(), hello())


def test_compose_hello_then_v():
    d = compose(hello(), v())
    assert d.slices == (Slice(0, "hello"), Slice(0, "v"))


def test_tensor_construction():
    d = tensor(hello(), world())
    assert d.slices == (Slice(0, "hello"), Slice(1, "world"))
    assert d.dom == () and d.cod == ("A", "A")


def test_tensor_unit_laws():
    d = compose(hello(), v())
    empty = identity(PURE, ())
    assert tensor(empty, d) == d
    assert tensor(d, empty) == d


def test_whisker():
    assert whisker(("A",), identity(PURE, ()), ()) == identity(PURE, ("A",))
    d = compose(hello(), v())
    assert whisker((), d, ()) == d
    assert whisker(("A",), hello(), ()).slices == (Slice(1, "hello"),)


def test_whisker_functorial():
    a, b = hello(), v()
    lhs = whisker(("A",), compose(a, b), ("A",))
    rhs = compose(whisker(("A",), a, ("A",)), whisker(("A",), b, ("A",)))
    assert equal(lhs, rhs)


def test_normalize_prefers_offset_sorted_layering():
    # world inserted first, then hello pushed in on its left
    d = Diagram(PURE, (), ("A", "A"), (Slice(0, "world"), Slice(0, "hello")))
    assert normalize(d).slices == (Slice(0, "hello"), Slice(1, "world"))


def test_normalize_identity_and_chains():
    i = identity(PURE, ("A",))
    assert normalize(i) == i
    chain = Diagram(PURE, ("A",), ("A",), (Slice(0, "v"), Slice(0, "v")))
    assert normalize(chain) == chain


def test_normalize_idempotent_on_samples():
    rng = random.Random(7)
    for _ in range(200):
        d = _random_diagram(rng)
        n1 = normalize(d)
        assert normalize(n1) == n1


def test_normalize_preserves_shape_and_multiset():
    rng = random.Random(8)
    for _ in range(200):
        d = _random_diagram(rng)
        n = normalize(d)
        assert (n.dom, n.cod) == (d.dom, d.cod)
        assert Counter(s.gen for s in n.slices) == Counter(s.gen for s in d.slices)


def test_equal_interchange_of_tensor_readings():
    left_first = tensor(hello(), world())
    right_first = Diagram(PURE, (), ("A", "A"), (Slice(0, "world"), Slice(0, "hello")))
    assert equal(left_first, right_first)


def test_equal_rejects_boundary_mismatch():
    assert not equal(identity(PURE, ("A",)), identity(PURE, ("A", "A")))


def test_interchange_law_via_equal():
    f, g = v(), v()
    one = identity(PURE, ("A",))
    lhs = compose(tensor(f, one), tensor(identity(PURE, f.cod), g))
    rhs = compose(tensor(identity(PURE, f.dom), g), tensor(f, one))
    assert equal(lhs, rhs)


def test_bfs_equal_reflexive():
    d = compose(hello(), v())
    assert bfs_equal(d, d) is True


def test_bfs_equal_one_move():
    a = tensor(hello(), world())
    b = Diagram(PURE, (), ("A", "A"), (Slice(0, "world"), Slice(0, "hello")))
    assert bfs_equal(a, b) is True


def test_bfs_equal_dependent_slices():
    a = compose(hello(), v())  # v consumes hello's output
    b = Diagram(PURE, (), ("A",), (Slice(0, "hello"), Slice(0, "v")))
    # reversing the two is not even well-typed; compare against a distinct chain
    c = compose(world(), v())
    assert bfs_equal(a, c) is False


def test_bfs_equal_budget_inconclusive():
    d = tensor(tensor(hello(), world()), tensor(hello(), world()))
    other = normalize(
        Diagram(PURE, (), ("A",) * 4, tuple(reversed([Slice(0, "hello"), Slice(0, "world"), Slice(0, "hello"), Slice(0, "world")])))
    )
    verdict = bfs_equal(d, other, max_states=2)
    assert verdict is None


def test_enumerate_counts():
    got = {d.slices for d in enumerate_diagrams(PURE, (), 1)}
    assert got == {(), (Slice(0, "hello"),), (Slice(0, "world"),)}
    assert [d.slices for d in enumerate_diagrams(PURE, (), 0)] == [()]
    empty = Polygraph.of({"A"})
    assert [d.slices for d in enumerate_diagrams(empty, ("A",), 3)] == [()]


def test_oracle_agreement_small():
    # all pairs with <= 3 slices from the empty boundary; the acceptance
    # suite runs the full-size version of this check
    diagrams = list(enumerate_diagrams(PURE, (), 3))
    classes = {}
    for d in diagrams:
        cls = frozenset(exchange_class(d))
        nf = normalize(d).slices
        assert nf in cls
        classes.setdefault(cls, set()).add(nf)
    for cls, forms in classes.items():
        assert len(forms) == 1


def test_serialization_roundtrip():
    d = compose(tensor(hello(), world()), tensor(v(), v()))
    data = diagram_to_data(d)
    assert diagram_from_data(PURE, data) == d
    assert data["slices"] == [[s.offset, s.gen] for s in d.slices]


def _random_diagram(rng: random.Random) -> Diagram:
    dom = tuple("A" for _ in range(rng.randint(0, 2)))
    boundary = dom
    slices = []
    for _ in range(rng.randint(0, 5)):
        opts = []
        for name in sorted(PURE.gens):
            g = PURE.gens[name]
            for o in range(len(boundary) - g.arity + 1):
                if boundary[o : o + g.arity] == g.inputs:
                    opts.append(Slice(o, name))
        if not opts:
            break
        s = rng.choice(opts)
        slices.append(s)
        boundary = dg.apply_slice(PURE, boundary, s)
    return Diagram(PURE, dom, boundary, tuple(slices))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_normalize_matches_oracle_on_random_diagrams(seed):
    rng = random.Random(seed)
    d = _random_diagram(rng)
    n = normalize(d)
    assert bfs_equal(d, n) is True


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_compose_associative_up_to_equality(seed):
    rng = random.Random(seed)
    a = _random_diagram(rng)
    b = _random_diagram(rng)
    if a.cod != b.dom:
        return
    c = identity(PURE, b.cod)
    lhs = compose(compose(a, b), c)
    rhs = compose(a, compose(b, c))
    assert lhs == rhs
