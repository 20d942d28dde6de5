"""Canonical interleavings of layer sequences under adjacent exchange moves.

Shared engine for the diagram and runtime modules.  A layer sequence is
canonicalized in the style of the Foata normal form for trace monoids:
every layer is scheduled at the earliest level permitted by its exchange
blockers, levels are emitted in order, and each level is sorted so that
no admissible adjacent swap lowers the key pair lexicographically.

An exchange callback maps an adjacent pair a-then-b to the tuple of valid
transported pairs ``(b', a')``; usually there is at most one, but when a
zero-output layer meets a zero-input layer at the same position both
passing sides are legal and two transports come back.  Those double
transports make some equalities reachable only through non-monotone move
sequences, so the scheduled form is a sound canonical representative but
not a complete decision procedure; ``decide_equal`` settles the residue
by an exact breadth-first search over the move graph.
"""
from __future__ import annotations

from collections import deque
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")

Exchange = Callable[[T, T], tuple[tuple[T, T], ...]]
Key = Callable[[T], tuple]


class StateBudgetError(RuntimeError):
    """An exact equality search ran out of its state budget."""


def canonical_order(items: Iterable[T], exchange: Exchange, key: Key) -> list[T]:
    """A canonical-by-construction representative of the exchange class.

    Exchanges must be mutually inverse, so the class they span is an
    equivalence class.  The first transport option is used while sliding;
    the settling sweep considers all of them.
    """
    out: list[T] = []
    lvl: list[int] = []
    for item in items:
        out.append(item)
        lvl.append(0)
        pos = len(out) - 1
        # Slide left past every independent layer; the first blocker sits in
        # the deepest level this layer depends on.
        while pos > 0:
            options = exchange(out[pos - 1], out[pos])
            if not options:
                break
            out[pos - 1], out[pos] = options[0]
            lvl[pos] = lvl[pos - 1]
            pos -= 1
        lvl[pos] = 0 if pos == 0 else lvl[pos - 1] + 1
        # Slide back right over lower levels (all independent: we just passed
        # them), then to the sorted position inside the layer's own level.
        q = pos
        while q + 1 < len(out):
            options = exchange(out[q], out[q + 1])
            if not options:
                break
            best = min(options, key=lambda p: (key(p[0]), key(p[1])))
            better = (key(best[0]), key(best[1])) < (key(out[q]), key(out[q + 1]))
            if lvl[q + 1] < lvl[q] or (lvl[q + 1] == lvl[q] and better):
                out[q], out[q + 1] = best if better else options[0]
                lvl[q], lvl[q + 1] = lvl[q + 1], lvl[q]
                q += 1
            else:
                break
    _settle(out, lvl, exchange, key)
    return out


def _settle(out: list[T], lvl: list[int], exchange: Exchange, key: Key) -> None:
    # Transports during insertion can nudge degenerate (zero-width) layers out
    # of sorted position inside their level; sweep until no swap improves.
    changed = True
    while changed:
        changed = False
        for q in range(len(out) - 1):
            if lvl[q] != lvl[q + 1]:
                continue
            options = exchange(out[q], out[q + 1])
            if not options:
                continue
            best = min(options, key=lambda p: (key(p[0]), key(p[1])))
            if (key(best[0]), key(best[1])) < (key(out[q]), key(out[q + 1])):
                out[q], out[q + 1] = best
                changed = True


def _neighbors(state: tuple[T, ...], exchange: Exchange):
    for q in range(len(state) - 1):
        for swapped in exchange(state[q], state[q + 1]):
            yield state[:q] + swapped + state[q + 2 :]


def exchange_closure(
    items: Iterable[T], exchange: Exchange, max_states: int | None = None
) -> set[tuple[T, ...]] | None:
    """Every sequence reachable by adjacent exchanges; None once the state
    budget is exceeded."""
    start = tuple(items)
    seen: set[tuple[T, ...]] = {start}
    queue: deque[tuple[T, ...]] = deque([start])
    while queue:
        state = queue.popleft()
        for nxt in _neighbors(state, exchange):
            if nxt not in seen:
                if max_states is not None and len(seen) >= max_states:
                    return None
                seen.add(nxt)
                queue.append(nxt)
    return seen


def reachable(
    start: Iterable[T],
    goal: Iterable[T],
    exchange: Exchange,
    max_states: int | None = None,
) -> bool | None:
    """Whether ``goal`` is reachable from ``start``; None when the budget runs
    out before an answer is certain."""
    start_t, goal_t = tuple(start), tuple(goal)
    if start_t == goal_t:
        return True
    seen: set[tuple[T, ...]] = {start_t}
    queue: deque[tuple[T, ...]] = deque([start_t])
    while queue:
        state = queue.popleft()
        for nxt in _neighbors(state, exchange):
            if nxt in seen:
                continue
            if nxt == goal_t:
                return True
            if max_states is not None and len(seen) >= max_states:
                return None
            seen.add(nxt)
            queue.append(nxt)
    return False


def decide_equal(
    start: Iterable[T],
    goal: Iterable[T],
    exchange: Exchange,
    max_states: int,
) -> bool:
    """Exact decision by bidirectional search; raises StateBudgetError rather
    than answering wrongly when the budget runs out."""
    a, b = tuple(start), tuple(goal)
    if a == b:
        return True
    sides: list[dict[tuple[T, ...], None]] = [{a: None}, {b: None}]
    frontiers: list[list[tuple[T, ...]]] = [[a], [b]]
    while frontiers[0] and frontiers[1]:
        i = 0 if len(sides[0]) <= len(sides[1]) else 1
        nxt_frontier: list[tuple[T, ...]] = []
        for state in frontiers[i]:
            for nxt in _neighbors(state, exchange):
                if nxt in sides[i]:
                    continue
                if nxt in sides[1 - i]:
                    return True
                if len(sides[0]) + len(sides[1]) >= max_states:
                    raise StateBudgetError(
                        f"equality undecided within {max_states} states"
                    )
                sides[i][nxt] = None
                nxt_frontier.append(nxt)
        frontiers[i] = nxt_frontier
    return False
