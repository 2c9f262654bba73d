"""
Labelled prime event structures.

A structure is built from a *generating* causal relation and a set of
base conflicts.  ``build_es`` closes both: causality becomes the
reflexive-transitive closure, conflict becomes the symmetric closure
inherited along causality.  Every axiom is checked after closure and
the result is immutable.
"""

from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass
from typing import Iterable, Iterator

from pescf.errors import (
    CausalityCycle,
    DuplicateEventId,
    ModelError,
    SelfConflict,
    SizeLimitExceeded,
    UnknownEvent,
)

DEFAULT_MAX_EVENTS = 10_000
DEFAULT_CLIQUE_STEPS = 1_000_000

Pair = tuple[str, str]


@dataclass(frozen=True)
class LabelledEvent:
    """An event id together with the action it stands for.

    Several events may share a label; they differ by causal history.
    """

    id: str
    label: str = ""

    def __post_init__(self) -> None:
        if not self.id or any(ch.isspace() for ch in self.id):
            raise ModelError(f"invalid event id {self.id!r}")


class RelationKind(enum.Enum):
    SAME = "Same"
    CAUSES = "Causes"
    CAUSED_BY = "CausedBy"
    CONFLICT = "Conflict"
    CONCURRENT = "Concurrent"

    def __str__(self) -> str:
        return self.value


class PrimeEventStructure:
    """A finite labelled prime event structure with closed relations.

    Use :func:`build_es` to construct one.  Event ids are plain strings;
    ``ids`` lists them in sorted (canonical) order.
    """

    __slots__ = ("name", "events", "exogenous_atoms", "_labels", "_down", "_up", "_conflict")

    def __init__(
        self,
        name: str,
        events: tuple[LabelledEvent, ...],
        down: dict[str, frozenset[str]],
        conflict: dict[str, frozenset[str]],
        exogenous_atoms: frozenset[str],
    ) -> None:
        self.name = name
        self.events = events
        self.exogenous_atoms = exogenous_atoms
        self._labels = {ev.id: ev.label for ev in events}
        self._down = down
        up: dict[str, set[str]] = {ev.id: set() for ev in events}
        for e, causes in down.items():
            for c in causes:
                up[c].add(e)
        self._up = {e: frozenset(s) for e, s in up.items()}
        self._conflict = conflict

    # ------------------------------------------------------------------ #
    # Basic accessors
    # ------------------------------------------------------------------ #

    @property
    def ids(self) -> list[str]:
        return sorted(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, event: object) -> bool:
        return event in self._labels

    def __iter__(self) -> Iterator[str]:
        return iter(self.ids)

    def __repr__(self) -> str:
        return f"PrimeEventStructure({self.name!r}, {len(self)} events)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeEventStructure):
            return NotImplemented
        return (
            self._labels == other._labels
            and self._down == other._down
            and self._conflict == other._conflict
            and self.exogenous_atoms == other.exogenous_atoms
        )

    def __hash__(self) -> int:
        return hash((frozenset(self._labels.items()), frozenset(self.causality)))

    def check(self, event: str) -> str:
        """Return ``event`` unchanged, or raise :class:`UnknownEvent`."""
        if event not in self._labels:
            raise UnknownEvent(event)
        return event

    def label(self, event: str) -> str:
        return self._labels[self.check(event)]

    def causes(self, event: str) -> frozenset[str]:
        """All causes of ``event``, itself included."""
        return self._down[self.check(event)]

    def consequences(self, event: str) -> frozenset[str]:
        """All events that ``event`` causes, itself included."""
        return self._up[self.check(event)]

    def conflicts(self, event: str) -> frozenset[str]:
        return self._conflict[self.check(event)]

    def leq(self, a: str, b: str) -> bool:
        """``a`` is a cause of ``b`` (reflexive)."""
        return self.check(a) in self._down[self.check(b)]

    def in_conflict(self, a: str, b: str) -> bool:
        return self.check(b) in self._conflict[self.check(a)]

    def concurrent(self, a: str, b: str) -> bool:
        return relation_of(self, a, b) is RelationKind.CONCURRENT

    # ------------------------------------------------------------------ #
    # Relations as pair sets
    # ------------------------------------------------------------------ #

    @property
    def causality(self) -> frozenset[Pair]:
        """The closed causal order as ``(cause, effect)`` pairs, reflexive."""
        return frozenset((c, e) for e, cs in self._down.items() for c in cs)

    @property
    def conflict(self) -> frozenset[Pair]:
        """The closed conflict relation as ordered pairs (symmetric)."""
        return frozenset((a, b) for a, bs in self._conflict.items() for b in bs)

    def immediate_causes(self) -> list[Pair]:
        """Covering pairs of the causal order, sorted."""
        out = []
        for b in self.ids:
            strict = self._down[b] - {b}
            for a in strict:
                if not any(a in self._down[c] for c in strict if c != a):
                    out.append((a, b))
        return sorted(out)

    def immediate_conflicts(self) -> list[Pair]:
        """Conflicts not inherited from a conflict between strict causes.

        Pairs are returned once, with ``a < b``, sorted.
        """
        out = []
        for a in self.ids:
            for b in self._conflict[a]:
                if b <= a:
                    continue
                inherited = any(b in self._conflict[x] for x in self._down[a] if x != a) or any(
                    a in self._conflict[y] for y in self._down[b] if y != b
                )
                if not inherited:
                    out.append((a, b))
        return sorted(out)


def build_es(
    events: Iterable[LabelledEvent | str],
    cause_pairs: Iterable[Pair] = (),
    conflict_pairs: Iterable[Pair] = (),
    exogenous_atoms: Iterable[str] = (),
    *,
    name: str = "es",
    max_events: int = DEFAULT_MAX_EVENTS,
) -> PrimeEventStructure:
    """Close the generating relations and validate the axioms.

    Args:
        events: declared events; bare strings are taken as unlabelled ids.
        cause_pairs: ``(x, y)`` means x is an immediate cause of y.
        conflict_pairs: base conflicts; inherited ones are added here.
        exogenous_atoms: names of non-event atoms (environment conditions).
        name: display name of the structure.
        max_events: bound on the number of events.

    Raises:
        DuplicateEventId, UnknownEvent, CausalityCycle, SelfConflict,
        SizeLimitExceeded.
    """
    evs: list[LabelledEvent] = []
    seen: set[str] = set()
    for ev in events:
        if isinstance(ev, str):
            ev = LabelledEvent(ev, ev)
        if ev.id in seen:
            raise DuplicateEventId(ev.id)
        seen.add(ev.id)
        evs.append(ev)
        if len(evs) > max_events:
            raise SizeLimitExceeded(f"more than {max_events} events")

    parents: dict[str, set[str]] = {e: set() for e in seen}
    for a, b in cause_pairs:
        for x in (a, b):
            if x not in seen:
                raise UnknownEvent(x)
        if a != b:
            parents[b].add(a)

    base_conflicts: list[Pair] = []
    for a, b in conflict_pairs:
        for x in (a, b):
            if x not in seen:
                raise UnknownEvent(x)
        if a == b:
            raise SelfConflict(a, "declared conflict with itself")
        base_conflicts.append((a, b))

    sorter = graphlib.TopologicalSorter({e: sorted(ps) for e, ps in sorted(parents.items())})
    try:
        order = list(sorter.static_order())
    except graphlib.CycleError as exc:
        raise CausalityCycle(exc.args[1]) from None

    down: dict[str, frozenset[str]] = {}
    for e in order:
        acc = {e}
        for p in parents[e]:
            acc |= down[p]
        down[e] = frozenset(acc)

    up: dict[str, set[str]] = {e: set() for e in seen}
    for e, cs in down.items():
        for c in cs:
            up[c].add(e)

    conflict: dict[str, set[str]] = {e: set() for e in seen}
    for a, b in base_conflicts:
        for x in up[a]:
            for y in up[b]:
                if x == y:
                    raise SelfConflict(x, f"inherits both sides of {a} # {b}")
                conflict[x].add(y)
                conflict[y].add(x)

    return PrimeEventStructure(
        name,
        tuple(evs),
        down,
        {e: frozenset(s) for e, s in conflict.items()},
        frozenset(exogenous_atoms),
    )


def relation_of(es: PrimeEventStructure, a: str, b: str) -> RelationKind:
    es.check(a)
    es.check(b)
    if a == b:
        return RelationKind.SAME
    if es.leq(a, b):
        return RelationKind.CAUSES
    if es.leq(b, a):
        return RelationKind.CAUSED_BY
    if es.in_conflict(a, b):
        return RelationKind.CONFLICT
    return RelationKind.CONCURRENT


def causal_history(es: PrimeEventStructure, e: str) -> frozenset[str]:
    """Every cause of ``e``, ``e`` included."""
    return es.causes(e)


def concurrent_pairs(es: PrimeEventStructure) -> list[Pair]:
    ids = es.ids
    return [
        (a, b)
        for i, a in enumerate(ids)
        for b in ids[i + 1 :]
        if relation_of(es, a, b) is RelationKind.CONCURRENT
    ]


def degree_of_concurrency(es: PrimeEventStructure, *, max_steps: int = DEFAULT_CLIQUE_STEPS) -> int:
    """Size of the largest set of pairwise concurrent events.

    Bron-Kerbosch with pivoting over the concurrency graph; each recursive
    call counts as one step against ``max_steps``.
    """
    if len(es) == 0:
        return 0
    adj: dict[str, set[str]] = {e: set() for e in es.ids}
    for a, b in concurrent_pairs(es):
        adj[a].add(b)
        adj[b].add(a)

    best = 0
    steps = 0

    def expand(size: int, cand: set[str], excl: set[str]) -> None:
        nonlocal best, steps
        steps += 1
        if steps > max_steps:
            raise SizeLimitExceeded(f"clique search exceeded {max_steps} steps")
        if not cand and not excl:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        pivot = max(cand | excl, key=lambda v: len(adj[v] & cand))
        for v in sorted(cand - adj[pivot]):
            expand(size + 1, cand & adj[v], excl & adj[v])
            cand = cand - {v}
            excl = excl | {v}

    expand(0, set(adj), set())
    return best
