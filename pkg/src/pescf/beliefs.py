"""
Prioritized belief bases.

Beliefs carry one of four priority levels, ordered
``MEANING > EXISTENCE > LAWFULNESS > FACT``.  Laws can be read off an
event structure and facts off an observed trace; anything else comes
from user belief files.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

from pescf.behavior import conforms
from pescf.core import PrimeEventStructure
from pescf.errors import AtomLimitExceeded, NonConformantTrace
from pescf.logic import DEFAULT_MAX_ATOMS, And, Formula, Implies, Not, format_formula, occ


class Level(enum.IntEnum):
    FACT = 0
    LAWFULNESS = 1
    EXISTENCE = 2
    MEANING = 3

    @property
    def keyword(self) -> str:
        return _KEYWORDS[self]

    @classmethod
    def from_keyword(cls, word: str) -> Level:
        for level, kw in _KEYWORDS.items():
            if kw == word:
                return level
        raise ValueError(f"unknown belief level {word!r}")


_KEYWORDS = {
    Level.FACT: "fact",
    Level.LAWFULNESS: "law",
    Level.EXISTENCE: "existence",
    Level.MEANING: "meaning",
}

MODEL_LAW = "model-law"
TRACE_FACT = "trace-fact"
USER = "user"


@dataclass(frozen=True)
class Belief:
    formula: Formula
    level: Level
    origin: str = USER

    def __str__(self) -> str:
        return f"{format_formula(self.formula)} [{self.level.keyword}]"


@dataclass(frozen=True)
class BeliefBase:
    """An ordered, duplicate-free collection of beliefs.

    Order matters only for deterministic reporting.  A later belief with
    the same formula and level as an earlier one is dropped.
    """

    beliefs: tuple[Belief, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        kept = []
        for b in self.beliefs:
            key = (b.formula, b.level)
            if key not in seen:
                seen.add(key)
                kept.append(b)
        object.__setattr__(self, "beliefs", tuple(kept))

    def __iter__(self) -> Iterator[Belief]:
        return iter(self.beliefs)

    def __len__(self) -> int:
        return len(self.beliefs)

    def __add__(self, other: BeliefBase) -> BeliefBase:
        return BeliefBase(self.beliefs + tuple(other))

    def at(self, level: Level) -> tuple[Belief, ...]:
        return tuple(b for b in self.beliefs if b.level is level)

    def formulas(self) -> list[Formula]:
        return [b.formula for b in self.beliefs]


def base(*items: tuple[Formula, Level] | Belief) -> BeliefBase:
    """Shorthand: ``base((f, Level.FACT), (g, Level.LAWFULNESS), ...)``."""
    return BeliefBase(tuple(b if isinstance(b, Belief) else Belief(b[0], b[1]) for b in items))


def laws_from_model(es: PrimeEventStructure, *, max_atoms: int = DEFAULT_MAX_ATOMS) -> BeliefBase:
    """Lawful beliefs for the immediate relations of ``es``.

    Each covering causal pair ``(a, b)`` yields ``occ(b) -> occ(a)``; each
    non-inherited conflict ``a # b`` yields ``!(occ(a) & occ(b))``.
    """
    if len(es) > max_atoms:
        raise AtomLimitExceeded(f"{len(es)} events exceed the limit of {max_atoms} atoms")
    laws = [Belief(Implies(occ(b), occ(a)), Level.LAWFULNESS, MODEL_LAW) for a, b in es.immediate_causes()]
    laws += [
        Belief(Not(And(occ(a), occ(b))), Level.LAWFULNESS, MODEL_LAW) for a, b in es.immediate_conflicts()
    ]
    return BeliefBase(tuple(laws))


def facts_from_trace(es: PrimeEventStructure, trace: Iterable[str], world: str = "closed") -> BeliefBase:
    """Occurrence facts for an observed run.

    In ``"closed"`` mode the trace is taken as a complete run, so every
    event missing from it is believed not to have occurred.
    """
    if world not in ("open", "closed"):
        raise ValueError(f"world must be 'open' or 'closed', not {world!r}")
    steps = list(trace)
    if not conforms(es, steps):
        raise NonConformantTrace(f"trace {' '.join(steps)!r} is not allowed by {es.name}")
    facts = [Belief(occ(e), Level.FACT, TRACE_FACT) for e in steps]
    if world == "closed":
        facts += [Belief(Not(occ(e)), Level.FACT, TRACE_FACT) for e in es.ids if e not in steps]
    return BeliefBase(tuple(facts))
