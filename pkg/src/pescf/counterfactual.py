"""
Counterfactual evaluation.

Two engines live here.

*Belief engine.*  A counterfactual ``p => q`` over a belief base ``B`` is
judged against the preferred subsets of ``B``: subsets consistent with
``p`` that are maximal level by level, highest priority first (a
preferred-subtheory construction over the four belief levels).  The
counterfactual is valid when every preferred subset, together with
``p``, entails ``q``; it is refuted when some preferred subset entails
``!q``.

*Trace engine.*  Predicates over traces are checked against every
maximal execution of the model; a single allowed execution that
satisfies the antecedent but not the consequent refutes the claim.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from pescf.behavior import DEFAULT_MAX_STATES, Trace, maximal_traces
from pescf.beliefs import Belief, BeliefBase, Level
from pescf.core import PrimeEventStructure
from pescf.errors import SubsetExplosion
from pescf.logic import DEFAULT_MAX_ATOMS, Formula, Not, entails, eval_trace_predicate, satisfiable

DEFAULT_MAX_BELIEFS = 20


@dataclass(frozen=True)
class CounterfactualQuery:
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class PreferredSubset:
    retained: tuple[Belief, ...]
    rejected: tuple[Belief, ...]

    def formulas(self) -> list[Formula]:
        return [b.formula for b in self.retained]


class Outcome(enum.Enum):
    VALID = "Valid"
    REFUTED = "Refuted"
    UNDETERMINED = "Undetermined"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Result of the belief engine.

    ``counterfactual_flag`` records whether the base itself entails the
    negated antecedent, i.e. whether the query really is counterfactual.
    ``supporting`` and ``refuting`` are the preferred subsets that entail
    the consequent and its negation respectively.
    """

    outcome: Outcome
    counterfactual_flag: bool
    subsets: tuple[PreferredSubset, ...]
    supporting: tuple[PreferredSubset, ...] = ()
    refuting: tuple[PreferredSubset, ...] = ()


def preferred_subsets(
    base: BeliefBase,
    antecedent: Formula,
    *,
    max_beliefs: int = DEFAULT_MAX_BELIEFS,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> list[PreferredSubset]:
    """Priority-maximal subsets of ``base`` consistent with ``antecedent``.

    Levels are filled from MEANING down to FACT; at each level every
    inclusion-maximal consistent extension of each surviving candidate is
    kept.  Returns an empty list when the antecedent is unsatisfiable on
    its own.

    Raises:
        SubsetExplosion: more than ``max_beliefs`` beliefs.
        AtomLimitExceeded: too many atoms for the satisfiability check.
    """
    beliefs = base.beliefs
    if len(beliefs) > max_beliefs:
        raise SubsetExplosion(f"{len(beliefs)} beliefs exceed the limit of {max_beliefs}")

    cache: dict[frozenset[int], bool] = {}

    def consistent(indices: frozenset[int]) -> bool:
        if indices not in cache:
            cache[indices] = satisfiable(
                [antecedent, *(beliefs[i].formula for i in sorted(indices))], max_atoms=max_atoms
            )
        return cache[indices]

    if not consistent(frozenset()):
        return []

    candidates: list[frozenset[int]] = [frozenset()]
    for level in sorted(Level, reverse=True):
        items = [i for i, b in enumerate(beliefs) if b.level is level]
        if not items:
            continue
        grown: list[frozenset[int]] = []
        for fixed in candidates:
            for ext in _maximal_extensions(fixed, items, consistent):
                if ext not in grown:
                    grown.append(ext)
        candidates = grown

    out = []
    for kept in sorted(candidates, key=lambda s: sorted(s)):
        out.append(
            PreferredSubset(
                retained=tuple(beliefs[i] for i in sorted(kept)),
                rejected=tuple(b for i, b in enumerate(beliefs) if i not in kept),
            )
        )
    return out


def _maximal_extensions(fixed, items, consistent):
    """Inclusion-maximal subsets ``T`` of ``items`` with ``fixed | T`` consistent."""
    found: list[frozenset[int]] = []

    def walk(pos: int, chosen: frozenset[int], skipped: tuple[int, ...]) -> None:
        if pos == len(items):
            if all(not consistent(chosen | {s}) for s in skipped):
                found.append(chosen)
            return
        item = items[pos]
        with_item = chosen | {item}
        if consistent(with_item):
            walk(pos + 1, with_item, skipped)
        walk(pos + 1, chosen, skipped + (item,))

    walk(0, frozenset(fixed), ())
    return found


def validate_counterfactual(
    base: BeliefBase,
    query: CounterfactualQuery,
    *,
    max_beliefs: int = DEFAULT_MAX_BELIEFS,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> Verdict:
    """Judge ``query`` against the preferred subsets of ``base``."""
    flag = entails(base.formulas(), Not(query.antecedent), max_atoms=max_atoms)
    subsets = preferred_subsets(base, query.antecedent, max_beliefs=max_beliefs, max_atoms=max_atoms)
    supporting = []
    refuting = []
    for s in subsets:
        premises = [query.antecedent, *s.formulas()]
        if entails(premises, query.consequent, max_atoms=max_atoms):
            supporting.append(s)
        elif entails(premises, Not(query.consequent), max_atoms=max_atoms):
            refuting.append(s)
    if refuting:
        outcome = Outcome.REFUTED
    elif subsets and len(supporting) == len(subsets):
        outcome = Outcome.VALID
    else:
        outcome = Outcome.UNDETERMINED
    return Verdict(outcome, flag, tuple(subsets), tuple(supporting), tuple(refuting))


# ---------------------------------------------------------------------- #
# Trace engine
# ---------------------------------------------------------------------- #


class TraceOutcome(enum.Enum):
    ALL_HOLD = "AllHold"
    REFUTED_BY = "RefutedBy"
    VACUOUS = "Vacuous"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TraceVerdict:
    outcome: TraceOutcome
    witness: Trace | None = None
    matching: tuple[Trace, ...] = field(default=())


def check_over_traces(
    es: PrimeEventStructure,
    antecedent: Formula,
    consequent: Formula,
    *,
    max_traces: int = DEFAULT_MAX_STATES,
) -> TraceVerdict:
    """Check ``antecedent => consequent`` on every maximal trace of ``es``.

    ``matching`` lists the maximal traces satisfying the antecedent; the
    witness is the first of them (in sorted order) violating the consequent.
    """
    matching = tuple(
        t for t in maximal_traces(es, max_traces=max_traces) if eval_trace_predicate(antecedent, t, es)
    )
    if not matching:
        return TraceVerdict(TraceOutcome.VACUOUS)
    for t in matching:
        if not eval_trace_predicate(consequent, t, es):
            return TraceVerdict(TraceOutcome.REFUTED_BY, t, matching)
    return TraceVerdict(TraceOutcome.ALL_HOLD, None, matching)
