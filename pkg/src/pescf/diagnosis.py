"""Fault diagnosis of an observed failing trace."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from pescf.behavior import Configuration, Trace, conforms, enabled_events
from pescf.beliefs import BeliefBase, facts_from_trace, laws_from_model
from pescf.core import PrimeEventStructure, causal_history
from pescf.counterfactual import (
    CounterfactualQuery,
    TraceVerdict,
    Verdict,
    check_over_traces,
    validate_counterfactual,
)
from pescf.errors import AmbiguousErrorLabel, NoErrorEvent, NonConformantTrace
from pescf.logic import Formula, Not, Occurs, occ


@dataclass(frozen=True)
class ChoicePoint:
    """At ``prefix`` the run took ``chosen`` although each of
    ``alternatives`` was enabled and in conflict with it."""

    prefix: Configuration
    chosen: str
    alternatives: tuple[str, ...]


@dataclass(frozen=True)
class AvoidanceCounterfactual:
    alternative: str
    chosen: str
    query: CounterfactualQuery
    trace_antecedent: Formula
    trace_consequent: Formula
    belief_verdict: Verdict
    trace_verdict: TraceVerdict


@dataclass(frozen=True)
class DiagnosisReport:
    error_event: str
    history: frozenset[str]
    choice_points: tuple[ChoicePoint, ...]
    counterfactuals: tuple[AvoidanceCounterfactual, ...]


def locate_error(es: PrimeEventStructure, trace: Iterable[str], error_label: str) -> str:
    hits = [e for e in trace if es.label(e) == error_label]
    if not hits:
        raise NoErrorEvent(f"no event labelled {error_label!r} in the trace")
    if len(hits) > 1:
        raise AmbiguousErrorLabel(f"events {', '.join(hits)} all carry label {error_label!r}")
    return hits[0]


def choice_points(es: PrimeEventStructure, trace: Trace) -> list[ChoicePoint]:
    points = []
    for i, chosen in enumerate(trace):
        prefix = frozenset(trace[:i])
        alts = tuple(sorted(x for x in enabled_events(es, prefix) if x != chosen and es.in_conflict(x, chosen)))
        if alts:
            points.append(ChoicePoint(prefix, chosen, alts))
    return points


def diagnose(
    es: PrimeEventStructure,
    trace: Iterable[str],
    error_label: str,
    *,
    beliefs: BeliefBase | None = None,
    world: str = "closed",
) -> DiagnosisReport:
    """Explain how ``trace`` reached the event labelled ``error_label``.

    For every choice point whose chosen event lies in the error's causal
    history, each conflicting alternative ``x`` gives an avoidance
    counterfactual "had ``x`` occurred, the error would not have",
    evaluated by both engines.  The belief engine works on the model laws,
    the trace facts and the optional extra ``beliefs``.

    Raises:
        NonConformantTrace, NoErrorEvent, AmbiguousErrorLabel.
    """
    trace = tuple(trace)
    if not conforms(es, trace):
        raise NonConformantTrace(f"trace {' '.join(trace)!r} is not allowed by {es.name}")
    error = locate_error(es, trace, error_label)
    history = causal_history(es, error)
    points = tuple(choice_points(es, trace))

    base = laws_from_model(es) + facts_from_trace(es, trace, world)
    if beliefs is not None:
        base = base + beliefs

    counterfactuals = []
    done = set()
    for cp in points:
        if cp.chosen not in history:
            continue
        for alt in cp.alternatives:
            if alt in done:
                continue
            done.add(alt)
            query = CounterfactualQuery(occ(alt), Not(occ(error)))
            ante, cons = Occurs(alt), Not(Occurs(error))
            counterfactuals.append(
                AvoidanceCounterfactual(
                    alt,
                    cp.chosen,
                    query,
                    ante,
                    cons,
                    validate_counterfactual(base, query),
                    check_over_traces(es, ante, cons),
                )
            )
    return DiagnosisReport(error, history, points, tuple(counterfactuals))
