"""
Behavioural semantics: configurations, traces and interleavings.

Configurations are ``frozenset`` objects of event ids and traces are
tuples of event ids.  Anything that enumerates returns its results in
canonical order (configurations by their sorted id tuple, traces
lexicographically) and takes an explicit cap.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from pescf.core import PrimeEventStructure
from pescf.errors import InvalidConfiguration, SizeLimitExceeded

DEFAULT_MAX_STATES = 100_000

Configuration = frozenset[str]
Trace = tuple[str, ...]


def canonical(config: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(config))


def is_configuration(es: PrimeEventStructure, events: Iterable[str]) -> bool:
    """True iff ``events`` is conflict-free and downward-closed."""
    members = frozenset(es.check(e) for e in events)
    for e in members:
        if not es.causes(e) <= members:
            return False
        if es.conflicts(e) & members:
            return False
    return True


def _require_configuration(es: PrimeEventStructure, config: Iterable[str]) -> Configuration:
    config = frozenset(config)
    if not is_configuration(es, config):
        raise InvalidConfiguration(f"not a configuration: {{{', '.join(canonical(config))}}}")
    return config


def _enabled(es: PrimeEventStructure, config: Configuration) -> frozenset[str]:
    return frozenset(
        e
        for e in es.ids
        if e not in config and es.causes(e) - {e} <= config and not (es.conflicts(e) & config)
    )


def enabled_events(es: PrimeEventStructure, config: Iterable[str]) -> frozenset[str]:
    """Events that can fire next from ``config``.

    Raises:
        InvalidConfiguration: if ``config`` is not a configuration.
    """
    return _enabled(es, _require_configuration(es, config))


def configurations(es: PrimeEventStructure, *, max_states: int = DEFAULT_MAX_STATES) -> list[Configuration]:
    """All configurations, reachable from the empty one by single firings."""
    start: Configuration = frozenset()
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for e in _enabled(es, current):
            nxt = current | {e}
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_states:
                    raise SizeLimitExceeded(f"more than {max_states} configurations")
                queue.append(nxt)
    return sorted(seen, key=canonical)


def maximal_configurations(es: PrimeEventStructure, *, max_states: int = DEFAULT_MAX_STATES) -> list[Configuration]:
    return [c for c in configurations(es, max_states=max_states) if not _enabled(es, c)]


def linearizations(
    es: PrimeEventStructure, config: Iterable[str], *, max_traces: int = DEFAULT_MAX_STATES
) -> list[Trace]:
    """All linear extensions of the causal order restricted to ``config``."""
    config = _require_configuration(es, config)
    preds = {e: (es.causes(e) - {e}) for e in config}
    out: list[Trace] = []
    prefix: list[str] = []
    placed: set[str] = set()

    def extend() -> None:
        if len(prefix) == len(config):
            out.append(tuple(prefix))
            if len(out) > max_traces:
                raise SizeLimitExceeded(f"more than {max_traces} linearizations")
            return
        for e in sorted(config - placed):
            if preds[e] <= placed:
                prefix.append(e)
                placed.add(e)
                extend()
                placed.discard(e)
                prefix.pop()

    extend()
    return out


def maximal_traces(es: PrimeEventStructure, *, max_traces: int = DEFAULT_MAX_STATES) -> list[Trace]:
    """Every linearization of every maximal configuration, sorted."""
    traces: list[Trace] = []
    for config in maximal_configurations(es, max_states=max_traces):
        traces.extend(linearizations(es, config, max_traces=max_traces))
        if len(traces) > max_traces:
            raise SizeLimitExceeded(f"more than {max_traces} maximal traces")
    return sorted(traces)


def all_traces(es: PrimeEventStructure, *, max_traces: int = DEFAULT_MAX_STATES) -> list[Trace]:
    """Every conformant trace (all prefixes included), sorted."""
    traces: list[Trace] = []
    for config in configurations(es, max_states=max_traces):
        traces.extend(linearizations(es, config, max_traces=max_traces))
        if len(traces) > max_traces:
            raise SizeLimitExceeded(f"more than {max_traces} traces")
    return sorted(traces)


def conforms(es: PrimeEventStructure, trace: Iterable[str]) -> bool:
    """True iff every step is enabled at the prefix before it."""
    steps = [es.check(e) for e in trace]
    config: set[str] = set()
    for e in steps:
        if e in config:
            return False
        if not es.causes(e) - {e} <= config or es.conflicts(e) & config:
            return False
        config.add(e)
    return True


@dataclass(frozen=True)
class Transition:
    source: Configuration
    event: str
    label: str
    target: Configuration


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[Configuration, ...]
    initial: Configuration
    transitions: tuple[Transition, ...]

    def successors(self, state: Configuration) -> list[Transition]:
        return [t for t in self.transitions if t.source == state]

    def traces(self, *, max_traces: int = DEFAULT_MAX_STATES) -> set[Trace]:
        """Event sequences along every finite path from the initial state."""
        out: dict[Configuration, list[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            out[t.source].append(t)
        found: set[Trace] = set()
        stack: list[tuple[Configuration, Trace]] = [(self.initial, ())]
        while stack:
            state, path = stack.pop()
            found.add(path)
            if len(found) > max_traces:
                raise SizeLimitExceeded(f"more than {max_traces} traces")
            for t in out[state]:
                stack.append((t.target, path + (t.event,)))
        return found


def interleaving_lts(es: PrimeEventStructure, *, max_states: int = DEFAULT_MAX_STATES) -> TransitionSystem:
    """Configurations as states, one transition per enabled event."""
    states = configurations(es, max_states=max_states)
    transitions = [
        Transition(s, e, es.label(e), s | {e}) for s in states for e in sorted(_enabled(es, s))
    ]
    return TransitionSystem(tuple(states), frozenset(), tuple(transitions))


def simulate(es: PrimeEventStructure, seed: int, max_steps: int) -> Trace:
    """Run the model, drawing uniformly among enabled events at each step."""
    rng = random.Random(seed)
    config: set[str] = set()
    trace: list[str] = []
    while len(trace) < max_steps:
        choices = sorted(_enabled(es, frozenset(config)))
        if not choices:
            break
        e = rng.choice(choices)
        trace.append(e)
        config.add(e)
    return tuple(trace)
