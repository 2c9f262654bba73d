"""
Line-oriented text formats.

Model (``.ces``)::

    # comment
    es rover
    event A "Take landscape pictures"
    cause A C            # A is an immediate cause of C
    conflict B C
    atom dark

Trace: ``trace A C E`` (ids may continue on following lines).

Beliefs: one ``belief <fact|law|existence|meaning> <formula>`` per line.

Query::

    counterfactual
    engine belief          # or: trace
    antecedent occ(B)
    consequent !occ(E)
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from pescf.behavior import Configuration, TransitionSystem, canonical
from pescf.beliefs import Belief, BeliefBase, Level
from pescf.core import LabelledEvent, PrimeEventStructure, build_es
from pescf.counterfactual import (
    CounterfactualQuery,
    PreferredSubset,
    TraceVerdict,
    Verdict,
)
from pescf.diagnosis import DiagnosisReport
from pescf.errors import DuplicateEventId, ModelError, ParseError, UnknownEvent
from pescf.logic import Formula, format_formula, parse_formula, parse_trace_predicate

FIXTURES = ("railway", "network", "phone", "sms", "rover")


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip() if '"' not in raw else raw.strip()
        if body and not body.startswith("#"):
            yield number, body


# ---------------------------------------------------------------------- #
# Models
# ---------------------------------------------------------------------- #


@dataclass
class ModelDocument:
    name: str
    events: list[LabelledEvent] = field(default_factory=list)
    causes: list[tuple[str, str]] = field(default_factory=list)
    conflicts: list[tuple[str, str]] = field(default_factory=list)
    atoms: list[str] = field(default_factory=list)

    def build(self, **kwargs: Any) -> PrimeEventStructure:
        return build_es(self.events, self.causes, self.conflicts, self.atoms, name=self.name, **kwargs)


def parse_model(text: str) -> ModelDocument:
    """Parse a model file.

    Raises:
        ParseError: malformed line (with its line number).
        DuplicateEventId, UnknownEvent: carry the offending line.
    """
    doc: ModelDocument | None = None
    pending: list[tuple[int, str, str, str]] = []
    declared: dict[str, int] = {}
    for number, body in _lines(text):
        try:
            words = shlex.split(body, comments=True)
        except ValueError as exc:
            raise ParseError(str(exc), number) from None
        if not words:
            continue
        kw, args = words[0], words[1:]
        if doc is None:
            if kw != "es" or len(args) != 1:
                raise ParseError("expected header 'es NAME'", number)
            doc = ModelDocument(args[0])
            continue
        if kw == "event":
            if len(args) not in (1, 2):
                raise ParseError("expected 'event ID \"label\"'", number)
            eid = args[0]
            if eid in declared:
                raise DuplicateEventId(eid, number)
            try:
                doc.events.append(LabelledEvent(eid, args[1] if len(args) == 2 else eid))
            except ModelError as exc:
                raise ParseError(str(exc), number) from None
            declared[eid] = number
        elif kw in ("cause", "conflict"):
            if len(args) != 2:
                raise ParseError(f"expected '{kw} ID ID'", number)
            pending.append((number, kw, args[0], args[1]))
        elif kw == "atom":
            if len(args) != 1:
                raise ParseError("expected 'atom NAME'", number)
            doc.atoms.append(args[0])
        elif kw == "es":
            raise ParseError("duplicate 'es' header", number)
        else:
            raise ParseError(f"unknown keyword {kw!r}", number)
    if doc is None:
        raise ParseError("missing 'es NAME' header")
    for number, kw, a, b in pending:
        for x in (a, b):
            if x not in declared:
                raise UnknownEvent(x, number)
        (doc.causes if kw == "cause" else doc.conflicts).append((a, b))
    return doc


def load_model(path: str | Path, **kwargs: Any) -> PrimeEventStructure:
    return parse_model(Path(path).read_text(encoding="utf-8")).build(**kwargs)


def fixture_text(name: str) -> str:
    """Text of a bundled model or sample file, e.g. ``"rover"`` or ``"rover_ace.trace"``."""
    filename = name if "." in name else f"{name}.ces"
    return resources.files("pescf.data").joinpath(filename).read_text(encoding="utf-8")


def load_fixture(name: str) -> PrimeEventStructure:
    """One of the bundled models: railway, network, phone, sms, rover."""
    return parse_model(fixture_text(name)).build()


def format_model(es: PrimeEventStructure) -> str:
    """Serialize using the immediate relations; parses back to an equal structure."""
    out = [f"es {es.name}"]
    for ev in sorted(es.events, key=lambda ev: ev.id):
        label = ev.label.replace("\\", "\\\\").replace('"', '\\"')
        out.append(f'event {ev.id} "{label}"')
    out += [f"cause {a} {b}" for a, b in es.immediate_causes()]
    out += [f"conflict {a} {b}" for a, b in es.immediate_conflicts()]
    out += [f"atom {name}" for name in sorted(es.exogenous_atoms)]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------- #
# Traces, beliefs, queries
# ---------------------------------------------------------------------- #


def parse_trace(text: str, es: PrimeEventStructure | None = None) -> tuple[str, ...]:
    steps: list[str] = []
    started = False
    for number, body in _lines(text):
        words = body.split()
        if not started:
            if words[0] != "trace":
                raise ParseError("expected 'trace' keyword", number)
            started = True
            words = words[1:]
        for w in words:
            if es is not None and w not in es:
                raise UnknownEvent(w, number)
            steps.append(w)
    if not started:
        raise ParseError("missing 'trace' keyword")
    return tuple(steps)


def format_trace(trace) -> str:
    return "trace " + " ".join(trace) + "\n"


def parse_beliefs(text: str, es: PrimeEventStructure | None = None) -> BeliefBase:
    out = []
    for number, body in _lines(text):
        parts = body.split(None, 2)
        if parts[0] != "belief" or len(parts) < 3:
            raise ParseError("expected 'belief LEVEL FORMULA'", number)
        try:
            level = Level.from_keyword(parts[1])
        except ValueError as exc:
            raise ParseError(str(exc), number) from None
        out.append(Belief(parse_formula(parts[2], es, line=number), level))
    return BeliefBase(tuple(out))


def format_beliefs(beliefs: BeliefBase) -> str:
    return "".join(f"belief {b.level.keyword} {format_formula(b.formula)}\n" for b in beliefs)


@dataclass(frozen=True)
class QueryDocument:
    """A parsed query file; ``engine`` is ``"belief"`` or ``"trace"``."""

    engine: str
    antecedent: Formula
    consequent: Formula

    @property
    def query(self) -> CounterfactualQuery:
        return CounterfactualQuery(self.antecedent, self.consequent)


def parse_query_file(text: str, es: PrimeEventStructure | None = None) -> QueryDocument:
    header = False
    engine = "belief"
    fields: dict[str, tuple[int, str]] = {}
    for number, body in _lines(text):
        kw, _, rest = body.partition(" ")
        rest = rest.strip()
        if not header:
            if body != "counterfactual":
                raise ParseError("expected header 'counterfactual'", number)
            header = True
        elif kw == "engine":
            if rest not in ("belief", "trace"):
                raise ParseError(f"engine must be 'belief' or 'trace', not {rest!r}", number)
            engine = rest
        elif kw in ("antecedent", "consequent"):
            if kw in fields:
                raise ParseError(f"duplicate {kw}", number)
            if not rest:
                raise ParseError(f"empty {kw}", number)
            fields[kw] = (number, rest)
        else:
            raise ParseError(f"unknown keyword {kw!r}", number)
    if not header:
        raise ParseError("missing 'counterfactual' header")
    for kw in ("antecedent", "consequent"):
        if kw not in fields:
            raise ParseError(f"missing {kw}")
    parse = parse_formula if engine == "belief" else parse_trace_predicate
    parsed = {kw: parse(text, es, line=number) for kw, (number, text) in fields.items()}
    return QueryDocument(engine, parsed["antecedent"], parsed["consequent"])


# ---------------------------------------------------------------------- #
# Structured output
# ---------------------------------------------------------------------- #


def config_list(config: Configuration) -> list[str]:
    return list(canonical(config))


def lts_to_dict(lts: TransitionSystem) -> dict[str, Any]:
    return {
        "states": [config_list(s) for s in lts.states],
        "initial": config_list(lts.initial),
        "transitions": [
            {"source": config_list(t.source), "event": t.event, "label": t.label, "target": config_list(t.target)}
            for t in lts.transitions
        ],
    }


def _subset_to_dict(s: PreferredSubset) -> dict[str, Any]:
    return {
        "retained": [{"level": b.level.keyword, "formula": format_formula(b.formula)} for b in s.retained],
        "rejected": [{"level": b.level.keyword, "formula": format_formula(b.formula)} for b in s.rejected],
    }


def verdict_to_dict(v: Verdict, query: CounterfactualQuery | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"engine": "belief"}
    if query is not None:
        out["antecedent"] = format_formula(query.antecedent)
        out["consequent"] = format_formula(query.consequent)
    out.update(
        outcome=v.outcome.value,
        counterfactual=v.counterfactual_flag,
        preferred_subsets=[_subset_to_dict(s) for s in v.subsets],
        supporting=[v.subsets.index(s) for s in v.supporting],
        refuting=[v.subsets.index(s) for s in v.refuting],
    )
    return out


def trace_verdict_to_dict(v: TraceVerdict, antecedent: Formula | None = None, consequent: Formula | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {"engine": "trace"}
    if antecedent is not None:
        out["antecedent"] = format_formula(antecedent)
    if consequent is not None:
        out["consequent"] = format_formula(consequent)
    out.update(
        outcome=v.outcome.value,
        witness=list(v.witness) if v.witness is not None else None,
        matching=[list(t) for t in v.matching],
    )
    return out


def diagnosis_to_dict(report: DiagnosisReport) -> dict[str, Any]:
    return {
        "error_event": report.error_event,
        "history": sorted(report.history),
        "choice_points": [
            {"prefix": config_list(cp.prefix), "chosen": cp.chosen, "alternatives": list(cp.alternatives)}
            for cp in report.choice_points
        ],
        "counterfactuals": [
            {
                "alternative": c.alternative,
                "chosen": c.chosen,
                "belief": verdict_to_dict(c.belief_verdict, c.query),
                "trace": trace_verdict_to_dict(c.trace_verdict, c.trace_antecedent, c.trace_consequent),
            }
            for c in report.counterfactuals
        ],
    }


def _braces(items) -> str:
    return "{" + ", ".join(items) + "}"


def format_verdict(v: Verdict, query: CounterfactualQuery | None = None) -> str:
    lines = []
    if query is not None:
        lines.append(f"counterfactual: {format_formula(query.antecedent)} => {format_formula(query.consequent)}")
    lines.append(f"verdict: {v.outcome}")
    lines.append(f"antecedent disbelieved: {'yes' if v.counterfactual_flag else 'no'}")
    for i, s in enumerate(v.subsets, start=1):
        tag = "supports" if s in v.supporting else "refutes" if s in v.refuting else "neutral"
        lines.append(f"preferred subset {i} ({tag}):")
        lines += [f"  retained {b}" for b in s.retained]
        lines += [f"  rejected {b}" for b in s.rejected]
    return "\n".join(lines) + "\n"


def format_trace_verdict(v: TraceVerdict, antecedent: Formula | None = None, consequent: Formula | None = None) -> str:
    lines = []
    if antecedent is not None and consequent is not None:
        lines.append(f"trace query: {format_formula(antecedent)} => {format_formula(consequent)}")
    lines.append(f"verdict: {v.outcome}")
    if v.witness is not None:
        lines.append("witness: " + " ".join(v.witness))
    lines.append(f"maximal traces satisfying antecedent: {len(v.matching)}")
    return "\n".join(lines) + "\n"


def format_diagnosis(report: DiagnosisReport) -> str:
    lines = [
        f"error event: {report.error_event}",
        f"causal history: {_braces(sorted(report.history))}",
    ]
    if not report.choice_points:
        lines.append("choice points: none")
    for cp in report.choice_points:
        lines.append(
            f"choice point at {_braces(canonical(cp.prefix))}: chose {cp.chosen}, "
            f"alternatives {_braces(cp.alternatives)}"
        )
    for c in report.counterfactuals:
        witness = f" {' '.join(c.trace_verdict.witness)}" if c.trace_verdict.witness else ""
        lines.append(
            f"had {c.alternative} occurred instead of {c.chosen}, {report.error_event} would not have: "
            f"belief {c.belief_verdict.outcome}, trace {c.trace_verdict.outcome}{witness}"
        )
    return "\n".join(lines) + "\n"
