"""Prime event structures with counterfactual fault diagnosis."""

from pescf.behavior import (
    Transition,
    TransitionSystem,
    all_traces,
    configurations,
    conforms,
    enabled_events,
    interleaving_lts,
    is_configuration,
    linearizations,
    maximal_configurations,
    maximal_traces,
    simulate,
)
from pescf.beliefs import Belief, BeliefBase, Level, facts_from_trace, laws_from_model
from pescf.core import (
    LabelledEvent,
    PrimeEventStructure,
    RelationKind,
    build_es,
    causal_history,
    degree_of_concurrency,
    relation_of,
)
from pescf.counterfactual import (
    CounterfactualQuery,
    Outcome,
    PreferredSubset,
    TraceOutcome,
    TraceVerdict,
    Verdict,
    check_over_traces,
    preferred_subsets,
    validate_counterfactual,
)
from pescf.diagnosis import DiagnosisReport, diagnose
from pescf.formats import (
    format_model,
    load_fixture,
    load_model,
    parse_beliefs,
    parse_model,
    parse_query_file,
    parse_trace,
)
from pescf.logic import entails, eval_trace_predicate, parse_formula, parse_trace_predicate, satisfiable

__all__ = [
    "all_traces",
    "Belief",
    "BeliefBase",
    "build_es",
    "causal_history",
    "check_over_traces",
    "configurations",
    "conforms",
    "CounterfactualQuery",
    "degree_of_concurrency",
    "diagnose",
    "DiagnosisReport",
    "enabled_events",
    "entails",
    "eval_trace_predicate",
    "facts_from_trace",
    "format_model",
    "interleaving_lts",
    "is_configuration",
    "LabelledEvent",
    "laws_from_model",
    "Level",
    "linearizations",
    "load_fixture",
    "load_model",
    "maximal_configurations",
    "maximal_traces",
    "Outcome",
    "parse_beliefs",
    "parse_formula",
    "parse_model",
    "parse_query_file",
    "parse_trace",
    "parse_trace_predicate",
    "preferred_subsets",
    "PreferredSubset",
    "PrimeEventStructure",
    "relation_of",
    "RelationKind",
    "satisfiable",
    "simulate",
    "TraceOutcome",
    "TraceVerdict",
    "Transition",
    "TransitionSystem",
    "validate_counterfactual",
    "Verdict",
]

__version__ = "0.1.0"
