"""
Counterfactual queries over a ranked belief base
================================================

Beliefs carry a level. When a hypothetical antecedent contradicts what we
hold, lower-ranked beliefs give way first, and the consequent is checked
against every way of keeping as much as possible.
"""

from pescf import CounterfactualQuery, check_over_traces, load_fixture, validate_counterfactual
from pescf.beliefs import Level, base
from pescf.formats import format_verdict
from pescf.logic import parse_formula, parse_trace_predicate

F, L = Level.FACT, Level.LAWFULNESS
p = parse_formula

# The rover took landscape pictures (A), then chose the dark-side shot (C)
# which failed (E). Would picking the sun-side sample (B) have avoided it?
rover_beliefs = base(
    (p("dark"), F),
    (p("occ(C)"), F),
    (p("occ(E)"), F),
    (p("occ(B) -> !occ(C)"), L),
    (p("occ(E) -> dark & occ(C)"), L),
)
query = CounterfactualQuery(p("occ(B)"), p("!occ(E)"))
print(format_verdict(validate_counterfactual(rover_beliefs, query), query))

# Two equally ranked facts compete and neither can be preferred, so a claim
# that depends on which one survives is refuted, while their disjunction holds.
napoleon = base(
    (p("nc -> (cd100 <-> nd100)"), L),
    (p("nc -> (na1800 <-> ca1800)"), L),
    (p("nd100 -> !na1800"), L),
    (p("cd100 -> !ca1800"), L),
    (p("cd100"), F),
    (p("na1800"), F),
    (p("!nc"), F),
)
for consequent in ("nd100", "ca1800", "nd100 | ca1800"):
    q = CounterfactualQuery(p("nc"), p(consequent))
    print(f"nc > {consequent}:", validate_counterfactual(napoleon, q).outcome)

# Adding a belief can withdraw a conclusion.
q = CounterfactualQuery(p("a"), p("b"))
print("with a -> b:", validate_counterfactual(base((p("a -> b"), L)), q).outcome)
print("also a -> !b:", validate_counterfactual(base((p("a -> b"), L), (p("a -> !b"), L)), q).outcome)

# The trace engine answers a related question directly from the model:
# among all complete runs where the antecedent holds, does the consequent?
rover = load_fixture("rover")
for ante, cons in [("first(A)", "occurs(E)"), ("first(A)", "!occurs(E)"), ("first(B)", "!occurs(E)")]:
    v = check_over_traces(rover, parse_trace_predicate(ante, rover), parse_trace_predicate(cons, rover))
    witness = f" ({' '.join(v.witness)})" if v.witness else ""
    print(f"{ante} => {cons}: {v.outcome}{witness}")
