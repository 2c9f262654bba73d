"""
Diagnosing a failed run
=======================

Given a model, an observed trace and the label of the failure, find the
choices that led to it and test whether the alternatives would have helped.
"""

from pescf import diagnose, load_fixture
from pescf.beliefs import Level, base
from pescf.formats import format_diagnosis
from pescf.logic import parse_formula

rover = load_fixture("rover")
trace = ["A", "C", "E"]

# The report lists the error event, its causal history, every point where
# the run picked one of several conflicting enabled events, and one
# counterfactual per rejected alternative, judged by both engines.
report = diagnose(rover, trace, "Error")
print(format_diagnosis(report))

# Domain knowledge that is not in the model can be added as extra beliefs.
extra = base(
    (parse_formula("dark", rover), Level.FACT),
    (parse_formula("occ(E) -> dark & occ(C)", rover), Level.LAWFULNESS),
)
report = diagnose(rover, trace, "Error", beliefs=extra)
for c in report.counterfactuals:
    print(f"instead of {c.chosen}, {c.alternative}: beliefs say {c.belief_verdict.outcome},"
          f" traces say {c.trace_verdict.outcome}")
