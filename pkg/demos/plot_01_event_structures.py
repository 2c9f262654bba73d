"""
Causality, conflict and concurrency
===================================

Load the bundled models and ask how pairs of events relate.
"""

from pescf import RelationKind, build_es, degree_of_concurrency, load_fixture, relation_of
from pescf.core import concurrent_pairs

# A model is a set of labelled events plus two generating relations.
# Only the edges you write down are needed: the library closes causality
# transitively and pushes every conflict down to all later events.
network = load_fixture("network")
print(network.name, "has", len(network), "events")
print("declared conflict e2 # e3 also gives:")
for a, b in sorted(network.conflict):
    if a < b and (a, b) != ("e2", "e3"):
        print("   ", a, "#", b)

# Every ordered pair falls into exactly one relation kind.
for a, b in [("e2", "e8"), ("e1", "e4"), ("e4", "e1"), ("e4", "e5")]:
    print(f"{a} vs {b}: {relation_of(network, a, b)}")

# Two sides of a message exchange: sending happens before reading, but the
# sender's later work does not wait for the reader.
sms = load_fixture("sms")
print("B2 vs A1:", relation_of(sms, "B2", "A1"))
print("B2 vs A2:", relation_of(sms, "B2", "A2"))

# Immediate relations are what remains after removing everything implied.
print("immediate causes:", network.immediate_causes())
print("immediate conflicts:", network.immediate_conflicts())

# The degree of concurrency is the largest set of pairwise concurrent events.
for name in ("network", "railway", "sms", "phone", "rover"):
    print(f"degree of concurrency, {name}: {degree_of_concurrency(load_fixture(name))}")

# Models can also be built directly from Python.
diamond = build_es(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
assert relation_of(diamond, "b", "c") is RelationKind.CONCURRENT
print("diamond concurrent pairs:", concurrent_pairs(diamond))
