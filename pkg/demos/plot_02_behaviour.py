"""
Runs of a model
===============

Configurations, traces, the interleaving transition system and seeded
simulation on the railway crossing model.
"""

from pescf import (
    all_traces,
    configurations,
    conforms,
    interleaving_lts,
    load_fixture,
    maximal_configurations,
    maximal_traces,
    simulate,
)

railway = load_fixture("railway")

# A configuration is a conflict-free set of events that contains all of its
# causes. They are listed smallest first.
configs = configurations(railway)
print(len(configs), "configurations")
for c in configs:
    print("   {" + ", ".join(sorted(c)) + "}")
print("maximal:", [sorted(c) for c in maximal_configurations(railway)])

# A trace orders the events of a configuration consistently with causality.
for t in maximal_traces(railway):
    print("complete run:", " ".join(t))
print(len(all_traces(railway)), "traces including partial runs and the empty one")

# Checking an observed log against the model.
print("e1 e3 e2 e6 conforms:", conforms(railway, ["e1", "e3", "e2", "e6"]))
print("e3 e1 conforms:", conforms(railway, ["e3", "e1"]))

# The transition system has configurations as states and adds one event
# per step; its paths are exactly the traces above.
lts = interleaving_lts(railway)
print(len(lts.states), "states,", len(lts.transitions), "transitions")
assert lts.traces() == set(all_traces(railway))

# Simulation picks uniformly among enabled events, reproducibly per seed.
for seed in range(4):
    print(f"seed {seed}:", " ".join(simulate(railway, seed, max_steps=100)))
