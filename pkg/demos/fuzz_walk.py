"""Run the property fuzzer, then plant a false property to show shrinking.

Run with ``python demos/fuzz_walk.py``.
"""

from basedparity import ElementClass, classify_element, fuzz, new_based_matrix

report = fuzz.run_fuzz(seed=1, count=30, max_size=5, moves=10)
print(report.to_text())
print()


def false_claim(T, rng):
    # "no matrix has two core elements", which random walks refute quickly
    core = [g for g in T.elements if classify_element(T, g) is ElementClass.CORE]
    return [f"core elements {core}"] if len(core) > 1 else []


fuzz.CHECKS = {"at_most_one_core": false_claim}
bad = fuzz.run_fuzz(seed=1, count=30, max_size=5, moves=10)
print(f"planted claim failed {len(bad.counterexamples)} times; first one:")
first = bad.counterexamples[0]
print("  ", first["messages"][0])
m = first["minimized"]
print(new_based_matrix(m["labels"], m["ring"], m["b"]))
