"""Walk the 9x9 example over Z2 through every stage of the construction.

Run with ``python demos/worked_example.py``.
"""

from basedparity import (annulator, matrix_invariant_bundle, new_based_matrix, partition_chain,
                         reduce_to_primitive, reduced_parity, stable_parity_functor)

LABELS = ["s"] + [str(i) for i in range(1, 9)]
ROWS = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 1, 0, 0],
    [0, 1, 1, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 0],
    [0, 1, 1, 0, 0, 0, 0, 0, 1],
    [0, 1, 1, 1, 1, 0, 0, 0, 1],
    [0, 0, 0, 1, 1, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 1, 1, 0],
]


def main():
    T = new_based_matrix(LABELS, "Z2", ROWS)

    print("partition chain:")
    chain = partition_chain(T)
    for i, p in enumerate(chain):
        print(f"  step {i}: {p}")

    ann = annulator(T, chain[-1])
    print("annulator basis (rows over", ", ".join(ann.elements) + "):")
    for row in ann.basis:
        print("  ", row)

    Tb, trace = reduce_to_primitive(T)
    print("reduction:", " ".join(f"{st.move.value}({','.join(st.removed)})" for st in trace.steps))
    print("primitive labels:", ", ".join(Tb.labels))

    P = stable_parity_functor(T)
    print("stable functor group:", P.group)
    Q = reduced_parity(T)
    print("reduced parity group:", Q.group)
    for g in T.elements:
        print(f"  {g}: stable {P.values[g]}  reduced {Q.values[g]}")

    print()
    print(matrix_invariant_bundle(T).to_text())


if __name__ == "__main__":
    main()
