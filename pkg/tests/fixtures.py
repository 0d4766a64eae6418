"""Matrices and codes shared by the test modules."""

from basedparity import new_based_matrix

LABELS_9 = ["s"] + [str(i) for i in range(1, 9)]
LABELS_5 = ["s", "1", "2", "3", "4"]

EXAMPLE_B = [
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

SMALL_Z2 = [[0, 1, 1, 0], [1, 0, 0, 0], [1, 0, 0, 1], [0, 0, 1, 0]]

KNOT4 = {
    "4.9": [[0, 1, 0, 0, -1], [-1, 0, -1, -1, 0], [0, 1, 0, -1, -1], [0, 1, 1, 0, -1],
            [1, 0, 1, 1, 0]],
    "4.85": [[0, 2, -2, -2, 2], [-2, 0, -2, -1, 0], [2, 2, 0, 0, 3], [2, 1, 0, 0, 2],
             [-2, 0, -3, -2, 0]],
    "4.13": [[0, -1, 0, 0, 1], [1, 0, 1, 1, 1], [0, -1, 0, 0, 0], [0, -1, 0, 0, 0],
             [-1, -1, 0, 0, 0]],
    "4.1": [[0, 1, -1, 1, -1], [-1, 0, -1, 0, 0], [1, 1, 0, 0, 0], [-1, 0, 0, 0, -1],
            [1, 0, 0, 1, 0]],
}

# expected parity matrices: row s is the relation, then one row per crossing
KNOT4_PARITY = {
    "4.9": [[0, 0, 0, 0], [-1, 1, -1, -1], [0, 0, 0, -1], [0, 0, 1, 0], [1, -1, 1, 1]],
    "4.85": KNOT4["4.85"],
    "4.13": [[0, -1, 0, 1], [1, 0, 1, 1], [0, -1, 0, 0], [0, -1, 0, 0], [-1, -1, 1, 0]],
    "4.1": [[0, 2, -2], [-1, 1, 0], [1, 0, -1], [-1, 1, 0], [1, 0, -1]],
}

CLASSICAL_TREFOIL = "O1-U2-O3-U1-O2-U3-"
VIRTUAL_TREFOIL = "O1+O2+U1+U2+"
# a flat code whose based matrix is exactly SMALL_Z2
SMALL_Z2_CODE = "1+3+1+2-3+2-"


def example_b():
    return new_based_matrix(LABELS_9, "Z2", EXAMPLE_B)


def small_z2():
    return new_based_matrix(["s", "1", "2", "3"], "Z2", SMALL_Z2)


def knot4(name):
    return new_based_matrix(LABELS_5, "Z", KNOT4[name])
