"""Print the parity matrix of each of the four 4-crossing knot matrices over Z.

Run with ``python demos/four_crossing_tables.py``.
"""

from basedparity import new_based_matrix, parity_matrix_report

LABELS = ["s", "1", "2", "3", "4"]
KNOTS = {
    "4.9": [[0, 1, 0, 0, -1], [-1, 0, -1, -1, 0], [0, 1, 0, -1, -1], [0, 1, 1, 0, -1],
            [1, 0, 1, 1, 0]],
    "4.85": [[0, 2, -2, -2, 2], [-2, 0, -2, -1, 0], [2, 2, 0, 0, 3], [2, 1, 0, 0, 2],
             [-2, 0, -3, -2, 0]],
    "4.13": [[0, -1, 0, 0, 1], [1, 0, 1, 1, 1], [0, -1, 0, 0, 0], [0, -1, 0, 0, 0],
             [-1, -1, 0, 0, 0]],
    "4.1": [[0, 1, -1, 1, -1], [-1, 0, -1, 0, 0], [1, 1, 0, 0, 0], [-1, 0, 0, 0, -1],
            [1, 0, 0, 1, 0]],
}

for name, rows in KNOTS.items():
    report = parity_matrix_report(new_based_matrix(LABELS, "Z", rows))
    print(f"knot {name}   group {report.group}")
    print(report.to_text())
    print()
