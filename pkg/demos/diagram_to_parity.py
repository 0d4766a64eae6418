"""From a Gauss code to its Carter surface, based matrix and reduced parity.

Run with ``python demos/diagram_to_parity.py [CODE ...]``.  Without arguments a
few small codes are used.
"""

import sys

from basedparity import (carter_surface, gaussian_index, homology_form, knot_invariant_bundle,
                         parse_gauss_code)

DEFAULT_CODES = [
    "O1-U2-O3-U1-O2-U3-",   # classical trefoil
    "O1+O2+U1+U2+",         # virtual trefoil
    "1+3+1+2-3+2-",         # flat, three crossings
]


def describe(text):
    code = parse_gauss_code(text)
    S = carter_surface(code)
    H = homology_form(S)
    print(f"code {code}")
    print(f"  surface: V={S.V} E={S.E} F={S.F} genus={S.genus}, H1 rank {H.rank}")
    print("  index per crossing:",
          " ".join(f"{c}:{gaussian_index(code, c)}" for c in code.crossings))
    rep = knot_invariant_bundle(text, "z")
    for line in rep.to_text().splitlines():
        print("  " + line)
    print()


if __name__ == "__main__":
    for text in sys.argv[1:] or DEFAULT_CODES:
        describe(text)
