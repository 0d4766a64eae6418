"""Acceptance suite: one check per criterion, each reporting a PASS/FAIL line.

All tolerances are exact: values are integers or residues, compared with ==.
Run directly (``python tests/test_acceptance.py``) or through pytest; pytest
repeats the lines in its terminal summary.
"""

import itertools
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from basedparity import (Partition, Ring, annulator, automorphisms, bar_structure, carter_surface,
                         derive, gaussian_parity, homology_form, is_isomorphic, is_primitive,
                         knot_invariant_bundle, partition_chain, quotient_group, reduce_to_primitive,
                         reduced_parity, reduced_parity_functor, stable_parity_functor,
                         stable_partition, tag_tribes, zero_tribe)
from basedparity.diagram import half_classes, left_half
from basedparity.fuzz import random_based_matrix, random_gauss_code, random_reduction
from basedparity.linalg import determinant
from basedparity.matrix import new_based_matrix
from basedparity.parity import check_local_axioms, check_transport, random_move
from fixtures import (KNOT4_PARITY, CLASSICAL_TREFOIL, VIRTUAL_TREFOIL, knot4, example_b,
                      small_z2)

PROPERTY_COUNT = 200
MAX_ELEMENTS = 7
CODE_COUNT = 500
MAX_CROSSINGS = 8

RESULTS: list[str] = []


def report(number, title, failures):
    line = f"[{'PASS' if not failures else 'FAIL'}] criterion {number}: {title}"
    if failures:
        line += f" ({len(failures)} failure(s); first: {failures[0]})"
    RESULTS.append(line)
    print(line)
    assert not failures, failures[:5]


class Checker:
    def __init__(self):
        self.failures = []

    def eq(self, what, got, expected):
        if got != expected:
            self.failures.append(f"{what}: got {got!r}, expected {expected!r}")


def P(*blocks):
    return Partition.of(blocks)


def test_criterion_1_worked_example():
    c = Checker()
    B = example_b()
    chain = partition_chain(B)
    c.eq("C1", chain[1], P(["s"], ["1", "2"], ["3"], ["4"], ["5"], ["6"], ["7"], ["8"]))
    c.eq("C2", chain[2], P(["s"], ["1", "2"], ["3", "4"], ["5"], ["6", "7"], ["8"]))
    c.eq("C3", chain[3], P(["s"], ["1", "2"], ["3", "4"], ["5", "6", "7"], ["8"]))
    c.eq("C3 is stable", len(chain), 4)
    ann = annulator(B, chain[3])
    expected = [{"1": 1, "2": 1}, {"3": 1}, {"4": 1}, {"5": 1, "6": 1}, {"5": 1, "7": 1}]
    c.eq("expected generators lie in Ann", all(v in ann for v in expected), True)
    c.eq("Ann has rank 5 over Z2", len(ann.basis), 5)
    # the expected generators span a 5-dimensional space, so equal spans
    vecs = [[v.get(g, 0) for g in ann.elements] for v in expected]
    span = {tuple(sum(col) % 2 for col in zip(*combo)) for k in range(1, 6)
            for combo in itertools.combinations(vecs, k)}
    c.eq("expected generators independent", len(span), 2 ** 5 - 1)
    Pst = stable_parity_functor(B)
    c.eq("A^st", str(Pst.group), "Z2 + Z2 + Z2")
    c.eq("P^st", [Pst.values[g] for g in "12345678"],
         [(1, 0, 0), (1, 0, 0), (0, 0, 0), (0, 0, 0), (0, 1, 0), (0, 1, 0), (0, 1, 0), (0, 0, 1)])
    Bb, _ = reduce_to_primitive(B)
    expected_bullet = new_based_matrix(["s", "x", "y"], "Z2", [[0, 0, 0], [0, 0, 1], [0, 1, 0]])
    c.eq("B. has three labels", Bb.size, 3)
    c.eq("B. isomorphic to the expected one", is_isomorphic(Bb, expected_bullet) is not None, True)
    tags = tag_tribes(B)
    c.eq("primitive tribes", tags.primitive_blocks, (("s",), ("5", "6", "7"), ("8",)))
    c.eq("zero tribe", tags.zero_block, ("3", "4"))
    c.eq("zero tribe not primitive", tags.zero_is_primitive, False)
    Pt = reduced_parity_functor(B)
    c.eq("P~ on 1..4", [Pt.values[g] for g in "1234"], [(0, 0, 0)] * 4)
    c.eq("P~ on 5..7", [Pt.values[g] for g in "567"], [(0, 0, 1)] * 3)
    c.eq("P~ on 8", Pt.values["8"], (0, 1, 0))
    c.eq("|Aut(B.)|", len(automorphisms(Bb)), 2)
    Pb = reduced_parity(B)
    c.eq("A-bar", Pb.group.signature(), {"free_rank": 0, "torsion": [2, 2]})
    c.eq("p-bar on 5..8", [Pb.values[g] for g in "5678"], [(0, 1)] * 4)
    c.eq("p-bar on 1..4", [Pb.values[g] for g in "1234"], [(0, 0)] * 4)
    report(1, "worked example chain, annulator, tribes and parities (exact)", c.failures)


def test_criterion_2_small_example():
    c = Checker()
    T = small_z2()
    c.eq("primitive", is_primitive(T), True)
    p, _ = stable_partition(T)
    c.eq("stable partition discrete", p, P(["s"], ["1"], ["2"], ["3"]))
    c.eq("Aut trivial", len(automorphisms(T)), 1)
    c.eq("zero tribe empty", zero_tribe(T), None)
    Pb = reduced_parity(T)
    c.eq("b-bar(s)", Pb.relation, (0, 1, 1, 0))
    c.eq("A-bar", str(Pb.group), "Z2 + Z2 + Z2")
    c.eq("parities", [Pb.values[g] for g in "123"], [(1, 0, 0), (1, 0, 1), (0, 1, 0)])
    report(2, "4x4 Z2 example: primitive, discrete tribes, A-bar = Z2^3 (exact)", c.failures)


def test_criterion_3_four_crossing():
    c = Checker()
    cases = {
        "4.9": dict(group="Z^4", columns=[["s"], ["1", "4"], ["2"], ["3"]], aut=1,
                    relation=(0, 0, 0, 0)),
        "4.85": dict(group="Z^4 + Z2", columns=[["s"], ["1"], ["2"], ["3"], ["4"]], aut=1,
                     relation=(0, 2, -2, -2, 2)),
        "4.13": dict(group="Z^3", columns=[["s"], ["1"], ["2", "3"], ["4"]], aut=2,
                     relation=(0, -1, 0, 1)),
        "4.1": dict(group="Z^2 + Z2", columns=[["s"], ["1", "3"], ["2", "4"]], aut=2,
                    relation=(0, 2, -2)),
    }
    for name, exp in cases.items():
        T = knot4(name)
        bar = bar_structure(T)
        Pb = reduced_parity(T, bar)
        c.eq(f"{name} group", str(Pb.group), exp["group"])
        c.eq(f"{name} columns", [list(col) for col in Pb.legend], exp["columns"])
        c.eq(f"{name} |Aut|", len(bar.automorphisms), exp["aut"])
        c.eq(f"{name} relation", Pb.relation, exp["relation"])
        G = quotient_group(len(exp["relation"]), Ring.Z, [exp["relation"]])
        c.eq(f"{name} quotient", str(G), exp["group"])
        rows = [list(Pb.raw[g]) for g in ("s", "1", "2", "3", "4")]
        c.eq(f"{name} parity matrix", rows, KNOT4_PARITY[name])
    tags = tag_tribes(knot4("4.9"))
    c.eq("4.9 non-zero primitive tribes", len(tags.reduced_blocks()) - 1, 3)
    c.eq("4.85 parity matrix = based matrix", KNOT4_PARITY["4.85"],
         [list(r) for r in knot4("4.85").entries])
    c.eq("4.85 singleton tribes", tag_tribes(knot4("4.85")).primitive_blocks,
         (("s",), ("1",), ("2",), ("3",), ("4",)))
    T = knot4("4.13")
    c.eq("4.13 tribes", tag_tribes(T).primitive_blocks, (("s",), ("1",), ("2", "3"), ("4",)))
    p, _ = stable_partition(T)
    for phi in automorphisms(T):
        c.eq(f"4.13 {phi} fixes tribes", {tuple(sorted(map(phi, b))) for b in p}, set(p.blocks))
    auts = [str(a) for a in automorphisms(knot4("4.1"))]
    c.eq("4.1 Aut", auts, ["id", "(1 3)(2 4)"])
    report(3, "four-crossing knots 4.9, 4.85, 4.13, 4.1 (exact)", c.failures)


def property_matrices(seed, ring):
    rng = random.Random(seed)
    for _ in range(PROPERTY_COUNT):
        T = random_based_matrix(rng, rng.randint(0, MAX_ELEMENTS), ring)
        for _ in range(rng.randint(0, 2)):
            _, T = random_move(T, rng)
        yield rng, T


def random_refinement_pair(rng, T):
    coarse = []
    for g in T.elements:
        if coarse and rng.random() < 0.5:
            rng.choice(coarse).append(g)
        else:
            coarse.append([g])
    fine = []
    for b in coarse:
        cut = rng.randint(0, len(b))
        fine += [part for part in (b[:cut], b[cut:]) if part]
    return P(["s"], *fine), P(["s"], *coarse)


def brute_order(n, relations, ring):
    if ring is Ring.Z2:
        span = {tuple(sum(c * r[j] for c, r in zip(cs, relations)) % 2 for j in range(n))
                for cs in itertools.product((0, 1), repeat=len(relations))}
        return 2 ** n // len(span)
    det = abs(determinant(relations)) if len(relations) == n else 0
    if det == 0:
        return None
    span, todo = {(0,) * n}, [(0,) * n]
    while todo:
        v = todo.pop()
        for r in relations:
            w = tuple((a + b) % det for a, b in zip(v, r))
            if w not in span:
                span.add(w)
                todo.append(w)
    return det ** n // len(span)


def test_criterion_4_properties():
    fails = []
    for ring, seed in ((Ring.Z2, 401), (Ring.Z, 402)):
        for rng, T in property_matrices(seed, ring):
            tag = f"{ring.value} {T.to_dict()}"
            # (a) confluence
            a, _ = reduce_to_primitive(T)
            if is_isomorphic(a, random_reduction(T, rng)) is None:
                fails.append(f"(a) {tag}")
            # (b) tribal restriction and zero-tribe equivariance
            p, _ = stable_partition(T)
            z = zero_tribe(T)
            move, T2 = random_move(T, rng)
            p2, _ = stable_partition(T2)
            if p2.restrict(T.labels) != p:
                fails.append(f"(b) restriction after {move}: {tag}")
            z2 = zero_tribe(T2)
            if (tuple(g for g in z2 or () if g in T.labels) or None) != z:
                fails.append(f"(b) zero tribe after {move}: {tag}")
            # (c) axioms
            for compute in (gaussian_parity, reduced_parity):
                Pv = compute(T)
                if check_local_axioms(T, Pv) or check_transport(T, Pv, move, T2, compute(T2)):
                    fails.append(f"(c) {compute.__name__}: {tag}")
            # (d) monotonicity
            fine, coarse = random_refinement_pair(rng, T)
            if not annulator(T, fine).issubset(annulator(T, coarse)):
                fails.append(f"(d) annulator: {tag}")
            if not derive(T, fine).refines(derive(T, coarse)):
                fails.append(f"(d) derivation: {tag}")
    # (e) group orders
    rng = random.Random(405)
    for i in range(PROPERTY_COUNT):
        ring = Ring.Z2 if i % 2 else Ring.Z
        n = rng.randint(1, 3)
        k = n if ring is Ring.Z else rng.randint(0, n + 1)
        rels = [[rng.randint(0, 1) if ring is Ring.Z2 else rng.randint(-4, 4) for _ in range(n)]
                for _ in range(k)]
        G = quotient_group(n, ring, rels)
        if G.order != brute_order(n, rels, ring):
            fails.append(f"(e) {ring.value} {rels}: {G} vs {brute_order(n, rels, ring)}")
    report(4, f"property suites (a)-(e), {PROPERTY_COUNT} random matrices per ring", fails)


def test_criterion_5_diagrams():
    c = Checker()
    for ring in ("z", "z2"):
        rep = knot_invariant_bundle(CLASSICAL_TREFOIL, ring)
        c.eq(f"classical trefoil genus ({ring})", rep.genus, 0)
        c.eq(f"classical trefoil matrix ({ring})", any(any(r) for r in rep.matrix.entries), False)
    c.eq("virtual trefoil genus", knot_invariant_bundle(VIRTUAL_TREFOIL, "z").genus, 1)
    rng = random.Random(501)
    for i in range(CODE_COUNT):
        code = random_gauss_code(rng, rng.randint(1, MAX_CROSSINGS), flat=i % 2 == 0)
        S = carter_surface(code)
        chi = S.V - S.E + S.F
        c.eq(f"{code} Euler/genus", chi, 2 - 2 * S.genus)
        H = homology_form(S)
        c.eq(f"{code} rank", H.rank, 2 * S.genus)
        if H.rank:
            c.eq(f"{code} unimodular", determinant(H.intersection), 1)
        halves = half_classes(code, H)
        for cr in code.crossings:
            summed = tuple(a + b for a, b in zip(halves.left[cr], halves.right[cr]))
            c.eq(f"{code} halves at {cr}", summed, halves.diagram)
            bcs = H.dot(halves.left[cr], halves.diagram)
            c.eq(f"{code} index parity at {cr}", bcs % 2, len(code.interleaved(cr)) % 2)
            c.eq(f"{code} left half nonempty at {cr}", any(left_half(code, cr)), True)
    report(5, f"diagram module, trefoils and {CODE_COUNT} random codes (exact)", c.failures)


if __name__ == "__main__":
    failed = 0
    for fn in (test_criterion_1_worked_example, test_criterion_2_small_example,
               test_criterion_3_four_crossing, test_criterion_4_properties, test_criterion_5_diagrams):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
