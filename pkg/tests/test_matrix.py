import itertools
import json
import random

import pytest

from basedparity import (BasedMatrixError, ElementClass, Ring, apply_m1, apply_m2, apply_m3,
                         automorphisms, classify_element, is_isomorphic, is_primitive, load_matrix,
                         new_based_matrix, reduce_to_primitive, trivial_matrix)
from basedparity.fuzz import random_based_matrix, random_reduction
from basedparity.matrix import (Isomorphism, Move, available_reductions, complementary_pairs,
                                label_key, next_reduction, remove_element)
from basedparity.parity import random_move
from fixtures import KNOT4, knot4, example_b, small_z2


def test_validation():
    with pytest.raises(BasedMatrixError, match="skew"):
        new_based_matrix(["s", "1"], "Z", [[0, 1], [1, 0]])
    with pytest.raises(BasedMatrixError, match="diagonal"):
        new_based_matrix(["s", "1"], "Z2", [[0, 0], [0, 1]])
    with pytest.raises(BasedMatrixError, match="outside Z2"):
        new_based_matrix(["s", "1"], "Z2", [[0, 2], [0, 0]])
    with pytest.raises(BasedMatrixError, match="not an integer"):
        new_based_matrix(["s", "1"], "Z", [[0, 0.5], [-0.5, 0]])
    with pytest.raises(BasedMatrixError, match="duplicate"):
        new_based_matrix(["s", "s"], "Z", [[0, 0], [0, 0]])
    with pytest.raises(BasedMatrixError, match="2x2"):
        new_based_matrix(["s", "1"], "Z", [[0]])
    # over Z2 the entry 1 is its own negative
    new_based_matrix(["s", "1"], "Z2", [[0, 1], [1, 0]])


def test_load_round_trip():
    T = knot4("4.85")
    assert load_matrix(json.dumps(T.to_dict())) == T
    assert load_matrix(T.to_dict()) == T
    with pytest.raises(BasedMatrixError, match="missing"):
        load_matrix({"ring": "Z"})
    with pytest.raises(BasedMatrixError, match="first label"):
        load_matrix({"ring": "Z", "labels": ["1", "s"], "b": [[0, 0], [0, 0]]})
    with pytest.raises(BasedMatrixError, match="ring"):
        load_matrix({"ring": "Q", "labels": ["s"], "b": [[0]]})


def test_label_order():
    assert sorted(["10", "2", "s", "~1", "a", "1"], key=label_key) == ["s", "1", "2", "10", "a", "~1"]


def test_classification():
    T = new_based_matrix(["s", "a", "c", "x", "y", "g"], "Z", [
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 1],
        [-1, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [-1, 0, -1, 0, 0, 0],
    ])
    assert classify_element(T, "a") is ElementClass.ANNIHILATING
    assert classify_element(T, "c") is ElementClass.CORE
    assert classify_element(T, "g") is ElementClass.GENERIC
    assert classify_element(T, "x") is ElementClass.GENERIC
    with pytest.raises(BasedMatrixError):
        classify_element(T, "s")
    assert frozenset({"x", "c"}) not in complementary_pairs(T)


def test_moves_add_the_right_elements():
    T = knot4("4.1")
    T1 = apply_m1(T)
    g = T1.labels[-1]
    assert classify_element(T1, g) is ElementClass.ANNIHILATING
    T2 = apply_m2(T)
    assert classify_element(T2, T2.labels[-1]) is ElementClass.CORE
    rng = random.Random(5)
    for _ in range(20):
        row = [rng.randint(-3, 3) for _ in T.labels]
        T3 = apply_m3(T, "p", "q", row)
        assert T3.row("p")[: T.size] == tuple(row)
        assert frozenset({"p", "q"}) in complementary_pairs(T3)
        assert T3.submatrix(T.labels) == T
        assert remove_element(T3, ("p", "q")) == T
    with pytest.raises(BasedMatrixError):
        apply_m1(T, "1")
    with pytest.raises(BasedMatrixError):
        apply_m3(T, "p", "p", [0] * 5)


def test_remove_element_checks_class():
    T = knot4("4.1")
    with pytest.raises(BasedMatrixError, match="generic"):
        remove_element(T, "1")
    with pytest.raises(BasedMatrixError, match="complementary"):
        remove_element(T, ("1", "2"))
    with pytest.raises(BasedMatrixError, match="basepoint"):
        remove_element(T, "s")


def test_reduction_scan_order():
    base = knot4("4.1")
    T = apply_m3(apply_m2(apply_m1(base)), None, None, {"s": 1, "1": 1})
    assert next_reduction(T).move is Move.M1
    Tb, trace = reduce_to_primitive(T)
    # ~2 only becomes core again once the pair is gone
    assert [(s.move, s.removed) for s in trace.steps] == [
        (Move.M1, ("~1",)), (Move.M3, ("~3", "~4")), (Move.M2, ("~2",))]
    assert trace.replay(T) == Tb == base


def test_example_b_primitive():
    Tb, trace = reduce_to_primitive(example_b())
    assert [s.removed for s in trace.steps] == [("1", "2"), ("3", "4"), ("5", "6")]
    assert Tb.entries == ((0, 0, 0), (0, 0, 1), (0, 1, 0))


@pytest.mark.parametrize("name", sorted(KNOT4))
def test_four_crossing_matrices_are_primitive(name):
    assert is_primitive(knot4(name))


def test_small_matrix_is_primitive():
    assert is_primitive(small_z2())
    assert is_primitive(trivial_matrix())


def test_automorphisms_of_fixtures():
    assert [str(a) for a in automorphisms(knot4("4.13"))] == ["id", "(2 3)"]
    assert [str(a) for a in automorphisms(knot4("4.1"))] == ["id", "(1 3)(2 4)"]
    assert len(automorphisms(knot4("4.9"))) == 1
    assert len(automorphisms(knot4("4.85"))) == 1
    assert len(automorphisms(small_z2())) == 1


def brute_automorphisms(T):
    out = []
    for perm in itertools.permutations(T.elements):
        m = dict(zip(T.elements, perm), s="s")
        if all(T.b(g, h) == T.b(m[g], m[h]) for g in T.labels for h in T.labels):
            out.append(Isomorphism(m))
    return out


@pytest.mark.parametrize("ring", [Ring.Z2, Ring.Z])
def test_automorphisms_against_brute_force(ring):
    rng = random.Random(11)
    for _ in range(60):
        T = random_based_matrix(rng, rng.randint(0, 5), ring)
        fast = automorphisms(T)
        assert fast[0].is_identity()
        assert set(fast) == set(brute_automorphisms(T))


def test_isomorphism_of_relabelled_copies():
    rng = random.Random(2)
    for _ in range(40):
        T = random_based_matrix(rng, rng.randint(1, 6), Ring.Z)
        perm = list(T.elements)
        rng.shuffle(perm)
        mapping = dict(zip(T.elements, [f"x{g}" for g in perm]))
        U = T.relabel(mapping)
        # reorder rows so the copy is not trivially equal
        order = ["s"] + sorted(U.elements)
        U = new_based_matrix(order, "Z", [[U.b(g, h) for h in order] for g in order])
        iso = is_isomorphic(T, U)
        assert iso is not None
        assert all(T.b(g, h) == U.b(iso(g), iso(h)) for g in T.labels for h in T.labels)
    with pytest.raises(BasedMatrixError):
        is_isomorphic(example_b(), knot4("4.1"))


@pytest.mark.parametrize("ring", [Ring.Z2, Ring.Z])
def test_reduction_confluence(ring):
    """Any two reduction orders end in isomorphic primitive matrices."""
    rng = random.Random(17)
    for _ in range(200):
        T = random_based_matrix(rng, rng.randint(0, 6), ring)
        for _ in range(rng.randint(0, 4)):
            _, T = random_move(T, rng)
        a, _ = reduce_to_primitive(T)
        b = random_reduction(T, rng)
        assert is_primitive(a) and is_primitive(b)
        assert is_isomorphic(a, b) is not None


def test_available_reductions_is_deterministic():
    T = apply_m3(apply_m3(knot4("4.1"), None, None, {"s": 1}), None, None, {"1": 1})
    steps = available_reductions(T)
    assert steps == available_reductions(T)
    assert all(s.move is Move.M3 for s in steps)
    assert steps == sorted(steps, key=lambda s: [label_key(g) for g in s.removed])
