"""Parities and parity functors on based matrices.

Every map here returns a :class:`ParityAssignment`: the ambient vector of
each element (``raw``), the canonical presentation of the coefficient group
and the reduced coordinates of each value.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import linalg
from .groups import CanonicalAbelianGroup, quotient_group
from .matrix import (BasedMatrix, ElementClass, Isomorphism, Ring, apply_m1, apply_m2, apply_m3,
                     automorphisms, classify_element, complementary_pairs, format_table, label_key)
from .partitions import (Block, Partition, TribeTags, aut_coarsening, annulator, element_order,
                         stable_partition, tag_tribes, transport_tribes)


def block_name(block: Sequence[str]) -> str:
    return block[0] if len(block) == 1 else "{" + ",".join(block) + "}"


@dataclass(frozen=True)
class ParityAssignment:
    kind: str
    group: CanonicalAbelianGroup
    legend: tuple[Block, ...]          # one ambient coordinate per entry
    relation: tuple[int, ...] | None   # the single generator of the relations, if any
    raw: Mapping[str, tuple[int, ...]]
    values: Mapping[str, tuple[int, ...]]
    extra: Mapping[str, object] = field(default_factory=dict)

    @property
    def column_legend(self) -> list[str]:
        return [block_name(b) for b in self.legend]

    def __getitem__(self, g: str) -> tuple[int, ...]:
        return self.values[g]

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "group": {**self.group.signature(), "text": str(self.group)},
            "columns": [list(b) for b in self.legend],
            "values": {g: list(v) for g, v in self.values.items()},
        }
        if self.relation is not None:
            out["relation"] = list(self.relation)
        return out


def _assignment(kind: str, T: BasedMatrix, legend: Sequence[Block], raw: dict[str, list[int]],
                relations: Sequence[Sequence[int]], relation: Sequence[int] | None = None,
                **extra) -> ParityAssignment:
    group = quotient_group(len(legend), T.ring, relations)
    raw_t = {g: tuple(T.ring.normalize(x) for x in raw[g]) for g in T.labels}
    values = {g: group.reduce(raw_t[g]) for g in T.labels}
    rel = tuple(T.ring.normalize(x) for x in relation) if relation is not None else None
    return ParityAssignment(kind, group, tuple(legend), rel, raw_t, values, extra)


def _ordered(blocks: Sequence[Block]) -> list[Block]:
    return sorted(blocks, key=lambda b: label_key(b[0]))


def gaussian_parity(T: BasedMatrix) -> ParityAssignment:
    """``g -> b(g, s)`` with values in the coefficient ring."""
    raw = {g: [T.b(g, T.s)] for g in T.labels}
    return _assignment("gaussian", T, [(T.s,)], raw, [])


def stable_parity_functor(T: BasedMatrix) -> ParityAssignment:
    """``g -> g + U`` in ``Z[G°] / Ann(stable partition)``."""
    p, _ = stable_partition(T)
    ann = annulator(T, p)
    elems = list(ann.elements)
    raw = {g: [int(g == h) for h in elems] for g in T.labels}
    return _assignment("stable", T, [(g,) for g in elems], raw, [list(r) for r in ann.basis],
                       partition=p, annulator=ann)


def _class_values(T: BasedMatrix, classes: Sequence[Block], correct: bool) -> dict[str, list[int]]:
    out = {}
    for g in T.labels:
        bgs = T.b(g, T.s)
        out[g] = [T.pair_block(g, C) - ((len(C) // 2) * bgs if correct else 0) for C in classes]
    return out


def hat_parity_functor(T: BasedMatrix, p: Partition | None = None) -> ParityAssignment:
    """``g -> sum_C b(g, chi_C)·C`` modulo ``b̂(s)``; ``p`` defaults to the
    stable partition."""
    p = p if p is not None else stable_partition(T)[0]
    classes = list(p.blocks)
    raw = _class_values(T, classes, correct=False)
    rel = raw[T.s]
    return _assignment("hat", T, classes, raw, [rel], rel, partition=p)


def reduced_parity_functor(T: BasedMatrix, tags: TribeTags | None = None) -> ParityAssignment:
    """The reduced stable parity functor over the non-zero primitive tribes."""
    tags = tags if tags is not None else tag_tribes(T)
    classes = _ordered(tags.reduced_blocks())
    raw = _class_values(T, classes, correct=True)
    rel = raw[T.s]
    return _assignment("reduced_functor", T, classes, raw, [rel], rel, tags=tags)


@dataclass(frozen=True)
class BarStructure:
    """Primitive tribes of ``T`` merged along ``Aut`` of the primitive matrix."""

    tags: TribeTags
    automorphisms: tuple[Isomorphism, ...]
    primitive_partition: Partition       # aut-coarsened stable partition of T•
    classes: tuple[Block, ...]           # lifted classes on T, zero class removed, s first
    primitive_classes: tuple[Block, ...]  # the matching classes of T•
    zero_class: Block | None


def bar_structure(T: BasedMatrix, tags: TribeTags | None = None) -> BarStructure:
    tags = tags if tags is not None else tag_tribes(T)
    Tb = tags.primitive_matrix
    auts = automorphisms(Tb)
    pb, _ = stable_partition(Tb)
    coarse = aut_coarsening(Tb, auts, pb)
    corr = transport_tribes(T, tags.trace, tags)
    lifted: dict[Block, list[str]] = {}
    for C in tags.primitive_blocks:
        bar = coarse.block_of(corr[C][0])
        lifted.setdefault(bar, []).extend(C)
    zero_class = None
    if tags.zero_is_primitive:
        bar = coarse.block_of(corr[tags.zero_block][0])
        zero_class = tuple(sorted(lifted.pop(bar), key=label_key))
    pairs = sorted(((tuple(sorted(v, key=label_key)), k) for k, v in lifted.items()),
                   key=lambda kv: label_key(kv[0][0]))
    return BarStructure(tags, tuple(auts), coarse, tuple(c for c, _ in pairs),
                        tuple(k for _, k in pairs), zero_class)


def reduced_parity(T: BasedMatrix, bar: BarStructure | None = None) -> ParityAssignment:
    """The reduced stable parity with coefficients in ``Ā``.

    Classes are the primitive tribes of ``T`` merged along automorphisms of
    the primitive matrix, minus the class of the zero tribe.  Each class is
    reported under its name in ``T`` (``legend``) and in the primitive matrix
    (``extra["primitive_legend"]``).
    """
    bar = bar if bar is not None else bar_structure(T)
    classes = list(bar.classes)
    raw = _class_values(T, classes, correct=True)
    rel = raw[T.s]
    return _assignment("reduced", T, classes, raw, [rel], rel, bar=bar,
                       primitive_legend=bar.primitive_classes)


PARITIES: dict[str, Callable[[BasedMatrix], ParityAssignment]] = {
    "gaussian": gaussian_parity,
    "stable": stable_parity_functor,
    "hat": hat_parity_functor,
    "reduced_functor": reduced_parity_functor,
    "reduced": reduced_parity,
}


# ---------------------------------------------------------------- axioms


@dataclass(frozen=True)
class Violation:
    axiom: str
    witnesses: tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        return f"({self.axiom}) {', '.join(self.witnesses)}: {self.detail}"


def _add(group: CanonicalAbelianGroup, *vals: Sequence[int]) -> tuple[int, ...]:
    """Sum of canonical coordinate tuples, renormalized."""
    total = [sum(x) for x in zip(*vals)]
    nfree = group.free_rank
    out = total[:nfree] + [x % d for x, d in zip(total[nfree:], group.invariant_factors)]
    return tuple(out)


def triple_relations(T: BasedMatrix) -> list[tuple[str, str, str]]:
    """Triples of distinct elements whose rows sum to the basepoint row."""
    rs = T.row(T.s)
    out = []
    for g1, g2, g3 in itertools.combinations(sorted(T.elements, key=label_key), 3):
        r1, r2, r3 = T.row(g1), T.row(g2), T.row(g3)
        if all(T.ring.normalize(a + b + c - d) == 0 for a, b, c, d in zip(r1, r2, r3, rs)):
            out.append((g1, g2, g3))
    return out


def check_local_axioms(T: BasedMatrix, P: ParityAssignment) -> list[Violation]:
    """(P1)-(P3) on every element, pair and triple of ``T``."""
    out = []
    zero = (0,) * P.group.coordinate_count
    if P.values[T.s] != zero:
        out.append(Violation("P1", (T.s,), f"value at the basepoint is {P.values[T.s]}"))
    for g in sorted(T.elements, key=label_key):
        cls = classify_element(T, g)
        if cls is not ElementClass.GENERIC and P.values[g] != zero:
            out.append(Violation("P1", (g,), f"{cls.value} element has value {P.values[g]}"))
    for pair in sorted(complementary_pairs(T), key=lambda q: sorted(map(label_key, q))):
        g1, g2 = sorted(pair, key=label_key)
        if _add(P.group, P.values[g1], P.values[g2]) != zero:
            out.append(Violation("P2", (g1, g2), "values of a complementary pair do not cancel"))
    for trip in triple_relations(T):
        if _add(P.group, *(P.values[g] for g in trip)) != zero:
            out.append(Violation("P3", trip, "values of a triple do not sum to zero"))
    return out


def random_move(T: BasedMatrix, rng: random.Random) -> tuple[str, BasedMatrix]:
    kind = rng.choice(("M1", "M2", "M3"))
    if kind == "M1":
        return kind, apply_m1(T)
    if kind == "M2":
        return kind, apply_m2(T)
    if T.ring is Ring.Z2:
        row = [rng.randint(0, 1) for _ in T.labels]
    else:
        row = [rng.randint(-2, 2) for _ in T.labels]
    return kind, apply_m3(T, None, None, row)


def _lift_map(legend: Sequence[Block], legend2: Sequence[Block], old: set[str]) -> dict[int, int] | None:
    """Index map ``i -> j`` with ``legend2[j] ∩ old == legend[i]``."""
    out = {}
    for i, C in enumerate(legend):
        js = [j for j, C2 in enumerate(legend2) if tuple(g for g in C2 if g in old) == C]
        if len(js) != 1:
            return None
        out[i] = js[0]
    return out


def check_transport(T: BasedMatrix, P: ParityAssignment, move: str, T2: BasedMatrix,
                    P2: ParityAssignment) -> list[Violation]:
    """(P0) for one move ``T -> T2``: values of old elements survive through
    the coefficient map of the move."""
    new = tuple(g for g in T2.labels if g not in T.labels)
    old = set(T.labels)
    elems = sorted(T.elements, key=label_key)
    tag = (move,) + new
    if P.kind == "gaussian":
        bad = [g for g in elems if P.values[g] != P2.values[g]]
        return [Violation("P0", tag + (g,), "value changed") for g in bad]
    if P.kind == "stable":
        # g + U -> g + U' is a well defined monomorphism iff U = U' ∩ Z[G°]
        ann, ann2 = P.extra["annulator"], P2.extra["annulator"]
        order2 = list(new) + [g for g in ann2.elements if g not in new]
        pos = [ann2.elements.index(g) for g in order2]
        rows = [[r[i] for i in pos] for r in ann2.basis]
        if T.ring is Ring.Z2:
            ech, piv = linalg.rref_mod2(rows, len(order2))
        else:
            ech = linalg.hermite_basis(rows, len(order2))
            piv = linalg.pivot_columns(ech)
        restricted = [[r[order2.index(g)] for g in ann.elements]
                      for r, p in zip(ech, piv) if p >= len(new)]
        out = []
        for r in ann.basis:
            if dict(zip(ann.elements, r)) not in ann2:
                out.append(Violation("P0", tag, f"{r} lies in Ann(T) but not in Ann(T')"))
        for r in restricted:
            if r not in ann:
                out.append(Violation("P0", tag, f"{r} lies in Ann(T') but not in Ann(T)"))
        for g in elems:
            if P.values[g] != P.group.reduce(P.raw[g]):
                out.append(Violation("P0", tag + (g,), "value inconsistent with its own map"))
        return out
    # class-indexed functors: match legends through C' ∩ G = C
    idx = _lift_map(P.legend, P2.legend, old)
    if idx is None or len(P.legend) != len(P2.legend) and P.kind != "hat":
        return [Violation("P0", tag, "classes do not correspond")]
    out = []
    if P.kind == "hat":
        l = 0 if move == "M1" else 1
        carrier = next(j for j, C2 in enumerate(P2.legend) if set(new) <= set(C2))
        for g in elems:
            image = [0] * len(P2.legend)
            for i, j in idx.items():
                image[j] += P.raw[g][i]
            image[carrier] += l * P.raw[g][0]
            if not P2.group.is_zero([a - b for a, b in zip(image, P2.raw[g])]):
                out.append(Violation("P0", tag + (g,), "value not carried by the coefficient map"))
        return out
    if P.relation is not None and tuple(P2.relation[idx[i]] for i in range(len(P.legend))) != P.relation:
        out.append(Violation("P0", tag, "relation not carried to the relation"))
    for g in elems:
        moved = tuple(P2.raw[g][idx[i]] for i in range(len(P.legend)))
        if moved != tuple(P.raw[g]):
            out.append(Violation("P0", tag + (g,), f"{P.raw[g]} became {moved}"))
        if P.kind == "reduced" and P.values[g] != P2.values[g]:
            out.append(Violation("P0", tag + (g,), f"{P.values[g]} became {P2.values[g]}"))
    return out


def verify_parity_axioms(T: BasedMatrix, P: ParityAssignment, moves: int = 32,
                         seed: int = 0) -> list[Violation]:
    """Check (P1)-(P3) exhaustively and (P0) along ``moves`` random moves.

    An empty list means no violation was found.
    """
    out = check_local_axioms(T, P)
    compute = PARITIES[P.kind]
    rng = random.Random(seed)
    for _ in range(moves):
        kind, T2 = random_move(T, rng)
        out += check_transport(T, P, kind, T2, compute(T2))
    return out


# ---------------------------------------------------------------- report


@dataclass(frozen=True)
class ParityMatrix:
    rows: tuple[str, ...]
    columns: tuple[Block, ...]
    entries: tuple[tuple[int, ...], ...]
    group: CanonicalAbelianGroup

    def to_text(self) -> str:
        return format_table(self.rows, self.entries, [block_name(c) for c in self.columns])

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "columns": [list(c) for c in self.columns],
                "entries": [list(r) for r in self.entries],
                "group": {**self.group.signature(), "text": str(self.group)}}

    def __str__(self) -> str:
        return self.to_text()


def parity_matrix_report(T: BasedMatrix, P: ParityAssignment | None = None) -> ParityMatrix:
    """Rows ``s`` then the elements; columns the reduced classes (``s`` first).

    Row ``s`` is ``b̄(s)``; the ``s`` column is the Gaussian parity.
    """
    P = P if P is not None else reduced_parity(T)
    rows = [T.s] + sorted(T.elements, key=label_key)
    return ParityMatrix(tuple(rows), P.legend, tuple(P.raw[g] for g in rows), P.group)


@dataclass(frozen=True)
class MatrixReport:
    """Everything the reduced stable parity pipeline computes for one matrix."""

    matrix: BasedMatrix
    bar: BarStructure
    parity: ParityAssignment
    parity_matrix: ParityMatrix

    @property
    def primitive(self) -> BasedMatrix:
        return self.bar.tags.primitive_matrix

    @property
    def aut_order(self) -> int:
        return len(self.bar.automorphisms)

    def to_dict(self) -> dict:
        tags = self.bar.tags
        return {
            "based_matrix": self.matrix.to_dict(),
            "primitive_size": self.primitive.size,
            "primitive_labels": list(self.primitive.labels),
            "stable_partition": tags.partition.to_list(),
            "primitive_tribes": [list(b) for b in tags.primitive_blocks],
            "zero_tribe": list(tags.zero_block) if tags.zero_block else [],
            "zero_tribe_primitive": tags.zero_is_primitive,
            "aut_order": self.aut_order,
            "group": self.parity.to_dict()["group"],
            "parity": self.parity.to_dict(),
            "parity_matrix": self.parity_matrix.to_dict(),
        }

    def to_text(self) -> str:
        tags = self.bar.tags
        zero = "{" + ",".join(tags.zero_block) + "}" if tags.zero_block else "none"
        if tags.zero_block and not tags.zero_is_primitive:
            zero += " (not primitive)"
        return "\n".join([
            f"based matrix over {self.matrix.ring.value}:",
            str(self.matrix),
            f"primitive size: {self.primitive.size}  labels: {' '.join(self.primitive.labels)}",
            f"stable partition: {tags.partition}",
            "primitive tribes: " + " ".join("{" + ",".join(b) + "}" for b in tags.primitive_blocks),
            f"zero tribe: {zero}",
            f"|Aut| = {self.aut_order}",
            f"group: {self.parity.group}",
            "parity matrix:",
            self.parity_matrix.to_text(),
        ])


def matrix_invariant_bundle(T: BasedMatrix) -> MatrixReport:
    bar = bar_structure(T)
    P = reduced_parity(T, bar)
    return MatrixReport(T, bar, P, parity_matrix_report(T, P))
