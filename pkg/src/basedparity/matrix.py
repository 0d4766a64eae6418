"""Based matrices: the value type, element classes, homology moves,
reduction to primitive form and isomorphism search."""

from __future__ import annotations

import enum
import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class Ring(enum.Enum):
    Z = "Z"
    Z2 = "Z2"

    def normalize(self, x: int) -> int:
        return int(x) % 2 if self is Ring.Z2 else int(x)

    def neg(self, x: int) -> int:
        return self.normalize(-x)

    @classmethod
    def parse(cls, text: str | Ring) -> Ring:
        if isinstance(text, Ring):
            return text
        key = text.strip().upper()
        if key in ("Z2", "ZZ2", "F2", "GF2"):
            return cls.Z2
        if key in ("Z", "ZZ"):
            return cls.Z
        raise ValueError(f"unknown ring {text!r}")


class ElementClass(enum.Enum):
    ANNIHILATING = "annihilating"
    CORE = "core"
    GENERIC = "generic"


class BasedMatrixError(ValueError):
    pass


_NUM = re.compile(r"\d+")
FRESH_PREFIX = "~"


def label_key(label: str) -> tuple:
    """Natural sort key: ``s`` first, then numeric labels by value, then
    other names, then generated labels."""
    if label == "s":
        return (0, 0, "")
    if _NUM.fullmatch(label):
        return (1, int(label), "")
    if label.startswith(FRESH_PREFIX) and _NUM.fullmatch(label[1:]):
        return (3, int(label[1:]), "")
    return (2, 0, label)


@dataclass(frozen=True)
class BasedMatrix:
    """A finite set ``labels`` with basepoint ``labels[0]`` and a skew-symmetric
    pairing ``b`` with values in ``ring``.

    Use :func:`new_based_matrix` to build one; the constructor validates.
    """

    labels: tuple[str, ...]
    ring: Ring
    entries: tuple[tuple[int, ...], ...]
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise BasedMatrixError("a based matrix needs at least the basepoint")
        if len(set(self.labels)) != n:
            raise BasedMatrixError("duplicate labels")
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise BasedMatrixError(f"table must be {n}x{n}")
        for i in range(n):
            if self.entries[i][i] != 0:
                raise BasedMatrixError(f"nonzero diagonal at {self.labels[i]!r}")
            for j in range(i + 1, n):
                if self.entries[i][j] != self.ring.neg(self.entries[j][i]):
                    raise BasedMatrixError(
                        f"not skew-symmetric at ({self.labels[i]!r}, {self.labels[j]!r})")
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.labels)})

    @property
    def s(self) -> str:
        return self.labels[0]

    @property
    def elements(self) -> tuple[str, ...]:
        """The non-basepoint labels, in matrix order."""
        return self.labels[1:]

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, g: str) -> int:
        try:
            return self._index[g]
        except KeyError:
            raise KeyError(f"unknown label {g!r}") from None

    def b(self, g: str, h: str) -> int:
        return self.entries[self.index(g)][self.index(h)]

    def row(self, g: str) -> tuple[int, ...]:
        return self.entries[self.index(g)]

    def pair(self, v: Mapping[str, int], h: str) -> int:
        """``b(v, h)`` for a formal combination ``v`` of labels."""
        j = self.index(h)
        return self.ring.normalize(sum(c * self.entries[self.index(g)][j] for g, c in v.items()))

    def pair_block(self, g: str, block: Iterable[str]) -> int:
        """``b(g, chi_C)``."""
        r = self.row(g)
        return self.ring.normalize(sum(r[self.index(h)] for h in block))

    def submatrix(self, keep: Iterable[str]) -> BasedMatrix:
        keep = set(keep)
        keep.add(self.s)
        idx = [i for i, g in enumerate(self.labels) if g in keep]
        return BasedMatrix(tuple(self.labels[i] for i in idx), self.ring,
                           tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def relabel(self, mapping: Mapping[str, str]) -> BasedMatrix:
        return BasedMatrix(tuple(mapping.get(g, g) for g in self.labels), self.ring, self.entries)

    def to_dict(self) -> dict:
        return {"ring": self.ring.value, "labels": list(self.labels),
                "b": [list(r) for r in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        return format_table(self.labels, self.entries)


def format_table(row_labels: Sequence[str], rows: Sequence[Sequence[int]],
                 col_labels: Sequence[str] | None = None) -> str:
    """Aligned text table with a rule after the first row and column."""
    cells = [[str(x) for x in r] for r in rows]
    heads = list(col_labels) if col_labels is not None else list(row_labels)
    width = max([len(c) for r in cells for c in r] + [len(h) for h in heads] + [1])
    lw = max([len(str(g)) for g in row_labels] + [1])

    def fmt(label: str, vals: Sequence[str]) -> str:
        if not vals:
            return f"{label:>{lw}} |"
        head, rest = vals[0], vals[1:]
        line = f"{label:>{lw}} | {head:>{width}}"
        if rest:
            line += " | " + " ".join(f"{x:>{width}}" for x in rest)
        return line

    out = [fmt("", heads)]
    out.append("-" * len(out[0]))
    for i, (g, r) in enumerate(zip(row_labels, cells)):
        out.append(fmt(str(g), r))
        if i == 0 and len(row_labels) > 1:
            out.append("-" * len(out[0]))
    return "\n".join(out)


def new_based_matrix(labels: Sequence[str], ring: Ring | str,
                     entries: Sequence[Sequence[int]]) -> BasedMatrix:
    """Validate and build a based matrix; the first label is the basepoint."""
    ring = Ring.parse(ring)
    labels = tuple(str(g) for g in labels)
    n = len(labels)
    if len(entries) != n or any(len(r) != n for r in entries):
        raise BasedMatrixError(f"table must be {n}x{n} to match the labels")
    rows = []
    for r in entries:
        row = []
        for x in r:
            if isinstance(x, bool) or int(x) != x:
                raise BasedMatrixError(f"entry {x!r} is not an integer")
            if ring is Ring.Z2 and x not in (0, 1):
                raise BasedMatrixError(f"entry {x!r} outside Z2 (use 0 or 1)")
            row.append(int(x))
        rows.append(tuple(row))
    return BasedMatrix(labels, ring, tuple(rows))


def trivial_matrix(ring: Ring | str = Ring.Z) -> BasedMatrix:
    return new_based_matrix(["s"], ring, [[0]])


def load_matrix(data: str | Mapping) -> BasedMatrix:
    """Read the JSON interchange format ``{"ring", "labels", "b"}``."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        ring, labels, b = data["ring"], data["labels"], data["b"]
    except (KeyError, TypeError) as exc:
        raise BasedMatrixError(f"missing field {exc}") from None
    if ring not in ("Z", "Z2"):
        raise BasedMatrixError(f"ring must be 'Z' or 'Z2', got {ring!r}")
    if not labels or labels[0] != "s":
        raise BasedMatrixError("first label must be 's'")
    return new_based_matrix(labels, ring, b)


# ---------------------------------------------------------------- classes


def classify_element(T: BasedMatrix, g: str) -> ElementClass:
    if g == T.s:
        raise BasedMatrixError("the basepoint has no element class")
    row = T.row(g)
    if not any(row):
        return ElementClass.ANNIHILATING
    if row == T.row(T.s):
        return ElementClass.CORE
    return ElementClass.GENERIC


def is_complementary(T: BasedMatrix, g1: str, g2: str) -> bool:
    r1, r2, rs = T.row(g1), T.row(g2), T.row(T.s)
    return all(T.ring.normalize(a + b - c) == 0 for a, b, c in zip(r1, r2, rs))


def complementary_pairs(T: BasedMatrix) -> set[frozenset[str]]:
    rs = T.row(T.s)
    if T.ring is Ring.Z2:
        # complement of each row relative to the basepoint row
        need = {g: tuple((c - a) % 2 for a, c in zip(T.row(g), rs)) for g in T.elements}
    else:
        need = {g: tuple(c - a for a, c in zip(T.row(g), rs)) for g in T.elements}
    return {frozenset((g1, g2)) for g1, g2 in itertools.combinations(T.elements, 2)
            if need[g1] == T.row(g2)}


def is_primitive(T: BasedMatrix) -> bool:
    return (all(classify_element(T, g) is ElementClass.GENERIC for g in T.elements)
            and not complementary_pairs(T))


# ---------------------------------------------------------------- moves


def fresh_label(T: BasedMatrix, taken: Iterable[str] = ()) -> str:
    used = set(T.labels) | set(taken)
    k = 1
    while f"{FRESH_PREFIX}{k}" in used:
        k += 1
    return f"{FRESH_PREFIX}{k}"


def _extend(T: BasedMatrix, fresh: Sequence[str], new_rows: Sequence[Sequence[int]]) -> BasedMatrix:
    """Append labels whose rows (over old + new labels) are ``new_rows``;
    columns are filled in by skew-symmetry."""
    for g in fresh:
        if g in T._index:
            raise BasedMatrixError(f"label {g!r} already present")
    if len(set(fresh)) != len(fresh):
        raise BasedMatrixError("fresh labels must be distinct")
    n, k = T.size, len(fresh)
    ring = T.ring
    rows = [list(r) + [ring.neg(new_rows[j][i]) for j in range(k)] for i, r in enumerate(T.entries)]
    rows += [[ring.normalize(x) for x in r] for r in new_rows]
    assert all(len(r) == n + k for r in rows)
    return BasedMatrix(T.labels + tuple(fresh), ring, tuple(map(tuple, rows)))


def apply_m1(T: BasedMatrix, fresh: str | None = None) -> BasedMatrix:
    """Add an annihilating element."""
    fresh = fresh if fresh is not None else fresh_label(T)
    return _extend(T, [fresh], [[0] * (T.size + 1)])


def apply_m2(T: BasedMatrix, fresh: str | None = None) -> BasedMatrix:
    """Add a core element (its row copies the basepoint row)."""
    fresh = fresh if fresh is not None else fresh_label(T)
    return _extend(T, [fresh], [list(T.row(T.s)) + [0]])


def apply_m3(T: BasedMatrix, fresh1: str | None, fresh2: str | None,
             row1: Sequence[int] | Mapping[str, int]) -> BasedMatrix:
    """Add a complementary pair.

    ``row1`` gives ``b(fresh1, h)`` for the old labels ``h`` (basepoint
    included).  Everything else is forced: ``b(fresh2, h) = b(s, h) - row1(h)``
    and ``b(fresh1, fresh2) = row1(s)``.
    """
    if fresh1 is None:
        fresh1 = fresh_label(T)
    if fresh2 is None:
        fresh2 = fresh_label(T, [fresh1])
    if isinstance(row1, Mapping):
        row1 = [row1.get(g, 0) for g in T.labels]
    if len(row1) != T.size:
        raise BasedMatrixError(f"row1 must have {T.size} entries")
    ring = T.ring
    r1 = [ring.normalize(x) for x in row1]
    rs = T.row(T.s)
    r2 = [ring.normalize(a - b) for a, b in zip(rs, r1)]
    x = r1[0]
    new1 = r1 + [0, x]
    new2 = r2 + [ring.neg(x), 0]
    return _extend(T, [fresh1, fresh2], [new1, new2])


class Move(enum.Enum):
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"


@dataclass(frozen=True)
class ReductionStep:
    move: Move                  # the move being inverted
    removed: tuple[str, ...]


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...] = ()

    def removed(self) -> set[str]:
        return {g for st in self.steps for g in st.removed}

    def replay(self, T: BasedMatrix) -> BasedMatrix:
        for st in self.steps:
            T = remove_element(T, st.removed)
        return T

    def __len__(self) -> int:
        return len(self.steps)


def remove_element(T: BasedMatrix, victims: str | Sequence[str]) -> BasedMatrix:
    """Apply an inverse move: drop an annihilating or core element, or a
    complementary pair."""
    if isinstance(victims, str):
        victims = (victims,)
    victims = tuple(victims)
    if T.s in victims:
        raise BasedMatrixError("the basepoint cannot be removed")
    if len(victims) == 1:
        cls = classify_element(T, victims[0])
        if cls is ElementClass.GENERIC:
            raise BasedMatrixError(f"{victims[0]!r} is generic, neither annihilating nor core")
    elif len(victims) == 2:
        if victims[0] == victims[1] or not is_complementary(T, *victims):
            raise BasedMatrixError(f"{victims!r} is not a complementary pair")
    else:
        raise BasedMatrixError("remove one element or one pair")
    return T.submatrix(g for g in T.labels if g not in victims)


def _sorted(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


def next_reduction(T: BasedMatrix) -> ReductionStep | None:
    """The first available inverse move in the fixed scan order."""
    order = _sorted(T.elements)
    core = None
    for g in order:
        c = classify_element(T, g)
        if c is ElementClass.ANNIHILATING:
            return ReductionStep(Move.M1, (g,))
        if c is ElementClass.CORE and core is None:
            core = g
    if core is not None:
        return ReductionStep(Move.M2, (core,))
    for g1, g2 in itertools.combinations(order, 2):
        if is_complementary(T, g1, g2):
            return ReductionStep(Move.M3, (g1, g2))
    return None


def available_reductions(T: BasedMatrix) -> list[ReductionStep]:
    steps = []
    for g in _sorted(T.elements):
        c = classify_element(T, g)
        if c is ElementClass.ANNIHILATING:
            steps.append(ReductionStep(Move.M1, (g,)))
        elif c is ElementClass.CORE:
            steps.append(ReductionStep(Move.M2, (g,)))
    pairs = sorted((tuple(_sorted(p)) for p in complementary_pairs(T)),
                   key=lambda p: (label_key(p[0]), label_key(p[1])))
    steps += [ReductionStep(Move.M3, p) for p in pairs]
    return steps


def reduce_to_primitive(T: BasedMatrix) -> tuple[BasedMatrix, ReductionTrace]:
    steps = []
    while (st := next_reduction(T)) is not None:
        T = remove_element(T, st.removed)
        steps.append(st)
    return T, ReductionTrace(tuple(steps))


# ---------------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class Isomorphism:
    mapping: Mapping[str, str]

    def __call__(self, g: str) -> str:
        return self.mapping[g]

    def compose(self, other: Isomorphism) -> Isomorphism:
        """``self after other``."""
        return Isomorphism({g: self.mapping[h] for g, h in other.mapping.items()})

    def inverse(self) -> Isomorphism:
        return Isomorphism({h: g for g, h in self.mapping.items()})

    def is_identity(self) -> bool:
        return all(g == h for g, h in self.mapping.items())

    def cycles(self) -> list[tuple[str, ...]]:
        seen, out = set(), []
        for g in _sorted(self.mapping):
            if g in seen or self.mapping[g] == g:
                continue
            cyc = [g]
            seen.add(g)
            h = self.mapping[g]
            while h != g:
                cyc.append(h)
                seen.add(h)
                h = self.mapping[h]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(c) + ")" for c in cyc) if cyc else "id"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Isomorphism) and dict(self.mapping) == dict(other.mapping)

    def __hash__(self) -> int:
        return hash(frozenset(self.mapping.items()))


def _invariant(T: BasedMatrix, g: str) -> tuple:
    row = T.row(g)
    return (T.b(g, T.s), tuple(sorted(row)))


def _isomorphisms(T1: BasedMatrix, T2: BasedMatrix) -> Iterator[Isomorphism]:
    if T1.ring is not T2.ring or T1.size != T2.size:
        return
    if sorted(T1.row(T1.s)) != sorted(T2.row(T2.s)):
        return
    src = list(T1.elements)
    inv1 = {g: _invariant(T1, g) for g in src}
    inv2 = {h: _invariant(T2, h) for h in T2.elements}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return
    # most constrained first
    counts: dict[tuple, int] = {}
    for v in inv2.values():
        counts[v] = counts.get(v, 0) + 1
    src.sort(key=lambda g: (counts[inv1[g]], label_key(g)))
    cands = {g: [h for h in _sorted(T2.elements) if inv2[h] == inv1[g]] for g in src}
    mapping = {T1.s: T2.s}
    used = {T2.s}

    def extend(i: int) -> Iterator[Isomorphism]:
        if i == len(src):
            yield Isomorphism(dict(mapping))
            return
        g = src[i]
        for h in cands[g]:
            if h in used:
                continue
            if all(T1.b(g, x) == T2.b(h, y) for x, y in mapping.items()):
                mapping[g] = h
                used.add(h)
                yield from extend(i + 1)
                del mapping[g]
                used.discard(h)

    yield from extend(0)


def is_isomorphic(T1: BasedMatrix, T2: BasedMatrix) -> Isomorphism | None:
    """A basepoint-fixing bijection preserving the pairing, or ``None``."""
    if T1.ring is not T2.ring:
        raise BasedMatrixError("matrices over different rings")
    return next(_isomorphisms(T1, T2), None)


def automorphisms(T: BasedMatrix) -> list[Isomorphism]:
    """All automorphisms of ``T``, identity first."""
    auts = list(_isomorphisms(T, T))
    auts.sort(key=lambda a: (not a.is_identity(), [label_key(a(g)) for g in _sorted(T.elements)]))
    return auts
