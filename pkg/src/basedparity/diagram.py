"""Gauss codes of virtual and flat knots, their Carter surfaces, and the
based matrix built from intersection numbers of knot halves.

Geometry conventions
--------------------
Passes are numbered ``0..2n-1`` in code order and arc ``i`` runs from pass
``i`` to pass ``i+1``.  Every crossing has a *flat sign* relative to its
first pass ``P`` (the earlier one in the code): ``+1`` when the strand
through the second pass ``Q`` crosses the strand through ``P`` from right to
left.  For a virtual code this is the writhe sign when ``P`` is the
overpass and its negative when ``P`` is the underpass; for a flat code the
written sign is used directly.

The left half at a crossing is the half that turns left there when the
diagram is smoothed along its orientation.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

from . import linalg
from .matrix import BasedMatrix, Ring, label_key, new_based_matrix

if TYPE_CHECKING:
    from .parity import MatrixReport


class GaussCodeError(ValueError):
    pass


@dataclass(frozen=True)
class Pass:
    crossing: int
    role: str | None    # "O", "U" or None for flat codes
    sign: int

    def __str__(self) -> str:
        return f"{self.role or ''}{self.crossing}{'+' if self.sign > 0 else '-'}"


_TOKEN = re.compile(r"([OU]?)(\d+)([+-])")


@dataclass(frozen=True)
class GaussCode:
    passes: tuple[Pass, ...]

    @property
    def flat(self) -> bool:
        return all(p.role is None for p in self.passes)

    @property
    def crossings(self) -> list[int]:
        return sorted({p.crossing for p in self.passes})

    @property
    def n(self) -> int:
        return len(self.passes) // 2

    def positions(self, c: int) -> tuple[int, int]:
        i, j = (k for k, p in enumerate(self.passes) if p.crossing == c)
        return i, j

    def flat_sign(self, c: int) -> int:
        """Sign of the crossing relative to its first pass (see module doc)."""
        i, _ = self.positions(c)
        p = self.passes[i]
        return -p.sign if p.role == "U" else p.sign

    def rotate(self, k: int) -> GaussCode:
        """Start the code ``k`` passes later, describing the same curve.

        Flat signs refer to the first pass, so crossings whose pass order is
        swapped by the rotation have their flat sign flipped.
        """
        N = len(self.passes)
        if N == 0:
            return self
        k %= N
        rotated = self.passes[k:] + self.passes[:k]
        if not self.flat:
            return GaussCode(rotated)
        moved = {p.crossing for p in self.passes[:k]} & {p.crossing for p in self.passes[k:]}
        return GaussCode(tuple(Pass(p.crossing, None, -p.sign) if p.crossing in moved else p
                               for p in rotated))

    def interleaved(self, c: int) -> list[int]:
        """Crossings with exactly one pass strictly between the passes of ``c``."""
        i, j = self.positions(c)
        inside = [p.crossing for p in self.passes[i + 1:j]]
        return sorted(d for d in set(inside) if inside.count(d) == 1)

    def __str__(self) -> str:
        return "".join(map(str, self.passes))


def parse_gauss_code(text: str) -> GaussCode:
    """Parse ``O1+O2+U1+U2+`` (virtual) or ``1+2+1+2+`` (flat).

    Passes may be separated by whitespace or commas.
    """
    body = re.sub(r"[\s,]+", "", text)
    passes = []
    pos = 0
    while pos < len(body):
        m = _TOKEN.match(body, pos)
        if m is None:
            raise GaussCodeError(f"malformed token at {body[pos:pos + 6]!r}")
        role, num, sign = m.groups()
        if int(num) == 0:
            raise GaussCodeError("crossing numbers must be positive")
        passes.append(Pass(int(num), role or None, 1 if sign == "+" else -1))
        pos = m.end()
    marked = {p.role is not None for p in passes}
    if len(marked) > 1:
        raise GaussCodeError("mix of O/U-marked and unmarked passes")
    seen: dict[int, list[Pass]] = {}
    for p in passes:
        seen.setdefault(p.crossing, []).append(p)
    for c, ps in seen.items():
        if len(ps) != 2:
            raise GaussCodeError(f"crossing {c} appears {len(ps)} time(s)")
        if ps[0].sign != ps[1].sign:
            raise GaussCodeError(f"crossing {c} has different signs at its two passes")
        if ps[0].role is not None and ps[0].role == ps[1].role:
            raise GaussCodeError(f"crossing {c} is marked {ps[0].role} twice")
    return GaussCode(tuple(passes))


# ---------------------------------------------------------------- surface


@dataclass(frozen=True)
class RotationSystem:
    """Ribbon graph of a code: one vertex per crossing, one edge per arc.

    Dart ``2i`` is the tail of arc ``i`` and dart ``2i+1`` its head; the twin
    of dart ``d`` is ``d ^ 1``.  ``rotation[d]`` is the next dart
    counterclockwise around the same vertex.
    """

    code: GaussCode
    vertex: tuple[int, ...]          # dart -> crossing
    rotation: tuple[int, ...]
    faces: tuple[tuple[int, ...], ...]

    @property
    def V(self) -> int:
        return self.code.n

    @property
    def E(self) -> int:
        return 2 * self.code.n

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def genus(self) -> int:
        if self.V == 0:
            return 0
        chi = self.V - self.E + self.F
        assert chi % 2 == 0
        return (2 - chi) // 2


def vertex_darts(code: GaussCode, c: int) -> list[int]:
    """Darts at crossing ``c`` in counterclockwise order."""
    N = len(code.passes)
    P, Q = code.positions(c)
    out_p, in_p = 2 * P, 2 * ((P - 1) % N) + 1
    out_q, in_q = 2 * Q, 2 * ((Q - 1) % N) + 1
    if code.flat_sign(c) > 0:
        return [out_p, out_q, in_p, in_q]
    return [out_p, in_q, in_p, out_q]


def carter_surface(code: GaussCode) -> RotationSystem:
    N = 2 * len(code.passes)
    vertex = [0] * N
    rotation = [0] * N
    for c in code.crossings:
        darts = vertex_darts(code, c)
        for k, d in enumerate(darts):
            vertex[d] = c
            rotation[d] = darts[(k + 1) % 4]
    faces = []
    seen = [False] * N
    for d0 in range(N):
        if seen[d0]:
            continue
        face = []
        d = d0
        while not seen[d]:
            seen[d] = True
            face.append(d)
            d = rotation[d ^ 1]
        faces.append(tuple(face))
    return RotationSystem(code, tuple(vertex), tuple(rotation), tuple(faces))


# ---------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologyForm:
    """Intersection form of the capped surface.

    Cycles in the graph are written in *loop coordinates* (their
    coefficients on the arcs outside a spanning tree); ``loop_form`` is the
    intersection pairing of the corresponding loops after contracting the
    tree, and ``intersection`` its restriction to a basis of H_1.
    """

    surface: RotationSystem
    tree_arcs: frozenset[int]
    loops: tuple[int, ...]                  # non-tree arcs, one coordinate each
    loop_form: tuple[tuple[int, ...], ...]
    face_relations: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]      # loop-coordinate lifts of the H_1 basis
    intersection: tuple[tuple[int, ...], ...]
    _transform: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    _offset: int = 0

    @property
    def rank(self) -> int:
        return len(self.basis)

    def loop_coordinates(self, arcs: Sequence[int]) -> list[int]:
        """Loop coordinates of a cycle given by arc coefficients."""
        return [int(arcs[e]) for e in self.loops]

    def class_of(self, arcs: Sequence[int]) -> tuple[int, ...]:
        """H_1 coordinates of a cycle given by arc coefficients."""
        v = self.loop_coordinates(arcs)
        w = [sum(a * row[j] for a, row in zip(v, self._transform)) for j in range(len(v))]
        return tuple(w[self._offset:])

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Intersection number of two H_1 classes."""
        J = self.intersection
        return sum(x[i] * J[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))

    def loop_dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        L = self.loop_form
        return sum(u[i] * L[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if L[i][j])


def _spanning_tree(surface: RotationSystem) -> set[int]:
    code = surface.code
    if not code.crossings:
        return set()
    root = code.crossings[0]
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for d in range(len(surface.vertex)):
            if surface.vertex[d] != v:
                continue
            w = surface.vertex[d ^ 1]
            if w not in seen:
                seen.add(w)
                tree.add(d // 2)
                queue.append(w)
    return tree


def contracted_rotation(surface: RotationSystem, tree: set[int]) -> list[int]:
    """Cyclic counterclockwise order of non-tree darts around the single
    vertex obtained by contracting ``tree``."""
    N = len(surface.rotation)
    free = [d for d in range(N) if d // 2 not in tree]
    if not free:
        return []
    start = free[0]
    word = [start]
    d = start
    while True:
        d = surface.rotation[d]
        while d // 2 in tree:
            d = surface.rotation[d ^ 1]
        if d == start:
            return word
        word.append(d)


def _chord_sign(pos: dict[int, int], x: int, y: int, size: int) -> int:
    """Intersection of loops ``x`` and ``y`` in a one-vertex ribbon graph.

    Loop ``e`` enters the vertex at its head dart and leaves at its tail dart.
    """
    a, b = pos[2 * x + 1], pos[2 * x]
    c, d = pos[2 * y + 1], pos[2 * y]

    def between(p: int) -> bool:
        # strictly inside the counterclockwise walk a -> b
        return 0 < (p - a) % size < (b - a) % size

    bc, bd = between(c), between(d)
    if bc == bd:
        return 0
    return 1 if bc else -1


def face_vectors(surface: RotationSystem) -> list[list[int]]:
    """Boundary cycle of each face as arc coefficients."""
    out = []
    for face in surface.faces:
        v = [0] * surface.E
        for d in face:
            v[d // 2] += 1 if d % 2 == 0 else -1
        out.append(v)
    return out


def homology_form(surface: RotationSystem) -> HomologyForm:
    tree = _spanning_tree(surface)
    loops = tuple(e for e in range(surface.E) if e not in tree)
    word = contracted_rotation(surface, tree)
    pos = {d: k for k, d in enumerate(word)}
    m = len(loops)
    L = [[_chord_sign(pos, x, y, len(word)) if x != y else 0 for y in loops] for x in loops]
    faces = [[v[e] for e in loops] for v in face_vectors(surface)]
    d, V, Vinv = linalg.smith_decomposition(faces, m, with_inverse=True)
    if any(x != 1 for x in d):
        raise AssertionError(f"torsion {d} in the homology of a closed oriented surface")
    r = len(d)
    basis = [Vinv[i] for i in range(r, m)]
    J = [[sum(u[i] * L[i][j] * w[j] for i in range(m) for j in range(m) if L[i][j])
          for w in basis] for u in basis]
    return HomologyForm(surface, frozenset(tree), loops, tuple(map(tuple, L)),
                        tuple(map(tuple, faces)), tuple(map(tuple, basis)),
                        tuple(map(tuple, J)), tuple(map(tuple, V)), r)


# ---------------------------------------------------------------- halves


def half_arcs(code: GaussCode, start: int, stop: int) -> list[int]:
    """Arc coefficients of the path from pass ``start`` to pass ``stop``."""
    N = len(code.passes)
    v = [0] * N
    k = start
    while k != stop:
        v[k] = 1
        k = (k + 1) % N
    return v


def left_half(code: GaussCode, c: int) -> list[int]:
    P, Q = code.positions(c)
    if code.flat_sign(c) > 0:
        return half_arcs(code, Q, P)
    return half_arcs(code, P, Q)


def right_half(code: GaussCode, c: int) -> list[int]:
    P, Q = code.positions(c)
    if code.flat_sign(c) > 0:
        return half_arcs(code, P, Q)
    return half_arcs(code, Q, P)


@dataclass(frozen=True)
class HalfClasses:
    left: dict[int, tuple[int, ...]]
    right: dict[int, tuple[int, ...]]
    diagram: tuple[int, ...]


def half_classes(code: GaussCode, form: HomologyForm) -> HalfClasses:
    full = [1] * len(code.passes)
    return HalfClasses(
        {c: form.class_of(left_half(code, c)) for c in code.crossings},
        {c: form.class_of(right_half(code, c)) for c in code.crossings},
        form.class_of(full),
    )


def based_matrix_of_diagram(code: GaussCode, ring: Ring | str = Ring.Z2,
                            form: HomologyForm | None = None) -> BasedMatrix:
    """``b(c, c') = D^l_c · D^l_c'`` and ``b(c, s) = D^l_c · D``."""
    ring = Ring.parse(ring)
    form = form if form is not None else homology_form(carter_surface(code))
    halves = half_classes(code, form)
    cs = code.crossings
    labels = ["s"] + [str(c) for c in cs]
    vecs = [halves.diagram] + [halves.left[c] for c in cs]
    rows = [[ring.normalize(form.dot(x, y)) for y in vecs] for x in vecs]
    return new_based_matrix(labels, ring, rows)


def gaussian_index(code: GaussCode, c: int) -> int:
    """Signed count of crossings met by the left half of ``c`` on the other
    half; equals ``D^l_c · D`` without any homology computation."""
    P, Q = code.positions(c)
    lh = left_half(code, c)
    total = 0
    for d in code.interleaved(c):
        i, _ = code.positions(d)
        # pass i lies on the left half iff the arc leaving it does
        on_left = lh[i] == 1
        total += code.flat_sign(d) if on_left else -code.flat_sign(d)
    return total


# ---------------------------------------------------------------- bundle


@dataclass(frozen=True)
class KnotReport:
    code: GaussCode
    ring: Ring
    genus: int
    bundle: MatrixReport

    @property
    def matrix(self) -> BasedMatrix:
        return self.bundle.matrix

    @property
    def primitive(self) -> BasedMatrix:
        return self.bundle.primitive

    @property
    def tags(self):
        return self.bundle.bar.tags

    @property
    def parity(self):
        return self.bundle.parity

    @property
    def parity_matrix(self):
        return self.bundle.parity_matrix

    @property
    def aut_order(self) -> int:
        return self.bundle.aut_order

    def to_dict(self) -> dict:
        return {"code": str(self.code), "ring": self.ring.value, "genus": self.genus,
                **self.bundle.to_dict()}

    def to_text(self) -> str:
        return f"code: {self.code}\ngenus: {self.genus}\n" + self.bundle.to_text()


def knot_invariant_bundle(code: GaussCode | str, ring: Ring | str = Ring.Z2) -> KnotReport:
    from .parity import matrix_invariant_bundle

    if isinstance(code, str):
        code = parse_gauss_code(code)
    ring = Ring.parse(ring)
    surface = carter_surface(code)
    T = based_matrix_of_diagram(code, ring, homology_form(surface))
    return KnotReport(code, ring, surface.genus, matrix_invariant_bundle(T))
