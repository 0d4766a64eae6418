"""Annulators, derived and stable partitions, and the distinguished tribes
(primitive tribes, the zero tribe, automorphism classes)."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import linalg
from .matrix import (BasedMatrix, Isomorphism, ReductionTrace, Ring, apply_m1, fresh_label,
                     label_key, reduce_to_primitive)

Block = tuple[str, ...]


def _block(labels: Iterable[str]) -> Block:
    return tuple(sorted(labels, key=label_key))


@dataclass(frozen=True)
class Partition:
    """A partition of a label set; blocks are tribes.

    Blocks are kept sorted (by :func:`label_key`) and ordered by their first
    member, so the basepoint block ``("s",)`` comes first and equal
    partitions compare equal.
    """

    blocks: tuple[Block, ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[str]]) -> Partition:
        bl = [_block(b) for b in blocks]
        bl = [b for b in bl if b]
        bl.sort(key=lambda b: label_key(b[0]))
        seen: set[str] = set()
        for b in bl:
            if seen.intersection(b):
                raise ValueError("blocks overlap")
            seen.update(b)
        return cls(tuple(bl))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __contains__(self, block: Iterable[str]) -> bool:
        return _block(block) in self.blocks

    @property
    def support(self) -> set[str]:
        return {g for b in self.blocks for g in b}

    def block_of(self, g: str) -> Block:
        for b in self.blocks:
            if g in b:
                return b
        raise KeyError(g)

    def restrict(self, labels: Iterable[str]) -> Partition:
        """The partition ``self ∩ labels`` (empty intersections dropped)."""
        keep = set(labels)
        return Partition.of([g for g in b if g in keep] for b in self.blocks)

    def refines(self, other: Partition) -> bool:
        """True when every block of ``other`` is a union of blocks of ``self``."""
        return all(set(b) <= set(other.block_of(b[0])) for b in self.blocks)

    def to_list(self) -> list[list[str]]:
        return [list(b) for b in self.blocks]

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(b) + "}" for b in self.blocks) + "}"


def check_partition(T: BasedMatrix, p: Partition) -> None:
    if p.support != set(T.labels) or sum(map(len, p)) != T.size:
        raise ValueError("partition does not cover the labels of the matrix")
    if (T.s,) not in p:
        raise ValueError("the basepoint must be a block of its own")


def discrete_partition(T: BasedMatrix) -> Partition:
    return Partition.of([g] for g in T.labels)


def element_order(T: BasedMatrix) -> list[str]:
    """Coordinate order on the non-basepoint elements."""
    return sorted(T.elements, key=label_key)


# ---------------------------------------------------------------- annulator


@dataclass(frozen=True)
class AnnulatorModule:
    """Ann of a partition as a sublattice of Z[G°] (ring Z) or a subspace of
    GF(2)[G°] (ring Z2, where ``2·g`` always lies in Ann and is left implicit).
    """

    ring: Ring
    elements: tuple[str, ...]
    basis: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def vector(self, v: Mapping[str, int] | Sequence[int]) -> list[int]:
        if isinstance(v, Mapping):
            return [int(v.get(g, 0)) for g in self.elements]
        return list(map(int, v))

    def residue(self, v: Mapping[str, int] | Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``v`` modulo Ann."""
        vec = self.vector(v)
        basis = [list(r) for r in self.basis]
        if self.ring is Ring.Z2:
            return tuple(linalg.reduce_mod2(basis, self._pivots, vec))
        return tuple(linalg.lattice_residue(basis, self._pivots, vec))

    @functools.cached_property
    def _pivots(self) -> list[int]:
        return linalg.pivot_columns([list(r) for r in self.basis])

    def __contains__(self, v: Mapping[str, int] | Sequence[int]) -> bool:
        return not any(self.residue(v))

    def issubset(self, other: AnnulatorModule) -> bool:
        return all(r in other for r in self.basis)

    def generators(self) -> list[list[int]]:
        """A generating set of the subgroup of Z[G°]; over Z2 the doubled unit
        vectors are listed explicitly first."""
        gens = [list(r) for r in self.basis]
        if self.ring is Ring.Z2:
            n = self.dimension
            gens = [[2 * int(i == j) for j in range(n)] for i in range(n)] + gens
        return gens

    def format_basis(self) -> list[str]:
        out = []
        for r in self.basis:
            terms = []
            for g, c in zip(self.elements, r):
                if c == 1:
                    terms.append(g)
                elif c == -1:
                    terms.append(f"-{g}")
                elif c:
                    terms.append(f"{c}*{g}")
            out.append("+".join(terms).replace("+-", "-"))
        return out


def block_pairing(T: BasedMatrix, p: Partition) -> tuple[list[list[int]], list[int]]:
    """``M[C][g] = b(g, chi_C)`` over G° and ``w[C] = b(s, chi_C)``."""
    elems = element_order(T)
    norm = T.ring.normalize
    cols = [[T.index(h) for h in C] for C in p]
    rows = [T.row(g) for g in elems]
    M = [[norm(sum(r[j] for j in cj)) for r in rows] for cj in cols]
    rs = T.row(T.s)
    w = [norm(sum(rs[j] for j in cj)) for cj in cols]
    return M, w


def annulator(T: BasedMatrix, p: Partition) -> AnnulatorModule:
    """The vectors ``v`` over G° with ``b(v, chi_C) = k·b(s, chi_C)`` for one
    ``k`` and all blocks ``C``.

    Solved as the kernel of ``[M | -w]`` in the unknowns ``(v, k)`` and
    projected onto ``v``.
    """
    check_partition(T, p)
    elems = element_order(T)
    n = len(elems)
    M, w = block_pairing(T, p)
    stacked = [row + [-wc] for row, wc in zip(M, w)]
    if T.ring is Ring.Z2:
        ker = linalg.kernel_mod2(stacked, n + 1)
        basis, _ = linalg.rref_mod2([r[:n] for r in ker], n)
    else:
        ker = linalg.integer_kernel(stacked, n + 1)
        basis = linalg.hermite_basis([r[:n] for r in ker], n)
    return AnnulatorModule(T.ring, tuple(elems), tuple(map(tuple, basis)))


def satisfies_annulator_condition(T: BasedMatrix, p: Partition, v: Mapping[str, int]) -> bool:
    """Direct check of the defining condition for one vector (no lattice
    algebra); used as a cross-check of :func:`annulator`."""
    vals = [T.ring.normalize(sum(c * T.pair_block(g, C) for g, c in v.items())) for C in p]
    base = [T.pair_block(T.s, C) for C in p]
    if T.ring is Ring.Z2:
        return any(all((x - k * y) % 2 == 0 for x, y in zip(vals, base)) for k in (0, 1))
    nz = [(x, y) for x, y in zip(vals, base) if y]
    if any(x for x, y in zip(vals, base) if not y):
        return False
    if not nz:
        return True
    x0, y0 = nz[0]
    if x0 % y0:
        return False
    k = x0 // y0
    return all(x == k * y for x, y in nz)


# ---------------------------------------------------------------- derivation


def _unit(elems: Sequence[str], *terms: tuple[str, int]) -> list[int]:
    v = [0] * len(elems)
    for g, c in terms:
        v[elems.index(g)] += c
    return v


def derive(T: BasedMatrix, p: Partition) -> Partition:
    """The derived partition: ``{s}`` plus the classes of
    ``g1 ~ g2  iff  g1 - g2 or g1 + g2 lies in Ann(p)``."""
    ann = annulator(T, p)
    elems = list(ann.elements)
    # g1 - g2 in Ann iff e_g1 and e_g2 have the same residue; g1 + g2 in Ann
    # iff e_g1 and -e_g2 do
    plus = {g: ann.residue(_unit(elems, (g, 1))) for g in elems}
    minus = {g: ann.residue(_unit(elems, (g, -1))) for g in elems}
    related = {g: {g} for g in elems}
    for g1, g2 in itertools.combinations(elems, 2):
        if plus[g1] == plus[g2] or plus[g1] == minus[g2]:
            related[g1].add(g2)
            related[g2].add(g1)
    classes: list[set[str]] = []
    for g in elems:
        cls = related[g]
        for h in cls:
            if related[h] != cls:
                raise AssertionError(f"relation is not transitive at {g!r}, {h!r}")
        if not any(g in c for c in classes):
            classes.append(cls)
    return Partition.of([[T.s]] + classes)


def partition_chain(T: BasedMatrix, start: Partition | None = None) -> list[Partition]:
    """``[C_0, C_1, ..., C_inf]`` ending at the first repeated partition."""
    p = start if start is not None else discrete_partition(T)
    chain = [p]
    while True:
        q = derive(T, p)
        if q == p:
            return chain
        if len(q) >= len(p):
            raise AssertionError("derivation did not coarsen the partition")
        chain.append(q)
        p = q


@functools.lru_cache(maxsize=4096)
def stable_partition(T: BasedMatrix) -> tuple[Partition, int]:
    """The stable partition and the number of derivations that changed it."""
    chain = partition_chain(T)
    return chain[-1], len(chain) - 1


# ---------------------------------------------------------------- tribes


@dataclass(frozen=True)
class TribeTags:
    partition: Partition
    primitive_blocks: tuple[Block, ...]
    zero_block: Block | None
    primitive_matrix: BasedMatrix
    trace: ReductionTrace

    @property
    def survivors(self) -> tuple[str, ...]:
        return self.primitive_matrix.labels

    @property
    def zero_is_primitive(self) -> bool:
        return self.zero_block is not None and self.zero_block in self.primitive_blocks

    def reduced_blocks(self) -> tuple[Block, ...]:
        """Primitive tribes with the zero tribe removed."""
        return tuple(b for b in self.primitive_blocks if b != self.zero_block)


def zero_tribe(T: BasedMatrix, partition: Partition | None = None) -> Block | None:
    """The tribe collecting annihilating and core elements of all homologous
    matrices, found by adjoining a fresh annihilating element."""
    g0 = fresh_label(T)
    ext = apply_m1(T, g0)
    p_ext, _ = stable_partition(ext)
    block = tuple(g for g in p_ext.block_of(g0) if g != g0)
    if partition is not None:
        assert p_ext.restrict(T.labels) == partition, "stable partition is not a tribal system"
    return block or None


def tag_tribes(T: BasedMatrix) -> TribeTags:
    p, _ = stable_partition(T)
    Tb, trace = reduce_to_primitive(T)
    survivors = set(Tb.labels)
    prim = tuple(b for b in p if survivors.intersection(b))
    return TribeTags(p, prim, zero_tribe(T, p), Tb, trace)


def aut_coarsening(Tb: BasedMatrix, auts: Sequence[Isomorphism],
                   partition: Partition | None = None) -> Partition:
    """Finest coarsening of the stable partition of ``Tb`` whose blocks are
    each mapped to themselves by every automorphism."""
    p = partition if partition is not None else stable_partition(Tb)[0]
    parent = {g: b[0] for b in p for g in b}

    def find(g: str) -> str:
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    changed = True
    while changed:
        changed = False
        for phi in auts:
            for g in Tb.labels:
                a, b = find(g), find(phi(g))
                if a != b:
                    parent[max(a, b, key=label_key)] = min(a, b, key=label_key)
                    changed = True
    groups: dict[str, list[str]] = {}
    for g in Tb.labels:
        groups.setdefault(find(g), []).append(g)
    return Partition.of(groups.values())


@dataclass(frozen=True)
class TribeCorrespondence:
    """Bijection between primitive tribes of a matrix and of its primitive
    reduction."""

    mapping: Mapping[Block, Block]

    def __getitem__(self, block: Block) -> Block:
        return self.mapping[block]

    def inverse(self) -> dict[Block, Block]:
        return {v: k for k, v in self.mapping.items()}


def transport_tribes(T: BasedMatrix, trace: ReductionTrace,
                     tags: TribeTags | None = None) -> TribeCorrespondence:
    """Map each primitive tribe ``C`` of ``T`` to ``C ∩ G•``."""
    tags = tags if tags is not None else tag_tribes(T)
    Tb = trace.replay(T)
    pb, _ = stable_partition(Tb)
    mapping = {}
    for C in tags.primitive_blocks:
        image = _block(g for g in C if g in Tb.labels)
        if not image:
            raise AssertionError(f"primitive tribe {C} does not meet the primitive matrix")
        if image not in pb:
            raise AssertionError(f"{image} is not a tribe of the primitive matrix")
        mapping[C] = image
    if sorted(mapping.values()) != sorted(pb.blocks):
        raise AssertionError("primitive tribes do not correspond bijectively")
    return TribeCorrespondence(mapping)
