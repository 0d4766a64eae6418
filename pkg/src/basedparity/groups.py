"""Finitely generated abelian groups given as quotients ``H^n / <relations>``
in canonical (Smith) form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .matrix import Ring


@dataclass(frozen=True)
class CanonicalAbelianGroup:
    """``H^n / <relations>`` presented as ``Z^free_rank + Z/d1 + ... + Z/dk``.

    :meth:`reduce` sends an ambient vector to canonical coordinates: the free
    coordinates (signed) followed by one least non-negative residue per
    invariant factor.
    """

    ring: Ring
    ambient_dim: int
    relations: tuple[tuple[int, ...], ...]
    free_rank: int
    invariant_factors: tuple[int, ...]
    # ring Z: column transform V and the slice positions of free/torsion coordinates
    _transform: tuple[tuple[int, ...], ...] = ()
    _torsion_pos: tuple[int, ...] = ()
    _free_pos: tuple[int, ...] = ()
    # ring Z2: echelon form of the relations
    _echelon: tuple[tuple[int, ...], ...] = ()
    _pivots: tuple[int, ...] = ()

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ambient_dim:
            raise ValueError(f"expected a vector of length {self.ambient_dim}")
        if self.ring is Ring.Z2:
            r = linalg.reduce_mod2([list(x) for x in self._echelon], list(self._pivots), v)
            return tuple(r[j] for j in range(self.ambient_dim) if j not in self._pivots)
        w = [sum(int(a) * row[j] for a, row in zip(v, self._transform))
             for j in range(self.ambient_dim)]
        free = [w[j] for j in self._free_pos]
        tors = [w[j] % d for j, d in zip(self._torsion_pos, self.invariant_factors)]
        return tuple(free + tors)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    @property
    def coordinate_count(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def order(self) -> int | None:
        """Number of elements, ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def signature(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.invariant_factors)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


def quotient_group(ambient_dim: int, ring: Ring, relations: Sequence[Sequence[int]]) -> CanonicalAbelianGroup:
    rels = tuple(tuple(int(x) for x in r) for r in relations)
    for r in rels:
        if len(r) != ambient_dim:
            raise ValueError(f"relation {r} does not have length {ambient_dim}")
    if ring is Ring.Z2:
        ech, piv = linalg.rref_mod2(rels, ambient_dim)
        k = ambient_dim - len(piv)
        return CanonicalAbelianGroup(ring, ambient_dim, rels, 0, (2,) * k,
                                     _echelon=tuple(map(tuple, ech)), _pivots=tuple(piv))
    d, V = linalg.smith_decomposition(rels, ambient_dim)
    torsion_pos = tuple(i for i, x in enumerate(d) if x > 1)
    return CanonicalAbelianGroup(
        ring, ambient_dim, rels,
        free_rank=ambient_dim - len(d),
        invariant_factors=tuple(d[i] for i in torsion_pos),
        _transform=tuple(map(tuple, V)),
        _torsion_pos=torsion_pos,
        _free_pos=tuple(range(len(d), ambient_dim)),
    )
