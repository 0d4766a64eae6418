"""Random based matrices and randomized checks of the invariance theorems."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .diagram import GaussCode, Pass
from .matrix import (BasedMatrix, Ring, available_reductions, is_isomorphic, new_based_matrix,
                     reduce_to_primitive, remove_element)
from .parity import check_local_axioms, check_transport, gaussian_parity, random_move, reduced_parity
from .partitions import stable_partition, zero_tribe


def random_based_matrix(rng: random.Random, size: int, ring: Ring) -> BasedMatrix:
    """``size`` non-basepoint elements; entries uniform in {0,1} or [-2,2]."""
    n = size + 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = rng.randint(0, 1) if ring is Ring.Z2 else rng.randint(-2, 2)
            rows[i][j] = x
            rows[j][i] = ring.neg(x)
    return new_based_matrix(["s"] + [str(k) for k in range(1, n)], ring, rows)


def random_gauss_code(rng: random.Random, n: int, flat: bool = False) -> GaussCode:
    """A uniformly shuffled signed Gauss word on ``n`` crossings."""
    word = [c for c in range(1, n + 1) for _ in range(2)]
    rng.shuffle(word)
    signs = {c: rng.choice((1, -1)) for c in range(1, n + 1)}
    first_over = {c: rng.random() < 0.5 for c in range(1, n + 1)}
    seen: set[int] = set()
    passes = []
    for c in word:
        role = None
        if not flat:
            role = "O" if first_over[c] != (c in seen) else "U"
        seen.add(c)
        passes.append(Pass(c, role, signs[c]))
    return GaussCode(tuple(passes))


def random_reduction(T: BasedMatrix, rng: random.Random) -> BasedMatrix:
    """Reduce to a primitive matrix choosing inverse moves at random."""
    while True:
        steps = available_reductions(T)
        if not steps:
            return T
        T = remove_element(T, rng.choice(steps).removed)


def seed_for(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}/{index}")


# ---------------------------------------------------------------- properties
#
# Each check takes (T, rng) and returns a list of failure messages.


def check_confluence(T: BasedMatrix, rng: random.Random) -> list[str]:
    a, _ = reduce_to_primitive(T)
    b = random_reduction(T, rng)
    c = random_reduction(T, rng)
    out = []
    if is_isomorphic(a, b) is None:
        out.append(f"scan-order reduction {a.labels} not isomorphic to random reduction {b.labels}")
    if is_isomorphic(b, c) is None:
        out.append(f"two random reductions {b.labels}, {c.labels} not isomorphic")
    return out


def check_tribal_move(T: BasedMatrix, rng: random.Random) -> list[str]:
    move, T2 = random_move(T, rng)
    p, _ = stable_partition(T)
    p2, _ = stable_partition(T2)
    out = []
    if p2.restrict(T.labels) != p:
        out.append(f"{move}: stable partition {p2} restricts to {p2.restrict(T.labels)}, expected {p}")
    new = [g for g in T2.labels if g not in T.labels]
    if move == "M3" and p2.block_of(new[0]) != p2.block_of(new[1]):
        out.append(f"{move}: complementary pair split across tribes")
    z, z2 = zero_tribe(T), zero_tribe(T2)
    z2r = tuple(g for g in (z2 or ()) if g in T.labels) or None
    if z != z2r:
        out.append(f"{move}: zero tribe {z} but {z2} after the move")
    return out


def check_axioms(T: BasedMatrix, rng: random.Random) -> list[str]:
    out = []
    for compute in (gaussian_parity, reduced_parity):
        P = compute(T)
        out += [str(v) for v in check_local_axioms(T, P)]
        move, T2 = random_move(T, rng)
        out += [str(v) for v in check_transport(T, P, move, T2, compute(T2))]
    return out


def check_primitive_tribes(T: BasedMatrix, rng: random.Random) -> list[str]:
    p, _ = stable_partition(T)
    a = random_reduction(T, rng)
    b = random_reduction(T, rng)
    pa = {blk for blk in p if set(blk) & set(a.labels)}
    pb = {blk for blk in p if set(blk) & set(b.labels)}
    return [] if pa == pb else [f"primitive tribes depend on the reduction: {pa} vs {pb}"]


CHECKS: dict[str, Callable[[BasedMatrix, random.Random], list[str]]] = {
    "confluence": check_confluence,
    "tribal_system": check_tribal_move,
    "primitive_tribes": check_primitive_tribes,
    "parity_axioms": check_axioms,
}


def shrink(T: BasedMatrix, fails: Callable[[BasedMatrix], bool]) -> BasedMatrix:
    """Drop elements one at a time while ``fails`` keeps holding."""
    changed = True
    while changed:
        changed = False
        for g in T.elements:
            smaller = T.submatrix(h for h in T.labels if h != g)
            if fails(smaller):
                T, changed = smaller, True
                break
    return T


@dataclass
class FuzzReport:
    seed: int
    count: int
    max_size: int
    moves: int
    ring: Ring
    checks: dict[str, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {"seed": self.seed, "count": self.count, "max_size": self.max_size,
                "moves": self.moves, "ring": self.ring.value, "checks": dict(self.checks),
                "counterexamples": self.counterexamples, "ok": self.ok}

    def to_text(self) -> str:
        lines = [f"fuzz seed={self.seed} count={self.count} max_size={self.max_size} "
                 f"moves={self.moves} ring={self.ring.value}"]
        for name, n in self.checks.items():
            lines.append(f"  {name:<18} {n:>6} checks")
        if self.ok:
            lines.append("all properties hold")
        for ce in self.counterexamples:
            lines.append(f"COUNTEREXAMPLE {ce['check']} (matrix #{ce['index']}, step {ce['step']}): "
                         f"{ce['messages'][0]}")
            lines.append(f"  minimized: {ce['minimized']}")
        return "\n".join(lines)


def run_fuzz(seed: int = 1, count: int = 200, max_size: int = 6, moves: int = 20,
             ring: Ring = Ring.Z2) -> FuzzReport:
    """Random matrices, each followed along a random walk of moves; every
    check runs at every step of the walk."""
    report = FuzzReport(seed, count, max_size, moves, ring, {k: 0 for k in CHECKS})
    for i in range(count):
        rng = seed_for(seed, i)
        T = random_based_matrix(rng, rng.randint(0, max_size), ring)
        for step in range(moves + 1):
            for name, check in CHECKS.items():
                check_seed = rng.random()
                msgs = check(T, random.Random(check_seed))
                report.checks[name] += 1
                if msgs:
                    small = shrink(T, lambda M: bool(check(M, random.Random(check_seed))))
                    report.counterexamples.append({
                        "check": name, "index": i, "step": step, "messages": msgs,
                        "matrix": T.to_dict(), "minimized": small.to_dict()})
            if step < moves:
                # keep walks bounded: alternate growth with reduction
                if T.size > max_size + 3:
                    T = random_reduction(T, rng)
                else:
                    _, T = random_move(T, rng)
    return report
