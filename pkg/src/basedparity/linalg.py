"""Exact integer and mod-2 linear algebra on plain Python lists.

Everything here works with Python ints so nothing can overflow.  Matrices
are lists of rows; vectors are lists.
"""

from __future__ import annotations

from typing import Sequence

Vector = list[int]
Matrix = list[list[int]]


def _copy(rows: Sequence[Sequence[int]]) -> Matrix:
    return [list(map(int, r)) for r in rows]


def hermite_basis(vectors: Sequence[Sequence[int]], dim: int | None = None) -> Matrix:
    """Row Hermite normal form basis of the lattice spanned by ``vectors``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows are dropped, so two generating sets of the same lattice give the
    same output.
    """
    rows = [r for r in _copy(vectors) if any(r)]
    if not rows:
        return []
    n = len(rows[0]) if dim is None else dim
    basis: Matrix = []
    r = 0
    for col in range(n):
        # Euclid on column ``col`` over rows r..end
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[p] = rows[p], rows[r]
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][col]:
                    q = rows[i][col] // rows[r][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][col]:
            if rows[r][col] < 0:
                rows[r] = [-a for a in rows[r]]
            piv = rows[r][col]
            for i in range(r):
                q = rows[i][col] // piv
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == len(rows):
                break
    basis = [row for row in rows[:r] if any(row)]
    return basis


def pivot_columns(basis: Matrix) -> list[int]:
    return [next(j for j, a in enumerate(row) if a) for row in basis]


def lattice_residue(basis: Matrix, pivots: Sequence[int], v: Sequence[int]) -> Vector:
    """Canonical representative of ``v`` modulo the lattice of a Hermite basis.

    Each pivot coordinate ends in ``[0, pivot)``; two vectors differ by a
    lattice vector exactly when their residues are equal.
    """
    v = list(map(int, v))
    for row, col in zip(basis, pivots):
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def in_lattice(basis: Matrix, v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice with Hermite basis ``basis``."""
    v = list(map(int, v))
    for row, col in zip(basis, pivot_columns(basis)):
        if any(v[:col]):
            return False
        q, rem = divmod(v[col], row[col])
        if rem:
            return False
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (Hermite form) of ``{x in Z^ncols : a @ x = 0}``.

    Row-reduces ``[a^T | I]`` with unimodular row operations; the identity
    part of rows whose left part vanishes spans the kernel.
    """
    m = len(a)
    aug = [[int(a[i][j]) for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    r = 0
    for col in range(m):
        while True:
            nz = [i for i in range(r, ncols) if aug[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(aug[i][col]))
            aug[r], aug[p] = aug[p], aug[r]
            done = True
            for i in range(r + 1, ncols):
                if aug[i][col]:
                    q = aug[i][col] // aug[r][col]
                    aug[i] = [x - q * y for x, y in zip(aug[i], aug[r])]
                    if aug[i][col]:
                        done = False
            if done:
                break
        if r < ncols and aug[r][col]:
            r += 1
    kernel = [row[m:] for row in aug if not any(row[:m])]
    return hermite_basis(kernel, ncols)


def smith_decomposition(rel: Sequence[Sequence[int]], ncols: int,
                        with_inverse: bool = False):
    """Smith form of a relation matrix together with its column transform.

    Returns ``(d, V)`` with ``V`` unimodular (``ncols x ncols``) such that
    ``U @ rel @ V = diag(d)`` for some unimodular ``U``.  ``d`` is the list of
    nonzero diagonal entries, positive and forming a divisibility chain.
    With ``with_inverse`` the triple ``(d, V, V^-1)`` is returned.
    """
    a = [r for r in _copy(rel)]
    m = len(a)
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    Vinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for row in a:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]
        Vinv[src] = [x + q * y for x, y in zip(Vinv[src], Vinv[dst])]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    d: list[int] = []
    t = 0
    while t < min(m, ncols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        col_swap(t, pj)
        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                clean = False
            # bring the smallest nonzero entry of row/column t to the corner
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, pi, pj = min(cands)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                col_swap(t, pj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        d.append(a[t][t])
        t += 1
    if with_inverse:
        return d, V, Vinv
    return d, V


def rref_mod2(vectors: Sequence[Sequence[int]], dim: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon basis over GF(2) and its pivot columns."""
    rows = [[x & 1 for x in map(int, r)] for r in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return [], []
    n = len(rows[0]) if dim is None else dim
    pivots: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def reduce_mod2(basis: Matrix, pivots: list[int], v: Sequence[int]) -> Vector:
    v = [int(x) & 1 for x in v]
    for row, col in zip(basis, pivots):
        if v[col]:
            v = [x ^ y for x, y in zip(v, row)]
    return v


def kernel_mod2(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis in reduced echelon form of the GF(2) null space of ``a``."""
    rows, pivots = rref_mod2(a, ncols)
    free = [j for j in range(ncols) if j not in pivots]
    kernel = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, p in zip(rows, pivots):
            x[p] = row[f]
        kernel.append(x)
    return rref_mod2(kernel, ncols)[0]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss)."""
    m = _copy(a)
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
