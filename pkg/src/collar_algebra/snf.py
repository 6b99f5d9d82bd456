"""Smith normal form over the integers with transforms, and what falls out
of it: rank, kernels, exact solving, right inverses.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def shape(m: Matrix, cols: int | None = None) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else (cols or 0))


def matmul(a: Matrix, b: Matrix, cols: int | None = None) -> Matrix:
    """Product; ``cols`` gives the width when ``b`` has no rows."""
    if not b:
        return zeros(len(a), cols or 0)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def transpose(m: Matrix, cols: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(cols)]
    return [list(r) for r in zip(*m)]


def mat_vec(m: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v) if x) for row in m]


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for row in m for x in row)


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SNFResult:
    U: Matrix
    D: Matrix
    V: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d]


def smith_normal_form(m: Matrix, cols: int | None = None) -> SNFResult:
    """``U M V = D`` with ``U, V`` unimodular and ``d1 | d2 | ...``, all
    diagonal entries non-negative.

    Elimination pivots on the entry of least absolute value in the remaining
    block; a pivot that fails to divide some later entry gets that entry's
    row added to its own and the step is redone.
    """
    r, c = shape(m, cols)
    D = [list(map(int, row)) for row in m]
    U = identity(r)
    V = identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row dst += f * row src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in D:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, c):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            clean = True
            for i in range(t + 1, r):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    clean &= D[i][t] == 0
            for j in range(t + 1, c):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    clean &= D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return SNFResult(U, D, V, r, c)


def rank(m: Matrix, cols: int | None = None) -> int:
    return smith_normal_form(m, cols).rank


def integer_kernel_basis(m: Matrix, cols: int | None = None) -> list[list[int]]:
    """Z-basis of ``{v : M v = 0}``: the columns of ``V`` past the rank."""
    res = smith_normal_form(m, cols)
    k = res.rank
    return [[res.V[i][j] for i in range(res.cols)] for j in range(k, res.cols)]


def solve(m: Matrix, b: list[int], cols: int | None = None, snf: SNFResult | None = None) -> list[int] | None:
    """An integer solution of ``M x = b``, or ``None`` when there is none."""
    res = snf or smith_normal_form(m, cols)
    ub = mat_vec(res.U, b)
    y = [0] * res.cols
    for i, d in enumerate(res.diagonal):
        if d == 0:
            continue
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    if any(ub[i] for i in range(res.rank, res.rows)):
        return None
    return mat_vec(res.V, y)


def is_unimodular(m: Matrix) -> bool:
    return len(m) == (len(m[0]) if m else 0) and abs(determinant(m)) == 1


def is_onto(m: Matrix, cols: int | None = None) -> bool:
    """Is ``Z^cols -> Z^rows`` surjective? (full row rank, unit invariant factors)."""
    res = smith_normal_form(m, cols)
    return res.rank == res.rows and all(d == 1 for d in res.invariant_factors)


def is_split_injective(m: Matrix, cols: int | None = None) -> bool:
    """Injective with saturated image, i.e. the transpose is onto."""
    res = smith_normal_form(m, cols)
    return res.rank == res.cols and all(d == 1 for d in res.invariant_factors)


def lattice_contains(generators: list[list[int]], v: list[int], dim: int) -> bool:
    """Is ``v`` an integer combination of ``generators``?"""
    if not generators:
        return not any(v)
    return solve(transpose(generators), v, len(generators)) is not None
