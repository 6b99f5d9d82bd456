"""Matrices over the integral group ring ZQ of a finite group Q.

Free modules are right ZQ-modules of column vectors, and a matrix acts by
left multiplication, so it is a module map. Flattening replaces each entry
``r`` by the matrix of ``x -> r x`` on the basis Q of ZQ; a vector ``v`` in
``(ZQ)^n`` flattens to the integer vector with entry ``i |Q| + g`` equal to
the coefficient of ``g`` in ``v_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from . import snf
from .perm import PermGroup
from .snf import Matrix


class DimensionError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class VerificationFailed(RuntimeError):
    pass


# -- finite groups as tables -----------------------------------------------

class FiniteGroup:
    """A finite group given by its multiplication table on ``0..n-1``."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = ""):
        self.table = [list(map(int, row)) for row in table]
        n = len(self.table)
        if any(len(row) != n or sorted(row) != list(range(n)) for row in self.table) or any(
            sorted(col) != list(range(n)) for col in zip(*self.table)
        ):
            raise ValueError("table is not a Latin square")
        t = self.table
        if any(t[t[a][b]][c] != t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            raise ValueError("table is not associative")
        ids = [e for e in range(n) if self.table[e] == list(range(n))]
        if not ids:
            raise ValueError("table has no identity")
        self.identity = ids[0]
        self.inverse = [self.table[g].index(self.identity) for g in range(n)]
        self.name = name

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @classmethod
    def from_perm_group(cls, g: PermGroup, name: str = "") -> "FiniteGroup":
        elems = sorted(g.elements, key=lambda p: (not p.is_identity(), p.images))
        index = {p: i for i, p in enumerate(elems)}
        return cls([[index[a * b] for b in elems] for a in elems], name)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(tuple(map(tuple, self.table)))

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def symmetric3() -> FiniteGroup:
    from .smallgroups import symmetric_group

    return FiniteGroup.from_perm_group(symmetric_group(3), "S3")


# -- ring elements ---------------------------------------------------------

@dataclass(frozen=True)
class GroupRingElem:
    group: FiniteGroup
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise DimensionError("coefficient vector does not match the group order")

    @classmethod
    def zero(cls, q: FiniteGroup) -> "GroupRingElem":
        return cls(q, (0,) * q.order)

    @classmethod
    def scalar(cls, q: FiniteGroup, n: int) -> "GroupRingElem":
        c = [0] * q.order
        c[q.identity] = n
        return cls(q, tuple(c))

    @classmethod
    def basis(cls, q: FiniteGroup, g: int, n: int = 1) -> "GroupRingElem":
        c = [0] * q.order
        c[g] = n
        return cls(q, tuple(c))

    def __add__(self, other):
        return GroupRingElem(self.group, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return GroupRingElem(self.group, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        q = self.group
        out = [0] * q.order
        for g, a in enumerate(self.coeffs):
            if a:
                row = q.table[g]
                for h, b in enumerate(other.coeffs):
                    if b:
                        out[row[h]] += a * b
        return GroupRingElem(q, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def regular_matrix(self) -> Matrix:
        """Matrix of ``x -> self * x`` on the basis Q."""
        q = self.group
        m = snf.zeros(q.order, q.order)
        for k, a in enumerate(self.coeffs):
            if a:
                for h in range(q.order):
                    m[q.table[k][h]][h] += a
        return m


# -- matrices --------------------------------------------------------------

class GRMatrix:
    __slots__ = ("group", "rows", "cols", "entries")

    def __init__(self, group: FiniteGroup, entries: Sequence[Sequence[GroupRingElem]], rows=None, cols=None):
        self.group = group
        self.entries = [list(r) for r in entries]
        self.rows = len(self.entries) if rows is None else rows
        self.cols = (len(self.entries[0]) if self.entries else 0) if cols is None else cols
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError("ragged group-ring matrix")
        for r in self.entries:
            for x in r:
                if x.group != group:
                    raise DimensionError("entries over different groups")

    @property
    def shape(self):
        return self.rows, self.cols

    @classmethod
    def zeros(cls, q: FiniteGroup, rows: int, cols: int) -> "GRMatrix":
        z = GroupRingElem.zero(q)
        return cls(q, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, q: FiniteGroup, n: int) -> "GRMatrix":
        one, z = GroupRingElem.scalar(q, 1), GroupRingElem.zero(q)
        return cls(q, [[one if i == j else z for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_integers(cls, q: FiniteGroup, m: Matrix, cols: int | None = None) -> "GRMatrix":
        """Embed an integer matrix as scalar multiples of the identity element."""
        r, c = snf.shape(m, cols)
        return cls(q, [[GroupRingElem.scalar(q, x) for x in row] for row in m], r, c)

    @classmethod
    def from_coeffs(cls, q: FiniteGroup, data, rows=None, cols=None) -> "GRMatrix":
        return cls(q, [[GroupRingElem(q, tuple(e)) for e in row] for row in data], rows, cols)

    def to_coeffs(self) -> list:
        return [[list(x.coeffs) for x in row] for row in self.entries]

    def __matmul__(self, other: "GRMatrix") -> "GRMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        q = self.group
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = GroupRingElem.zero(q)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return GRMatrix(q, out, self.rows, other.cols)

    def __add__(self, other: "GRMatrix") -> "GRMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return GRMatrix(self.group, [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)],
                        self.rows, self.cols)

    def __neg__(self) -> "GRMatrix":
        return GRMatrix(self.group, [[-a for a in r] for r in self.entries], self.rows, self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, GRMatrix)
            and self.shape == other.shape
            and self.group == other.group
            and all(a.coeffs == b.coeffs for r, s in zip(self.entries, other.entries) for a, b in zip(r, s))
        )

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.entries for x in r)

    def column_block(self, start: int, stop: int) -> "GRMatrix":
        return GRMatrix(self.group, [r[start:stop] for r in self.entries], self.rows, stop - start)

    def __repr__(self):
        return f"GRMatrix({self.rows}x{self.cols} over {self.group!r})"


def hstack(*ms: GRMatrix) -> GRMatrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionError("hstack needs equal row counts")
    return GRMatrix(ms[0].group, [sum((m.entries[i] for m in ms), []) for i in range(rows)],
                    rows, sum(m.cols for m in ms))


def vstack(*ms: GRMatrix) -> GRMatrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise DimensionError("vstack needs equal column counts")
    return GRMatrix(ms[0].group, sum((m.entries for m in ms), []), sum(m.rows for m in ms), cols)


def block(rows: Sequence[Sequence[GRMatrix]]) -> GRMatrix:
    return vstack(*(hstack(*r) for r in rows))


def flatten(m: GRMatrix) -> Matrix:
    n = m.group.order
    out = snf.zeros(m.rows * n, m.cols * n)
    for i, row in enumerate(m.entries):
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            blk = x.regular_matrix()
            for a in range(n):
                out[i * n + a][j * n:(j + 1) * n] = blk[a]
    return out


def flatten_vector(column: Sequence[GroupRingElem]) -> list[int]:
    return [c for x in column for c in x.coeffs]


def unflatten_vector(q: FiniteGroup, v: Sequence[int]) -> list[GroupRingElem]:
    n = q.order
    return [GroupRingElem(q, tuple(v[i:i + n])) for i in range(0, len(v), n)]


def right_translate(q: FiniteGroup, v: Sequence[int], g: int) -> list[int]:
    """Flattened ``v * g``."""
    n = q.order
    out = [0] * len(v)
    for i in range(0, len(v), n):
        for h in range(n):
            out[i + q.table[h][g]] += v[i + h]
    return out


def columns_matrix(q: FiniteGroup, cols: Sequence[Sequence[GroupRingElem]], rows: int) -> GRMatrix:
    return GRMatrix(q, [[c[i] for c in cols] for i in range(rows)], rows, len(cols))


def solve_zq(m: GRMatrix, rhs: GRMatrix) -> GRMatrix | None:
    """A ZQ-matrix ``X`` with ``m X = rhs``, solved column by column on the
    flattening, or ``None`` if some column has no exact preimage."""
    q = m.group
    flat = flatten(m)
    res = snf.smith_normal_form(flat, m.cols * q.order)
    cols = []
    for j in range(rhs.cols):
        b = flatten_vector([rhs.entries[i][j] for i in range(rhs.rows)])
        x = snf.solve(flat, b, snf=res)
        if x is None:
            return None
        cols.append(unflatten_vector(q, x))
    return columns_matrix(q, cols, m.cols)


def zq_onto(m: GRMatrix) -> bool:
    return snf.is_onto(flatten(m), m.cols * m.group.order)


def kernel_basis(m: GRMatrix) -> list[list[int]]:
    """Z-basis of the flattened kernel (a ZQ-submodule)."""
    return snf.integer_kernel_basis(flatten(m), m.cols * m.group.order)


# -- the kernel splitting lemma --------------------------------------------

def kernel_split(theta: GRMatrix, split: int) -> dict:
    """Split ``ker(theta)`` for ``theta = [theta_A | theta_B]`` with ``theta_A``
    onto and the first ``split`` columns spanning ``A``.

    ``alpha`` satisfies ``theta_A alpha = theta_B``. Then
    ``phi(x, b) = (x - alpha b, b)`` carries ``ker(theta_A) + B`` onto
    ``ker(theta)`` and ``psi(z) = (pi1 z + alpha pi2 z, pi2 z)`` inverts it.
    Everything is checked exactly on Z-bases of the flattened kernels.
    """
    q = theta.group
    n = q.order
    a, b = split, theta.cols - split
    if not 0 <= split <= theta.cols:
        raise DimensionError("split index outside the column range")
    theta_a = theta.column_block(0, a)
    theta_b = theta.column_block(a, theta.cols)
    if not zq_onto(theta_a):
        raise PreconditionError("theta restricted to A is not onto")
    alpha = solve_zq(theta_a, theta_b)
    if alpha is None:
        raise ArithmeticError("no exact preimage for alpha although theta_A is onto")
    I_a, I_b = GRMatrix.identity(q, a), GRMatrix.identity(q, b)
    Z_ba = GRMatrix.zeros(q, b, a)
    phi = block([[I_a, -alpha], [Z_ba, I_b]])
    psi = block([[I_a, alpha], [Z_ba, I_b]])
    ident = GRMatrix.identity(q, a + b)

    flat_theta = flatten(theta)
    flat_a = flatten(theta_a)
    flat_phi, flat_psi = flatten(phi), flatten(psi)
    ker_theta = kernel_basis(theta)
    ker_a = kernel_basis(theta_a)
    # Z-basis of ker(theta_A) + B inside A + B
    source = [v + [0] * (b * n) for v in ker_a] + [
        [0] * (a * n) + [int(i == j) for i in range(b * n)] for j in range(b * n)
    ]
    phi_lands = all(not any(snf.mat_vec(flat_theta, snf.mat_vec(flat_phi, v))) for v in source)
    psi_lands = all(not any(snf.mat_vec(flat_a, snf.mat_vec(flat_psi, z)[: a * n])) for z in ker_theta)
    # phi(source) must be a Z-basis of ker(theta): same size and unimodular change of basis
    images = [snf.mat_vec(flat_phi, v) for v in source]
    spans = len(images) == len(ker_theta) and all(
        snf.lattice_contains(images, z, len(z)) for z in ker_theta
    )
    checks = {
        "theta_A_onto": True,
        "alpha_equation": theta_a @ alpha == theta_b,
        "phi_psi_identity": phi @ psi == ident,
        "psi_phi_identity": psi @ phi == ident,
        "phi_into_kernel": phi_lands,
        "psi_into_kernel": psi_lands,
        "phi_onto_kernel": spans,
        "rank_identity": len(ker_theta) == len(ker_a) + b * n,
    }
    return {
        "alpha": alpha,
        "phi": phi,
        "psi": psi,
        "kernel_rank": len(ker_theta),
        "kernel_A_rank": len(ker_a),
        "checks": checks,
        "ok": all(checks.values()),
    }


def random_unit(q: FiniteGroup, rng: random.Random) -> GroupRingElem:
    return GroupRingElem.basis(q, rng.randrange(q.order), rng.choice((1, -1)))


def random_element(q: FiniteGroup, rng: random.Random, lo: int = -2, hi: int = 2, density: float = 0.5):
    return GroupRingElem(q, tuple(rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(q.order)))


@dataclass
class SplitInstance:
    theta: GRMatrix
    split: int
    kernel_a: GRMatrix  # columns form a ZQ-basis of ker(theta_A)


def random_split_instance(q: FiniteGroup, rng: random.Random, max_c: int = 2, max_extra: int = 2,
                          max_b: int = 2) -> SplitInstance:
    """``theta_A = L [I | R] P`` with ``L`` unipotent lower triangular and ``P``
    a permutation, so ``theta_A`` is onto and ``P^T [-R; I]`` is a ZQ-basis
    of its kernel. ``theta_B`` is arbitrary."""
    c = rng.randint(1, max_c)
    extra = rng.randint(0, max_extra)
    b = rng.randint(0, max_b)
    a = c + extra
    L = GRMatrix.identity(q, c)
    for i in range(c):
        for j in range(i):
            L.entries[i][j] = random_element(q, rng)
    for i in range(c):
        L.entries[i][i] = random_unit(q, rng)
    R = GRMatrix(q, [[random_element(q, rng) for _ in range(extra)] for _ in range(c)], c, extra)
    perm = list(range(a))
    rng.shuffle(perm)
    P = GRMatrix.zeros(q, a, a)
    one = GroupRingElem.scalar(q, 1)
    for i, j in enumerate(perm):
        P.entries[i][j] = one
    Pt = GRMatrix(q, [[P.entries[j][i] for j in range(a)] for i in range(a)], a, a)
    theta_a = L @ hstack(GRMatrix.identity(q, c), R) @ P
    kernel_a = Pt @ vstack(-R, GRMatrix.identity(q, extra))
    theta_b = GRMatrix(q, [[random_element(q, rng) for _ in range(b)] for _ in range(c)], c, b)
    return SplitInstance(hstack(theta_a, theta_b), a, kernel_a)


def split_complex(inst: SplitInstance, alpha: GRMatrix) -> list[GRMatrix]:
    """``0 -> ker_A + B -> A + B -> C -> 0`` as ``[d1, d2]`` with
    ``d1 = theta`` and ``d2 = phi o (kernel_A + id) = [[K_A, -alpha], [0, I]]``."""
    q = inst.theta.group
    b = inst.theta.cols - inst.split
    k = inst.kernel_a.cols
    d2 = block([
        [inst.kernel_a, -alpha],
        [GRMatrix.zeros(q, b, k), GRMatrix.identity(q, b)],
    ])
    return [inst.theta, d2]


# -- equivariant kernel lift -----------------------------------------------

def equivariant_kernel_lift(d: Matrix, q: FiniteGroup, cols: int | None = None) -> dict:
    """Lift a Z-basis of ``ker d`` to ``(ZQ)^n`` for the scalar map ``d``.

    Certificate: the flattened upstairs kernel has rank ``|Q| a`` where ``a``
    is the downstairs kernel rank, and the translates ``v g`` of the lifts
    are independent and span that kernel exactly.
    """
    r, c = snf.shape(d, cols)
    n = q.order
    down = snf.integer_kernel_basis(d, c)
    up = GRMatrix.from_integers(q, d, c)
    lifts = [[GroupRingElem.scalar(q, x) for x in v] for v in down]
    flat_up = flatten(up)
    ker_up = snf.integer_kernel_basis(flat_up, c * n)
    translates = [right_translate(q, flatten_vector(v), g) for v in lifts for g in range(n)]
    in_kernel = all(not any(snf.mat_vec(flat_up, t)) for t in translates)
    if translates:
        res = snf.smith_normal_form(snf.transpose(translates), len(translates))
        independent = res.rank == len(translates)
        saturated = all(x == 1 for x in res.invariant_factors)
    else:
        independent = saturated = True
    checks = {
        "rank_equality": len(ker_up) == n * len(down),
        "lifts_in_kernel": in_kernel,
        "independent": independent,
        "spans_kernel": saturated and len(translates) == len(ker_up),
    }
    return {
        "downstairs_rank": len(down),
        "upstairs_rank": len(ker_up),
        "basis": lifts,
        "checks": checks,
        "free": all(checks.values()),
    }


# -- chain and cochain checks ----------------------------------------------

def chain_check(maps: Sequence[GRMatrix]) -> dict:
    """Homology of ``C_k -> ... -> C_1 -> C_0`` given as ``[d1, ..., dk]``
    with ``d_i : C_i -> C_(i-1)``.

    For each degree the flattened homology is reported as a list of
    invariant factors: torsion coefficients greater than one, then a zero
    for each free summand.
    """
    for lo, hi in zip(maps, maps[1:]):
        if lo.cols != hi.rows:
            raise DimensionError(f"maps of shapes {lo.shape} and {hi.shape} do not compose")
    if not maps:
        return {"boundary_squared_zero": True, "homology": {}, "acyclic": True}
    n = maps[0].group.order
    dims = [maps[0].rows * n] + [m.cols * n for m in maps]
    flats = [flatten(m) for m in maps]
    snfs = [snf.smith_normal_form(f, dims[i + 1]) for i, f in enumerate(flats)]
    squared = all(
        snf.is_zero(snf.matmul(flats[i], flats[i + 1], dims[i + 2])) for i in range(len(flats) - 1)
    )
    homology = {}
    for k in range(len(dims)):
        rank_out = snfs[k - 1].rank if k >= 1 else 0  # rank of d_k
        incoming = snfs[k] if k < len(snfs) else None  # d_(k+1)
        rank_in = incoming.rank if incoming else 0
        torsion = [x for x in incoming.invariant_factors if x > 1] if incoming else []
        free = dims[k] - rank_out - rank_in
        homology[k] = torsion + [0] * free
    return {
        "boundary_squared_zero": squared,
        "homology": homology,
        "acyclic": squared and all(not h for h in homology.values()),
    }


def section_of(d: GRMatrix) -> GRMatrix:
    """A ZQ-map ``iota`` with ``d iota = 1`` (needs ``d`` onto)."""
    iota = solve_zq(d, GRMatrix.identity(d.group, d.rows))
    if iota is None:
        raise PreconditionError("map is not onto, so it has no section")
    return iota


def cocompact_dual_check(d2: GRMatrix, d3: GRMatrix | None = None, iota: GRMatrix | None = None) -> dict:
    """Dual of an acyclic complex ``0 -> C3 -> C2 -> C1 -> 0``.

    With ``delta2 = d2^T`` and ``delta3 = d3^T`` on the flattening, checks that
    ``delta2`` is injective, ``delta3`` is onto and ``im delta2 = ker delta3``.
    The section ``iota`` of ``d2`` (computed if not given) certifies
    ``C2 = d3(C3) + iota(C1)``.
    """
    q = d2.group
    n = q.order
    if d3 is None:
        d3 = GRMatrix.zeros(q, d2.cols, 0)
    report = chain_check([d2, d3])
    if not report["acyclic"]:
        raise PreconditionError(f"complex is not acyclic: homology {report['homology']}")
    if iota is None:
        iota = section_of(d2)
    if not (d2 @ iota == GRMatrix.identity(q, d2.rows)):
        raise PreconditionError("supplied iota is not a section of d2")
    c1, c2, c3 = d2.rows * n, d2.cols * n, d3.cols * n
    f2, f3 = flatten(d2), flatten(d3)
    # C2 = d3(C3) + iota(C1): the combined columns form a unimodular matrix
    combined = hstack(d3, iota)
    decomposition = snf.is_unimodular(flatten(combined)) if c2 else True
    delta2 = snf.transpose(f2, c2)  # C^1 -> C^2
    delta3 = snf.transpose(f3, c3)  # C^2 -> C^3
    s2 = snf.smith_normal_form(delta2, c1)
    injective = s2.rank == c1
    surjective = snf.is_onto(delta3, c2) if c3 else True
    ker3 = snf.integer_kernel_basis(delta3, c2) if c3 else [[int(i == j) for i in range(c2)] for j in range(c2)]
    image_in_kernel = snf.is_zero(snf.matmul(delta3, delta2, c1)) if c3 and c1 else True
    kernel_in_image = all(snf.solve(delta2, v, c1, snf=s2) is not None for v in ker3)
    checks = {
        "section_splits": decomposition,
        "delta2_injective": injective,
        "delta3_surjective": surjective,
        "image_equals_kernel": image_in_kernel and kernel_in_image,
    }
    return {"checks": checks, "ok": all(checks.values())}


# -- JSON ------------------------------------------------------------------

def group_to_json(q: FiniteGroup) -> dict:
    return {"table": q.table, "name": q.name}


def group_from_json(data) -> FiniteGroup:
    if isinstance(data, str):
        return named_group(data)
    return FiniteGroup(data["table"], data.get("name", ""))


def named_group(name: str) -> FiniteGroup:
    if name == "S3":
        return symmetric3()
    if name.startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")


def matrix_to_json(m: GRMatrix) -> dict:
    return {"group": group_to_json(m.group), "rows": m.rows, "cols": m.cols, "entries": m.to_coeffs()}


def matrix_from_json(data: dict, q: FiniteGroup | None = None) -> GRMatrix:
    q = q or group_from_json(data["group"])
    return GRMatrix.from_coeffs(q, data["entries"], data.get("rows"), data.get("cols"))
