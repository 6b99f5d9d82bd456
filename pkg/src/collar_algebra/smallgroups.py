"""Permutation models of every group of order at most 24, plus A5, S5 and A5 x A5.

Small groups are built from explicit multiplication rules and turned into
permutation groups by the left regular representation. Most of them are
metacyclic extensions ``<a, x | a^m, x^n = a^s, x a x^-1 = a^r>``; the rest
are semidirect products of an abelian group by a cyclic group, direct
products, or matrix groups.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Callable, Hashable

from .perm import PermGroup, Permutation, generate

# Number of isomorphism classes of groups of each order (OEIS A000001).
GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2,
    23: 1, 24: 15,
}


class RuleGroup:
    """A finite group given by an element list, a product rule and generators."""

    def __init__(self, elements, mul: Callable, gens):
        self.elements = list(elements)
        self.mul = mul
        self.gens = list(gens)

    def __len__(self):
        return len(self.elements)


def regular_representation(g: RuleGroup) -> PermGroup:
    index = {x: i for i, x in enumerate(g.elements)}
    perms = [
        Permutation(tuple(index[g.mul(s, x)] for x in g.elements)) for s in g.gens
    ]
    return generate(perms, degree=len(g.elements))


def metacyclic(m: int, n: int, r: int, s: int = 0) -> RuleGroup:
    """``<a, x | a^m = 1, x^n = a^s, x a x^-1 = a^r>`` with elements ``a^i x^j``."""
    if pow(r, n, m) != 1 % m or (r * s - s) % m:
        raise ValueError("inconsistent metacyclic data")

    def mul(p, q):
        i, j = p
        k, l = q
        a = (i + pow(r, j, m) * k) % m
        b = j + l
        if b >= n:
            a = (a + s) % m
            b -= n
        return (a, b)

    elements = [(i, j) for i in range(m) for j in range(n)]
    return RuleGroup(elements, mul, [(1 % m, 0), (0, 1 % n)])


def cyclic(n: int) -> RuleGroup:
    return metacyclic(n, 1, 1)


def dihedral(order: int) -> RuleGroup:
    return metacyclic(order // 2, 2, order // 2 - 1)


def dicyclic(order: int) -> RuleGroup:
    m = order // 2
    return metacyclic(m, 2, m - 1, m // 2)


def abelian_by_cyclic(moduli: tuple[int, ...], images: list[tuple[int, ...]], n: int) -> RuleGroup:
    """``(Z_m1 x ... x Z_mk) x| Z_n``; the generator of ``Z_n`` sends basis
    vector ``e_i`` to ``images[i]``."""
    k = len(moduli)

    def act(v):
        out = [0] * k
        for i, c in enumerate(v):
            for t in range(k):
                out[t] += c * images[i][t]
        return tuple(o % moduli[t] for t, o in enumerate(out))

    def act_pow(v, j):
        for _ in range(j):
            v = act(v)
        return v

    for i in range(k):
        e = tuple(1 if t == i else 0 for t in range(k))
        if act_pow(e, n) != tuple(x % moduli[t] for t, x in enumerate(e)):
            raise ValueError("action does not have order dividing n")

    def mul(p, q):
        v, j = p
        w, l = q
        w2 = act_pow(w, j)
        return (tuple((a + b) % moduli[t] for t, (a, b) in enumerate(zip(v, w2))), (j + l) % n)

    vecs = list(product(*(range(m) for m in moduli)))
    elements = [(v, j) for v in vecs for j in range(n)]
    gens = [(tuple(1 if t == i else 0 for t in range(k)), 0) for i in range(k)]
    gens.append((tuple(0 for _ in moduli), 1 % n))
    return RuleGroup(elements, mul, gens)


def direct(*groups: RuleGroup) -> RuleGroup:
    def mul(p, q):
        return tuple(g.mul(a, b) for g, a, b in zip(groups, p, q))

    ids = [_identity(g) for g in groups]
    elements = list(product(*(g.elements for g in groups)))
    gens = []
    for i, g in enumerate(groups):
        for s in g.gens:
            gens.append(tuple(s if t == i else ids[t] for t in range(len(groups))))
    return RuleGroup(elements, mul, gens)


def _identity(g: RuleGroup) -> Hashable:
    x = g.elements[0]
    for y in g.elements:
        if g.mul(y, x) == x:
            return y
    raise ValueError("no identity")


def symmetric_rule(n: int) -> RuleGroup:
    elements = list(permutations(range(n)))

    def mul(p, q):
        return tuple(p[i] for i in q)

    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else []
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return RuleGroup(elements, mul, gens)


def alternating_rule(n: int) -> RuleGroup:
    def even(p):
        seen, parity = set(), 0
        for i in range(n):
            if i in seen:
                continue
            j, length = i, 0
            while j not in seen:
                seen.add(j)
                j = p[j]
                length += 1
            parity += length - 1
        return parity % 2 == 0

    elements = [p for p in permutations(range(n)) if even(p)]

    def mul(p, q):
        return tuple(p[i] for i in q)

    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    if n >= 4:
        gens.append(tuple([0] + list(range(2, n)) + [1]) if n % 2 == 0 else tuple(list(range(1, n)) + [0]))
    return RuleGroup(elements, mul, gens)


def sl2_3() -> RuleGroup:
    mats = [
        (a, b, c, d)
        for a, b, c, d in product(range(3), repeat=4)
        if (a * d - b * c) % 3 == 1
    ]

    def mul(p, q):
        a, b, c, d = p
        e, f, g, h = q
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return RuleGroup(mats, mul, [(1, 1, 0, 1), (1, 0, 1, 1)])


def _catalogue() -> list[tuple[str, RuleGroup]]:
    C = cyclic
    out = [("C1", C(1))]
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23):
        out.append((f"C{p}", C(p)))
    out += [("C4", C(4)), ("C2xC2", direct(C(2), C(2)))]
    out += [("C6", C(6)), ("S3", dihedral(6))]
    out += [
        ("C8", C(8)), ("C4xC2", direct(C(4), C(2))), ("C2^3", direct(C(2), C(2), C(2))),
        ("D8", dihedral(8)), ("Q8", dicyclic(8)),
    ]
    out += [("C9", C(9)), ("C3xC3", direct(C(3), C(3)))]
    out += [("C10", C(10)), ("D10", dihedral(10))]
    out += [
        ("C12", C(12)), ("C6xC2", direct(C(6), C(2))), ("D12", dihedral(12)),
        ("A4", alternating_rule(4)), ("Dic3", dicyclic(12)),
    ]
    out += [("C14", C(14)), ("D14", dihedral(14))]
    out += [("C15", C(15))]
    out += [
        ("C16", C(16)),
        ("C4xC4", direct(C(4), C(4))),
        ("(C4xC2):C2", abelian_by_cyclic((4, 2), [(1, 1), (0, 1)], 2)),
        ("C4:C4", metacyclic(4, 4, 3)),
        ("C8xC2", direct(C(8), C(2))),
        ("M16", metacyclic(8, 2, 5)),
        ("D16", dihedral(16)),
        ("SD16", metacyclic(8, 2, 3)),
        ("Q16", dicyclic(16)),
        ("C4xC2xC2", direct(C(4), C(2), C(2))),
        ("D8xC2", direct(dihedral(8), C(2))),
        ("Q8xC2", direct(dicyclic(8), C(2))),
        ("Pauli", abelian_by_cyclic((4, 2), [(1, 0), (2, 1)], 2)),
        ("C2^4", direct(C(2), C(2), C(2), C(2))),
    ]
    out += [
        ("C18", C(18)), ("C6xC3", direct(C(6), C(3))), ("D18", dihedral(18)),
        ("S3xC3", direct(dihedral(6), C(3))),
        ("(C3xC3):C2", abelian_by_cyclic((3, 3), [(2, 0), (0, 2)], 2)),
    ]
    out += [
        ("C20", C(20)), ("C10xC2", direct(C(10), C(2))), ("D20", dihedral(20)),
        ("Dic5", dicyclic(20)), ("F20", metacyclic(5, 4, 2)),
    ]
    out += [("C21", C(21)), ("C7:C3", metacyclic(7, 3, 2))]
    out += [("C22", C(22)), ("D22", dihedral(22))]
    out += [
        ("C3:C8", metacyclic(3, 8, 2)),
        ("C24", C(24)),
        ("SL(2,3)", sl2_3()),
        ("Dic6", dicyclic(24)),
        ("C4xS3", direct(C(4), dihedral(6))),
        ("D24", dihedral(24)),
        ("C2xDic3", direct(C(2), dicyclic(12))),
        ("C3:D8", abelian_by_cyclic((3, 2, 2), [(2, 0, 0), (0, 1, 0), (0, 1, 1)], 2)),
        ("C12xC2", direct(C(12), C(2))),
        ("C3xD8", direct(C(3), dihedral(8))),
        ("C3xQ8", direct(C(3), dicyclic(8))),
        ("S4", symmetric_rule(4)),
        ("C2xA4", direct(C(2), alternating_rule(4))),
        ("C2^2xS3", direct(C(2), C(2), dihedral(6))),
        ("C6xC2xC2", direct(C(6), C(2), C(2))),
    ]
    return out


def small_groups(max_order: int = 24) -> list[tuple[str, PermGroup]]:
    """Regular permutation models of all groups of order ``<= max_order`` (max 24)."""
    if max_order > 24:
        raise ValueError("catalogue stops at order 24")
    return [(name, regular_representation(g)) for name, g in _catalogue() if len(g) <= max_order]


def symmetric_group(n: int) -> PermGroup:
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, (0, 1)))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, tuple(range(n))))
    return generate(gens, degree=n)


def alternating_group(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, (0, 1, k)) for k in range(2, n)]
    return generate(gens, degree=n)


def a5_x_a5() -> PermGroup:
    """A5 x A5 acting on ten points, factors on {0..4} and {5..9}."""
    gens = []
    for shift in (0, 5):
        gens.append(Permutation.from_cycles(10, (shift, shift + 1, shift + 2)))
        gens.append(Permutation.from_cycles(10, tuple(range(shift, shift + 5))))
    return generate(gens, degree=10)


def fixture_groups() -> list[tuple[str, PermGroup]]:
    return small_groups(24) + [
        ("A5", alternating_group(5)),
        ("S5", symmetric_group(5)),
        ("A5xA5", a5_x_a5()),
    ]
