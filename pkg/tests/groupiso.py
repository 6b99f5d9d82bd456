"""Brute-force isomorphism testing for small permutation groups (test helper)."""

from collections import Counter, deque
from itertools import product

from collar_algebra.perm import PermGroup, commutator_subgroup, generate


def element_order(x):
    k, y = 1, x
    while not y.is_identity():
        y = y * x
        k += 1
    return k


def invariants(g: PermGroup):
    orders = Counter(element_order(x) for x in g.elements)
    center = sum(1 for x in g.elements if all(x * c == c * x for c in g.generators))
    return (g.order, tuple(sorted(orders.items())), center, commutator_subgroup(g).order)


def _small_generating_set(g: PermGroup):
    gens, span = [], {g.identity()}
    for x in sorted(g.elements, key=lambda p: -element_order(p)):
        if x in span:
            continue
        gens.append(x)
        span = set(generate(gens, degree=g.degree).elements)
        if len(span) == g.order:
            break
    return gens


def are_isomorphic(g: PermGroup, h: PermGroup) -> bool:
    if invariants(g) != invariants(h):
        return False
    gens = _small_generating_set(g)
    by_order = {}
    for y in h.elements:
        by_order.setdefault(element_order(y), []).append(y)
    candidates = [by_order.get(element_order(x), []) for x in gens]
    for images in product(*candidates):
        if _extends(g, gens, images, h.order):
            return True
    return False


def _extends(g, gens, images, target_order):
    e = g.identity()
    f = {e: images[0] * ~images[0]}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = s * x
            fy = t * f[x]
            if y in f:
                if f[y] != fy:
                    return False
            else:
                f[y] = fy
                queue.append(y)
    return len(set(f.values())) == target_order
