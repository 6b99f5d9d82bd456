"""Finite permutation groups: closure, derived series, perfect core and the
perfect / hypo-Abelian extension lemmas checked by brute force.

Permutations act on ``{0, ..., n-1}`` and compose right-to-left:
``(a * b)[i] == a[b[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

DEFAULT_CAP = 20_000


class GroupTooLarge(Exception):
    """Raised when a closure exceeds the configured element cap."""


class NotNormal(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for i, point in enumerate(cyc):
                images[point] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return _trusted(tuple(map(self.images.__getitem__, other.images)))

    def __invert__(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return _trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def _trusted(images: tuple[int, ...]) -> Permutation:
    # skips the bijection check for products and inverses of valid permutations
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


def commutator(a: Permutation, b: Permutation) -> Permutation:
    """``[a, b] = a^-1 b^-1 a b``."""
    return ~a * ~b * a * b


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.elements == other.elements

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __le__(self, other: "PermGroup") -> bool:
        return self.elements <= other.elements

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def generate(
    generators: Iterable[Permutation],
    degree: int | None = None,
    cap: int = DEFAULT_CAP,
) -> PermGroup:
    """Enumerate the group generated by ``generators`` (breadth-first closure)."""
    gens = tuple(generators)
    if degree is None:
        degree = gens[0].degree if gens else 0
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share one degree")
    e = Permutation.identity(degree)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLarge(f"closure exceeds cap of {cap} elements")
                queue.append(y)
    return PermGroup(degree, gens, frozenset(seen))


def subgroup(g: PermGroup, generators: Iterable[Permutation], cap: int = DEFAULT_CAP) -> PermGroup:
    return generate(list(generators), degree=g.degree, cap=cap)


def normal_closure(g: PermGroup, seeds: Iterable[Permutation], cap: int = DEFAULT_CAP) -> PermGroup:
    """Smallest normal subgroup of ``g`` containing ``seeds``."""
    e = g.identity()
    elems = {e}
    gens: list[Permutation] = []
    pending = deque(s for s in seeds if not s.is_identity())
    while pending:
        y = pending.popleft()
        if y in elems:
            continue
        gens.append(y)
        # re-close; old products are recomputed but stay bounded by |H| * |gens|
        queue = deque(elems)
        while queue:
            x = queue.popleft()
            for s in gens:
                z = s * x
                if z not in elems:
                    elems.add(z)
                    if len(elems) > cap:
                        raise GroupTooLarge(f"closure exceeds cap of {cap} elements")
                    queue.append(z)
        for x in gens:
            for c in g.generators:
                pending.append(c * x * ~c)
    return PermGroup(g.degree, tuple(gens), frozenset(elems))


def commutator_subgroup(g: PermGroup) -> PermGroup:
    """The derived subgroup ``[g, g]``.

    Computed as the normal closure of the commutators of generator pairs,
    which equals the subgroup generated by all commutators.
    """
    gens = g.generators
    seeds = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(g, seeds)


def derived_series(g: PermGroup) -> list[PermGroup]:
    """``[G, G', G'', ...]`` stopping at the first term equal to its successor."""
    series = [g]
    while True:
        nxt = commutator_subgroup(series[-1])
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def perfect_core(g: PermGroup) -> PermGroup:
    return derived_series(g)[-1]


def is_perfect(g: PermGroup) -> bool:
    return commutator_subgroup(g).order == g.order


def is_hypo_abelian(g: PermGroup) -> bool:
    # finite groups only: the derived series reaches the perfect core
    return perfect_core(g).is_trivial()


def is_normal(g: PermGroup, n: PermGroup) -> bool:
    if not n.elements <= g.elements:
        return False
    return all(c * x * ~c in n.elements for c in g.generators for x in n.generators)


def conjugacy_classes(g: PermGroup) -> list[frozenset]:
    remaining = set(g.elements)
    classes = []
    while remaining:
        x = next(iter(remaining))
        cls = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for c in g.generators:
                z = c * y * ~c
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        remaining -= cls
        classes.append(frozenset(cls))
    return classes


def normal_subgroups(g: PermGroup) -> list[PermGroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes."""
    minimal = {}
    for cls in conjugacy_classes(g):
        h = normal_closure(g, [next(iter(cls))])
        minimal[h.elements] = h
    found = dict(minimal)
    frontier = list(found.values())
    while frontier:
        new = []
        for a in frontier:
            for b in minimal.values():
                if b.elements <= a.elements:
                    continue
                j = subgroup(g, a.generators + b.generators)
                if j.elements not in found:
                    found[j.elements] = j
                    new.append(j)
        frontier = new
    return sorted(found.values(), key=lambda h: h.order)


@dataclass(frozen=True, eq=False)
class Quotient:
    """``g / n`` realized as the action of ``g`` on the left cosets of ``n``."""

    group: PermGroup
    normal: PermGroup
    image: PermGroup
    coset_index: dict = field(repr=False)
    reps: tuple[Permutation, ...] = field(repr=False)

    def __call__(self, x: Permutation) -> Permutation:
        idx = self.coset_index
        return Permutation(tuple(idx[x * r] for r in self.reps))


def quotient(g: PermGroup, n: PermGroup) -> Quotient:
    if not is_normal(g, n):
        raise NotNormal("subgroup is not normal")
    if n.is_trivial():
        return _TrivialQuotient(g, n, g, {}, ())
    index: dict[Permutation, int] = {}
    reps = []
    for x in sorted(g.elements, key=lambda p: p.images):
        if x in index:
            continue
        k = len(reps)
        reps.append(x)
        for y in n.elements:
            index[x * y] = k
    reps_t = tuple(reps)
    gens = [Permutation(tuple(index[c * r] for r in reps_t)) for c in g.generators]
    image = generate(gens, degree=len(reps_t))
    return Quotient(g, n, image, index, reps_t)


class _TrivialQuotient(Quotient):
    # g / {e} is g itself; avoids the regular representation on |g| cosets
    def __call__(self, x: Permutation) -> Permutation:
        return x


def kernel(g: PermGroup, f: Callable[[Permutation], Permutation]) -> PermGroup:
    ker = [x for x in g.elements if f(x).is_identity()]
    return subgroup(g, ker)


@dataclass
class ExtensionReport:
    order: int
    normal_order: int
    quotient_order: int
    kernel_perfect: bool
    quotient_perfect: bool
    group_perfect: bool
    kernel_hypo_abelian: bool
    quotient_hypo_abelian: bool
    group_hypo_abelian: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "normal_order": self.normal_order,
            "quotient_order": self.quotient_order,
            "kernel_perfect": self.kernel_perfect,
            "quotient_perfect": self.quotient_perfect,
            "group_perfect": self.group_perfect,
            "kernel_hypo_abelian": self.kernel_hypo_abelian,
            "quotient_hypo_abelian": self.quotient_hypo_abelian,
            "group_hypo_abelian": self.group_hypo_abelian,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def check_extension_lemmas(g: PermGroup, n: PermGroup) -> ExtensionReport:
    """Check both extension lemmas on ``1 -> n -> g -> g/n -> 1``.

    Perfect-by-perfect must be perfect, hypo-Abelian-by-hypo-Abelian must be
    hypo-Abelian. Any violation is listed in ``failures``.
    """
    q = quotient(g, n).image
    rep = ExtensionReport(
        order=g.order,
        normal_order=n.order,
        quotient_order=q.order,
        kernel_perfect=is_perfect(n),
        quotient_perfect=is_perfect(q),
        group_perfect=is_perfect(g),
        kernel_hypo_abelian=is_hypo_abelian(n),
        quotient_hypo_abelian=is_hypo_abelian(q),
        group_hypo_abelian=is_hypo_abelian(g),
    )
    if rep.kernel_perfect and rep.quotient_perfect and not rep.group_perfect:
        rep.failures.append("perfect-by-perfect extension is not perfect")
    if rep.kernel_hypo_abelian and rep.quotient_hypo_abelian and not rep.group_hypo_abelian:
        rep.failures.append("hypo-Abelian-by-hypo-Abelian extension is not hypo-Abelian")
    return rep


def check_composition_lemma(g: PermGroup, n1: PermGroup, n2: PermGroup) -> dict:
    """Compose ``g -> g/n1 -> (g/n1)/(n2/n1)`` and inspect the composite.

    ``n1 <= n2`` must both be normal in ``g``. When both stages have perfect
    kernels, the composite must be onto with a perfect kernel; the kernel is
    found by enumerating ``g``.
    """
    if not n1.elements <= n2.elements:
        raise ValueError("n1 must be contained in n2")
    first = quotient(g, n1)
    b = first.image
    n2_image = subgroup(b, {first(x) for x in n2.generators})
    second = quotient(b, n2_image)

    def composite(x):
        return second(first(x))

    image = {composite(x) for x in g.elements}
    ker = kernel(g, composite)
    stage_perfect = is_perfect(n1) and is_perfect(n2_image)
    onto = image == set(second.image.elements)
    ker_perfect = is_perfect(ker)
    ok = ker.elements == n2.elements and onto and (ker_perfect or not stage_perfect)
    return {
        "first_kernel_perfect": is_perfect(n1),
        "second_kernel_perfect": is_perfect(n2_image),
        "composite_onto": onto,
        "composite_kernel_order": ker.order,
        "composite_kernel_perfect": ker_perfect,
        "ok": ok,
    }


def perm_to_json(p: Permutation) -> list[int]:
    return list(p.images)


def group_to_json(g: PermGroup) -> dict:
    return {"degree": g.degree, "generators": [perm_to_json(p) for p in g.generators]}


def group_from_json(data: dict, cap: int = DEFAULT_CAP) -> PermGroup:
    degree = int(data["degree"])
    gens = [Permutation(tuple(int(i) for i in p)) for p in data.get("generators", [])]
    return generate(gens, degree=degree, cap=cap)
