"""The free product S = P1 * P2 of two copies of V, its direct powers S^n,
partial conjugations, and the factor pattern of homomorphisms S^n -> S^m."""

from __future__ import annotations

import random
from typing import Callable, Iterable, Sequence

from . import thompson
from .thompson import TreePair, element_of_order, order

# fixed probe set: two generators of V in each factor copy
PROBE_V = (thompson.A, thompson.C)


class FPElement:
    """A reduced word in ``P1 * P2``: syllables ``(factor, v)`` with ``v != 1``
    and alternating factors."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple[int, TreePair]] = ()):
        self.syllables: tuple[tuple[int, TreePair], ...] = _reduce(syllables)

    @classmethod
    def letter(cls, factor: int, v: TreePair) -> "FPElement":
        return cls([(factor, v)])

    def __mul__(self, other: "FPElement") -> "FPElement":
        return fp_multiply(self, other)

    def __invert__(self) -> "FPElement":
        return fp_inverse(self)

    def __eq__(self, other):
        if not isinstance(other, FPElement):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __len__(self):
        return len(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __repr__(self):
        return "FPElement(" + " ".join(f"[P{f}:{v!r}]" for f, v in self.syllables) + ")"


def _reduce(syllables) -> tuple:
    out: list[tuple[int, TreePair]] = []
    for factor, v in syllables:
        if factor not in (1, 2):
            raise ValueError(f"factor must be 1 or 2, got {factor}")
        v = v.reduce()
        if out and out[-1][0] == factor:
            v = out.pop()[1] * v
        if not v.is_identity():
            out.append((factor, v))
    return tuple(out)


IDENTITY = FPElement()


def fp_reduce(syllables) -> FPElement:
    return FPElement(syllables)


def fp_multiply(a: FPElement, b: FPElement) -> FPElement:
    if not a.syllables:
        return b
    if not b.syllables:
        return a
    # only the boundary can merge or cancel
    left = list(a.syllables)
    right = b.syllables
    k = 0
    while left and k < len(right) and left[-1][0] == right[k][0]:
        f, v = left.pop()
        v = v * right[k][1]
        k += 1
        if not v.is_identity():
            left.append((f, v))
            break
    out = object.__new__(FPElement)
    out.syllables = tuple(left) + right[k:]
    return out


def fp_inverse(a: FPElement) -> FPElement:
    out = object.__new__(FPElement)
    out.syllables = tuple((f, ~v) for f, v in reversed(a.syllables))
    return out


def fp_equal(a: FPElement, b: FPElement) -> bool:
    return a == b


# -- partial conjugation ---------------------------------------------------

def partial_conjugation(u: TreePair, w: FPElement, power: int = 1) -> FPElement:
    """Apply ``phi_u^power``: fix P1, send ``x`` in P2 to ``u x u^-1``.

    ``u`` lives in P1, so ``u x u^-1`` is the three-syllable word
    ``[P1:u][P2:x][P1:u^-1]`` before re-reduction. Powers use
    ``phi_u^k = phi_{u^k}``.
    """
    uk = thompson.power(u, power)
    if uk.is_identity():
        return w
    uinv = ~uk
    out = []
    for f, v in w.syllables:
        if f == 1:
            out.append((1, v))
        else:
            out += [(1, uk), (2, v), (1, uinv)]
    return FPElement(out)


def apply_partial_conjugation_iterated(u: TreePair, w: FPElement, times: int) -> FPElement:
    """``phi_u`` applied ``times`` times, one application at a time."""
    for _ in range(times):
        w = partial_conjugation(u, w)
    return w


class InfiniteOrder(ValueError):
    pass


def automorphism_order_check(
    u: TreePair,
    sample: Sequence[FPElement],
    cap: int = 64,
    witness: FPElement | None = None,
) -> dict:
    """Certify that ``phi_u`` has order exactly ``order(u)`` on ``Aut(S)``.

    ``phi_u^p`` must fix every sample word, and some P2 syllable must move
    under ``phi_u^k`` for every ``0 < k < p``. Only the automorphism level is
    checked; whether the class in ``Out(S)`` has the same order is not decided.
    """
    p = order(u, cap)
    if p is None:
        raise InfiniteOrder(f"u has no finite order within cap {cap}")
    fixed = all(apply_partial_conjugation_iterated(u, w, p) == w for w in sample)
    if witness is None:
        witness = next(
            (FPElement.letter(2, v) for w in sample for f, v in w.syllables if f == 2),
            FPElement.letter(2, thompson.C),
        )
    moved = []
    x = witness
    for _ in range(1, p):
        x = partial_conjugation(u, x)
        moved.append(x != witness)
    return {
        "order": p,
        "power_fixes_sample": fixed,
        "lower_powers_move_witness": all(moved),
        "ok": fixed and all(moved),
    }


# -- direct powers S^n -----------------------------------------------------

TupleElement = tuple  # tuple of FPElement, one per factor of S^n


def tuple_identity(n: int) -> TupleElement:
    return (IDENTITY,) * n


def tuple_multiply(a: TupleElement, b: TupleElement) -> TupleElement:
    if len(a) != len(b):
        raise ValueError("tuple length mismatch")
    return tuple(x * y for x, y in zip(a, b))


def tuple_inverse(a: TupleElement) -> TupleElement:
    return tuple(~x for x in a)


def tuple_is_identity(a: TupleElement) -> bool:
    return all(x.is_identity() for x in a)


def tuple_automorphism(seq: Sequence[int], t: TupleElement, power: int = 1) -> TupleElement:
    """Componentwise ``phi_{u_i}^power`` with ``u_i = element_of_order(seq[i])``."""
    if len(seq) != len(t):
        raise ValueError(f"sequence has length {len(seq)} but tuple has {len(t)}")
    out = []
    for p, x in zip(seq, t):
        k = power % p
        out.append(partial_conjugation(element_of_order(p), x, k) if k else x)
    return tuple(out)


# -- homomorphisms S^n -> S^m ----------------------------------------------

def probe_generators() -> list[FPElement]:
    return [FPElement.letter(f, v) for f in (1, 2) for v in PROBE_V]


def probe_images(hom: Callable[[TupleElement], TupleElement], n: int) -> list[list[TupleElement]]:
    """Images under ``hom`` of the probe generators of each factor ``S_i``."""
    images = []
    for i in range(n):
        row = []
        for g in probe_generators():
            t = list(tuple_identity(n))
            t[i] = g
            row.append(hom(tuple(t)))
        images.append(row)
    return images


def straightening_pattern(images: Sequence[Sequence[TupleElement]], m: int | None = None) -> dict:
    """Triviality pattern of a homomorphism ``S^n -> S^m`` given on probes.

    ``pattern[i][j]`` is true when some probe generator of ``S_i`` has a
    nontrivial ``j``-th coordinate.
    """
    n = len(images)
    if m is None:
        m = len(images[0][0]) if n and images[0] else 0
    pattern = [[any(not img[j].is_identity() for img in images[i]) for j in range(m)] for i in range(n)]
    rows = [sum(r) for r in pattern]
    cols = [sum(pattern[i][j] for i in range(n)) for j in range(m)]
    if all(c == 1 for c in cols) and all(r == 1 for r in rows):
        kind = "permutation"
    elif all(c == 1 for c in cols) and all(r <= 1 for r in rows):
        kind = "injection"
    else:
        kind = "other"
    return {"pattern": pattern, "classification": kind}


# -- serialization and sampling --------------------------------------------

def to_json(w: FPElement) -> list:
    return [{"factor": f, "element": thompson.to_json(v)} for f, v in w.syllables]


def from_json(data: list) -> FPElement:
    return FPElement((int(s["factor"]), thompson.from_json(s["element"])) for s in data)


def random_fp_element(rng: random.Random, max_syllables: int = 3, max_leaves: int = 4) -> FPElement:
    k = rng.randint(0, max_syllables)
    f = rng.choice((1, 2))
    syl = []
    for _ in range(k):
        v = thompson.random_tree_pair(rng, max_leaves)
        while v.is_identity():
            v = thompson.random_tree_pair(rng, max_leaves)
        syl.append((f, v))
        f = 3 - f
    return FPElement(syl)


def random_tuple(rng: random.Random, n: int, **kw) -> TupleElement:
    return tuple(random_fp_element(rng, **kw) for _ in range(n))
