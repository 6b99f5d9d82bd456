"""Finite presentations, semi-direct product presentations and normal forms,
the tower G_0 <- G_1 <- ... of Baumslag-Solitar amalgams, and an exact model
of BS(1,2) = <t, x | x = t x^2 t^-1>.

A word is a tuple of ``(generator, exponent)`` letters with exponent +1 or -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

Letter = tuple[str, int]
GenWord = tuple[Letter, ...]

EMPTY: GenWord = ()


class PresentationError(ValueError):
    pass


# -- words -----------------------------------------------------------------

def word(*letters) -> GenWord:
    """Build a word from names (``"a"``), inverse names (``"a^-1"``) or pairs."""
    out = []
    for x in letters:
        if isinstance(x, str):
            out.extend(parse_word(x))
        else:
            name, e = x
            out.append((name, int(e)))
    return check_word(out)


_TOKEN = re.compile(r"([A-Za-z_][\w.]*)(?:\^(-?\d+))?")


def parse_word(s: str) -> GenWord:
    """Parse ``"a b^-1 c^3"``; exponents expand into repeated letters."""
    out: list[Letter] = []
    for tok in s.split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise PresentationError(f"cannot parse letter {tok!r}")
        e = int(m.group(2)) if m.group(2) else 1
        out += [(m.group(1), 1 if e > 0 else -1)] * abs(e)
    return tuple(out)


def word_to_str(w: GenWord) -> str:
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in w) or "1"


def check_word(w) -> GenWord:
    w = tuple((str(g), int(e)) for g, e in w)
    for g, e in w:
        if e not in (1, -1):
            raise PresentationError(f"exponent of {g!r} must be +1 or -1, got {e}")
    return w


def free_reduce(w: Sequence[Letter]) -> GenWord:
    out: list[Letter] = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse_word(w: Sequence[Letter]) -> GenWord:
    return tuple((g, -e) for g, e in reversed(w))


def concat(*words: Sequence[Letter]) -> GenWord:
    out: list[Letter] = []
    for w in words:
        out.extend(w)
    return free_reduce(out)


def substitute(w: Sequence[Letter], images: Mapping[str, GenWord]) -> GenWord:
    """Apply the free-group map ``g -> images[g]`` (letters not in ``images``
    are left alone)."""
    out: list[Letter] = []
    for g, e in w:
        img = images.get(g)
        if img is None:
            out.append((g, e))
        else:
            out.extend(img if e == 1 else inverse_word(img))
    return free_reduce(out)


# -- presentations ---------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[GenWord, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = tuple(check_word(r) for r in self.relators)
        if len(set(gens)) != len(gens):
            raise PresentationError(f"repeated generator in {gens}")
        known = set(gens)
        for r in rels:
            for g, _ in r:
                if g not in known:
                    raise PresentationError(f"relator {word_to_str(r)} uses undeclared generator {g!r}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    def reduced(self) -> "Presentation":
        return Presentation(self.generators, tuple(free_reduce(r) for r in self.relators))


def presentation_to_json(p: Presentation) -> dict:
    return {"generators": list(p.generators), "relators": [[[g, e] for g, e in r] for r in p.relators]}


def presentation_from_json(data: Mapping) -> Presentation:
    try:
        return Presentation(tuple(data["generators"]), tuple(check_word(r) for r in data.get("relators", [])))
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"bad presentation JSON: {exc}") from None


def word_to_json(w: GenWord) -> list:
    return [[g, e] for g, e in w]


def word_from_json(data) -> GenWord:
    if isinstance(data, str):
        return parse_word(data)
    return check_word(data)


# -- semi-direct products --------------------------------------------------

@dataclass(frozen=True)
class SemidirectData:
    """``action[(b, a)]`` is the word ``psi(b)(a)`` in the k-generators, i.e.
    ``b a b^-1``. ``inverse_action[(b, a)]`` is ``b^-1 a b``; it is only
    needed when inverse q-letters have to cross k-letters."""

    k_gens: tuple[str, ...]
    q_gens: tuple[str, ...]
    action: Mapping[tuple[str, str], GenWord]
    inverse_action: Mapping[tuple[str, str], GenWord] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "k_gens", tuple(self.k_gens))
        object.__setattr__(self, "q_gens", tuple(self.q_gens))
        if set(self.k_gens) & set(self.q_gens):
            raise PresentationError("k- and q-generators must be disjoint")
        ks = set(self.k_gens)
        for table in (self.action, self.inverse_action):
            for (b, a), w in table.items():
                if b not in self.q_gens or a not in ks:
                    raise PresentationError(f"action entry ({b}, {a}) names an unknown generator")
                for g, _ in w:
                    if g not in ks:
                        raise PresentationError(f"action word for ({b}, {a}) uses non-kernel letter {g!r}")

    def letter_action(self, b: str, e: int) -> dict[str, GenWord]:
        table = self.action if e == 1 else self.inverse_action
        out = {}
        for a in self.k_gens:
            w = table.get((b, a))
            if w is None:
                kind = "action" if e == 1 else "inverse action"
                raise PresentationError(f"missing {kind} for pair ({b}{'' if e == 1 else '^-1'}, {a})")
            out[a] = tuple(w)
        return out


def semidirect_presentation(pres_k: Presentation, pres_q: Presentation, sd: SemidirectData) -> Presentation:
    """``<k, q | rel_k, rel_q, b a b^-1 psi(b)(a)^-1>`` with one slide relator
    per (q-generator, k-generator) pair."""
    if tuple(pres_k.generators) != sd.k_gens or tuple(pres_q.generators) != sd.q_gens:
        raise PresentationError("presentation generators do not match the semi-direct data")
    slides = []
    for b in sd.q_gens:
        images = sd.letter_action(b, 1)
        for a in sd.k_gens:
            slides.append(((b, 1), (a, 1), (b, -1)) + inverse_word(images[a]))
    return Presentation(sd.k_gens + sd.q_gens, pres_k.relators + pres_q.relators + tuple(slides))


def direct_product_presentation(pres_k: Presentation, pres_q: Presentation) -> Presentation:
    comms = tuple(((b, 1), (a, 1), (b, -1), (a, -1)) for b in pres_q.generators for a in pres_k.generators)
    return Presentation(pres_k.generators + pres_q.generators, pres_k.relators + pres_q.relators + comms)


def normal_form(w: Sequence[Letter], sd: SemidirectData) -> GenWord:
    """Rewrite ``w`` as (k-word)(q-word) using ``b a = psi(b)(a) b`` and, for
    inverse q-letters, ``b^-1 a = psi(b)^-1(a) b^-1``.

    The word is read left to right keeping the prefix as ``K Q``. A k-letter
    ``a`` is moved across all of ``Q`` at once (``K Q a = K (Q a Q^-1) Q``), so
    each letter costs one substitution per q-letter of ``Q``.
    """
    ks, qs = set(sd.k_gens), set(sd.q_gens)
    maps: dict[Letter, dict[str, GenWord]] = {}
    k_part: list[Letter] = []
    q_part: list[Letter] = []
    for g, e in w:
        if g in ks:
            piece: GenWord = ((g, e),)
            for b in reversed(q_part):
                m = maps.get(b)
                if m is None:
                    m = maps[b] = sd.letter_action(*b)
                piece = substitute(piece, m)
            k_part = list(free_reduce(k_part + list(piece)))
        elif g in qs:
            if q_part and q_part[-1] == (g, -e):
                q_part.pop()
            else:
                q_part.append((g, e))
        else:
            raise PresentationError(f"letter {g!r} is neither a k- nor a q-generator")
    return tuple(k_part) + tuple(q_part)


def is_normal(w: Sequence[Letter], sd: SemidirectData) -> bool:
    ks = set(sd.k_gens)
    seen_q = False
    for g, _ in w:
        if g in ks:
            if seen_q:
                return False
        else:
            seen_q = True
    return True


def q_image(w: Sequence[Letter], sd: SemidirectData) -> GenWord:
    """Image under the retraction that kills every k-generator."""
    qs = set(sd.q_gens)
    return free_reduce([(g, e) for g, e in w if g in qs])


# -- homomorphisms given by generator images -------------------------------

@dataclass(frozen=True)
class GroupOps:
    """What ``verify_hom`` needs from a target group."""

    multiply: Callable[[Any, Any], Any]
    inverse: Callable[[Any], Any]
    identity: Any
    is_identity: Callable[[Any], bool]


FREE_GROUP = GroupOps(
    multiply=lambda a, b: concat(a, b),
    inverse=inverse_word,
    identity=EMPTY,
    is_identity=lambda w: not free_reduce(w),
)


class UnmappedGenerator(PresentationError):
    pass


def evaluate(w: Sequence[Letter], target: GroupOps, images: Mapping[str, Any]):
    x = target.identity
    inv_cache: dict[str, Any] = {}
    for g, e in w:
        if g not in images:
            raise UnmappedGenerator(f"generator {g!r} has no image")
        y = images[g]
        if e == -1:
            if g not in inv_cache:
                inv_cache[g] = target.inverse(y)
            y = inv_cache[g]
        x = target.multiply(x, y)
    return x


def verify_hom(pres: Presentation, target: GroupOps, images: Mapping[str, Any]) -> dict:
    """Check that every relator maps to the identity.

    Returns ``{"ok": True}`` or ``{"ok": False, "index": i, "relator": r}``
    for the first relator that fails.
    """
    for g in pres.generators:
        if g not in images:
            raise UnmappedGenerator(f"generator {g!r} has no image")
    for i, r in enumerate(pres.relators):
        if not target.is_identity(evaluate(r, target, images)):
            return {"ok": False, "index": i, "relator": r}
    return {"ok": True}


# -- the tower G_j ---------------------------------------------------------

def _t_names(t0: str, j: int) -> list[str]:
    m = re.fullmatch(r"(.*?)(\d*)", t0)
    base, digits = m.group(1), m.group(2)
    start = int(digits) if digits else 0
    return [t0] + [f"{base}{start + i}" for i in range(1, j + 1)]


def gt_tower_presentation(pres0: Presentation, t0: str, j: int) -> Presentation:
    """``G_j = <A_0, t_1..t_j | R_0, t_i^-1 [t_i, t_(i-1)]>`` with
    ``[a, b] = a^-1 b^-1 a b``."""
    if t0 not in pres0.generators:
        raise PresentationError(f"{t0!r} is not a generator of G_0")
    if j < 0:
        raise PresentationError("level must be non-negative")
    names = _t_names(t0, j)
    clash = set(names[1:]) & set(pres0.generators)
    if clash:
        raise PresentationError(f"new generator names collide with G_0: {sorted(clash)}")
    rels = []
    for i in range(1, j + 1):
        ti, tp = names[i], names[i - 1]
        rels.append(((ti, -1), (ti, -1), (tp, -1), (ti, 1), (tp, 1)))
    return Presentation(pres0.generators + tuple(names[1:]), pres0.relators + tuple(rels))


def gt_tower_epi(pres0: Presentation, t0: str, j: int) -> dict[str, GenWord]:
    """Generator images of ``r_j: G_j -> G_(j-1)``: ``t_j`` dies, the rest are fixed."""
    if j < 1:
        raise PresentationError("r_j needs j >= 1")
    pres = gt_tower_presentation(pres0, t0, j)
    tj = _t_names(t0, j)[-1]
    return {g: (EMPTY if g == tj else ((g, 1),)) for g in pres.generators}


def compose_maps(outer: Mapping[str, GenWord], inner: Mapping[str, GenWord]) -> dict[str, GenWord]:
    """``outer o inner`` for maps given by generator images."""
    return {g: substitute(w, outer) for g, w in inner.items()}


def check_tower_epi(pres0: Presentation, t0: str, j: int) -> dict:
    """Symbolic check of ``r_j``: each relator of ``G_j`` maps to a relator of
    ``G_(j-1)`` or to a word that freely reduces to the empty word."""
    source = gt_tower_presentation(pres0, t0, j)
    target = gt_tower_presentation(pres0, t0, j - 1)
    images = gt_tower_epi(pres0, t0, j)
    target_rels = {free_reduce(r) for r in target.relators}
    rows = []
    for r in source.relators:
        img = substitute(r, images)
        rows.append({"relator": r, "image": img, "empty": not img, "is_target_relator": img in target_rels})
    ok = all(row["empty"] or row["is_target_relator"] for row in rows)
    return {"ok": ok, "relators": rows}


# -- BS(1,2) ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Dyadic:
    """``m * 2^e`` with ``m`` odd, or ``m = e = 0``."""

    m: int
    e: int = 0

    def __post_init__(self):
        m, e = self.m, self.e
        if m == 0:
            e = 0
        else:
            while m % 2 == 0:
                m //= 2
                e += 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        if self.m == 0:
            return other
        if other.m == 0:
            return self
        e = min(self.e, other.e)
        return Dyadic((self.m << (self.e - e)) + (other.m << (other.e - e)), e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def shift(self, k: int) -> "Dyadic":
        """Multiply by ``2^k``."""
        return Dyadic(self.m, self.e + k) if self.m else self

    def as_fraction(self):
        from fractions import Fraction

        return Fraction(self.m) * Fraction(2) ** self.e


ZERO = Dyadic(0)


@dataclass(frozen=True)
class BSElement:
    """The matrix ``[[2^-k, a], [0, 1]]``."""

    k: int
    a: Dyadic = ZERO

    def __mul__(self, other: "BSElement") -> "BSElement":
        return bs_multiply(self, other)

    def __invert__(self) -> "BSElement":
        return bs_inverse(self)

    def is_identity(self) -> bool:
        return self.k == 0 and self.a.m == 0


def bs_multiply(x: BSElement, y: BSElement) -> BSElement:
    return BSElement(x.k + y.k, x.a + y.a.shift(-x.k))


def bs_inverse(x: BSElement) -> BSElement:
    return BSElement(-x.k, (-x.a).shift(x.k))


def bs_project(x: BSElement) -> int:
    return x.k


BS_IDENTITY = BSElement(0, ZERO)
BS_T = BSElement(1, ZERO)
BS_X = BSElement(0, Dyadic(1))

BS_GROUP = GroupOps(bs_multiply, bs_inverse, BS_IDENTITY, BSElement.is_identity)

BS_PRESENTATION = Presentation(("t", "x"), (parse_word("t x x t^-1 x^-1"),))
