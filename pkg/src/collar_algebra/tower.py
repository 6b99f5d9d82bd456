"""The groups G_(w,n) = S^n x| Z indexed by prefixes of increasing prime
sequences, their bonding maps, and decisions about isomorphism,
epimorphism and pro-isomorphism.

The generator of Z acts on the i-th factor of S^n by the partial conjugation
of ``u_i = element_of_order(p_i)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from . import freeprod, thompson
from .freeprod import FPElement, TupleElement, tuple_automorphism
from .presentation import GroupOps, Presentation, SemidirectData, semidirect_presentation

PrimeSeq = tuple[int, ...]


class InvalidPrimeSeq(ValueError):
    pass


class EpiRefused(ValueError):
    def __init__(self, missing: int, source: PrimeSeq, target: PrimeSeq):
        super().__init__(f"no epimorphism {source} -> {target}: prime {missing} is missing from the source")
        self.missing = missing


class VerificationFailed(RuntimeError):
    pass


def prime_seq(xs: Iterable[int]) -> PrimeSeq:
    seq = tuple(int(x) for x in xs)
    for p in seq:
        if not thompson.is_prime(p):
            raise InvalidPrimeSeq(f"{p} is not prime")
    for p, q in zip(seq, seq[1:]):
        if p >= q:
            raise InvalidPrimeSeq(f"sequence {seq} is not strictly increasing")
    return seq


def parse_prime_seq(s: str) -> PrimeSeq:
    s = s.strip()
    if not s:
        return ()
    try:
        return prime_seq(int(x) for x in s.split(","))
    except ValueError as exc:
        if isinstance(exc, InvalidPrimeSeq):
            raise
        raise InvalidPrimeSeq(f"cannot parse prime sequence {s!r}") from None


# -- elements --------------------------------------------------------------

@dataclass(frozen=True)
class TowerElement:
    tuple: TupleElement
    z: int = 0

    @property
    def n(self) -> int:
        return len(self.tuple)

    def is_identity(self) -> bool:
        return self.z == 0 and freeprod.tuple_is_identity(self.tuple)


def tower_identity(n: int) -> TowerElement:
    return TowerElement(freeprod.tuple_identity(n), 0)


def _check(seq: PrimeSeq, *xs: TowerElement):
    for x in xs:
        if x.n != len(seq):
            raise ValueError(f"element has {x.n} factors but the sequence has length {len(seq)}")


def tower_multiply(a: TowerElement, b: TowerElement, seq: PrimeSeq) -> TowerElement:
    """``(k1, m1)(k2, m2) = (k1 phi^m1(k2), m1 + m2)``."""
    _check(seq, a, b)
    k2 = tuple_automorphism(seq, b.tuple, a.z) if a.z else b.tuple
    return TowerElement(freeprod.tuple_multiply(a.tuple, k2), a.z + b.z)


def tower_inverse(a: TowerElement, seq: PrimeSeq) -> TowerElement:
    _check(seq, a)
    k = freeprod.tuple_inverse(a.tuple)
    return TowerElement(tuple_automorphism(seq, k, -a.z) if a.z else k, -a.z)


def tower_ops(seq: PrimeSeq) -> GroupOps:
    return GroupOps(
        multiply=lambda a, b: tower_multiply(a, b, seq),
        inverse=lambda a: tower_inverse(a, seq),
        identity=tower_identity(len(seq)),
        is_identity=TowerElement.is_identity,
    )


def random_tower_element(rng: random.Random, n: int, zmax: int = 3, **kw) -> TowerElement:
    return TowerElement(freeprod.random_tuple(rng, n, **kw), rng.randint(-zmax, zmax))


def to_json(x: TowerElement) -> dict:
    return {"tuple": [freeprod.to_json(w) for w in x.tuple], "z": x.z}


def from_json(data: dict) -> TowerElement:
    return TowerElement(tuple(freeprod.from_json(w) for w in data["tuple"]), int(data["z"]))


# -- bonding maps ----------------------------------------------------------

def bonding_map(a: TowerElement) -> TowerElement:
    """``G_(w,n) -> G_(w,n-1)``: crush the last factor."""
    if a.n == 0:
        raise ValueError("level 0 has no bonding map")
    return TowerElement(a.tuple[:-1], a.z)


def section(b: TowerElement) -> TowerElement:
    return TowerElement(b.tuple + (freeprod.IDENTITY,), b.z)


def kernel_element(n: int, s: FPElement) -> TowerElement:
    """``(e, ..., e, s; 0)``, an element of the kernel of the bonding map."""
    return TowerElement(freeprod.tuple_identity(n - 1) + (s,), 0)


# -- isomorphism and epimorphism -------------------------------------------

def iso_report(a: PrimeSeq, b: PrimeSeq) -> dict:
    a, b = prime_seq(a), prime_seq(b)
    if len(a) != len(b):
        return {
            "iso": False,
            "diagnostic": f"lengths differ ({len(a)} vs {len(b)}); the criterion only covers equal lengths",
        }
    return {"iso": set(a) == set(b)}


def iso_decide(a: PrimeSeq, b: PrimeSeq) -> bool:
    return iso_report(a, b)["iso"]


def epi_decide(a: PrimeSeq, b: PrimeSeq) -> bool:
    """Is there an epimorphism ``G_a -> G_b``? True iff primes of b are among those of a."""
    return set(prime_seq(b)) <= set(prime_seq(a))


class EpiMap:
    """``G_source -> G_target``: factors with a matching prime are carried
    over, all others crushed, ``z`` kept."""

    def __init__(self, source: PrimeSeq, target: PrimeSeq):
        self.source = prime_seq(source)
        self.target = prime_seq(target)
        where = {p: i for i, p in enumerate(self.source)}
        missing = [p for p in self.target if p not in where]
        if missing:
            raise EpiRefused(missing[0], self.source, self.target)
        self.positions = tuple(where[p] for p in self.target)
        self.verification: dict | None = None

    def __call__(self, x: TowerElement) -> TowerElement:
        _check(self.source, x)
        return TowerElement(tuple(x.tuple[i] for i in self.positions), x.z)

    def verify(self, rng: random.Random, samples: int = 500, **kw) -> dict:
        """Check the homomorphism law on random pairs and surjectivity on
        the generators of the target."""
        n = len(self.source)
        bad = 0
        for _ in range(samples):
            x = random_tower_element(rng, n, **kw)
            y = random_tower_element(rng, n, **kw)
            lhs = self(tower_multiply(x, y, self.source))
            rhs = tower_multiply(self(x), self(y), self.target)
            bad += lhs != rhs
        # every target generator has a preimage: put it in the matching factor
        onto = True
        for j, i in enumerate(self.positions):
            for g in freeprod.probe_generators():
                t = list(freeprod.tuple_identity(n))
                t[i] = g
                want = list(freeprod.tuple_identity(len(self.target)))
                want[j] = g
                onto &= self(TowerElement(tuple(t), 0)) == TowerElement(tuple(want), 0)
        onto &= self(TowerElement(freeprod.tuple_identity(n), 1)).z == 1
        self.verification = {"samples": samples, "failures": bad, "onto_generators": onto, "ok": bad == 0 and onto}
        return self.verification

    def as_dict(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "positions": list(self.positions),
            "verification": self.verification,
        }


def build_epi(a: PrimeSeq, b: PrimeSeq, rng: random.Random | None = None, samples: int = 500) -> EpiMap:
    """Construct and verify the crush map ``G_a -> G_b``; raises ``EpiRefused``
    naming a missing prime when none exists."""
    f = EpiMap(a, b)
    if samples:
        report = f.verify(rng or random.Random(0), samples)
        if not report["ok"]:
            raise VerificationFailed(f"epimorphism {a} -> {b} failed verification: {report}")
    return f


# -- order of the action ---------------------------------------------------

class InadequateWitnesses(ValueError):
    pass


def _moving_letter(p: int) -> FPElement:
    u = thompson.element_of_order(p)
    for v in (thompson.C, thompson.A, thompson.B, thompson.PI0):
        if u * v != v * u:
            return FPElement.letter(2, v)
    raise InadequateWitnesses(f"no probe letter is moved by u_{p}")


def default_witnesses(seq: PrimeSeq) -> list[TupleElement]:
    out = []
    for i, p in enumerate(seq):
        t = list(freeprod.tuple_identity(len(seq)))
        t[i] = _moving_letter(p)
        out.append(tuple(t))
    return out


def action_order_report(seq: PrimeSeq, witnesses: Sequence[TupleElement] | None = None) -> dict:
    """Certify that ``phi_seq`` has order ``N = prod(seq)`` on ``Aut(S^n)``.

    ``phi_seq`` is applied one step at a time ``N`` times to every witness;
    ``phi^N`` must fix them all and, for each prime ``p``, ``phi^(N/p)`` must
    move at least one of them.
    """
    seq = prime_seq(seq)
    if witnesses is None:
        witnesses = default_witnesses(seq)
    big = prod(seq)
    checkpoints = {big // p: p for p in seq}
    fixed = True
    necessary = {p: False for p in seq}
    for w in witnesses:
        x = w
        for step in range(1, big + 1):
            x = tuple_automorphism(seq, x)
            if step in checkpoints and x != w:
                necessary[checkpoints[step]] = True
        fixed &= x == w
    ok = fixed and all(necessary.values())
    report = {"order": big, "power_fixes_witnesses": fixed, "necessary": necessary, "ok": ok}
    if not ok:
        report["diagnostic"] = "witnesses do not certify the order: " + (
            "phi^N moves a witness" if not fixed
            else "no witness moved for primes " + ",".join(str(p) for p, v in necessary.items() if not v)
        )
    return report


def outer_action_order(seq: PrimeSeq, witnesses: Sequence[TupleElement] | None = None) -> int:
    report = action_order_report(seq, witnesses)
    if not report["ok"]:
        raise InadequateWitnesses(report["diagnostic"])
    return report["order"]


# -- pro-isomorphism of the inverse sequences ------------------------------

def _level_sets(seq: PrimeSeq) -> list[frozenset]:
    return [frozenset(seq[:n]) for n in range(len(seq) + 1)]


def ladder_search(a: PrimeSeq, b: PrimeSeq, depth: int | None = None, verify: bool = False,
                  rng: random.Random | None = None) -> dict:
    """Brute-force search for a commuting ladder between the truncated towers.

    The towers ``G_(a,0) <- ... <- G_(a,len a)`` are continued by identity maps
    past their top level. A ladder picks ``depth`` strictly increasing levels
    on each side and crush epimorphisms running down alternately, i.e. a chain
    ``S(x,n0) <= S(y,m1) <= S(x,n2) <= ...`` of prime sets starting on either
    side. Both sides must end at their top level, and because the towers are
    constant from there on the ladder has to close with epimorphisms both ways
    between the two top groups.

    Returns ``{"found": True, "ladder": ...}`` or ``{"found": False,
    "exhausted": True, "candidates": k}`` with the number of skeletons tried.
    """
    a, b = prime_seq(a), prime_seq(b)
    if depth is None:
        depth = min(len(a), len(b))
    if depth < 0 or depth > min(len(a), len(b)) + 1:
        raise ValueError(f"depth {depth} out of range for lengths {len(a)}, {len(b)}")
    sets = {"a": _level_sets(a), "b": _level_sets(b)}
    tops = {"a": len(a), "b": len(b)}
    tried = 0
    for first, second in (("a", "b"), ("b", "a")):
        for lv1 in _level_choices(tops[first], depth):
            for lv2 in _level_choices(tops[second], depth):
                tried += 1
                chain = [x for pair in zip(((first, n) for n in lv1), ((second, m) for m in lv2)) for x in pair]
                chain += [(first, tops[first]), (second, tops[second]), (first, tops[first])]
                if all(sets[s][n] <= sets[t][m] for (s, n), (t, m) in zip(chain, chain[1:])):
                    result = {"found": True, "ladder": [{"side": s, "level": n} for s, n in chain],
                              "candidates": tried}
                    if verify:
                        result["commutes"] = _check_ladder(a, b, chain, rng or random.Random(0))
                    return result
    return {"found": False, "exhausted": True, "candidates": tried}


def _level_choices(top: int, depth: int):
    # strictly increasing levels in 0..top whose last entry is the top
    if depth == 0:
        yield ()
        return
    # highest levels first, so equal towers yield the identity ladder
    for rest in reversed(list(itertools.combinations(range(top), depth - 1))):
        yield rest + (top,)


def _check_ladder(a, b, chain, rng, samples: int = 5) -> bool:
    """Each triangle ``X_high -> Y -> X_low`` must compose to the bonding map."""
    seqs = {"a": a, "b": b}
    for (s0, n0), (t, m), (s1, n1) in zip(chain, chain[1:], chain[2:]):
        if n1 < n0:
            continue
        hi, mid, lo = seqs[s1][:n1], seqs[t][:m], seqs[s0][:n0]
        down = EpiMap(hi, mid)
        up = EpiMap(mid, lo)
        for _ in range(samples):
            x = random_tower_element(rng, len(hi))
            y = x
            for _ in range(n1 - n0):
                y = bonding_map(y)
            if up(down(x)) != y:
                return False
    return True


def pro_distinct(a: PrimeSeq, b: PrimeSeq, cross_check: bool = True) -> dict:
    """Compare the inverse sequences of two finite prefixes.

    Equal prefixes give ``equal-prefix``. Otherwise the witness is the least
    prime lying in exactly one of them: no chain of crush epimorphisms can
    carry it across, so no ladder closes. With ``cross_check`` the verdict is
    compared against ``ladder_search``.
    """
    a, b = prime_seq(a), prime_seq(b)
    if a == b:
        out = {"distinct": False, "relation": "equal-prefix"}
    else:
        out = {"distinct": True, "witness": min(set(a) ^ set(b))}
    if cross_check:
        found = ladder_search(a, b)["found"]
        if found == out["distinct"]:
            raise VerificationFailed(f"ladder search disagrees with the prime criterion on {a} vs {b}")
    return out


# -- presentation of G_(w,n) -----------------------------------------------

K_LETTERS = ("A1", "C1", "U", "A2", "C2")


def _k_letter_value(p: int, letter: str) -> FPElement:
    v = {"A": thompson.A, "C": thompson.C}
    if letter == "U":
        return FPElement.letter(1, thompson.element_of_order(p))
    return FPElement.letter(int(letter[1]), v[letter[0]])


def tower_semidirect_data(seq: PrimeSeq) -> SemidirectData:
    """Factor ``i`` contributes ``s{i}.A1, s{i}.C1, s{i}.U`` in P1 (``U`` is
    ``u_i``) and ``s{i}.A2, s{i}.C2`` in P2; ``z`` generates Z."""
    seq = prime_seq(seq)
    k_gens, action, inverse = [], {}, {}
    for i in range(len(seq)):
        for letter in K_LETTERS:
            g = f"s{i}.{letter}"
            k_gens.append(g)
            if letter.endswith("2"):
                u = f"s{i}.U"
                action[("z", g)] = ((u, 1), (g, 1), (u, -1))
                inverse[("z", g)] = ((u, -1), (g, 1), (u, 1))
            else:
                action[("z", g)] = ((g, 1),)
                inverse[("z", g)] = ((g, 1),)
    return SemidirectData(tuple(k_gens), ("z",), action, inverse)


def tower_generator_images(seq: PrimeSeq) -> dict[str, TowerElement]:
    seq = prime_seq(seq)
    n = len(seq)
    out = {"z": TowerElement(freeprod.tuple_identity(n), 1)}
    for i, p in enumerate(seq):
        for letter in K_LETTERS:
            t = list(freeprod.tuple_identity(n))
            t[i] = _k_letter_value(p, letter)
            out[f"s{i}.{letter}"] = TowerElement(tuple(t), 0)
    return out


def tower_presentation(seq: PrimeSeq) -> Presentation:
    """Generators and a set of relators of ``G_(w,n)``.

    The kernel relators are only those listed here (commuting factors and
    the torsion of ``C`` and ``U``); V's own defining relators are not
    included, so this is not a full presentation of S^n.
    """
    sd = tower_semidirect_data(seq)
    rels = []
    for i, p in enumerate(seq):
        rels.append(((f"s{i}.C1", 1),) * 3)
        rels.append(((f"s{i}.C2", 1),) * 3)
        rels.append(((f"s{i}.U", 1),) * p)
    for i, j in itertools.combinations(range(len(seq)), 2):
        for x in K_LETTERS:
            for y in K_LETTERS:
                g, h = f"s{i}.{x}", f"s{j}.{y}"
                rels.append(((g, -1), (h, -1), (g, 1), (h, 1)))
    pres_k = Presentation(sd.k_gens, tuple(rels))
    pres_q = Presentation(("z",), ())
    return semidirect_presentation(pres_k, pres_q, sd)


def evaluate_word(w, seq: PrimeSeq) -> TowerElement:
    from .presentation import evaluate

    return evaluate(w, tower_ops(seq), tower_generator_images(seq))


def random_tower_word(rng: random.Random, seq: PrimeSeq, max_length: int = 30):
    gens = list(tower_semidirect_data(seq).k_gens) + ["z"] * max(1, len(seq))
    n = rng.randint(0, max_length)
    return tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(n))
