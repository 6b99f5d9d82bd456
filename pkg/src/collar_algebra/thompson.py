"""Thompson's group V as reduced tree-pair diagrams.

A binary tree is stored as its leaves: binary address strings in
left-to-right order (the root is ``""``, its children ``"0"`` and ``"1"``).
A tree pair sends domain leaf ``i`` to range leaf ``perm[i]`` and acts on
infinite binary sequences by prefix replacement.

Products compose like functions: ``(a * b)(x) == a(b(x))``, so ``b`` acts
first.
"""

from __future__ import annotations

import random
from functools import lru_cache

PrefixCode = tuple[str, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def first_primes(k: int) -> list[int]:
    out, n = [], 2
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 1
    return out


# -- binary trees ----------------------------------------------------------

def _is_full(leaves: set[str], node: str) -> bool:
    if node in leaves:
        return True
    if len(node) > max(map(len, leaves)):
        return False
    return _is_full(leaves, node + "0") and _is_full(leaves, node + "1")


def check_tree(leaves) -> PrefixCode:
    """Validate a leaf set and return it in left-to-right order."""
    leaves = tuple(sorted(leaves))
    if not leaves or any(set(w) - {"0", "1"} for w in leaves):
        raise ValueError(f"bad leaf addresses: {leaves}")
    leafset = set(leaves)
    if len(leafset) != len(leaves) or not _is_full(leafset, ""):
        raise ValueError(f"leaves do not form a full binary tree: {leaves}")
    for w in leaves:
        for k in range(len(w)):
            if w[:k] in leafset:
                raise ValueError(f"leaf {w[:k]!r} has descendants")
    return leaves


def tree_to_str(leaves: PrefixCode) -> str:
    leafset = set(leaves)

    def walk(node):
        if node in leafset:
            return "*"
        return "(" + walk(node + "0") + "," + walk(node + "1") + ")"

    return walk("")


def tree_from_str(s: str) -> PrefixCode:
    s = s.replace(" ", "")
    pos = 0
    leaves = []

    def walk(node):
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"truncated tree string: {s!r}")
        if s[pos] == "*":
            pos += 1
            leaves.append(node)
            return
        if s[pos] != "(":
            raise ValueError(f"unexpected {s[pos]!r} in tree string {s!r}")
        pos += 1
        walk(node + "0")
        if s[pos:pos + 1] != ",":
            raise ValueError(f"expected ',' in tree string {s!r}")
        pos += 1
        walk(node + "1")
        if s[pos:pos + 1] != ")":
            raise ValueError(f"expected ')' in tree string {s!r}")
        pos += 1

    walk("")
    if pos != len(s):
        raise ValueError(f"trailing characters in tree string {s!r}")
    return tuple(leaves)


def right_comb(n: int) -> PrefixCode:
    """Leaves ``0, 10, 110, ..., 1^(n-1)``."""
    if n < 1:
        raise ValueError("a tree has at least one leaf")
    if n == 1:
        return ("",)
    return tuple("1" * i + "0" for i in range(n - 1)) + ("1" * (n - 1),)


def left_comb(n: int) -> PrefixCode:
    if n == 1:
        return ("",)
    return ("0" * (n - 1),) + tuple("0" * (n - 2 - i) + "1" for i in range(n - 1))


def _common_refinement(p: PrefixCode, q: PrefixCode) -> list[str]:
    internal = {w[:k] for w in p + q for k in range(len(w))}
    if not internal:
        return [""]
    leaves = [c for n in internal for c in (n + "0", n + "1") if c not in internal]
    return sorted(leaves)


def _split(leaf_index: dict[str, int], t: str) -> tuple[int, str]:
    # the unique leaf that is a prefix of t, and the remaining suffix
    for k in range(len(t) + 1):
        i = leaf_index.get(t[:k])
        if i is not None:
            return i, t[k:]
    raise KeyError(t)


# -- tree pairs ------------------------------------------------------------

class TreePair:
    __slots__ = ("domain", "range", "perm", "_reduced")

    def __init__(self, domain, range, perm, *, check: bool = True):
        if check:
            domain = check_tree(domain)
            range = check_tree(range)
            perm = tuple(int(i) for i in perm)
            if len(domain) != len(range):
                raise ValueError("domain and range need equal leaf counts")
            if sorted(perm) != list(range_(len(domain))):
                raise ValueError(f"perm is not a bijection: {perm}")
        self.domain: PrefixCode = domain
        self.range: PrefixCode = range
        self.perm: tuple[int, ...] = perm
        self._reduced = None

    @classmethod
    def identity(cls) -> "TreePair":
        return IDENTITY

    @property
    def leaves(self) -> int:
        return len(self.domain)

    def key(self) -> tuple:
        r = self.reduce()
        return (r.domain, r.range, r.perm)

    def __eq__(self, other):
        if not isinstance(other, TreePair):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"TreePair({tree_to_str(self.domain)!r}, {tree_to_str(self.range)!r}, {list(self.perm)})"

    def is_identity(self) -> bool:
        return self.reduce().leaves == 1

    def cancellable(self) -> list[int]:
        """Domain positions ``i`` whose caret ``(i, i+1)`` can be removed."""
        out = []
        d, r, p = self.domain, self.range, self.perm
        for i in range(len(d) - 1):
            a, b = d[i], d[i + 1]
            if not (a[:-1] == b[:-1] and a.endswith("0") and b.endswith("1")):
                continue
            j = p[i]
            if p[i + 1] != j + 1:
                continue
            x, y = r[j], r[j + 1]
            if x[:-1] == y[:-1] and x.endswith("0") and y.endswith("1"):
                out.append(i)
        return out

    def remove_caret(self, i: int) -> "TreePair":
        d, r, p = self.domain, self.range, self.perm
        j = p[i]
        dom = d[:i] + (d[i][:-1],) + d[i + 2:]
        ran = r[:j] + (r[j][:-1],) + r[j + 2:]
        perm = []
        for k, v in enumerate(p):
            if k == i + 1:
                continue
            perm.append(v - 1 if v > j else v)
        return TreePair(dom, ran, tuple(perm), check=False)

    def reduce(self, rng: random.Random | None = None) -> "TreePair":
        """Remove cancellable carets until none remain.

        With ``rng`` the caret removed at each step is chosen at random, which
        is only useful for checking that the result does not depend on order.
        """
        if self._reduced is not None and rng is None:
            return self._reduced
        cur = self
        while True:
            spots = cur.cancellable()
            if not spots:
                break
            i = rng.choice(spots) if rng is not None else spots[0]
            cur = cur.remove_caret(i)
        cur._reduced = cur
        if rng is None:
            self._reduced = cur
        return cur

    def __call__(self, x: str) -> str:
        """Image of a binary address deep enough to lie under a domain leaf."""
        for i, leaf in enumerate(self.domain):
            if x.startswith(leaf):
                return self.range[self.perm[i]] + x[len(leaf):]
        raise ValueError(f"address {x!r} is above the domain leaves")

    def __mul__(self, other: "TreePair") -> "TreePair":
        return multiply(self, other)

    def __invert__(self) -> "TreePair":
        return inverse(self)

    def __pow__(self, k: int) -> "TreePair":
        return power(self, k)


range_ = range  # the constructor's ``range`` argument shadows the builtin

IDENTITY = TreePair(("",), ("",), (0,))


def reduce(e: TreePair) -> TreePair:
    return e.reduce()


@lru_cache(maxsize=200_000)
def _multiply(a: TreePair, b: TreePair) -> TreePair:
    a = a.reduce()
    b = b.reduce()
    b_range = {leaf: j for j, leaf in enumerate(b.range)}
    a_dom = {leaf: i for i, leaf in enumerate(a.domain)}
    b_inv = [0] * b.leaves
    for i, j in enumerate(b.perm):
        b_inv[j] = i
    pairs = []
    for t in _common_refinement(b.range, a.domain):
        j, s = _split(b_range, t)
        i, s2 = _split(a_dom, t)
        pairs.append((b.domain[b_inv[j]] + s, a.range[a.perm[i]] + s2))
    pairs.sort()
    dom = tuple(x for x, _ in pairs)
    ran = tuple(sorted(y for _, y in pairs))
    where = {y: k for k, y in enumerate(ran)}
    perm = tuple(where[y] for _, y in pairs)
    return TreePair(dom, ran, perm, check=False).reduce()


def multiply(a: TreePair, b: TreePair) -> TreePair:
    """Reduced product ``a * b``; ``b`` acts first."""
    return _multiply(a, b)


def inverse(a: TreePair) -> TreePair:
    a = a.reduce()
    inv = [0] * a.leaves
    for i, j in enumerate(a.perm):
        inv[j] = i
    return TreePair(a.range, a.domain, tuple(inv), check=False).reduce()


def power(a: TreePair, k: int) -> TreePair:
    if k < 0:
        return power(inverse(a), -k)
    result, base = IDENTITY, a
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def order(a: TreePair, cap: int = 64) -> int | None:
    """Least ``k <= cap`` with ``a^k = 1``, or ``None`` when the cap is hit."""
    if cap < 1:
        raise ValueError("cap must be positive")
    x = a.reduce()
    for k in range(1, cap + 1):
        if x.is_identity():
            return k
        x = multiply(x, a)
    return None


def element_of_order(p: int) -> TreePair:
    """Right comb with ``p`` leaves on both sides, leaves cycled ``i -> i+1``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    comb = right_comb(p)
    return TreePair(comb, comb, tuple((i + 1) % p for i in range(p)))


# Cannon-Floyd-Parry generators; A and B generate F, C has order 3.
A = TreePair(right_comb(3), left_comb(3), (0, 1, 2))
B = TreePair(("0", "10", "110", "111"), ("0", "100", "101", "11"), (0, 1, 2, 3))
C = TreePair(right_comb(3), right_comb(3), (1, 2, 0))
PI0 = TreePair(right_comb(3), right_comb(3), (1, 0, 2))

# the basic infinite-order element: right comb to left comb, identity perm
X0 = A


def expand(e: TreePair, i: int) -> TreePair:
    """Same element with a caret added under domain leaf ``i`` and its image."""
    d, r, p = e.domain, e.range, e.perm
    j = p[i]
    dom = d[:i] + (d[i] + "0", d[i] + "1") + d[i + 1:]
    ran = r[:j] + (r[j] + "0", r[j] + "1") + r[j + 1:]
    perm = []
    for k, v in enumerate(p):
        if k == i:
            perm += [j, j + 1]
        else:
            perm.append(v if v < j else v + 1)
    return TreePair(dom, ran, tuple(perm), check=False)


def random_unreduced(rng: random.Random, max_leaves: int = 4, carets: int = 3) -> TreePair:
    e = random_tree_pair(rng, max_leaves)
    for _ in range(rng.randint(0, carets)):
        e = expand(e, rng.randrange(e.leaves))
    e._reduced = None
    return e


def random_tree(rng: random.Random, leaves: int) -> PrefixCode:
    code = [""]
    while len(code) < leaves:
        w = code.pop(rng.randrange(len(code)))
        code += [w + "0", w + "1"]
    return tuple(sorted(code))


def random_tree_pair(rng: random.Random, max_leaves: int = 5, reduced: bool = True) -> TreePair:
    n = rng.randint(1, max_leaves)
    perm = list(range(n))
    rng.shuffle(perm)
    e = TreePair(random_tree(rng, n), random_tree(rng, n), tuple(perm), check=False)
    return e.reduce() if reduced else e


def to_json(e: TreePair) -> dict:
    return {"domain": tree_to_str(e.domain), "range": tree_to_str(e.range), "perm": list(e.perm)}


def from_json(data: dict) -> TreePair:
    return TreePair(tree_from_str(data["domain"]), tree_from_str(data["range"]), data["perm"])
