"""Finite permutation groups with fully enumerated elements and subgroup lattices.

Points are labelled ``1..degree`` in the text format and ``0..degree-1``
internally. A permutation is stored as its image tuple, and ``p * q`` means
apply ``p`` first, then ``q``.

Subgroups are bitmasks over the parent's sorted element list, so
intersection is ``&`` and inclusion is ``a & b == a``.
"""
from __future__ import annotations

import hashlib
import logging
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_ORDER_LIMIT = 10_000
DEFAULT_LATTICE_LIMIT = 100_000

Perm = tuple[int, ...]


class GroupError(ValueError):
    pass


class LimitExceeded(RuntimeError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"{what} exceeds limit {limit}")
        self.what = what
        self.limit = limit


# -- permutation text format -------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation such as ``(1 2 3)(4 5)`` into an image tuple."""
    text = text.strip()
    if not text or _CYCLE.sub("", text).strip(" *"):
        raise GroupError(f"not a permutation in cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(x) for x in body.replace(",", " ").split()]
        if len(set(pts)) != len(pts) or any(x < 1 for x in pts):
            raise GroupError(f"bad cycle ({body})")
        cycles.append(pts)
    top = max((max(c) for c in cycles if c), default=1)
    degree = degree or top
    if top > degree:
        raise GroupError(f"point {top} exceeds degree {degree}")
    img = list(range(degree))
    # cycles compose left to right
    for cyc in cycles:
        step = list(range(degree))
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            step[a - 1] = b - 1
        img = [step[x] for x in img]
    return tuple(img)


def format_cycles(p: Perm) -> str:
    seen, out = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def parse_group_spec(text: str) -> tuple[int, list[Perm]]:
    """Read the one-permutation-per-line format. ``#`` starts a comment.

    An optional ``degree N`` line fixes the degree; otherwise it is the
    largest point mentioned.
    """
    lines, degree = [], None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"degree\s+(\d+)", line)
        if m:
            degree = int(m.group(1))
        else:
            lines.append(line)
    if degree is None:
        pts = [int(x) for line in lines for x in re.findall(r"\d+", line)]
        degree = max(pts, default=1)
    return degree, [parse_cycles(line, degree) for line in lines]


def format_group_spec(degree: int, generators: Sequence[Perm]) -> str:
    body = [f"degree {degree}"] + [format_cycles(g) for g in generators]
    return "\n".join(body) + "\n"


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(q[x] for x in p)


def invert_perm(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


# -- groups ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    _index: dict = field(repr=False)
    _array: np.ndarray = field(repr=False)
    _rmul: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0  # identity tuple sorts first

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def index_of(self, p: Perm) -> int:
        return self._index[p]

    def group_hash(self) -> str:
        canon = format_group_spec(self.degree, sorted(set(self.generators)))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    def right_mul(self, g: int) -> np.ndarray:
        """Index map ``i -> index(elements[i] * elements[g])``."""
        table = self._rmul.get(g)
        if table is None:
            prods = self._array[g][self._array]
            table = np.fromiter((self._index[r.tobytes()] for r in prods),
                                dtype=np.int32, count=self.order)
            self._rmul[g] = table
        return table

    def mul(self, a: int, b: int) -> int:
        return int(self.right_mul(b)[a])

    def inverse(self, a: int) -> int:
        return self._index[invert_perm(self.elements[a])]

    def closure(self, gens: Sequence[int], start: int = 1) -> int:
        """Bitmask of the subgroup generated by ``gens`` and the subgroup ``start``."""
        tables = [self.right_mul(g) for g in gens]
        mask = start | 1
        frontier = _bits(mask)
        while frontier:
            nxt = []
            for t in tables:
                for y in t[frontier].tolist():
                    if not mask >> y & 1:
                        mask |= 1 << y
                        nxt.append(y)
            frontier = nxt
        return mask

    def describe(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    __repr__ = describe


def close_generators(degree: int, generators: Sequence[Perm],
                     limit: int = DEFAULT_ORDER_LIMIT) -> PermGroup:
    ident = tuple(range(degree))
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(ident):
            raise GroupError(f"not a permutation of degree {degree}: {g}")
        gens.append(g)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise LimitExceeded("group order", limit)
        frontier = nxt
    elements = tuple(sorted(seen))
    arr = np.array(elements, dtype=np.int32).reshape(len(elements), degree)
    index: dict = {}
    for i, (p, row) in enumerate(zip(elements, arr)):
        index[p] = i
        index[row.tobytes()] = i
    return PermGroup(degree, tuple(gens), elements, index, arr)


def _bits(mask: int) -> list[int]:
    return [i for i, ch in enumerate(reversed(bin(mask)[2:])) if ch == "1"]


def mask_elements(mask: int) -> list[int]:
    return list(_bits(mask))


# -- subgroups and lattices --------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    mask: int
    order: int
    gens: tuple[int, ...] = field(default=(), compare=False)

    @property
    def fingerprint(self) -> tuple[int, ...]:
        return tuple(_bits(self.mask))

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: Subgroup) -> bool:
        return self.mask != other.mask and self <= other


def subgroup_from_mask(mask: int, gens: Sequence[int] = ()) -> Subgroup:
    return Subgroup(mask, mask.bit_count(), tuple(gens))


def subgroup_generated(G: PermGroup, gens: Sequence[int]) -> Subgroup:
    return subgroup_from_mask(G.closure(gens), gens)


@dataclass(frozen=True, eq=False)
class SubgroupLattice:
    parent: PermGroup
    subgroups: tuple[Subgroup, ...]
    # above[i]: indices j with subgroups[i] <= subgroups[j], i included
    above: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self):
        return iter(self.subgroups)

    @property
    def top(self) -> int:
        return len(self.subgroups) - 1

    def position(self, H: Subgroup) -> int:
        return self._positions()[H.mask]

    def _positions(self) -> dict[int, int]:
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {H.mask: i for i, H in enumerate(self.subgroups)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def find(self, mask: int) -> Subgroup | None:
        i = self._positions().get(mask)
        return None if i is None else self.subgroups[i]

    @property
    def leq(self) -> list[tuple[int, int]]:
        return [(i, j) for i, js in enumerate(self.above) for j in js]

    def of_order(self, n: int) -> list[Subgroup]:
        return [H for H in self.subgroups if H.order == n]


def _sort_key(H: Subgroup):
    return (H.order, H.fingerprint)


def make_lattice(G: PermGroup, subgroups) -> SubgroupLattice:
    subs = tuple(sorted(subgroups, key=_sort_key))
    above = []
    for i, H in enumerate(subs):
        above.append(tuple(j for j in range(i, len(subs))
                           if subs[j].order % H.order == 0 and H <= subs[j]))
    return SubgroupLattice(G, subs, tuple(above))


def _prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def cyclic_subgroups(G: PermGroup) -> list[Subgroup]:
    found: dict[int, Subgroup] = {}
    done = 0
    for g in range(G.order):
        if done >> g & 1:
            continue
        # walk the powers of g; every generator of <g> yields the same subgroup
        p, x, mask, pw = G.elements[g], G.elements[g], 1, []
        while True:
            i = G.index_of(x)
            if i == 0:
                break
            mask |= 1 << i
            pw.append(i)
            x = compose(x, p)
        k = len(pw) + 1
        for e, i in enumerate(pw, start=1):
            if math.gcd(e, k) == 1:
                done |= 1 << i
        if mask not in found:
            found[mask] = subgroup_from_mask(mask, (g,))
    return sorted(found.values(), key=_sort_key)


def enumerate_subgroups(G: PermGroup,
                        lattice_limit: int = DEFAULT_LATTICE_LIMIT) -> SubgroupLattice:
    """Every subgroup of ``G`` exactly once.

    Seeds with the cyclic subgroups and closes under joins with cyclic
    subgroups of prime-power order; those generate every subgroup.
    """
    cyclics = cyclic_subgroups(G)
    seeds = [C for C in cyclics if _prime_power(C.order)]
    found: dict[int, Subgroup] = {C.mask: C for C in cyclics}
    if len(found) > lattice_limit:
        raise LimitExceeded("subgroup count", lattice_limit)
    queue = list(found.values())
    while queue:
        nxt = []
        for H in queue:
            for C in seeds:
                g = C.gens[0]
                if H.mask >> g & 1:
                    continue
                mask = G.closure(H.gens + (g,), start=H.mask)
                if mask not in found:
                    gens = H.gens + (g,)
                    found[mask] = J = subgroup_from_mask(mask, gens)
                    nxt.append(J)
                    if len(found) > lattice_limit:
                        raise LimitExceeded("subgroup count", lattice_limit)
        queue = nxt
    logger.debug("%s: %d subgroups", G, len(found))
    return make_lattice(G, found.values())


def index(G: PermGroup, H: Subgroup) -> int:
    return G.order // H.order


def conjugate(G: PermGroup, x: int, g: int) -> int:
    """Index of ``g^-1 x g``."""
    return G.mul(G.mul(G.inverse(g), x), g)


def conjugate_mask(G: PermGroup, mask: int, g: int) -> int:
    """Bitmask of ``g^-1 H g``."""
    ginv = G.inverse(g)
    rg = G.right_mul(g)
    out = 0
    for h in _bits(mask):
        out |= 1 << int(rg[G.mul(ginv, h)])
    return out


def is_normal(G: PermGroup, H: Subgroup) -> bool:
    gens = [G.index_of(g) for g in G.generators]
    return all(conjugate_mask(G, H.mask, g) == H.mask for g in gens)


def product_covers(G: PermGroup, H: Subgroup, N: Subgroup) -> bool:
    if not is_normal(G, N):
        raise GroupError("N is not normal in G")
    meet = (H.mask & N.mask).bit_count()
    return H.order * N.order == G.order * meet


def _normal_closure(G: PermGroup, gens: Sequence[int], by: Sequence[int]) -> Subgroup:
    # closing a generating set under conjugation by `by` closes the subgroup
    gens = list(gens)
    mask = G.closure(gens)
    todo = list(gens)
    while todo:
        x = todo.pop()
        for g in by:
            y = conjugate(G, x, g)
            if not mask >> y & 1:
                gens.append(y)
                todo.append(y)
                mask = G.closure(gens)
    return subgroup_from_mask(mask, gens)


def normal_closure(G: PermGroup, gens: Sequence[int]) -> Subgroup:
    return _normal_closure(G, gens, [G.index_of(g) for g in G.generators])


def derived_subgroup(G: PermGroup, H: Subgroup | None = None) -> Subgroup:
    """Commutator subgroup of ``H`` (default ``G``), as a subgroup of ``G``."""
    if H is None:
        gens = [G.index_of(g) for g in G.generators]
    else:
        gens = list(H.gens) or mask_elements(H.mask)
    comms = {G.mul(G.inverse(G.mul(b, a)), G.mul(a, b))
             for a in gens for b in gens}
    return _normal_closure(G, sorted(comms), gens)


def soluble_residual(G: PermGroup) -> Subgroup:
    """Last term of the derived series."""
    H = subgroup_from_mask(G.full_mask, [G.index_of(g) for g in G.generators])
    while True:
        D = derived_subgroup(G, H)
        if D.mask == H.mask:
            return H
        H = D


def quotient(G: PermGroup, N: Subgroup, limit: int = DEFAULT_ORDER_LIMIT) -> PermGroup:
    """``G/N`` as the action of ``G`` on the cosets of ``N`` by right multiplication."""
    if not is_normal(G, N):
        raise GroupError("N is not normal in G")
    label = [-1] * G.order
    reps = []
    nel = mask_elements(N.mask)
    for g in range(G.order):
        if label[g] >= 0:
            continue
        k = len(reps)
        reps.append(g)
        for n in nel:
            label[G.mul(n, g)] = k
    gens = []
    for gen in G.generators:
        rg = G.right_mul(G.index_of(gen))
        gens.append(tuple(label[int(rg[r])] for r in reps))
    return close_generators(len(reps), gens, limit)


# -- named groups ------------------------------------------------------------

def symmetric(n: int) -> tuple[int, list[Perm]]:
    if n < 2:
        return max(n, 1), []
    if n == 2:
        return 2, [parse_cycles("(1 2)", 2)]
    cyc = "(" + " ".join(map(str, range(1, n + 1))) + ")"
    return n, [parse_cycles(cyc, n), parse_cycles("(1 2)", n)]


def alternating(n: int) -> tuple[int, list[Perm]]:
    if n < 3:
        return max(n, 1), []
    if n == 3:
        return 3, [parse_cycles("(1 2 3)", 3)]
    # (1 2 3) and the long cycle on 1..n (n odd) or 2..n (n even)
    pts = range(1, n + 1) if n % 2 else range(2, n + 1)
    long_cycle = "(" + " ".join(map(str, pts)) + ")"
    return n, [parse_cycles(long_cycle, n), parse_cycles("(1 2 3)", n)]


def cyclic(n: int) -> tuple[int, list[Perm]]:
    if n < 2:
        return 1, []
    return n, [parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n)]


def dihedral(n: int) -> tuple[int, list[Perm]]:
    """Dihedral group of order ``2n`` acting on an ``n``-gon (``n >= 3``)."""
    rot = "(" + " ".join(map(str, range(1, n + 1))) + ")"
    refl = "".join(f"({i} {n + 2 - i})" for i in range(2, n // 2 + 1 + (n % 2))
                   if i < n + 2 - i)
    return n, [parse_cycles(rot, n), parse_cycles(refl or "()", n)]


def direct_product(*factors: tuple[int, list[Perm]]) -> tuple[int, list[Perm]]:
    degree, gens = 0, []
    total = sum(d for d, _ in factors)
    for d, fgens in factors:
        for g in fgens:
            img = list(range(total))
            for i, x in enumerate(g):
                img[degree + i] = degree + x
            gens.append(tuple(img))
        degree += d
    return total, gens


_NAMED = re.compile(r"([ASCD])(\d+)")


def named(spec: str) -> tuple[int, list[Perm]]:
    """Shorthand such as ``A5``, ``S3``, ``C6``, ``D4`` or products ``S3xC5``."""
    parts = []
    for token in spec.replace("×", "x").split("x"):
        m = _NAMED.fullmatch(token.strip())
        if not m:
            raise GroupError(f"unknown group name {token!r}")
        kind, n = m.group(1), int(m.group(2))
        parts.append({"A": alternating, "S": symmetric,
                      "C": cyclic, "D": dihedral}[kind](n))
    return parts[0] if len(parts) == 1 else direct_product(*parts)


def group_from_name(spec: str, limit: int = DEFAULT_ORDER_LIMIT) -> PermGroup:
    return close_generators(*named(spec), limit=limit)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))
