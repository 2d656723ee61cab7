"""Möbius function of a subgroup lattice and the series built from it."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .dseries import DirichletSeries, mul
from .permgroup import (
    DEFAULT_LATTICE_LIMIT,
    DEFAULT_ORDER_LIMIT,
    GroupError,
    PermGroup,
    Subgroup,
    SubgroupLattice,
    close_generators,
    enumerate_subgroups,
    format_cycles,
    is_normal,
    make_lattice,
    parse_cycles,
    product_covers,
    quotient,
    subgroup_from_mask,
)

CACHE_VERSION = 1


@dataclass(frozen=True, eq=False)
class MoebiusTable:
    lattice: SubgroupLattice
    mu: tuple[int, ...]  # aligned with lattice.subgroups

    def __getitem__(self, H: Subgroup) -> int:
        return self.mu[self.lattice.position(H)]

    @property
    def group(self) -> PermGroup:
        return self.lattice.parent

    def nonzero(self):
        return [(H, m) for H, m in zip(self.lattice.subgroups, self.mu) if m]

    def interval_sums(self) -> list[int]:
        """``sum_{H <= K <= G} mu(K, G)`` for every H; 0 except at the top."""
        return [sum(self.mu[j] for j in js) for js in self.lattice.above]


def moebius_table(L: SubgroupLattice) -> MoebiusTable:
    n = len(L)
    mu = [0] * n
    mu[n - 1] = 1
    for i in range(n - 2, -1, -1):
        mu[i] = -sum(mu[j] for j in L.above[i][1:])
    return MoebiusTable(L, tuple(mu))


def _series_from(T: MoebiusTable, bound: int, keep=lambda H: True) -> DirichletSeries:
    G = T.group
    coeffs: Counter = Counter()
    for H, m in T.nonzero():
        n = G.order // H.order
        if n <= bound and keep(H):
            coeffs[n] += m
    return DirichletSeries(bound, dict(coeffs))


def group_series(L: SubgroupLattice | MoebiusTable, bound: int) -> DirichletSeries:
    """``a_n(G) = sum of mu(H, G) over subgroups of index n``."""
    T = L if isinstance(L, MoebiusTable) else moebius_table(L)
    return _series_from(T, bound)


def relative_series(L: SubgroupLattice | MoebiusTable, N: Subgroup,
                    bound: int) -> DirichletSeries:
    """Like :func:`group_series` but only over H with ``HN = G``."""
    T = L if isinstance(L, MoebiusTable) else moebius_table(L)
    G = T.group
    if not is_normal(G, N):
        raise GroupError("N is not normal in G")
    return _series_from(T, bound, lambda H: product_covers(G, H, N))


def b_count(T: MoebiusTable, n: int) -> int:
    G = T.group
    return sum(1 for H, _ in T.nonzero() if G.order == n * H.order)


def maximal_intersections(L: SubgroupLattice) -> set[int]:
    """Masks of all intersections of families of maximal subgroups (G included)."""
    top = L.top
    maximal = [L.subgroups[i].mask for i in range(top)
               if L.above[i] == (i, top)]
    found = {L.subgroups[top].mask}
    frontier = set(found)
    while frontier:
        nxt = set()
        for a in frontier:
            for m in maximal:
                b = a & m
                if b not in found:
                    found.add(b)
                    nxt.add(b)
        frontier = nxt
    return found


def quotient_factorization_check(L: SubgroupLattice, N: Subgroup, bound: int,
                                 order_limit: int = DEFAULT_ORDER_LIMIT,
                                 lattice_limit: int = DEFAULT_LATTICE_LIMIT) -> bool:
    """Whether ``P_G = P_{G/N} * P_{G,N}`` up to ``bound``."""
    T = moebius_table(L)
    Q = quotient(L.parent, N, order_limit)
    PQ = group_series(enumerate_subgroups(Q, lattice_limit), bound)
    return group_series(T, bound) == mul(PQ, relative_series(T, N, bound))


# -- cache -------------------------------------------------------------------

def table_to_json(T: MoebiusTable) -> str:
    L = T.lattice
    G = L.parent
    payload = {
        "version": CACHE_VERSION,
        "group_hash": G.group_hash(),
        "degree": G.degree,
        "generators": [format_cycles(g) for g in G.generators],
        "order": G.order,
        "subgroups": [list(H.fingerprint) for H in L.subgroups],
        "leq": [list(p) for p in L.leq],
        "mu": list(T.mu),
    }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def table_from_json(text: str, G: PermGroup | None = None) -> MoebiusTable:
    data = json.loads(text)
    if data.get("version") != CACHE_VERSION:
        raise ValueError(f"unsupported cache version {data.get('version')}")
    if G is None:
        gens = [parse_cycles(g, data["degree"]) for g in data["generators"]]
        G = close_generators(data["degree"], gens, limit=max(data["order"], 1))
    if G.group_hash() != data["group_hash"]:
        raise ValueError("cache entry belongs to a different group")
    subs = [subgroup_from_mask(sum(1 << i for i in fp)) for fp in data["subgroups"]]
    L = make_lattice(G, subs)
    if [list(p) for p in L.leq] != data["leq"]:
        raise ValueError("cached inclusion relation does not match")
    return MoebiusTable(L, tuple(data["mu"]))


class LatticeCache:
    """Directory of ``<group_hash>.json`` Möbius tables."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def path(self, G: PermGroup) -> Path:
        return self.root / f"{G.group_hash()}.json"

    def load(self, G: PermGroup) -> MoebiusTable | None:
        p = self.path(G)
        if not p.exists():
            return None
        return table_from_json(p.read_text(), G)

    def store(self, T: MoebiusTable) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        p = self.path(T.group)
        p.write_text(table_to_json(T))
        return p

    def entries(self) -> list[Path]:
        return sorted(self.root.glob("*.json")) if self.root.exists() else []

    def clear(self) -> int:
        paths = self.entries()
        for p in paths:
            p.unlink()
        return len(paths)


def table_for(G: PermGroup, cache: LatticeCache | None = None,
              lattice_limit: int = DEFAULT_LATTICE_LIMIT) -> MoebiusTable:
    if cache is not None:
        T = cache.load(G)
        if T is not None:
            return T
    T = moebius_table(enumerate_subgroups(G, lattice_limit))
    if cache is not None:
        cache.store(T)
    return T
