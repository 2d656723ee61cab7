"""Truncated formal Dirichlet series with exact integer coefficients.

A series is known exactly for indices ``1..bound`` and unknown past it.
Binary operations truncate to the smaller bound, and reading an index past
the bound raises instead of returning zero.
"""
from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class DirichletSeries:
    bound: int
    terms: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.bound < 1:
            raise SeriesError(f"bound must be >= 1, got {self.bound}")
        clean = {}
        for n in sorted(self.terms):
            c = int(self.terms[n])
            if not 1 <= n <= self.bound:
                raise SeriesError(f"index {n} outside [1, {self.bound}]")
            if c:
                clean[n] = c
        object.__setattr__(self, "terms", clean)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.bound:
            raise IndexError(f"coefficient {n} is beyond bound {self.bound}")
        return self.terms.get(n, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, DirichletSeries):
            return NotImplemented
        return self.bound == other.bound and self.terms == other.terms

    def __hash__(self):
        return hash((self.bound, tuple(self.terms.items())))

    def __mul__(self, other: DirichletSeries) -> DirichletSeries:
        return mul(self, other)

    def __repr__(self):
        body = " ".join(f"{c:+d}/{n}^s" if n > 1 else str(c) for n, c in self)
        return f"DirichletSeries(bound={self.bound}: {body or '0'})"

    @property
    def is_unital(self) -> bool:
        return self.terms.get(1) == 1

    def truncate(self, bound: int) -> DirichletSeries:
        if bound > self.bound:
            raise SeriesError(f"cannot extend bound {self.bound} to {bound}")
        return DirichletSeries(bound, {n: c for n, c in self if n <= bound})

    def to_json(self) -> str:
        payload = {"bound": self.bound,
                   "terms": [[n, str(c)] for n, c in self]}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str | dict) -> DirichletSeries:
        data = json.loads(text) if isinstance(text, str) else text
        return make_series([(int(n), int(c)) for n, c in data["terms"]],
                           int(data["bound"]))


def make_series(pairs: Iterable[tuple[int, int]], bound: int) -> DirichletSeries:
    if bound < 1:
        raise SeriesError(f"bound must be >= 1, got {bound}")
    terms: dict[int, int] = {}
    for n, c in pairs:
        if n in terms:
            raise SeriesError(f"duplicate index {n}")
        if not 1 <= n <= bound:
            raise SeriesError(f"index {n} outside [1, {bound}]")
        terms[n] = c
    return DirichletSeries(bound, terms)


def unit(bound: int) -> DirichletSeries:
    return DirichletSeries(bound, {1: 1})


def mul(a: DirichletSeries, b: DirichletSeries) -> DirichletSeries:
    """Dirichlet convolution, truncated to ``min(a.bound, b.bound)``."""
    bound = min(a.bound, b.bound)
    out: dict[int, int] = {}
    bt = [(n, c) for n, c in b if n <= bound]
    for i, x in a:
        if i > bound:
            break
        lim = bound // i
        for j, y in bt:
            if j > lim:
                break
            k = i * j
            out[k] = out.get(k, 0) + x * y
    return DirichletSeries(bound, out)


def invert(a: DirichletSeries) -> DirichletSeries:
    """Formal inverse of a unital series.

    Uses c_1 = 1 and c_n = -sum_{d | n, d > 1} a_d c_{n/d}, pushed forward
    from each finished index so only reachable indices are ever visited.
    """
    if not a.is_unital:
        raise SeriesError("inversion needs a series with coefficient 1 at n=1")
    bound = a.bound
    support = [(d, x) for d, x in a if d > 1]
    out: dict[int, int] = {1: 1}
    pending: dict[int, int] = {}
    heap: list[int] = []

    def push(n: int, c: int) -> None:
        for d, x in support:
            m = n * d
            if m > bound:
                break
            if m not in pending:
                pending[m] = 0
                heapq.heappush(heap, m)
            pending[m] += x * c

    push(1, 1)
    while heap:
        n = heapq.heappop(heap)
        c = -pending.pop(n)
        if c:
            out[n] = c
            push(n, c)
    return DirichletSeries(bound, out)


def first_negative(a: DirichletSeries) -> tuple[int, int] | None:
    for n, c in a:
        if c < 0:
            return n, c
    return None


def ordered_factorizations(n: int) -> list[tuple[int, ...]]:
    """All ordered factorizations of ``n`` into parts >= 2, lexicographic."""
    if n < 2:
        raise SeriesError(f"ordered factorizations need n >= 2, got {n}")
    return list(_factorizations(n))


def _factorizations(n: int) -> Iterator[tuple[int, ...]]:
    for d in _divisors(n):
        if d == 1:
            continue
        if d == n:
            yield (n,)
        else:
            for rest in _factorizations(n // d):
                yield (d,) + rest


def count_ordered_factorizations(n: int) -> int:
    """Number of ordered factorizations (Kalmar's function), by recurrence."""
    counts = [0] * (n + 1)
    counts[1] = 1
    for m in range(1, n + 1):
        if counts[m]:
            for k in range(2 * m, n + 1, m):
                counts[k] += counts[m]
    return counts[n]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def factorization_bound(a: DirichletSeries, n: int) -> int:
    """Right-hand side of |c_n| <= sum over ordered factorizations of |a_{n_1}...a_{n_t}|."""
    if n == 1:
        return 1
    # weight[m] = sum over ordered factorizations of m of prod |a_{n_i}|
    weight = {1: 1}
    for m in _divisors(n)[1:]:
        weight[m] = sum(abs(a[d]) * weight[m // d]
                        for d in _divisors(m)[1:] if a[d])
    return weight[n]


def coefficient_bound_check(a: DirichletSeries, n: int) -> bool:
    if not a.is_unital:
        raise SeriesError("bound check needs a unital series")
    if n > a.bound:
        raise IndexError(f"coefficient {n} is beyond bound {a.bound}")
    return abs(invert(a)[n]) <= factorization_bound(a, n)
