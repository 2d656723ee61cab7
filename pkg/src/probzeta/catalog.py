"""Series for groups described symbolically rather than by their lattice.

Recipes cover cyclic and elementary abelian groups, the low-index part of
``A_m`` for ``m >= 9``, powers ``S^f`` of a simple group and direct products
whose factors share no chief factor.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Union

from .dseries import DirichletSeries, SeriesError, invert, make_series, mul, unit
from .moebius import LatticeCache, group_series, table_for
from .permgroup import (
    DEFAULT_LATTICE_LIMIT,
    DEFAULT_ORDER_LIMIT,
    PermGroup,
    close_generators,
    format_cycles,
    group_from_name,
    is_prime,
    named,
    parse_cycles,
    soluble_residual,
)


class RecipeError(ValueError):
    pass


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def power(a: DirichletSeries, f: int) -> DirichletSeries:
    result, base = unit(a.bound), a
    while f:
        if f & 1:
            result = mul(result, base)
        f >>= 1
        if f:
            base = mul(base, base)
    return result


# -- closed forms ------------------------------------------------------------

def cyclic_series(n: int, bound: int) -> DirichletSeries:
    """``P_{C_n} = prod over primes p | n of (1 - 1/p^s)``."""
    if n < 1:
        raise RecipeError(f"cyclic order must be positive, got {n}")
    out = unit(bound)
    for p in prime_factors(n):
        if p <= bound:
            out = mul(out, make_series([(1, 1), (p, -1)], bound))
    return out


def elementary_abelian_series(p: int, d: int, bound: int) -> DirichletSeries:
    """``P_{C_p^d} = prod_{i<d} (1 - p^i/p^s)``."""
    if not is_prime(p):
        raise RecipeError(f"{p} is not prime")
    if d < 1:
        raise RecipeError(f"rank must be >= 1, got {d}")
    out = unit(bound)
    if p > bound:
        return out
    for i in range(d):
        out = mul(out, make_series([(1, 1), (p, -p ** i)], bound))
    return out


def alternating_validity(m: int) -> int:
    return m * (m - 1)


def alternating_truncated_series(m: int, bound: int) -> DirichletSeries:
    """Low-index part of ``P_{A_m}``, known only up to index ``m(m-1)``.

    Up to that index the subgroups with nonzero Möbius value are the point
    stabilizers, the 2-set stabilizers and the 2-point stabilizers.
    """
    if m < 9:
        raise RecipeError(f"truncated alternating series needs m >= 9, got {m}")
    if bound > alternating_validity(m):
        raise RecipeError(
            f"A_{m} series is only certified up to index {alternating_validity(m)}, "
            f"bound {bound} requested")
    pairs = m * (m - 1) // 2
    terms = [(1, 1), (m, -m), (pairs, -pairs), (2 * pairs, 2 * pairs)]
    return make_series([(n, c) for n, c in terms if n <= bound], bound)


def boston_power_series(base: DirichletSeries, f: int, aut_order: int,
                        group_order: int) -> DirichletSeries:
    """``P_{S^f} = prod_{i<f} (P_S - i |Aut S| / |S|^s)`` truncated to ``base.bound``."""
    if f < 1:
        raise RecipeError(f"power must be >= 1, got {f}")
    if group_order < 2 or aut_order % group_order:
        raise RecipeError(
            f"|S| = {group_order} must divide |Aut(S)| = {aut_order}")
    bound = base.bound
    if group_order > bound:
        # every correction term lies past the bound
        return power(base, f)
    out = base
    for i in range(1, f):
        corr = dict(base.terms)
        corr[group_order] = corr.get(group_order, 0) - i * aut_order
        out = mul(out, DirichletSeries(bound, corr))
    return out


# -- the C_2^2 x C_5^2 x A_5 example ------------------------------------------

A5_TERMS = ((1, 1), (5, -5), (6, -6), (10, -10), (20, 20), (30, 60), (60, -60))


def a5_series(bound: int) -> DirichletSeries:
    return make_series([(n, c) for n, c in A5_TERMS if n <= bound], bound)


def abelian_part_inverse(i: int, k: int) -> int:
    """Inverse coefficient of ``C_2^2 x C_5^2`` at ``2^i 5^k``."""
    return (2 ** (i + 1) - 1) * (5 ** (k + 1) - 1) // 4


def example_recurrence_coefficients(i_max: int, k_max: int) -> dict[tuple[int, int], int]:
    """Inverse coefficients of ``C_2^2 x C_5^2 x A_5`` at ``2^i 5^k``.

    Only ``a_5 = -5``, ``a_10 = -10`` and ``a_20 = 20`` of ``A_5`` divide a
    number of the form ``2^i 5^k``, which closes the recurrence on these
    indices.
    """
    c: dict[tuple[int, int], int] = {}

    def get(i, k):
        return c[i, k] if i >= 0 and k >= 0 else 0

    for k in range(k_max + 1):
        for i in range(i_max + 1):
            c[i, k] = (5 * get(i, k - 1) + 10 * get(i - 1, k - 1)
                       - 20 * get(i - 2, k - 1) + abelian_part_inverse(i, k))
    return c


def smooth_2_5(n: int) -> tuple[int, int] | None:
    i = k = 0
    while n % 2 == 0:
        n //= 2
        i += 1
    while n % 5 == 0:
        n //= 5
        k += 1
    return (i, k) if n == 1 else None


# -- recipes -----------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    """Desk-scale stand-in for the set of chief factors."""
    abelian: frozenset[int]
    nonabelian: tuple[int, ...]  # orders of nonabelian composition blocks


@dataclass(frozen=True)
class Lattice:
    degree: int
    generators: tuple[str, ...]
    name: str | None = None

    @classmethod
    def named(cls, name: str) -> Lattice:
        degree, gens = named(name)
        return cls(degree, tuple(format_cycles(g) for g in gens), name)

    @classmethod
    def from_spec(cls, degree: int, gens) -> Lattice:
        return cls(degree, tuple(format_cycles(g) for g in gens))

    def group(self, order_limit: int = DEFAULT_ORDER_LIMIT) -> PermGroup:
        if self.name:
            return group_from_name(self.name, order_limit)
        gens = [parse_cycles(g, self.degree) for g in self.generators]
        return close_generators(self.degree, gens, order_limit)


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    d: int


@dataclass(frozen=True)
class AlternatingTruncated:
    m: int


@dataclass(frozen=True)
class BostonPower:
    base: "Recipe"
    f: int
    aut_order: int
    group_order: int


@dataclass(frozen=True)
class BrownProduct:
    factors: tuple["Recipe", ...]


Recipe = Union[Lattice, Cyclic, ElementaryAbelian, AlternatingTruncated,
               BostonPower, BrownProduct]


@dataclass
class Evaluator:
    """Evaluates recipes, holding the limits and the optional lattice cache."""
    order_limit: int = DEFAULT_ORDER_LIMIT
    lattice_limit: int = DEFAULT_LATTICE_LIMIT
    cache: LatticeCache | None = None
    _groups: dict = field(default_factory=dict, repr=False)

    def group(self, R: Lattice) -> PermGroup:
        if R not in self._groups:
            self._groups[R] = R.group(self.order_limit)
        return self._groups[R]

    def signature(self, R: Recipe) -> Signature:
        if isinstance(R, Lattice):
            G = self.group(R)
            residual = soluble_residual(G).order
            blocks = (residual,) if residual > 1 else ()
            return Signature(frozenset(prime_factors(G.order // residual)), blocks)
        if isinstance(R, Cyclic):
            return Signature(frozenset(prime_factors(R.n)), ())
        if isinstance(R, ElementaryAbelian):
            return Signature(frozenset([R.p]), ())
        if isinstance(R, AlternatingTruncated):
            return Signature(frozenset(), (math.factorial(R.m) // 2,))
        if isinstance(R, BostonPower):
            base = self.signature(R.base)
            return Signature(base.abelian, base.nonabelian)
        if isinstance(R, BrownProduct):
            sigs = [self.signature(F) for F in R.factors]
            check_disjoint(sigs)
            return Signature(frozenset().union(*(s.abelian for s in sigs)),
                             tuple(sorted(x for s in sigs for x in s.nonabelian)))
        raise RecipeError(f"unknown recipe {R!r}")

    def series(self, R: Recipe, bound: int) -> DirichletSeries:
        if isinstance(R, Lattice):
            T = table_for(self.group(R), self.cache, self.lattice_limit)
            return group_series(T, bound)
        if isinstance(R, Cyclic):
            return cyclic_series(R.n, bound)
        if isinstance(R, ElementaryAbelian):
            return elementary_abelian_series(R.p, R.d, bound)
        if isinstance(R, AlternatingTruncated):
            return alternating_truncated_series(R.m, bound)
        if isinstance(R, BostonPower):
            return boston_power_series(self.series(R.base, bound), R.f,
                                       R.aut_order, R.group_order)
        if isinstance(R, BrownProduct):
            if not R.factors:
                raise RecipeError("empty Brown product")
            self.signature(R)
            out = unit(bound)
            for F in R.factors:
                out = mul(out, self.series(F, bound))
            return out
        raise RecipeError(f"unknown recipe {R!r}")


def check_disjoint(sigs: list[Signature]) -> None:
    primes: set[int] = set()
    blocks: set[int] = set()
    for s in sigs:
        if primes & s.abelian:
            raise RecipeError(
                f"factors share abelian chief factors at primes {sorted(primes & s.abelian)}")
        if blocks & set(s.nonabelian):
            raise RecipeError("factors share a nonabelian chief factor")
        primes |= s.abelian
        blocks |= set(s.nonabelian)


def recipe_series(R: Recipe, bound: int, **options) -> DirichletSeries:
    return Evaluator(**options).series(R, bound)


def seed_degree(R: Recipe) -> int:
    if isinstance(R, Lattice):
        return R.degree
    if isinstance(R, AlternatingTruncated):
        return R.m
    if isinstance(R, Cyclic):
        return R.n if R.n > 1 else 0
    if isinstance(R, ElementaryAbelian):
        return R.p * R.d
    if isinstance(R, BostonPower):
        return seed_degree(R.base)
    if isinstance(R, BrownProduct):
        return max((seed_degree(F) for F in R.factors), default=0)
    return 0


def example_recipe() -> BrownProduct:
    return BrownProduct((ElementaryAbelian(2, 2), ElementaryAbelian(5, 2),
                         Lattice.named("A5")))


# -- recipe JSON -------------------------------------------------------------

def recipe_to_dict(R: Recipe) -> dict:
    if isinstance(R, Lattice):
        if R.name:
            return {"variant": "lattice", "group": R.name}
        return {"variant": "lattice", "degree": R.degree,
                "generators": list(R.generators)}
    if isinstance(R, Cyclic):
        return {"variant": "cyclic", "n": R.n}
    if isinstance(R, ElementaryAbelian):
        return {"variant": "elementary_abelian", "p": R.p, "d": R.d}
    if isinstance(R, AlternatingTruncated):
        return {"variant": "alternating_truncated", "m": R.m}
    if isinstance(R, BostonPower):
        return {"variant": "boston", "base": recipe_to_dict(R.base), "f": str(R.f),
                "aut_order": str(R.aut_order), "group_order": str(R.group_order)}
    if isinstance(R, BrownProduct):
        return {"variant": "brown", "factors": [recipe_to_dict(F) for F in R.factors]}
    raise RecipeError(f"unknown recipe {R!r}")


def recipe_from_dict(d: dict) -> Recipe:
    try:
        v = d["variant"]
        if v == "lattice":
            if "group" in d:
                return Lattice.named(d["group"])
            return Lattice(int(d["degree"]), tuple(d["generators"]))
        if v == "cyclic":
            return Cyclic(int(d["n"]))
        if v == "elementary_abelian":
            return ElementaryAbelian(int(d["p"]), int(d["d"]))
        if v == "alternating_truncated":
            return AlternatingTruncated(int(d["m"]))
        if v == "boston":
            return BostonPower(recipe_from_dict(d["base"]), int(d["f"]),
                               int(d["aut_order"]), int(d["group_order"]))
        if v == "brown":
            return BrownProduct(tuple(recipe_from_dict(F) for F in d["factors"]))
    except (KeyError, TypeError) as exc:
        raise RecipeError(f"malformed recipe: {exc}") from exc
    raise RecipeError(f"unknown recipe variant {d.get('variant')!r}")


def recipe_to_json(R: Recipe) -> str:
    return json.dumps(recipe_to_dict(R), separators=(",", ":"), sort_keys=True)


def recipe_from_json(text: str) -> Recipe:
    return recipe_from_dict(json.loads(text))


def example_inverse(bound: int, **options) -> DirichletSeries:
    return invert(recipe_series(example_recipe(), bound, **options))

