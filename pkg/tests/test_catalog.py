import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from probzeta.catalog import (
    AlternatingTruncated,
    BostonPower,
    BrownProduct,
    Cyclic,
    ElementaryAbelian,
    Evaluator,
    Lattice,
    RecipeError,
    a5_series,
    abelian_part_inverse,
    alternating_truncated_series,
    boston_power_series,
    cyclic_series,
    elementary_abelian_series,
    example_recipe,
    example_recurrence_coefficients,
    recipe_from_json,
    recipe_series,
    recipe_to_json,
    smooth_2_5,
)
from probzeta.dseries import first_negative, invert, make_series, mul, unit
from probzeta.moebius import group_series

from .oracles import as_dict, dense, dense_invert, dense_mul


def test_elementary_abelian_series():
    assert elementary_abelian_series(2, 2, 16).terms == {1: 1, 2: -3, 4: 2}
    for p in (2, 3, 7):
        assert elementary_abelian_series(p, 1, 50).terms == {1: 1, p: -1}
    with pytest.raises(RecipeError):
        elementary_abelian_series(6, 1, 50)
    with pytest.raises(RecipeError):
        elementary_abelian_series(2, 0, 50)


def test_elementary_abelian_matches_lattice(lattice):
    for name, (p, d) in [("C2xC2", (2, 2)), ("C3xC3", (3, 2)), ("C2xC2xC2", (2, 3))]:
        G, _, T = lattice(name)
        assert group_series(T, G.order) == elementary_abelian_series(p, d, G.order)


def test_cyclic_series_matches_lattice(lattice):
    for n in (1, 2, 4, 6, 12):
        G, _, T = lattice(f"C{n}")
        assert group_series(T, max(n, 1)) == cyclic_series(n, max(n, 1))


def test_abelian_part_closed_form():
    N = 2 ** 6 * 5 ** 3
    H = mul(elementary_abelian_series(2, 2, N), elementary_abelian_series(5, 2, N))
    d = dense(H.terms.items(), N)
    C = dense_invert(d)
    for n in range(1, N + 1):
        ik = smooth_2_5(n)
        assert C[n] == (abelian_part_inverse(*ik) if ik else 0)
    assert invert(H).terms == as_dict(C)


def test_alternating_truncated_series():
    assert alternating_truncated_series(9, 72).terms == {1: 1, 9: -9, 36: -36, 72: 72}
    assert alternating_truncated_series(20, 380).terms == {1: 1, 20: -20, 190: -190,
                                                           380: 380}
    assert alternating_truncated_series(9, 8) == unit(8)
    with pytest.raises(RecipeError):
        alternating_truncated_series(8, 50)
    with pytest.raises(RecipeError):
        alternating_truncated_series(9, 73)


@given(st.integers(9, 40), st.data())
def test_alternating_truncation_consistent(m, data):
    b1 = data.draw(st.integers(1, m * (m - 1)))
    b2 = data.draw(st.integers(1, b1))
    assert alternating_truncated_series(m, b1).truncate(b2) == alternating_truncated_series(m, b2)


@given(st.integers(9, 40))
def test_alternating_inverse_has_negative_at_top(m):
    C = invert(alternating_truncated_series(m, m * (m - 1)))
    assert C[m] == m and C[m * (m - 1)] < 0


def test_boston_f1_is_identity():
    P = a5_series(200)
    assert boston_power_series(P, 1, 120, 60) == P
    assert boston_power_series(a5_series(30), 1, 120, 60) == a5_series(30)


def test_boston_a5_squared():
    N = 3600
    B = boston_power_series(a5_series(N), 2, 120, 60)
    assert (B[5], B[6], B[10]) == (-10, -12, -20)
    # expand P * (P - 120/60^s) independently
    P = dense(a5_series(N).terms.items(), N)
    Q = list(P)
    Q[60] -= 120
    assert B.terms == as_dict(dense_mul(P, Q))


@pytest.mark.parametrize("f, bound", [(1, 60), (2, 3600), (3, 216000)])
def test_boston_perfect_divisibility(f, bound):
    B = boston_power_series(a5_series(bound), f, 120, 60)
    C = invert(B)
    assert all(c % n == 0 for n, c in B)
    assert all(c % n == 0 for n, c in C)


def test_boston_past_bound_is_plain_power():
    P = alternating_truncated_series(10, 90)
    B = boston_power_series(P, 3, math.factorial(10), math.factorial(10) // 2)
    assert B == mul(mul(P, P), P)
    assert B[10] == -30


def test_boston_rejects_bad_arguments():
    with pytest.raises(RecipeError):
        boston_power_series(a5_series(60), 0, 120, 60)
    with pytest.raises(RecipeError):
        boston_power_series(a5_series(60), 2, 100, 60)


def test_recipe_series_example_matches_pieces():
    N = 5000
    expected = mul(mul(elementary_abelian_series(2, 2, N), elementary_abelian_series(5, 2, N)),
                   a5_series(N))
    assert recipe_series(example_recipe(), N) == expected


def test_recipe_series_single_factor():
    R = Lattice.named("A5")
    assert recipe_series(BrownProduct((R,)), 60) == recipe_series(R, 60)
    assert recipe_series(R, 60) == a5_series(60)


def test_brown_recipe_against_lattice(lattice):
    G, _, T = lattice("S3xC5")
    R = BrownProduct((Lattice.named("S3"), Cyclic(5)))
    assert recipe_series(R, 30) == group_series(T, 30)


@pytest.mark.parametrize("factors", [
    (Lattice.named("S3"), Cyclic(3)),
    (Lattice.named("S3"), ElementaryAbelian(2, 1)),
    (Lattice.named("A5"), BostonPower(Lattice.named("A5"), 2, 120, 60)),
    (AlternatingTruncated(9), AlternatingTruncated(9)),
    (Cyclic(6), ElementaryAbelian(3, 2)),
])
def test_brown_rejects_shared_chief_factors(factors):
    with pytest.raises(RecipeError):
        recipe_series(BrownProduct(factors), 30)


def test_brown_accepts_disjoint_factors():
    R = BrownProduct((Lattice.named("A5"), AlternatingTruncated(20), Cyclic(7)))
    S = recipe_series(R, 380)
    assert S == mul(mul(a5_series(380), alternating_truncated_series(20, 380)),
                    cyclic_series(7, 380))


def test_recipe_json_roundtrip():
    R = BrownProduct((
        ElementaryAbelian(2, 2),
        Lattice(3, ("(1 2 3)", "(1 2)")),
        Lattice.named("A5"),
        BostonPower(AlternatingTruncated(11), 10 ** 30, math.factorial(11),
                    math.factorial(11) // 2),
        Cyclic(7),
    ))
    text = recipe_to_json(R)
    assert recipe_from_json(text) == R
    assert recipe_to_json(recipe_from_json(text)) == text
    with pytest.raises(RecipeError):
        recipe_from_json('{"variant": "nope"}')
    with pytest.raises(RecipeError):
        recipe_from_json('{"variant": "cyclic"}')


def test_evaluator_limits():
    from probzeta.permgroup import LimitExceeded
    with pytest.raises(LimitExceeded):
        Evaluator(order_limit=50).series(Lattice.named("A5"), 60)


def test_recurrence_values():
    c = example_recurrence_coefficients(6, 6)
    assert c[0, 0] == 1
    C = invert(recipe_series(example_recipe(), 2 ** 6 * 5 ** 6))
    for (i, k), v in c.items():
        assert C[2 ** i * 5 ** k] == v


def test_recurrence_first_negative_at_50000():
    c = example_recurrence_coefficients(16, 7)
    negatives = sorted(2 ** i * 5 ** k for (i, k), v in c.items() if v < 0)
    assert negatives[0] == 50000 == 2 ** 4 * 5 ** 5
    assert c[4, 5] == -365899


def test_example_first_negative_overall():
    # outside the 2-5-smooth indices the inverse turns negative much earlier
    C = invert(recipe_series(example_recipe(), 1000))
    assert first_negative(C) == (750, -1464)
