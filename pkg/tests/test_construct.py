import math

import pytest

from probzeta.catalog import (
    AlternatingTruncated,
    BrownProduct,
    Cyclic,
    Evaluator,
    Lattice,
    alternating_truncated_series,
    boston_power_series,
)
from probzeta.construct import (
    BoundExhausted,
    ConstructionComplete,
    DivisibilityError,
    alternating_power,
    init,
    run,
    step,
)
from probzeta.dseries import invert, make_series, mul

A5 = Lattice.named("A5")


def test_init_a5():
    s = init(A5, 380)
    assert s.steps == ((5, 1),)
    assert s.frontier == 19
    assert s.inverse[20] == -20


@pytest.mark.parametrize("seed", [Cyclic(2), Lattice.named("S3"), Lattice.named("S4")])
def test_init_soluble_seed_is_nonnegative(seed):
    s = init(seed, 100)
    assert s.frontier == 100
    assert all(c >= 0 for _, c in s.inverse)


def test_c2_inverse_is_geometric():
    s = init(Cyclic(2), 100)
    assert s.inverse.terms == {2 ** k: 1 for k in range(7)}


def test_step_cancels_first_negative():
    s1 = init(A5, 380)
    s2 = step(s1)
    assert s2.steps[-1] == (20, 1)
    assert s2.inverse[20] == 0
    assert all(s2.inverse[n] >= 0 for n in range(1, 21))
    assert all(s2.inverse[n] == s1.inverse[n] for n in range(1, 20))
    assert s2.frontier >= 20


def test_step_matches_independent_product():
    s2 = step(init(A5, 380))
    direct = invert(mul(Evaluator().series(A5, 380),
                        alternating_truncated_series(20, 380)))
    assert s2.inverse == direct
    assert s2.series == Evaluator().series(
        BrownProduct((A5, alternating_power(20, 1))), 380)


def test_step_when_complete():
    with pytest.raises(ConstructionComplete):
        step(init(Lattice.named("S3"), 100))


def test_step_refuses_uncertified_factor():
    # A_20 is only known up to index 380
    with pytest.raises(BoundExhausted):
        step(init(A5, 381))


def test_step_divisibility_failure():
    s = init(A5, 380)
    fake = make_series([(1, 1), (21, 1)], 380)
    bad = type(s)(s.steps, fake, invert(fake), 380, 20)
    with pytest.raises(DivisibilityError):
        step(bad)


def test_run_a5():
    state, trace, reason = run(A5, 380, 5)
    assert [(r.k, r.m, r.f) for r in trace[:2]] == [(1, 5, 1), (2, 20, 1)]
    assert trace[1].frontier >= 20
    frontiers = [r.frontier for r in trace]
    assert frontiers == sorted(frontiers)
    ms = [r.m for r in trace]
    assert ms == sorted(set(ms))
    # later factors only touch indices past their own degree
    for m, _ in state.steps[1:]:
        assert state.inverse[m] == 0
    assert all(state.inverse[n] >= 0 for n in range(1, state.frontier + 1))
    assert reason == "max steps"


def test_run_invariants_each_step():
    state = init(A5, 380)
    for _ in range(5):
        prev = state
        state = step(state)
        m, f = state.steps[-1]
        assert state.inverse[m] == 0
        assert f >= 1 and prev.inverse[m] == -f * m
        assert all(state.inverse[n] >= 0 for n in range(1, m + 1))
        assert all(state.inverse[n] == prev.inverse[n] for n in range(1, m))
        assert state.frontier >= prev.frontier


def test_run_cross_checked_by_product():
    state, trace, _ = run(A5, 380, 5)
    factors = (A5,) + tuple(state.recipe_factors())
    direct = invert(Evaluator().series(BrownProduct(factors), 380))
    assert direct == state.inverse


def test_leading_term_of_factor():
    for m, f in [(20, 1), (12, 7), (30, 3)]:
        bound = m * (m - 1)
        factor = boston_power_series(alternating_truncated_series(m, bound), f,
                                     math.factorial(m), math.factorial(m) // 2)
        inv = invert(factor)
        assert inv[m] == f * m
        assert all(inv[n] == 0 for n in range(2, m))


def test_run_zero_steps():
    state, trace, reason = run(A5, 380, 0)
    assert state.steps == ((5, 1),) and len(trace) == 1


def test_run_soluble_completes():
    state, trace, reason = run(Lattice.named("S3"), 100, 5)
    assert reason == "complete" and len(state.steps) == 1


def test_run_stops_when_bound_exhausted():
    _, trace, reason = run(A5, 1000, 5)
    assert reason == "bound exhausted" and len(trace) == 1


def test_run_is_deterministic():
    a = run(A5, 380, 6)
    b = run(A5, 380, 6)
    assert a[1] == b[1] and a[0].inverse == b[0].inverse


def test_seed_alternating():
    state, trace, reason = run(AlternatingTruncated(9), 72, 3)
    assert trace[0].m == 9 and trace[0].frontier == 71
    assert [(r.m, r.f) for r in trace] == [(9, 1), (72, 1)]
    assert reason == "complete"
    assert all(c >= 0 for _, c in state.inverse)
