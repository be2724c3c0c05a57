import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgspectra import (
    NormalizeError,
    OrderCapError,
    Term,
    TrigSpectralFunction,
    build_ladder,
    derivative_level,
    eval_grid,
    evaluate,
    is_regular,
    normalize,
    regularity_sum,
    scalar_fn,
)

# Phases on a dyadic grid compose exactly under the ladder's
# half-per-level shift, so structural identities can be asserted bitwise.
dyadic_phases = st.integers(min_value=-16, max_value=31).map(lambda n: n / 8.0)
amplitudes = st.floats(min_value=-0.9, max_value=0.9).filter(lambda a: abs(a) > 1e-6)


def make_fn(s0=19.0, gamma0=0.0, terms=((17.0, 0.0, 0.6), (5.0, 0.5, -0.3))):
    return normalize(s0, gamma0, list(terms))


class TestNormalize:
    def test_identity_passthrough(self):
        f = normalize(19.0, 0.25, [(17.0, 0.5, 0.75), (5.0, 0.0, 0.5)])
        assert f.s0 == 19.0
        assert f.gamma0 == 0.25
        assert [(t.s, t.gamma, t.a) for t in f.terms] == [
            (17.0, 0.5, 0.75),
            (5.0, 0.0, 0.5),
        ]

    def test_negative_action_reflected(self):
        f = normalize(19.0, 0.0, [(-3.0, 0.25, -0.25)])
        g = normalize(19.0, 0.0, [(3.0, -0.25, -0.25)])
        assert f.terms == g.terms
        (t,) = f.terms
        assert t.s == 3.0
        assert t.gamma == 1.75
        assert t.a == -0.25

    def test_phases_canonical(self):
        f = normalize(2.0, -3.25, [(1.0, 7.5, 0.2), (0.5, -2.0, 0.3)])
        assert 0.0 <= f.gamma0 < 2.0
        for t in f.terms:
            assert 0.0 <= t.gamma < 2.0
        assert f.gamma0 == 0.75

    def test_duplicate_terms_merge(self):
        f = normalize(10.0, 0.0, [(4.0, 0.5, 0.2), (4.0, 0.5, 0.3), (2.0, 0.0, 0.1)])
        assert len(f.terms) == 2
        assert f.terms[0].a == 0.5

    def test_cancelled_term_dropped(self):
        f = normalize(10.0, 0.0, [(4.0, 0.5, 0.2), (4.0, 0.5, -0.2)])
        assert f.terms == ()

    def test_top_action_folds_into_leading(self):
        # cos(x - pi*g) with the same phase adds to the leading cosine:
        # (1 - a) cos(...) - rest, then everything divides by (1 - a).
        f = normalize(2.0, 0.5, [(2.0, 0.5, 0.25), (1.0, 0.0, 0.3)])
        assert f.s0 == 2.0
        (t,) = f.terms
        assert t.a == pytest.approx(0.3 / 0.75, abs=1e-15)

    def test_top_action_opposite_phase(self):
        # A phase off by exactly pi flips the sign of the contribution.
        f = normalize(2.0, 0.5, [(2.0, 1.5, 0.25), (1.0, 0.0, 0.3)])
        (t,) = f.terms
        assert t.a == pytest.approx(0.3 / 1.25, abs=1e-15)

    def test_unfoldable_top_action(self):
        with pytest.raises(NormalizeError, match="unfoldable"):
            normalize(2.0, 0.5, [(2.0, 0.25, 0.25), (1.0, 0.0, 0.3)])

    def test_degenerate_leading(self):
        with pytest.raises(NormalizeError, match="degenerate"):
            normalize(2.0, 0.5, [(2.0, 0.5, 1.0), (1.0, 0.0, 0.3)])

    def test_rescaling_after_fold(self):
        # Folding -0.5 into the lead makes it 1.5; amplitudes shrink by 1.5.
        f = normalize(2.0, 0.0, [(2.0, 0.0, -0.5), (1.0, 0.25, 0.6)])
        (t,) = f.terms
        assert t.a == pytest.approx(0.4, abs=1e-15)

    def test_action_exceeding_leading_rejected(self):
        with pytest.raises(NormalizeError):
            normalize(2.0, 0.0, [(3.0, 0.0, 0.1)])

    def test_nonpositive_leading_action_rejected(self):
        with pytest.raises(NormalizeError):
            normalize(0.0, 0.0, [])
        with pytest.raises(NormalizeError):
            normalize(-1.0, 0.0, [])

    def test_nonfinite_rejected(self):
        with pytest.raises(NormalizeError):
            normalize(2.0, 0.0, [(1.0, 0.0, math.nan)])
        with pytest.raises(NormalizeError):
            normalize(2.0, math.inf, [])

    def test_terms_sorted_by_action(self):
        f = normalize(10.0, 0.0, [(2.0, 0.0, 0.1), (7.0, 0.0, 0.1), (4.0, 0.0, 0.1)])
        assert [t.s for t in f.terms] == [7.0, 4.0, 2.0]

    def test_frozen(self):
        f = make_fn()
        with pytest.raises(AttributeError):
            f.s0 = 5.0
        with pytest.raises(AttributeError):
            f.terms[0].a = 1.0


class TestEvaluation:
    def test_pure_cosine(self):
        f = normalize(2.0, 0.0, [])
        assert evaluate(f, 0.0) == 1.0
        assert evaluate(f, math.pi) == pytest.approx(1.0, abs=1e-15)
        assert abs(evaluate(f, math.pi / 4.0)) < 1e-15

    def test_phase_offset(self):
        # gamma0 = 1/2 turns the lead into sin(s0 k).
        f = normalize(3.0, 0.5, [])
        assert evaluate(f, 0.0) == pytest.approx(0.0, abs=1e-15)
        assert evaluate(f, math.pi / 6.0) == pytest.approx(1.0, abs=1e-15)

    def test_term_subtraction(self):
        f = normalize(2.0, 0.0, [(1.0, 0.0, 0.5)])
        k = 0.37
        expected = math.cos(2.0 * k) - 0.5 * math.cos(k)
        assert evaluate(f, k) == pytest.approx(expected, abs=1e-15)

    def test_grid_matches_pointwise(self):
        f = make_fn()
        xs = np.linspace(0.0, 30.0, 1500)
        grid = eval_grid(f, xs)
        pointwise = np.array([evaluate(f, float(x)) for x in xs])
        assert np.allclose(grid, pointwise, rtol=0.0, atol=1e-13)

    def test_scalar_fn_bitwise(self):
        f = make_fn()
        g = scalar_fn(f)
        for k in (0.0, 0.1, 1.7, 12.34, 29.999):
            assert g(k) == evaluate(f, k)

    def test_callable_dispatch(self):
        f = make_fn()
        assert f(1.5) == evaluate(f, 1.5)
        xs = np.array([0.5, 1.5])
        assert np.array_equal(f(xs), eval_grid(f, xs))


class TestDerivativeLadder:
    def test_level_zero_is_same_object(self):
        f = make_fn()
        assert derivative_level(f, 0) is f

    def test_phase_shift_and_damping(self):
        f = normalize(4.0, 0.5, [(2.0, 0.25, 0.8)])
        d = derivative_level(f, 1)
        assert d.gamma0 == 0.0
        (t,) = d.terms
        assert t.gamma == -0.25
        assert t.a == 0.8 * (2.0 / 4.0)

    @given(
        g0=dyadic_phases,
        g1=dyadic_phases,
        a=amplitudes,
        ratio=st.sampled_from([0.5, 0.25, 0.75, 0.125]),
        m=st.integers(min_value=0, max_value=6),
        n=st.integers(min_value=0, max_value=6),
    )
    def test_ladder_composes_exactly(self, g0, g1, a, ratio, m, n):
        f = TrigSpectralFunction(8.0, g0, (Term(8.0 * ratio, g1, a),))
        assert derivative_level(derivative_level(f, m), n) == derivative_level(
            f, m + n
        )

    def test_fd_matches_level_one(self):
        f = make_fn()
        d = derivative_level(f, 1)
        h = 1e-6
        for k in (0.3, 1.1, 2.9, 7.77):
            fd = (evaluate(f, k + h) - evaluate(f, k - h)) / (2.0 * h * f.s0)
            assert fd == pytest.approx(evaluate(d, k), abs=1e-8)

    def test_zero_action_term_dies_off(self):
        f = normalize(4.0, 0.0, [(0.0, 0.25, 0.5)])
        d = derivative_level(f, 1)
        (t,) = d.terms
        assert t.a == 0.0
        # and it no longer moves the values
        assert evaluate(d, 1.23) == pytest.approx(math.cos(4 * 1.23 + math.pi / 2), abs=1e-15)


class TestRegularity:
    def test_sum_and_flag(self):
        f = normalize(19.0, 0.0, [(17.0, 0.0, 0.75), (5.0, 0.0, 0.5), (3.0, 0.0, -0.25)])
        assert regularity_sum(f) == pytest.approx(1.5, abs=1e-15)
        assert not is_regular(f)
        g = normalize(19.0, 0.0, [(17.0, 0.0, 0.4)])
        assert is_regular(g)

    def test_boundary_is_irregular(self):
        f = normalize(2.0, 0.0, [(1.0, 0.0, 1.0)])
        assert not is_regular(f)
        ladder = build_ladder(f)
        assert ladder.order >= 1

    def test_near_boundary_is_irregular(self):
        f = normalize(2.0, 0.0, [(1.0, 0.0, 1.0 - 1e-12)])
        assert not is_regular(f)

    def test_ladder_stops_at_first_regular_level(self, worked_star):
        ladder = build_ladder(worked_star)
        assert ladder.order == 1
        assert not is_regular(ladder[0])
        assert is_regular(ladder[1])
        assert ladder.top is ladder[1]
        assert len(ladder) == 2

    def test_order_cap(self):
        # An action ratio this close to one decays far too slowly to
        # regularize within any reasonable cap.
        f = normalize(1.0, 0.0, [(1.0 - 1e-12, 0.0, 2.0)])
        with pytest.raises(OrderCapError, match="order cap"):
            build_ladder(f, max_order=64)
        with pytest.raises(OrderCapError):
            build_ladder(f, max_order=0)

    def test_regular_function_is_its_own_ladder(self):
        f = normalize(2.0, 0.0, [(1.0, 0.0, 0.3)])
        ladder = build_ladder(f)
        assert ladder.order == 0
        assert ladder.top is f


@given(
    s0=st.floats(min_value=0.5, max_value=60.0),
    gamma0=st.floats(min_value=0.0, max_value=2.0, exclude_max=True),
    k=st.floats(min_value=0.0, max_value=50.0),
)
def test_leading_term_alone_is_a_cosine(s0, gamma0, k):
    f = normalize(s0, gamma0, [])
    assert evaluate(f, k) == pytest.approx(
        math.cos(s0 * k - math.pi * gamma0), abs=1e-12
    )


@given(
    g=dyadic_phases,
    a=amplitudes,
    frac=st.sampled_from([0.125, 0.375, 0.5, 0.875]),
)
def test_derivative_damps_amplitude_sum(g, a, frac):
    f = TrigSpectralFunction(10.0, 0.0, (Term(10.0 * frac, g, a),))
    assert regularity_sum(derivative_level(f, 1)) <= regularity_sum(f)
