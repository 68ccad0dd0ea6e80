import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specflow import DimensionError, GrowthFunction
from specflow.fredholm import DiscretePath, ev_section, evaluation_map, trace_tolerance, trapezoid_weights
from specflow.fredholm.evaluation import SQRT2

from oracles import CONSTANT_TRACE_RATIO, SECTION_BOUND_H4, SECTION_ENERGY_H4


def test_trapezoid_weights():
    np.testing.assert_array_equal(trapezoid_weights(4, 0.5), [0.25, 0.5, 0.5, 0.25])


def test_norms_closed_form():
    p = DiscretePath(np.linspace(0, 2, 5), np.full(5, 3.0))
    assert p.p0_norm() == pytest.approx(math.sqrt(18.0))
    assert p.p1_norm() == pytest.approx(math.sqrt(18.0))  # h = 1, zero derivative
    lin = DiscretePath.from_function(lambda t: [t], 0, 1, 10)
    # int 1 dt + trapezoid int t^2 = 1 + (1/3 + 1/600)
    assert lin.p1_norm() ** 2 == pytest.approx(1 + 1 / 3 + 1 / 600)
    assert lin.N == 1 and lin.n == 10 and lin.step == pytest.approx(0.1)
    np.testing.assert_allclose(lin.midpoints()[:, 0], np.arange(0.05, 1, 0.1))


def test_adapted_h1_norm_and_metric():
    g = np.diag([2.0, 1.0])
    p = DiscretePath(np.linspace(0, 1, 3), np.tile([1.0, 1.0], (3, 1)), GrowthFunction.ones(2), g)
    assert p.p0_norm() == pytest.approx(math.sqrt(3.0))
    a = np.diag([3.0, 0.0])
    np.testing.assert_allclose(p.h1_sq(a), [18.0] * 3)


def test_validation():
    with pytest.raises(DimensionError):
        DiscretePath(np.linspace(0, 1, 3), np.zeros((4, 1)))
    with pytest.raises(ValueError):
        DiscretePath([0.0, 0.1, 0.5], np.zeros((3, 1)))
    with pytest.raises(ValueError):
        DiscretePath([0.0], np.zeros((1, 1)))
    with pytest.raises(DimensionError):
        DiscretePath(np.linspace(0, 1, 3), np.zeros((3, 2)), GrowthFunction.ones(3))


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_p1_dominates_p0(seed, N):
    rng = np.random.default_rng(seed)
    p = DiscretePath(np.linspace(-1, 1, 31), rng.standard_normal((31, N)), GrowthFunction.poly(N))
    assert p.p1_norm() >= p.p0_norm()


def test_constant_trace_ratio():
    gf = GrowthFunction.ones(1)
    ev = evaluation_map(DiscretePath(np.linspace(0, 1, 51), np.full(51, 2.0), gf))
    assert ev.ratio == pytest.approx(CONSTANT_TRACE_RATIO, rel=1e-13)
    assert ev.ok and ev.endpoint[0] == 2.0


def test_section_examples():
    gf = GrowthFunction.explicit([4.0])
    sec = ev_section([1.0], gf, 400)
    np.testing.assert_allclose(sec.values[:, 0], np.exp(-2 * sec.grid), rtol=1e-14)
    ev = evaluation_map(sec)
    assert ev.endpoint[0] == 1.0
    assert sec.trace_norm() ** 2 == pytest.approx(SECTION_ENERGY_H4, rel=1e-4)
    assert sec.trace_norm() ** 2 <= SECTION_BOUND_H4
    zero = ev_section(np.zeros(3), GrowthFunction.poly(3), 10)
    assert not np.any(zero.values)
    with pytest.raises(DimensionError):
        ev_section(np.zeros(3), GrowthFunction.poly(2))


@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_section_is_right_inverse_with_energy_bound(seed, N):
    rng = np.random.default_rng(seed)
    gf = GrowthFunction.poly(N)
    x0 = rng.standard_normal(N)
    sec = ev_section(x0, gf, 200)
    ev = evaluation_map(sec, gf)
    np.testing.assert_array_equal(ev.endpoint, x0)
    assert sec.trace_norm() ** 2 <= 2 * sum(np.sqrt(gf.values) * x0**2)
    assert ev.ratio <= SQRT2


def test_trace_tolerance():
    assert trace_tolerance(0.01, GrowthFunction.poly(16)) == pytest.approx(0.4)
    assert trace_tolerance(0.01, GrowthFunction.explicit([0.25])) == pytest.approx(0.1)
