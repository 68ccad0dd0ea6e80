import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from specflow import DimensionError, GrowthFunction, flat_apply, r_inner, r_norm, shift_isometry

H14 = GrowthFunction.explicit([1.0, 4.0])

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
levels = st.sampled_from([-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0])


def vectors(n):
    return arrays(np.float64, n, elements=finite)


@st.composite
def growth(draw, n=None):
    n = draw(st.integers(1, 12)) if n is None else n
    steps = draw(arrays(np.float64, n, elements=st.floats(0.0, 3.0)))
    return GrowthFunction.explicit(1.0 + np.cumsum(steps))


def test_r_inner_examples():
    assert r_inner([1, 0], [1, 0], 1, H14) == 1.0
    assert r_inner([0, 1], [0, 1], 0.5, H14) == 2.0
    assert r_inner([0, 1], [0, 1], 0, H14) == 1.0


def test_shift_isometry_examples():
    out = shift_isometry([0.0, 1.0], 1, 0, H14)
    np.testing.assert_array_equal(out, [0.0, 2.0])
    assert r_norm([0, 1], 1, H14) == 2.0 == r_norm(out, 0, H14)
    u = np.array([3.0, -1.0])
    np.testing.assert_array_equal(shift_isometry(u, 0.7, 0.7, H14), u)


def test_flat_examples():
    assert flat_apply([1, 0], [0, 1]) == 0.0
    assert flat_apply([1, 1], [1, 1]) == 2.0


def test_flat_dual_norm_closed_form_maximizer():
    gf = GrowthFunction.explicit([1.0, 2.0, 3.0])
    rng = np.random.default_rng(0)
    r = 0.5
    for _ in range(20):
        u = rng.standard_normal(3)
        v = u * gf.values ** (-r)
        v /= r_norm(v, r, gf)
        assert flat_apply(u, v) == pytest.approx(r_norm(u, -r, gf), rel=1e-13)
        # no other unit vector does better
        w = rng.standard_normal((500, 3))
        w /= np.sqrt((w**2 * gf.values**r).sum(axis=1))[:, None]
        assert np.max(np.abs(w @ u)) <= r_norm(u, -r, gf) * (1 + 1e-12)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        r_inner([1.0], [1.0, 2.0], 0, H14)
    with pytest.raises(DimensionError):
        shift_isometry([1.0, 2.0, 3.0], 0, 1, H14)
    with pytest.raises(DimensionError):
        flat_apply([1.0], [1.0, 2.0])


def test_growth_validation_and_families():
    with pytest.raises(ValueError):
        GrowthFunction.explicit([2.0, 1.0])
    with pytest.raises(ValueError):
        GrowthFunction.explicit([0.0, 1.0])
    with pytest.raises(ValueError):
        GrowthFunction.explicit([])
    np.testing.assert_array_equal(GrowthFunction.poly(4, 2).values, [1, 4, 9, 16])
    np.testing.assert_array_equal(GrowthFunction.geom(3).values, [2, 4, 8])
    np.testing.assert_array_equal(GrowthFunction.poly(3).kappa, [1, 0.5, 1 / 3])
    gf = GrowthFunction.poly(5, 1.5)
    assert GrowthFunction.from_dict(gf.to_dict()) == gf
    assert GrowthFunction.from_dict(GrowthFunction.geom(4).to_dict()) == GrowthFunction.geom(4)
    assert GrowthFunction.from_dict({"kind": "explicit", "values": [1, 2]}) == GrowthFunction.explicit([1, 2])
    assert hash(gf) == hash(GrowthFunction.poly(5, 1.5))
    with pytest.raises(ValueError):
        gf.values[0] = 3.0


@given(st.data(), levels, levels)
def test_shift_preserves_norm(data, r, s):
    gf = data.draw(growth())
    u = data.draw(vectors(gf.N))
    a = r_norm(u, r, gf)
    b = r_norm(shift_isometry(u, r, s, gf), s, gf)
    assert b == pytest.approx(a, rel=1e-12, abs=1e-300)


@given(st.data(), levels, levels)
def test_shift_inverse_law(data, r, s):
    gf = data.draw(growth())
    u = data.draw(vectors(gf.N))
    back = shift_isometry(shift_isometry(u, r, s, gf), s, r, gf)
    np.testing.assert_allclose(back, u, rtol=1e-12, atol=1e-12)


@given(st.data(), levels, st.floats(-3, 3))
def test_r_inner_symmetric_bilinear_positive(data, r, c):
    gf = data.draw(growth())
    u, v, w = (data.draw(vectors(gf.N)) for _ in range(3))
    assert r_inner(u, v, r, gf) == r_inner(v, u, r, gf)
    scale = max(1.0, *(abs(r_inner(x, x, r, gf)) for x in (u, v, w)))
    lhs = r_inner(c * u + w, v, r, gf)
    rhs = c * r_inner(u, v, r, gf) + r_inner(w, v, r, gf)
    assert lhs == pytest.approx(rhs, abs=1e-9 * scale * (1 + abs(c)))
    assert r_inner(u, u, r, gf) >= 0
    if np.any(u != 0):
        assert r_inner(u, u, r, gf) > 0 or np.max(np.abs(u)) < 1e-150


@given(st.data(), levels)
def test_flat_factorization(data, r):
    gf = data.draw(growth())
    u, v = data.draw(vectors(gf.N)), data.draw(vectors(gf.N))
    lhs = flat_apply(u, v)
    rhs = r_inner(shift_isometry(u, -r, 0, gf), shift_isometry(v, r, 0, gf), 0, gf)
    assert rhs == pytest.approx(lhs, rel=1e-10, abs=1e-8 * (1 + np.abs(u) @ np.abs(v)))


@given(st.data(), levels, levels)
def test_scale_nesting(data, r, s):
    gf = data.draw(growth())
    u = data.draw(vectors(gf.N))
    lo, hi = min(r, s), max(r, s)
    assert r_norm(u, hi, gf) >= r_norm(u, lo, gf) * (1 - 1e-12)


def test_compensated_sum_is_exact_on_cancellation():
    gf = GrowthFunction.ones(3)
    assert r_inner([1e16, 1.0, -1e16], [1.0, 1.0, 1.0], 0, gf) == 1.0
    assert math.isclose(r_norm([3.0, 4.0, 0.0], 0, gf), 5.0)
