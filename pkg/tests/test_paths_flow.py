import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from specflow import (
    EndpointNotInvertible,
    IntervalKind,
    JunctionNotInvertible,
    MismatchAtJunction,
    OperatorPath,
    PathMismatch,
    TailNotSettled,
    affine_path,
    arctan_path,
    branch_trace,
    concatenate,
    constant_path,
    direct_sum,
    keyframe_path,
    poly_path,
    spectral_flow,
)
from specflow.flow import DELTA_CROSS
from specflow.harness.generators import random_keyframes, random_glued_pair

from oracles import ARCTAN_RADIUS_QUARTER


def diag_path(*slopes, T=1.0):
    return affine_path(np.zeros((len(slopes), len(slopes))), np.diag(slopes), T)


def oracle_flow(times, mats):
    """Endpoint negative counts computed with numpy alone."""
    neg = lambda m: int(np.sum(np.linalg.eigvalsh(m) < 0))
    return neg(mats[0]) - neg(mats[-1])


# -- spectral flow examples --------------------------------------------------------


def test_normalization_and_constant():
    assert spectral_flow(arctan_path([[1.0]], kind="line")) == 1
    assert spectral_flow(arctan_path([[1.0]])) == 1
    assert spectral_flow(constant_path(np.diag([1.0, -2.0, 3.0]))) == 0


def test_diagonal_examples():
    assert spectral_flow(diag_path(1.0, -1.0)) == 0
    assert spectral_flow(diag_path(1.0, 1.0)) == 2
    assert spectral_flow(diag_path(-1.0, -1.0, 1.0)) == -1


def test_endpoint_errors():
    with pytest.raises(EndpointNotInvertible):
        affine_path([[1.0]], [[1.0]])  # A(-1) = 0
    with pytest.raises(EndpointNotInvertible):
        keyframe_path([0.0, 1.0], [[[0.0]], [[1.0]]], kind="forward")
    bad = OperatorPath("finite", lambda s: np.array([[s]]), 1, interval=(-1, 1), validate=False)
    with pytest.raises(EndpointNotInvertible):
        spectral_flow(bad.restrict(0.0, 1.0))


def test_tail_not_settled():
    # A(s) = arctan(s) does not reach pi/2 within 1e-3 at radius 5
    with pytest.raises(TailNotSettled):
        OperatorPath(
            "forward", lambda s: np.array([[math.atan(s) - 0.5]]), 1,
            asymptotes={"+": [[math.pi / 2 - 0.5]]}, tail_radius=5.0, eps_tail=1e-3,
        )
    # eps_tail must stay below half the asymptotic margin
    with pytest.raises(TailNotSettled):
        constant_path([[1.0]], kind="forward", eps_tail=0.6)


def test_arctan_tail_radius():
    p = arctan_path([[1.0]], kind="line")
    assert p.eps_tail == pytest.approx(0.25 * math.pi / 2)
    p = arctan_path([[1.0]], kind="line", eps_tail=0.25)
    assert p.tail_radius == pytest.approx(ARCTAN_RADIUS_QUARTER, rel=1e-8)
    assert abs(p.matrix(p.tail_radius)[0, 0] - math.pi / 2) <= 0.25
    with pytest.raises(EndpointNotInvertible):
        arctan_path([[1.0]], kind="forward")  # A(0) = 0


def test_infinite_kinds():
    fwd = arctan_path(np.diag([1.0, 0.5]), np.diag([-0.5, 1.0]), kind="forward")
    assert fwd.window[0] == 0.0
    assert spectral_flow(fwd) == 1
    back = arctan_path(np.eye(2), np.diag([0.5, 1.0]), kind="backward")
    assert back.window[1] == 0.0
    assert spectral_flow(back) == 2
    assert spectral_flow(back) == spectral_flow(back.reflected())
    line = arctan_path(np.diag([1.0, -1.0, 1.0]), np.diag([0.2, -0.1, 0.4]), kind="line")
    assert spectral_flow(line) == 1
    assert spectral_flow(line.with_tail_radius(2 * line.tail_radius)) == 1
    assert spectral_flow(line.truncated()) == 1


def test_reflection_law_random():
    rng = np.random.default_rng(4)
    for _ in range(20):
        times, mats = random_keyframes(rng, 3, "backward")
        p = keyframe_path(times, mats, "backward")
        r = p.reflected()
        assert r.kind is IntervalKind.FORWARD
        assert spectral_flow(p) == spectral_flow(r) == oracle_flow(times, mats)
        s = 0.37 * times[0]
        np.testing.assert_array_equal(r.matrix(-s), -p.matrix(s))


def test_keyframe_validation():
    with pytest.raises(ValueError):
        keyframe_path([0.0, 0.0], [np.eye(1), np.eye(1)])
    with pytest.raises(ValueError):
        keyframe_path([1.0, 2.0], [np.eye(1), np.eye(1)], kind="forward")
    with pytest.raises(ValueError):
        keyframe_path([0.0], [np.eye(1)])
    p = keyframe_path([-1.0, 0.0, 1.0], [[[1.0]], [[3.0]], [[2.0]]])
    assert p.matrix(-0.5)[0, 0] == 2.0
    assert p.matrix(5.0)[0, 0] == 2.0


def test_poly_path():
    p = poly_path([np.diag([-1.0, 1.0]), np.zeros((2, 2)), np.diag([2.0, -2.0])])
    np.testing.assert_array_equal(p.matrix(0.5), np.diag([-0.5, 0.5]))
    assert spectral_flow(p) == 0


# -- branch traces ------------------------------------------------------------------


def test_trace_linear_example():
    tr = branch_trace(diag_path(1.0), 5)
    np.testing.assert_allclose(tr.eigen[:, 0], [-1, -0.5, 0, 0.5, 1])
    assert tr.net_crossings == 1
    assert [c.direction for c in tr.crossings] == [1]
    assert tr.ambiguous == [(0.0, 0)]
    np.testing.assert_array_equal(tr.labels, [-1, 0])


def test_trace_constant_and_touching():
    tr = branch_trace(constant_path(np.diag([1.0, -2.0])), 7)
    assert tr.crossings == []
    assert np.all(tr.branches == tr.branches[0])
    touch = poly_path([[[-0.25]], [[0.0]], [[1.0]]])
    tr = branch_trace(touch, 101)
    assert [c.direction for c in tr.crossings] == [-1, 1]
    assert tr.net_crossings == spectral_flow(touch) == 0


def test_trace_csv(tmp_path):
    tr = branch_trace(arctan_path([[1.0]]), 11)
    out, side = tmp_path / "t.csv", tmp_path / "c.csv"
    tr.write_csv(out, side)
    lines = out.read_text().splitlines()
    assert lines[0] == "time,branch_label,value"
    assert len(lines) == 1 + 11 * 2
    crossing = side.read_text().splitlines()
    assert crossing[0] == "time,branch,direction"
    assert len(crossing) == 2 and crossing[1].endswith(",0,1")


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_trace_multiset_and_order(seed, N):
    rng = np.random.default_rng(seed)
    times, mats = random_keyframes(rng, N)
    p = keyframe_path(times, mats)
    tr = branch_trace(p, 41)
    assert np.all(np.diff(tr.branches, axis=1) >= 0)
    for i, t in enumerate(tr.grid):
        expected = np.sort(np.append(np.linalg.eigvalsh(p.matrix(t)), 0.0))
        np.testing.assert_allclose(tr.branches[i], expected, atol=1e-9)
    # the inserted zero starts at label 0
    assert tr.branches[0, list(tr.labels).index(0)] == 0.0
    if not tr.ambiguous:
        dense = branch_trace(p, 2001)
        if not dense.ambiguous:
            assert dense.net_crossings == spectral_flow(p)


@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_flow_matches_numpy_oracle(seed, N):
    rng = np.random.default_rng(seed)
    times, mats = random_keyframes(rng, N)
    assert spectral_flow(keyframe_path(times, mats)) == oracle_flow(times, mats)


# -- direct sums and concatenation --------------------------------------------------


def test_direct_sum_examples():
    assert spectral_flow(direct_sum(diag_path(1.0), diag_path(-1.0))) == 0
    a = arctan_path([[1.0]], kind="line")
    assert spectral_flow(direct_sum(a, a)) == 2
    p = diag_path(1.0, 1.0)
    c = constant_path(np.diag([3.0, -1.0]))
    assert spectral_flow(direct_sum(p, c)) == spectral_flow(p)
    with pytest.raises(PathMismatch):
        direct_sum(p, constant_path([[1.0]], T=2.0))
    with pytest.raises(PathMismatch):
        direct_sum(p, arctan_path([[1.0]], kind="line"))


def test_direct_sum_growth_merge():
    from specflow import GrowthFunction

    p1 = constant_path([[1.0]], gf=GrowthFunction.explicit([5.0]))
    p2 = constant_path(np.diag([-1.0, 2.0]), gf=GrowthFunction.explicit([1.0, 7.0]))
    s = direct_sum(p1, p2)
    np.testing.assert_array_equal(s.gf.values, [1.0, 5.0, 7.0])
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(s.matrix(0.0))), [-1.0, 1.0, 2.0])


def test_concatenate_examples():
    f = lambda s: np.array([[s + 1.5]])
    left = OperatorPath("finite", f, 1, interval=(-1.0, 0.0))
    right = OperatorPath("finite", f, 1, interval=(0.0, 1.0))
    whole = concatenate(left, right)
    assert whole.window == (-1.0, 1.0)
    assert spectral_flow(whole) == spectral_flow(left) + spectral_flow(right)
    c1, c2 = constant_path([[2.0]], T=0.5), constant_path([[2.0]], T=0.5)
    glued = concatenate(c1.restrict(-1.0, 0.0), c2.restrict(0.0, 1.0))
    assert spectral_flow(glued) == 0
    with pytest.raises(MismatchAtJunction):
        concatenate(constant_path([[1.0]]).restrict(-1, 0), constant_path([[2.0]]).restrict(0, 1))
    with pytest.raises(PathMismatch):
        concatenate(constant_path([[1.0]]).restrict(-1, 0), constant_path([[1.0]]).restrict(0.5, 1))
    g = lambda s: np.array([[s]])
    lft = OperatorPath("finite", g, 1, interval=(-1.0, 0.0), validate=False)
    rgt = OperatorPath("finite", g, 1, interval=(0.0, 1.0), validate=False)
    with pytest.raises(JunctionNotInvertible):
        concatenate(lft, rgt)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6))
def test_catenation_random(seed, N):
    rng = np.random.default_rng(seed)
    (t1, m1), (t2, m2) = random_glued_pair(rng, N)
    left, right = keyframe_path(t1, m1), keyframe_path(t2, m2)
    glued = concatenate(left, right)
    assert spectral_flow(glued) == spectral_flow(left) + spectral_flow(right) == oracle_flow(None, [m1[0], m2[-1]])


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_homotopy_invariance(seed, N):
    rng = np.random.default_rng(seed)
    times, m0 = random_keyframes(rng, N, k=3)
    m1 = [m0[0], 0.5 * (m0[1] + m0[1].T) * -1.0, m0[2]]
    flows = {spectral_flow(keyframe_path(times, [(1 - r) * a + r * b for a, b in zip(m0, m1)])) for r in np.linspace(0, 1, 11)}
    assert len(flows) == 1


def test_delta_cross_value():
    assert DELTA_CROSS == 1e-6
