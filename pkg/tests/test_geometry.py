import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from isospec import geometry as geo
from isospec.errors import DomainError
from isospec.jt import eigen_triplet, shape_coordinates

inner_b = st.floats(0.02, 0.98)


def test_chart_point_lies_on_leaf():
    p = geo.ChartPoint(0.3, 0.4, -1.0, 2.0, r0=1.5)
    a = geo.chart_point(p)
    assert abs(a.trace()) < 1e-14
    sc = shape_coordinates(eigen_triplet(a))
    assert sc.b == pytest.approx(0.3, abs=1e-12)
    assert sc.r == pytest.approx(1.5, abs=1e-12)


def test_principal_curvature_examples():
    s3 = math.sqrt(3)
    assert geo.principal_curvatures(0.5) == pytest.approx((-s3, 0.0, s3))
    assert geo.mean_curvature(0.5) == 0.0
    assert geo.principal_curvatures(0.5, 2.0) == pytest.approx((-s3 / 2, 0.0, s3 / 2))


@settings(max_examples=50, deadline=None)
@given(inner_b, st.floats(0.2, 5))
def test_gauss_codazzi_and_mean(b, r0):
    k = geo.principal_curvatures(b, r0)
    assert geo.mean_curvature(b, r0) == pytest.approx(sum(k) / 3, rel=1e-10, abs=1e-12)
    scale = sum(v * v for v in k) + 6 / r0 ** 2
    assert abs(geo.gauss_codazzi_residual(b, r0)) < 1e-12 * scale
    assert geo.scalar_curvature(b, r0) == 0.0


@settings(max_examples=50, deadline=None)
@given(inner_b)
def test_reflection_symmetry(b):
    k = geo.principal_curvatures(b)
    kr = geo.principal_curvatures(1 - b)
    assert sorted(-v for v in k) == pytest.approx(sorted(kr), rel=1e-9, abs=1e-9)
    K = geo.sectional_curvatures(b)
    Kr = geo.sectional_curvatures(1 - b)
    assert (K[0], K[1], K[2]) == pytest.approx((Kr[2], Kr[1], Kr[0]))
    assert geo.leaf_volume(b) == pytest.approx(geo.leaf_volume(1 - b))


def test_volume_latitude_focal():
    assert geo.leaf_volume(0.5) == pytest.approx(4 * math.pi ** 2, abs=1e-12)
    assert geo.leaf_volume(0.0) == 0.0 and geo.leaf_volume(1.0) == 0.0
    assert geo.leaf_circle_latitude(0.5) == pytest.approx(math.pi / 3)
    assert geo.leaf_circle_latitude(0.0) == pytest.approx(math.pi / 2)
    assert geo.leaf_circle_latitude(1.0) == pytest.approx(math.pi / 6)
    assert geo.focal_gaussian_curvature(2.0) == pytest.approx(1 / 12)
    assert geo.sectional_curvatures(0.5) == pytest.approx((1.0, 2.0, 1.0))


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        geo.principal_curvatures(bad)
    with pytest.raises(DomainError):
        geo.leaf_volume(bad if bad not in (0.0, 1.0) else -1.0)


def test_numeric_shape_operator_matches():
    rng = random.Random(5)
    for _ in range(8):
        b = rng.uniform(0.1, 0.9)
        x = tuple(rng.uniform(-1, 1) for _ in range(3))
        rep = geo.numeric_shape_operator(b, x)
        assert rep.k == pytest.approx(geo.principal_curvatures(b), abs=1e-6)
        assert rep.warnings == ()


def test_numeric_radius_scaling():
    rep = geo.numeric_shape_operator(0.3, (0.1, 0.2, 0.3), r0=2.0)
    assert rep.k == pytest.approx(geo.principal_curvatures(0.3, 2.0), abs=1e-6)


def test_step_warnings():
    assert geo.numeric_shape_operator(0.5, h_step=1e-2).warnings
    assert geo.numeric_shape_operator(0.5, h_step=1e-8).warnings


def test_geodesic_slice_and_perturbed_control():
    rep = geo.check_totally_geodesic_leaf()
    assert rep.passed, rep.max_residual
    bent = geo.check_totally_geodesic_leaf(b_samples=(0.5,), perturbation=0.1)
    assert not bent.passed


def test_summary_keys():
    s = geo.geometry_summary(0.4)
    assert s["max_curvature_discrepancy"] < 1e-5
    assert set(s) >= {"principal_curvatures", "leaf_volume", "latitude", "sectional_curvatures"}
    assert np.isfinite(s["gauss_codazzi_residual"])
