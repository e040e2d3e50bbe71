import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperhs.linalg import (
    CosetPoint,
    LinalgError,
    Signature,
    conjugated_trace,
    coset_embed,
    is_pseudo_orthogonal,
    signature_matrix,
)


def test_signature_matrix():
    ell = signature_matrix(Signature(2, 1))
    assert np.array_equal(ell, np.diag([1.0, 1.0, -1.0]))


def test_signature_validation():
    with pytest.raises(LinalgError):
        Signature(0, 2)


def test_boost_is_pseudo_orthogonal():
    th = 0.7
    t = np.array([[np.cosh(th), np.sinh(th)], [np.sinh(th), np.cosh(th)]])
    assert is_pseudo_orthogonal(t, Signature(1, 1))
    assert not is_pseudo_orthogonal(np.eye(2) * 2, Signature(1, 1))


def test_rotation_is_not_pseudo_orthogonal():
    th = 0.4
    r = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    assert not is_pseudo_orthogonal(r, Signature(1, 1))


small = st.floats(-0.45, 0.45, allow_nan=False)


@settings(max_examples=150, deadline=None)
@given(st.lists(small, min_size=2, max_size=2))
def test_coset_embed_hyperbolic_property(vals):
    # |z| < 1 guaranteed by the element bounds (2 entries of magnitude < .5)
    z = np.array(vals).reshape(2, 1)
    s = coset_embed(CosetPoint(z))
    assert is_pseudo_orthogonal(s, Signature(2, 1), tol=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-3, 3, allow_nan=False), min_size=2, max_size=2))
def test_coset_embed_spherical_property(vals):
    z = np.array(vals).reshape(2, 1)
    s = coset_embed(CosetPoint(z, curvature="spherical"))
    assert np.max(np.abs(s.T @ s - np.eye(3))) < 1e-10


def test_coset_embed_inverse_at_negated_z():
    z = np.array([[0.3], [-0.2]])
    s = coset_embed(CosetPoint(z))
    sinv = coset_embed(CosetPoint(-z))
    assert np.max(np.abs(s @ sinv - np.eye(3))) < 1e-12


def test_coset_point_domain():
    with pytest.raises(LinalgError):
        CosetPoint(np.array([[0.9], [0.9]]))  # |z|^2 > 1


def test_conjugated_trace_matches_direct():
    rng = np.random.default_rng(0)
    for _ in range(20):
        z = rng.uniform(-0.4, 0.4, size=(2, 1))
        s = coset_embed(CosetPoint(z))
        p = rng.normal(size=3)
        a = rng.normal(size=3)
        direct = np.trace(np.linalg.inv(s) @ np.diag(p) @ s @ np.diag(a))
        assert conjugated_trace(s, p, a) == pytest.approx(direct, abs=1e-12)


def test_conjugated_trace_dimension_check():
    with pytest.raises(LinalgError):
        conjugated_trace(np.eye(3), [1.0, 2.0], [1.0, 2.0, 3.0])
