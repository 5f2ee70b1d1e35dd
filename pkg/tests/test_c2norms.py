"""Block-norm family: formulas, constants, and their independent oracles."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest

from banachseq import (
    Mat2,
    NormParams,
    Vec2,
    c2_norm,
    c_constant,
    d_constant,
    inv_t_matrix,
    mat_mul,
    mat_vec,
    max_norm,
    maxnorm_op_norm,
    scaled_c2_norm,
    t_matrix,
)

REL_TOL = 1e-10

PARAM_GRID = [
    NormParams(0.0, 1.0),
    NormParams(1.0, 1.0),
    NormParams(-1.0, 3.0),
    NormParams(0.5, 2.0),
    NormParams(2.0, 5.0),
    NormParams(-2.5, 10.0),
    NormParams(7.0, 1.5),
    NormParams(-0.1, 100.0),
]


def random_vec2(rng: np.random.Generator, scale: float = 1.0) -> Vec2:
    mag = rng.uniform(0.0, scale, size=2)
    phase = rng.uniform(0.0, 2.0 * math.pi, size=2)
    return Vec2(mag[0] * cmath.exp(1j * phase[0]), mag[1] * cmath.exp(1j * phase[1]))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

def test_vec2_rejects_non_finite():
    with pytest.raises(ValueError):
        Vec2(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Vec2(0.0, complex(0.0, float("inf")))


def test_norm_params_require_sigma_at_least_one():
    with pytest.raises(ValueError):
        NormParams(1.0, 0.5)
    with pytest.raises(ValueError):
        NormParams(float("inf"), 1.0)
    assert NormParams(3.0, 1.0).determinant == pytest.approx(10.0)


def test_mat2_rejects_non_finite():
    with pytest.raises(ValueError):
        Mat2(1.0, float("nan"), 0.0, 1.0)


# ---------------------------------------------------------------------------
# t_matrix / inv_t_matrix
# ---------------------------------------------------------------------------

def test_t_matrix_identity_case():
    assert t_matrix(NormParams(0.0, 1.0)) == Mat2(1.0, 0.0, 0.0, 1.0)


def test_t_matrix_direct_substitution():
    assert t_matrix(NormParams(1.0, 2.0)) == Mat2(1.0, 1.0, -2.0, 2.0)
    assert t_matrix(NormParams(-1.0, 3.0)) == Mat2(1.0, -1.0, 3.0, 3.0)


def test_inv_t_matrix_identity_case():
    assert inv_t_matrix(NormParams(0.0, 1.0)) == Mat2(1.0, 0.0, 0.0, 1.0)


def test_inv_t_matrix_hand_inversion():
    # [[1, 1], [-1, 1]] inverts to (1/2) [[1, -1], [1, 1]]
    m = inv_t_matrix(NormParams(1.0, 1.0))
    assert m == Mat2(0.5, -0.5, 0.5, 0.5)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_inverse_product_is_identity(p):
    prod = mat_mul(t_matrix(p), inv_t_matrix(p))
    assert abs(prod.a11 - 1.0) < 1e-12
    assert abs(prod.a12) < 1e-12
    assert abs(prod.a21) < 1e-12
    assert abs(prod.a22 - 1.0) < 1e-12


# ---------------------------------------------------------------------------
# c2_norm
# ---------------------------------------------------------------------------

def test_c2_norm_zero_vector():
    for p in PARAM_GRID:
        assert c2_norm(Vec2(0.0, 0.0), p) == 0.0


@pytest.mark.parametrize("r", [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("sigma", [1.0, 2.0, 17.0])
def test_c2_norm_witness_values(r, sigma):
    p = NormParams(r, sigma)
    assert c2_norm(Vec2(1.0, r), p) == pytest.approx(1.0 + r * r, rel=1e-12)
    expected_sq = max(abs(1.0 + r**3), sigma * abs(r * r - r))
    assert c2_norm(Vec2(1.0, r * r), p) == pytest.approx(expected_sq, rel=1e-12)


def test_scaled_c2_norm_values():
    p = NormParams(0.0, 1.0)
    assert scaled_c2_norm(Vec2(0.0, 0.0), p) == 0.0
    assert scaled_c2_norm(Vec2(1.0, 0.0), p) == 2.0
    r, s = 2.0, 7.0
    assert scaled_c2_norm(Vec2(1.0, r), NormParams(r, s)) == pytest.approx(
        2.0 * s * (1.0 + r * r), rel=1e-12
    )


@pytest.mark.parametrize("p", PARAM_GRID)
def test_norm_axioms(p):
    rng = np.random.default_rng(7)
    for _ in range(200):
        u, v = random_vec2(rng), random_vec2(rng)
        lam = rng.uniform(0.0, 5.0) * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        scaled = Vec2(lam * u.x, lam * u.y)
        assert c2_norm(scaled, p) == pytest.approx(abs(lam) * c2_norm(u, p), rel=REL_TOL, abs=1e-300)
        total = Vec2(u.x + v.x, u.y + v.y)
        assert c2_norm(total, p) <= (c2_norm(u, p) + c2_norm(v, p)) * (1.0 + REL_TOL)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_star_invariance_is_exact(p):
    rng = np.random.default_rng(11)
    for _ in range(500):
        v = random_vec2(rng, scale=10.0)
        assert c2_norm(v.conj(), p) == c2_norm(v, p)


# ---------------------------------------------------------------------------
# Operator norm
# ---------------------------------------------------------------------------

def test_maxnorm_op_norm_identity():
    assert maxnorm_op_norm(Mat2(1.0, 0.0, 0.0, 1.0)) == 1.0


def test_maxnorm_op_norm_frozen_values():
    # inv weight matrix at (r=2, sigma=3): rows (3, -2), (6, 1), determinant 15
    assert maxnorm_op_norm(inv_t_matrix(NormParams(2.0, 3.0))) == pytest.approx(7.0 / 15.0, rel=1e-15)
    assert maxnorm_op_norm(t_matrix(NormParams(1.0, 2.0))) == 4.0


def _sign_enumeration_op_norm(m: Mat2) -> float:
    # Independent oracle: for a real matrix the max-norm operator norm is
    # attained at a sign vector (+-1, +-1).
    best = 0.0
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            image = mat_vec(m, Vec2(sx, sy))
            best = max(best, max_norm(image))
    return best


def test_maxnorm_op_norm_matches_sign_enumeration():
    rng = np.random.default_rng(3)
    for _ in range(300):
        m = Mat2(*rng.uniform(-10.0, 10.0, size=4))
        assert maxnorm_op_norm(m) == pytest.approx(_sign_enumeration_op_norm(m), rel=1e-12)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_maxnorm_op_norm_dominates_complex_unit_vectors(p):
    # Complex phases cannot beat aligned signs; sampled images stay below
    # the row-sum value (and get close for aligned draws).
    rng = np.random.default_rng(5)
    m = inv_t_matrix(p)
    bound = maxnorm_op_norm(m)
    seen = 0.0
    for _ in range(2000):
        v = random_vec2(rng)
        denom = max_norm(v)
        if denom < 1e-12:
            continue
        seen = max(seen, max_norm(mat_vec(m, v)) / denom)
    assert seen <= bound * (1.0 + 1e-12)
    assert seen >= 0.8 * bound


# ---------------------------------------------------------------------------
# d_constant
# ---------------------------------------------------------------------------

def test_d_constant_frozen_values():
    assert d_constant(NormParams(0.0, 1.0)) == 1.0
    assert d_constant(NormParams(1.0, 1.0)) == 1.0
    assert d_constant(NormParams(2.0, 3.0)) == pytest.approx(7.0 / 15.0, rel=1e-15)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_d_constant_equals_inverse_operator_norm(p):
    assert d_constant(p) == pytest.approx(maxnorm_op_norm(inv_t_matrix(p)), rel=1e-12)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_d_constant_below_envelope_and_global_bound(p):
    envelope = (1.0 + abs(p.r)) / (1.0 + p.r * p.r)
    assert d_constant(p) <= envelope * (1.0 + 1e-12)
    assert d_constant(p) <= 1.21


@pytest.mark.parametrize("p", PARAM_GRID)
def test_max_norm_domination(p):
    rng = np.random.default_rng(13)
    d = d_constant(p)
    for _ in range(500):
        v = random_vec2(rng, scale=3.0)
        assert max_norm(v) <= d * c2_norm(v, p) * (1.0 + 1e-12)
        assert max_norm(v) <= scaled_c2_norm(v, p) * (1.0 + 1e-12)


# ---------------------------------------------------------------------------
# c_constant
# ---------------------------------------------------------------------------

def test_c_constant_frozen_values():
    assert c_constant(NormParams(0.0, 1.0)) == 1.0
    for s in (1.0, 2.0, 5.0):
        expected = s * max(2.0 / s + 2.0 / s**3, 4.0 / s) / 4.0
        assert c_constant(NormParams(1.0, s)) == pytest.approx(expected, rel=1e-14)


def _assembled_mult_op_norm(p: NormParams) -> float:
    # Independent oracle: build the 2x4 matrix of the conjugated
    # multiplication operator by literal matrix products and take row sums
    # over the tensor coordinates, divided by det^2.
    r, s = p.r, p.sigma
    front = np.array([[1.0, r], [-s * r, s]])
    # Row i of inv(T) paired with row j: coefficient of u_{1i} u_{2j}.
    middle = np.array(
        [
            [s * s, -r * s, -r * s, r * r],
            [s * s * r * r, s * r, s * r, 1.0],
        ]
    )
    full = front @ middle
    row_sums = np.abs(full).sum(axis=1)
    return float(row_sums.max()) / p.determinant**2


@pytest.mark.parametrize("p", PARAM_GRID)
def test_c_constant_matches_assembled_matrix(p):
    assert c_constant(p) == pytest.approx(_assembled_mult_op_norm(p), rel=1e-12)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_c_constant_within_two_sigma(p):
    assert c_constant(p) <= 2.0 * p.sigma * (1.0 + 1e-12)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_c_constant_bounds_sampled_product_ratios(p):
    rng = np.random.default_rng(17)
    c = c_constant(p)
    for _ in range(2000):
        u, v = random_vec2(rng), random_vec2(rng)
        nu, nv = c2_norm(u, p), c2_norm(v, p)
        if nu * nv < 1e-12:
            continue
        prod = Vec2(u.x * v.x, u.y * v.y)
        assert c2_norm(prod, p) <= c * nu * nv * (1.0 + REL_TOL)


@pytest.mark.parametrize("p", PARAM_GRID)
def test_scaled_norm_is_submultiplicative(p):
    rng = np.random.default_rng(19)
    for _ in range(2000):
        u, v = random_vec2(rng, scale=5.0), random_vec2(rng, scale=5.0)
        prod = Vec2(u.x * v.x, u.y * v.y)
        lhs = scaled_c2_norm(prod, p)
        rhs = scaled_c2_norm(u, p) * scaled_c2_norm(v, p)
        assert lhs <= rhs * (1.0 + REL_TOL)
