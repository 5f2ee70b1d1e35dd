"""Matrix-weighted norms on complex pairs.

A parameter pair (r, sigma) with sigma >= 1 defines a norm on C^2 by
pushing a vector through the invertible matrix [[1, r], [-sigma*r, sigma]]
and taking the max-norm of the image:

    norm(v) = max(|x + r*y|, sigma*|y - r*x|),   v = (x, y).

Two closed-form constants are attached to each such norm: ``d_constant``,
the factor relating it back to the plain max-norm, and ``c_constant``, the
defect it incurs under coordinatewise multiplication.  Scaling the norm by
2*sigma makes it submultiplicative while still dominating the max-norm.

Everything here is a pure function of immutable values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "DEFAULT_SEED",
    "Vec2",
    "NormParams",
    "Mat2",
    "t_matrix",
    "inv_t_matrix",
    "mat_vec",
    "mat_mul",
    "max_norm",
    "c2_norm",
    "scaled_c2_norm",
    "maxnorm_op_norm",
    "d_constant",
    "c_constant",
]

# Fixed default seed for every randomized sampler in the package; callers
# may override, and reports record the seed actually used.
DEFAULT_SEED = 42


@dataclass(frozen=True)
class Vec2:
    """A complex pair (x, y); one block of the C^2 decomposition."""

    x: complex
    y: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        if not (cmath.isfinite(self.x) and cmath.isfinite(self.y)):
            raise ValueError(f"Vec2 components must be finite, got ({self.x!r}, {self.y!r})")

    def conj(self) -> "Vec2":
        return Vec2(self.x.conjugate(), self.y.conjugate())


@dataclass(frozen=True)
class NormParams:
    """Parameters (r, sigma) of one C^2 norm; requires sigma >= 1."""

    r: float
    sigma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "sigma", float(self.sigma))
        if not (math.isfinite(self.r) and math.isfinite(self.sigma)):
            raise ValueError(f"norm parameters must be finite, got r={self.r!r}, sigma={self.sigma!r}")
        if self.sigma < 1.0:
            raise ValueError(f"sigma must be >= 1, got {self.sigma!r}")
        # Automatic for sigma >= 1, but the invertibility of the weight
        # matrix is what makes this a norm, so guard it explicitly.
        if not self.determinant > 0.0:
            raise ValueError(f"degenerate weight matrix: determinant {self.determinant!r}")

    @property
    def determinant(self) -> float:
        """det of the weight matrix: sigma * (1 + r^2)."""
        return self.sigma * (1.0 + self.r * self.r)


@dataclass(frozen=True)
class Mat2:
    """A 2x2 matrix with real entries, row-major (a11, a12, a21, a22)."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not math.isfinite(value):
                raise ValueError(f"matrix entry {name} must be finite, got {value!r}")


def t_matrix(p: NormParams) -> Mat2:
    """The weight matrix [[1, r], [-sigma*r, sigma]] defining the norm."""
    return Mat2(1.0, p.r, -p.sigma * p.r, p.sigma)


def inv_t_matrix(p: NormParams) -> Mat2:
    """Inverse of the weight matrix: (1/det) * [[sigma, -r], [sigma*r, 1]]."""
    det = p.determinant
    return Mat2(p.sigma / det, -p.r / det, p.sigma * p.r / det, 1.0 / det)


def mat_vec(m: Mat2, v: Vec2) -> Vec2:
    return Vec2(m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y)


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return Mat2(
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    )


def max_norm(v: Vec2) -> float:
    """The C*-norm on C^2: max(|x|, |y|)."""
    return max(abs(v.x), abs(v.y))


def c2_norm(v: Vec2, p: NormParams) -> float:
    """The weighted norm max(|x + r*y|, sigma*|y - r*x|)."""
    return max(abs(v.x + p.r * v.y), p.sigma * abs(v.y - p.r * v.x))


def scaled_c2_norm(v: Vec2, p: NormParams) -> float:
    """2*sigma times the weighted norm; submultiplicative and >= max-norm."""
    return 2.0 * p.sigma * c2_norm(v, p)


def maxnorm_op_norm(m: Mat2) -> float:
    """Operator norm of a real 2x2 matrix on (C^2, max-norm): max row abs sum."""
    return max(abs(m.a11) + abs(m.a12), abs(m.a21) + abs(m.a22))


def d_constant(p: NormParams) -> float:
    """Smallest D with max_norm(v) <= D * c2_norm(v, p) for all v.

    Equals the max-norm operator norm of the inverse weight matrix,
       max(sigma + |r|, sigma*|r| + 1) / (sigma * (1 + r^2)),
    and is globally bounded by (1 + |r|) / (1 + r^2) <= 1.21.
    """
    return max(p.sigma + abs(p.r), p.sigma * abs(p.r) + 1.0) / p.determinant


def c_constant(p: NormParams) -> float:
    """Upper bound C on c2_norm(v1*v2) / (c2_norm(v1) * c2_norm(v2)).

    Computed as the max-norm operator norm of the coordinatewise
    multiplication operator conjugated by the weight matrix, viewed on all
    of C^2 (x) C^2 (so it is an upper bound for the restriction to product
    tensors, not necessarily the least constant there).  Satisfies
    C <= 2*sigma for every r and sigma >= 1, which is what makes the
    2*sigma-scaled norm submultiplicative.
    """
    r, s = p.r, p.sigma
    cube = abs(1.0 + r**3)
    anti = abs(r * r - r)
    symm = abs(r * r + r)
    cube_m = abs(1.0 - r**3)
    row1 = cube / s + 2.0 * anti / s**2 + symm / s**3
    row2 = anti + 2.0 * symm / s + cube_m / s**2
    return s * max(row1, row2) / (1.0 + r * r) ** 2
