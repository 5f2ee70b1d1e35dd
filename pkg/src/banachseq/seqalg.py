"""Finitely supported null sequences as C^2 blocks, and their weighted algebra.

A sequence f (vanishing at infinity, finitely many nonzero terms here) is
stored block-wise: block n holds the coordinate pair (f(2n), f(2n+1)).
Given a shape parameter r and a weight family sigma(n) >= 1, the algebra
norm is

    a_norm(f) = max_n  2*sigma(n) * c2_norm((f(2n), f(2n+1)), (r, sigma(n))),

which dominates the sup-norm and is submultiplicative for the pointwise
product.  Quasi-inverses (b with a + b - a*b = 0) are solved coordinatewise.

BlockSequence values are immutable after construction and all operations
are pure, so everything is safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .c2norms import NormParams, Vec2, c2_norm

__all__ = [
    "QUASI_SINGULAR_TOL",
    "WeightFamily",
    "AlgebraParams",
    "BlockSequence",
    "NotQuasiInvertible",
    "QuasiSingular",
    "SpectralInvarianceReport",
    "sup_norm",
    "a_norm",
    "pointwise_product",
    "star",
    "quasi_circle",
    "quasi_inverse_c0",
    "spectral_invariance_check",
]

# Coordinates closer to 1 than this (but not exactly 1) are refused rather
# than silently divided by a near-zero denominator.
QUASI_SINGULAR_TOL = 1e-9

_ZERO_VEC = Vec2(0.0, 0.0)


# ---------------------------------------------------------------------------
# Weight families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightFamily:
    """A weight sigma: N -> [1, inf) from a small set of parametric families.

    Kinds: ``affine`` sigma(n) = a + b*n (a >= 1, b > 0), ``logarithmic``
    sigma(n) = 1 + ln(1+n), ``polynomial`` sigma(n) = (1+n)**p (p > 0), and
    ``constant`` sigma(n) = c (c >= 1).  The first three are nondecreasing
    and unbounded; the constant family is bounded and only suitable as a
    baseline (a bounded weight cannot certify a violation).
    """

    kind: str
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        kind, params = self.kind, self.params
        if kind == "affine":
            if len(params) != 2:
                raise ValueError("affine weights take two parameters (offset, slope)")
            offset, slope = params
            if offset < 1.0:
                raise ValueError(f"affine offset must be >= 1 so sigma(0) >= 1, got {offset!r}")
            if slope <= 0.0:
                raise ValueError(f"affine slope must be > 0 (use const for flat weights), got {slope!r}")
        elif kind == "logarithmic":
            if params:
                raise ValueError("logarithmic weights take no parameters")
        elif kind == "polynomial":
            if len(params) != 1:
                raise ValueError("polynomial weights take one parameter (the power)")
            if params[0] <= 0.0:
                raise ValueError(f"polynomial power must be > 0, got {params[0]!r}")
        elif kind == "constant":
            if len(params) != 1:
                raise ValueError("constant weights take one parameter (the value)")
            if params[0] < 1.0:
                raise ValueError(f"constant weight must be >= 1, got {params[0]!r}")
        else:
            raise ValueError(f"unknown weight family kind {kind!r}")
        if not all(math.isfinite(x) for x in params):
            raise ValueError(f"weight parameters must be finite, got {params!r}")

    # -- constructors

    @classmethod
    def affine(cls, offset: float = 1.0, slope: float = 1.0) -> "WeightFamily":
        return cls("affine", (offset, slope))

    @classmethod
    def logarithmic(cls) -> "WeightFamily":
        return cls("logarithmic")

    @classmethod
    def polynomial(cls, power: float) -> "WeightFamily":
        return cls("polynomial", (power,))

    @classmethod
    def constant(cls, value: float) -> "WeightFamily":
        return cls("constant", (value,))

    # -- evaluation

    def __call__(self, n: int) -> float:
        if n < 0:
            raise ValueError(f"block index must be >= 0, got {n}")
        if self.kind == "affine":
            offset, slope = self.params
            return offset + slope * n
        if self.kind == "logarithmic":
            return 1.0 + math.log1p(n)
        if self.kind == "polynomial":
            return float(1.0 + n) ** self.params[0]
        return self.params[0]

    @property
    def bounded(self) -> bool:
        return self.kind == "constant"

    # -- string form used by the CLI and in reports

    def spec_string(self) -> str:
        if self.kind == "affine":
            return "affine:%g,%g" % self.params
        if self.kind == "logarithmic":
            return "log"
        if self.kind == "polynomial":
            return "poly:%g" % self.params
        return "const:%g" % self.params

    @classmethod
    def parse(cls, text: str) -> "WeightFamily":
        """Parse the grammar "affine:<a>,<b>" | "log" | "poly:<p>" | "const:<c>"."""
        head, _, tail = text.strip().partition(":")
        try:
            args = tuple(float(x) for x in tail.split(",")) if tail else ()
        except ValueError:
            raise ValueError(f"unparseable weight parameters in {text!r}") from None
        if head == "affine":
            return cls("affine", args if args else (1.0, 1.0))
        if head == "log":
            if args:
                raise ValueError("log weights take no parameters")
            return cls("logarithmic")
        if head == "poly":
            if len(args) != 1:
                raise ValueError(f"poly weights need exactly one parameter, got {text!r}")
            return cls("polynomial", args)
        if head == "const":
            if len(args) != 1:
                raise ValueError(f"const weights need exactly one parameter, got {text!r}")
            return cls("constant", args)
        raise ValueError(f"unknown weight family {text!r}")


@dataclass(frozen=True)
class AlgebraParams:
    """Shape parameter r together with a weight family."""

    r: float
    weights: WeightFamily

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", float(self.r))
        if not math.isfinite(self.r):
            raise ValueError(f"r must be finite, got {self.r!r}")

    def norm_params(self, n: int) -> NormParams:
        return NormParams(self.r, self.weights(n))


# ---------------------------------------------------------------------------
# Block sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSequence:
    """A finitely supported sequence stored as indexed C^2 blocks.

    Block n holds coordinates (2n, 2n+1); blocks absent from the map are
    zero.  Zero blocks are pruned on construction, so equality of the block
    maps is equality of sequences.
    """

    blocks: dict[int, Vec2] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[int, Vec2] = {}
        for n, v in self.blocks.items():
            index = int(n)
            if index < 0:
                raise ValueError(f"block index must be >= 0, got {n!r}")
            if not isinstance(v, Vec2):
                v = Vec2(*v)
            if v.x != 0 or v.y != 0:
                clean[index] = v
        object.__setattr__(self, "blocks", clean)

    # -- constructors

    @classmethod
    def zero(cls) -> "BlockSequence":
        return cls()

    @classmethod
    def unit_step(cls, k: int) -> "BlockSequence":
        """The indicator sequence e_k (1 at coordinate k, 0 elsewhere)."""
        if k < 0:
            raise ValueError(f"coordinate index must be >= 0, got {k}")
        vec = Vec2(1.0, 0.0) if k % 2 == 0 else Vec2(0.0, 1.0)
        return cls({k // 2: vec})

    @classmethod
    def from_coords(cls, coords: Mapping[int, complex]) -> "BlockSequence":
        """Build from a coordinate-indexed map {k: f(k)}."""
        blocks: dict[int, list[complex]] = {}
        for k, z in coords.items():
            index = int(k)
            if index < 0:
                raise ValueError(f"coordinate index must be >= 0, got {k!r}")
            pair = blocks.setdefault(index // 2, [0j, 0j])
            pair[index % 2] = complex(z)
        return cls({n: Vec2(*pair) for n, pair in blocks.items()})

    # -- accessors

    def block(self, n: int) -> Vec2:
        return self.blocks.get(n, _ZERO_VEC)

    def coord(self, k: int) -> complex:
        v = self.block(k // 2)
        return v.x if k % 2 == 0 else v.y

    @property
    def support(self) -> tuple[int, ...]:
        """Sorted indices of the nonzero blocks."""
        return tuple(sorted(self.blocks))

    @property
    def is_zero(self) -> bool:
        return not self.blocks

    def coords(self) -> Iterator[tuple[int, complex]]:
        """Nonzero coordinates (k, f(k)) in increasing k."""
        for n in self.support:
            v = self.blocks[n]
            if v.x != 0:
                yield 2 * n, v.x
            if v.y != 0:
                yield 2 * n + 1, v.y

    # -- algebra operations (also exposed as free functions below)

    def __add__(self, other: "BlockSequence") -> "BlockSequence":
        out = dict(self.blocks)
        for n, v in other.blocks.items():
            w = out.get(n)
            out[n] = v if w is None else Vec2(w.x + v.x, w.y + v.y)
        return BlockSequence(out)

    def __neg__(self) -> "BlockSequence":
        return BlockSequence({n: Vec2(-v.x, -v.y) for n, v in self.blocks.items()})

    def __sub__(self, other: "BlockSequence") -> "BlockSequence":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BlockSequence):
            return pointwise_product(self, other)
        return BlockSequence({n: Vec2(v.x * other, v.y * other) for n, v in self.blocks.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def star(self) -> "BlockSequence":
        return star(self)

    # -- JSON wire format: {"blocks": {"n": [[re_x, im_x], [re_y, im_y]], ...}}

    def to_json_dict(self) -> dict:
        return {
            "blocks": {
                str(n): [[v.x.real, v.x.imag], [v.y.real, v.y.imag]]
                for n, v in sorted(self.blocks.items())
            }
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "BlockSequence":
        """Accepts {"blocks": {...}} or the coordinate form {"coords": {"k": [re, im]}}."""
        if not isinstance(data, Mapping):
            raise ValueError("sequence JSON must be an object")
        if "coords" in data:
            return cls.from_coords(
                {int(k): complex(*_as_pair(z)) for k, z in data["coords"].items()}
            )
        raw = data.get("blocks")
        if raw is None:
            raise ValueError('sequence JSON needs a "blocks" (or "coords") object')
        blocks: dict[int, Vec2] = {}
        for key, value in raw.items():
            try:
                (xr, xi), (yr, yi) = value
            except (TypeError, ValueError):
                raise ValueError(f"block {key!r} must be [[re_x, im_x], [re_y, im_y]]") from None
            blocks[int(key)] = Vec2(complex(xr, xi), complex(yr, yi))
        return cls(blocks)

    @classmethod
    def loads(cls, text: str) -> "BlockSequence":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"invalid sequence JSON: {exc}") from None
        return cls.from_json_dict(data)


def _as_pair(z) -> tuple[float, float]:
    if isinstance(z, (int, float)):
        return float(z), 0.0
    re, im = z
    return float(re), float(im)


# ---------------------------------------------------------------------------
# Norms and products
# ---------------------------------------------------------------------------

def sup_norm(f: BlockSequence) -> float:
    """The C*-norm: max absolute value over all coordinates."""
    best = 0.0
    for v in f.blocks.values():
        best = max(best, abs(v.x), abs(v.y))
    return best


def a_norm(f: BlockSequence, p: AlgebraParams) -> float:
    """The weighted algebra norm: max_n 2*sigma(n)*c2_norm(block n)."""
    best = 0.0
    for n, v in f.blocks.items():
        s = p.weights(n)
        best = max(best, 2.0 * s * c2_norm(v, NormParams(p.r, s)))
    return best


def pointwise_product(f: BlockSequence, g: BlockSequence) -> BlockSequence:
    """Coordinatewise product; support shrinks to the common support."""
    if len(g.blocks) < len(f.blocks):
        f, g = g, f
    out = {}
    for n, v in f.blocks.items():
        w = g.blocks.get(n)
        if w is not None:
            out[n] = Vec2(v.x * w.x, v.y * w.y)
    return BlockSequence(out)


def star(f: BlockSequence) -> BlockSequence:
    """Coordinatewise complex conjugation; an isometry for every a_norm."""
    return BlockSequence({n: v.conj() for n, v in f.blocks.items()})


def quasi_circle(a: BlockSequence, b: BlockSequence) -> BlockSequence:
    """The quasi-product a + b - a*b (zero sequence acts as the identity)."""
    return a + b - pointwise_product(a, b)


# ---------------------------------------------------------------------------
# Quasi-inverses and spectral invariance
# ---------------------------------------------------------------------------

class NotQuasiInvertible(ValueError):
    """A coordinate equals 1 exactly, so a + b - a*b = 0 has no solution."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"not quasi-invertible: coordinate {index} equals 1")


class QuasiSingular(ValueError):
    """A coordinate is numerically too close to 1 to divide safely."""

    def __init__(self, index: int, value: complex):
        self.index = index
        self.value = value
        super().__init__(
            f"numerically quasi-singular: coordinate {index} is within "
            f"{QUASI_SINGULAR_TOL:g} of 1 (value {value!r})"
        )


def quasi_inverse_c0(a: BlockSequence) -> BlockSequence:
    """Solve a + b - a*b = 0 coordinatewise: b(k) = a(k) / (a(k) - 1).

    Raises NotQuasiInvertible (lowest offending coordinate) if some
    coordinate equals 1 exactly, and QuasiSingular if one is merely within
    QUASI_SINGULAR_TOL of 1.  The result has the same support as ``a``.
    """
    singular: int | None = None
    singular_value = 0j
    for k, z in a.coords():
        if z == 1.0:
            raise NotQuasiInvertible(k)
        if singular is None and abs(z - 1.0) < QUASI_SINGULAR_TOL:
            singular, singular_value = k, z
    if singular is not None:
        raise QuasiSingular(singular, singular_value)
    return BlockSequence(
        {
            n: Vec2(_quasi_inverse_coord(v.x), _quasi_inverse_coord(v.y))
            for n, v in a.blocks.items()
        }
    )


def _quasi_inverse_coord(z: complex) -> complex:
    return 0j if z == 0 else z / (z - 1.0)


@dataclass(frozen=True)
class SpectralInvarianceReport:
    """Outcome of checking one element's quasi-invertibility in both algebras."""

    quasi_invertible: bool
    obstruction_index: int | None
    quasi_inverse: BlockSequence | None
    quasi_inverse_a_norm: float | None
    quasi_inverse_sup_norm: float | None
    residual_ab: float | None
    residual_ba: float | None
    # Quasi-invertibility in the ambient null-sequence algebra agrees with
    # quasi-invertibility in the weighted subalgebra on this element.
    consistent: bool


def spectral_invariance_check(a: BlockSequence, p: AlgebraParams) -> SpectralInvarianceReport:
    """Check that quasi-invertibility does not depend on which algebra we ask.

    For finitely supported ``a`` the coordinatewise quasi-inverse, when it
    exists, is again finitely supported, hence an element of the weighted
    subalgebra; when a coordinate equals 1 there is no quasi-inverse in
    either algebra.  The report carries the witness data (norms of the
    quasi-inverse and both circle residuals, which should vanish).
    """
    try:
        b = quasi_inverse_c0(a)
    except NotQuasiInvertible as exc:
        return SpectralInvarianceReport(
            quasi_invertible=False,
            obstruction_index=exc.index,
            quasi_inverse=None,
            quasi_inverse_a_norm=None,
            quasi_inverse_sup_norm=None,
            residual_ab=None,
            residual_ba=None,
            consistent=True,
        )
    return SpectralInvarianceReport(
        quasi_invertible=True,
        obstruction_index=None,
        quasi_inverse=b,
        quasi_inverse_a_norm=a_norm(b, p),
        quasi_inverse_sup_norm=sup_norm(b),
        residual_ab=sup_norm(quasi_circle(a, b)),
        residual_ba=sup_norm(quasi_circle(b, a)),
        consistent=True,
    )
