"""Witness families and scans for the first-order multiplication condition.

The condition asks for a constant K with

    a_norm(f*g) <= K * (a_norm(f)*sup_norm(g) + sup_norm(f)*a_norm(g)).

The single-block witness a_n = (block n = (1, r)) forces any admissible K
above ``k_lower_bound(n)``, which grows without bound whenever r is outside
{0, 1} and the weight family is unbounded.  This module scans those lower
bounds, estimates K empirically, and probes the ideal property (how the
algebra norm reacts to multiplication by a plain bounded sequence).

Scans and samplers are pure given (parameters, seed); reports record the
seed used.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass

import numpy as np

from .c2norms import DEFAULT_SEED, Vec2
from .seqalg import (
    AlgebraParams,
    BlockSequence,
    WeightFamily,
    a_norm,
    pointwise_product,
    sup_norm,
)

__all__ = [
    "SCAN_CSV_COLUMNS",
    "CROSSING_TARGETS",
    "D1ScanRecord",
    "D1ScanReport",
    "D1Estimate",
    "IdealCheckReport",
    "witness",
    "k_lower_bound",
    "d1_violation_scan",
    "d1_constant_estimate",
    "ideal_check",
]

SCAN_CSV_COLUMNS = ("n", "sigma_n", "a_norm", "sq_norm", "sup_norm", "k_lower")

# Targets for which every scan reports the first crossing index.
CROSSING_TARGETS = (1.0, 10.0, 100.0)

# Ratios with a smaller denominator are skipped (and counted), never
# propagated as infinities.
_DEGENERATE_DENOMINATOR = 1e-300

# CSV floats carry 17 significant digits: round-trip exact for doubles, so
# emitted reports double as regression fixtures.
_CSV_FLOAT = "%.17g"


def witness(n: int, r: float) -> BlockSequence:
    """The sequence a_n with block n equal to (1, r) and zeros elsewhere."""
    return BlockSequence({n: Vec2(1.0, r)})


def k_lower_bound(n: int, r: float, w: WeightFamily) -> float:
    """Closed-form lower bound on any admissible K, from the block-n witness.

    Equals a_norm(a_n^2) / (2 * sup_norm(a_n) * a_norm(a_n)):

        max(|1 + r^3|, sigma(n)*|r^2 - r|) / (2*(1 + r^2)*max(1, |r|)).

    Constant 0.5 for r in {0, 1}; otherwise grows like sigma(n) once the
    weighted branch takes over.
    """
    s = w(n)
    return max(abs(1.0 + r**3), s * abs(r * r - r)) / (2.0 * (1.0 + r * r) * max(1.0, abs(r)))


# ---------------------------------------------------------------------------
# Violation scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class D1ScanRecord:
    n: int
    sigma_n: float
    a_norm: float
    sq_norm: float
    sup_norm: float
    k_lower: float


@dataclass(frozen=True)
class D1ScanReport:
    """Per-block witness norms and the lower bounds they force on K."""

    r: float
    weights: WeightFamily
    n_max: int
    records: tuple[D1ScanRecord, ...]
    crossings: dict[float, int | None]
    unbounded_certified: bool

    def first_crossing(self, threshold: float) -> int | None:
        """First block index whose lower bound reaches the threshold."""
        for rec in self.records:
            if rec.k_lower >= threshold:
                return rec.n
        return None

    def to_csv(self) -> str:
        lines = [",".join(SCAN_CSV_COLUMNS)]
        for rec in self.records:
            lines.append(
                "%d,%s,%s,%s,%s,%s"
                % (
                    rec.n,
                    _CSV_FLOAT % rec.sigma_n,
                    _CSV_FLOAT % rec.a_norm,
                    _CSV_FLOAT % rec.sq_norm,
                    _CSV_FLOAT % rec.sup_norm,
                    _CSV_FLOAT % rec.k_lower,
                )
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "weights": self.weights.spec_string(),
            "n_max": self.n_max,
            "crossings": {"%g" % k: v for k, v in self.crossings.items()},
            "unbounded_certified": self.unbounded_certified,
            "records": [asdict(rec) for rec in self.records],
        }


def d1_violation_scan(
    r: float,
    w: WeightFamily,
    n_max: int,
    certify: bool = False,
) -> D1ScanReport:
    """Scan blocks 0..n_max-1, computing each witness lower bound via the norms.

    With ``certify=True`` the scan refuses bounded weight families, since a
    bounded weight cannot push the lower bounds past every threshold.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if certify and w.bounded:
        raise ValueError(
            "bounded weights cannot certify a violation; use an unbounded family"
        )
    p = AlgebraParams(r, w)
    records = []
    for n in range(n_max):
        a = witness(n, r)
        norm_a = a_norm(a, p)
        norm_sq = a_norm(pointwise_product(a, a), p)
        norm_sup = sup_norm(a)
        records.append(
            D1ScanRecord(
                n=n,
                sigma_n=w(n),
                a_norm=norm_a,
                sq_norm=norm_sq,
                sup_norm=norm_sup,
                k_lower=norm_sq / (2.0 * norm_sup * norm_a),
            )
        )
    crossings = {
        target: next((rec.n for rec in records if rec.k_lower >= target), None)
        for target in CROSSING_TARGETS
    }
    return D1ScanReport(
        r=float(r),
        weights=w,
        n_max=n_max,
        records=tuple(records),
        crossings=crossings,
        unbounded_certified=_certify_unbounded(r, w, records),
    )


def _certify_unbounded(r: float, w: WeightFamily, records: list[D1ScanRecord]) -> bool:
    # Growth kicks in once the weighted branch dominates; from there the
    # lower bounds must be strictly increasing for an unbounded family.
    if r == 0.0 or r == 1.0 or w.bounded:
        return False
    flat = abs(1.0 + r**3)
    switch = None
    for rec in records:
        if rec.sigma_n * abs(r * r - r) > flat:
            switch = rec.n
            break
    if switch is None or switch >= len(records) - 1:
        return False
    return all(
        records[i + 1].k_lower > records[i].k_lower for i in range(switch, len(records) - 1)
    )


# ---------------------------------------------------------------------------
# Randomized estimates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class D1Estimate:
    """Max observed first-order ratio; a lower bound on any admissible K."""

    k_hat: float
    sample_count: int
    seed: int
    skipped: int = 0

    def to_csv(self) -> str:
        header = "k_hat,sample_count,seed,skipped"
        row = "%s,%d,%d,%d" % (_CSV_FLOAT % self.k_hat, self.sample_count, self.seed, self.skipped)
        return header + "\n" + row + "\n"

    def to_json_dict(self) -> dict:
        return asdict(self)


def _random_component(rng: np.random.Generator) -> complex:
    # Uniform phase, log-uniform magnitude in [1e-3, 1e3]: exercises both
    # branches of each max() in the norms.
    magnitude = 10.0 ** rng.uniform(-3.0, 3.0)
    return magnitude * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))


def random_sequence(
    rng: np.random.Generator,
    max_block: int,
    max_support: int = 4,
) -> BlockSequence:
    """A random finitely supported sequence on blocks 0..max_block."""
    width = min(max_support, max_block + 1)
    size = int(rng.integers(1, width + 1))
    indices = rng.choice(max_block + 1, size=size, replace=False)
    return BlockSequence(
        {int(n): Vec2(_random_component(rng), _random_component(rng)) for n in indices}
    )


def d1_constant_estimate(
    r: float,
    w: WeightFamily,
    samples: int,
    max_block: int,
    seed: int = DEFAULT_SEED,
) -> D1Estimate:
    """Empirical lower bound on K from random pairs plus all block witnesses.

    The witness pairs (a_n, a_n) for n = 0..max_block are always included,
    so the estimate never misses the single-block construction; k_hat is a
    lower bound on any valid K, never an upper bound.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if max_block < 0:
        raise ValueError(f"max_block must be >= 0, got {max_block}")
    p = AlgebraParams(r, w)
    rng = np.random.default_rng(seed)
    k_hat = 0.0
    count = 0
    skipped = 0
    for _ in range(samples):
        f = random_sequence(rng, max_block)
        g = random_sequence(rng, max_block)
        numerator = a_norm(pointwise_product(f, g), p)
        denominator = a_norm(f, p) * sup_norm(g) + sup_norm(f) * a_norm(g, p)
        if denominator < _DEGENERATE_DENOMINATOR:
            skipped += 1
            continue
        count += 1
        k_hat = max(k_hat, numerator / denominator)
    for n in range(max_block + 1):
        a = witness(n, r)
        numerator = a_norm(pointwise_product(a, a), p)
        denominator = 2.0 * sup_norm(a) * a_norm(a, p)
        count += 1
        k_hat = max(k_hat, numerator / denominator)
    return D1Estimate(k_hat=k_hat, sample_count=count, seed=seed, skipped=skipped)


# ---------------------------------------------------------------------------
# Ideal property probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealCheckReport:
    """Best observed M in a_norm(g*f) <= M * sup_norm(g) * a_norm(f).

    ``witness_ratio`` is the deterministic single-block pair f = (1, 1),
    g = (1, 1/2) at block ``witness_n``; for r = 1 its ratio equals
    sigma(n)/4 once sigma(n) >= 3, so it grows without bound exactly when
    the ideal property fails.
    """

    m_hat: float
    max_random_ratio: float
    witness_n: int
    witness_ratio: float
    sample_count: int
    skipped: int
    seed: int

    def to_csv(self) -> str:
        header = "m_hat,max_random_ratio,witness_n,witness_ratio,sample_count,skipped,seed"
        row = "%s,%s,%d,%s,%d,%d,%d" % (
            _CSV_FLOAT % self.m_hat,
            _CSV_FLOAT % self.max_random_ratio,
            self.witness_n,
            _CSV_FLOAT % self.witness_ratio,
            self.sample_count,
            self.skipped,
            self.seed,
        )
        return header + "\n" + row + "\n"

    def to_json_dict(self) -> dict:
        return asdict(self)


def ideal_landmark_pair(n: int) -> tuple[BlockSequence, BlockSequence]:
    """The deterministic multiplier pair (g, f) probing the ideal property at block n.

    g*f has block (1, 1/2), whose weighted norm at r = 1 is dominated by the
    sigma-branch, while sup_norm(g) = 1 and f keeps the unweighted branch:
    the ratio comes out to exactly sigma(n)/4 for r = 1 and sigma(n) >= 3.
    """
    f = BlockSequence({n: Vec2(1.0, 1.0)})
    g = BlockSequence({n: Vec2(1.0, 0.5)})
    return g, f


def ideal_check(
    r: float,
    w: WeightFamily,
    samples: int,
    max_block: int,
    seed: int = DEFAULT_SEED,
) -> IdealCheckReport:
    """Estimate the multiplier constant over random pairs plus the landmark pair."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if max_block < 0:
        raise ValueError(f"max_block must be >= 0, got {max_block}")
    p = AlgebraParams(r, w)
    rng = np.random.default_rng(seed)
    best = 0.0
    count = 0
    skipped = 0
    for _ in range(samples):
        g = random_sequence(rng, max_block)
        f = random_sequence(rng, max_block)
        numerator = a_norm(pointwise_product(g, f), p)
        denominator = sup_norm(g) * a_norm(f, p)
        if denominator < _DEGENERATE_DENOMINATOR:
            skipped += 1
            continue
        count += 1
        best = max(best, numerator / denominator)
    g, f = ideal_landmark_pair(max_block)
    witness_ratio = a_norm(pointwise_product(g, f), p) / (sup_norm(g) * a_norm(f, p))
    return IdealCheckReport(
        m_hat=max(best, witness_ratio),
        max_random_ratio=best,
        witness_n=max_block,
        witness_ratio=witness_ratio,
        sample_count=count,
        skipped=skipped,
        seed=seed,
    )
