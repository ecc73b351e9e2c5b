"""Seeded Monte Carlo estimation of the SIC outage probability.

Sampling uses a counter-based generator (Philox) keyed on the seed: sample j
always consumes words [j*n, (j+1)*n) of the keyed stream, so the estimate is
a pure function of (seed, samples) no matter how the work is partitioned.
Blocks are a fixed size, outage events are accumulated as exact integer
counts, and workers only change which thread evaluates which block, so
``workers=1`` and ``workers=8`` are bit-identical.

Two model interpretations are implemented, because they differ whenever the
underlying channel-gain means are heterogeneous:

* ``pair_then_order`` - each signal i is an exponential with its own mean
  ``means[i]`` (power already folded into the mean); the strongest sample
  wins.  This matches the analytical model behind the closed forms.
* ``order_then_pair`` - channel gains are drawn and *ranked first*, then the
  descending power levels are paired with the ranked gains, mirroring the
  protocol in which the best channel gets the highest power.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import METHOD_MONTE_CARLO, OutageResult, _validate_means

MODEL_PAIR_THEN_ORDER = "pair_then_order"
MODEL_ORDER_THEN_PAIR = "order_then_pair"
MODELS = (MODEL_PAIR_THEN_ORDER, MODEL_ORDER_THEN_PAIR)

# samples per stream block; a multiple of 4 keeps every block start aligned
# with the Philox 4-word counter blocks for any vector length n
_BLOCK_SAMPLES = 1 << 16


@dataclass(frozen=True)
class McConfig:
    """Sample count, stream seed, model interpretation and worker count."""

    samples: int = 1_000_000
    seed: int = 0
    model: str = MODEL_PAIR_THEN_ORDER
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.model not in MODELS:
            raise ValueError(f"model must be one of {MODELS}, got {self.model!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers}")


def _uniform_block(seed: int, n: int, start: int, count: int) -> np.ndarray:
    """Uniforms for samples [start, start+count), shape (count, n).

    ``start * n`` is a multiple of 4 for every block boundary, so advancing
    the Philox counter by (start * n) / 4 lands exactly where a single
    sequential run would be.
    """
    bitgen = np.random.Philox(key=seed)
    bitgen.advance((start * n) // 4)
    return np.random.Generator(bitgen).random((count, n))


def _blocks(samples: int):
    start = 0
    while start < samples:
        count = min(_BLOCK_SAMPLES, samples - start)
        yield start, count
        start += count


def _margins_pair(means: np.ndarray, seed: int, start: int, count: int) -> np.ndarray:
    """Decoding margins X_(1) - sum of the rest, via 2*max - sum."""
    u = _uniform_block(seed, means.size, start, count)
    x = -means * np.log1p(-u)
    return 2.0 * x.max(axis=1) - x.sum(axis=1)


def _margins_protocol(
    gamma_means: np.ndarray, powers: np.ndarray, seed: int, start: int, count: int
) -> np.ndarray:
    """Margins when gains are ranked before the power levels are attached."""
    u = _uniform_block(seed, gamma_means.size, start, count)
    gamma = -gamma_means * np.log1p(-u)
    gamma.sort(axis=1)
    x = powers * gamma[:, ::-1]
    return x[:, 0] - x[:, 1:].sum(axis=1)


def _count_events(margin_fn, pthres: float, cfg: McConfig) -> int:
    def one(block):
        start, count = block
        return int((margin_fn(start, count) < pthres).sum())

    blocks = list(_blocks(cfg.samples))
    if cfg.workers == 1:
        return sum(one(b) for b in blocks)
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return sum(pool.map(one, blocks))


def _estimate(count: int, samples: int, model: str) -> OutageResult:
    p_hat = count / samples
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / samples)
    return OutageResult(value=p_hat, method=METHOD_MONTE_CARLO, variant=model, stderr=stderr)


def sample_outage(means, pthres: float, cfg: McConfig = McConfig()) -> OutageResult:
    """Estimate the outage probability under the ``pair_then_order`` model.

    Draws ``cfg.samples`` iid vectors with X_i ~ exponential(means[i]) via
    the inverse CDF and counts the strict event 2*max - sum < pthres (ties
    land on the non-outage side, and occur with probability zero anyway).
    """
    if cfg.model != MODEL_PAIR_THEN_ORDER:
        raise ValueError(f"sample_outage requires model={MODEL_PAIR_THEN_ORDER!r}, got {cfg.model!r}")
    means = np.asarray(_validate_means(means))
    pthres = float(pthres)
    if not (math.isfinite(pthres) and pthres >= 0):
        raise ValueError(f"pthres must be >= 0 and finite, got {pthres}")
    count = _count_events(
        lambda start, n_s: _margins_pair(means, cfg.seed, start, n_s), pthres, cfg
    )
    return _estimate(count, cfg.samples, cfg.model)


def sample_outage_protocol(
    gamma_means, powers, pthres: float, cfg: McConfig = McConfig(model=MODEL_ORDER_THEN_PAIR)
) -> OutageResult:
    """Estimate the outage under the ``order_then_pair`` protocol model.

    Per sample: draw the channel gains, rank them descending, attach the
    descending ``powers`` by rank, and test the same margin event.
    """
    if cfg.model != MODEL_ORDER_THEN_PAIR:
        raise ValueError(
            f"sample_outage_protocol requires model={MODEL_ORDER_THEN_PAIR!r}, got {cfg.model!r}"
        )
    gamma_means = np.asarray(_validate_means(gamma_means))
    powers = np.asarray([float(p) for p in powers])
    if powers.size != gamma_means.size:
        raise ValueError("gamma_means and powers must have equal length")
    if (powers <= 0).any() or not np.all(np.isfinite(powers)):
        raise ValueError(f"powers must be > 0 and finite, got {powers}")
    if np.any(np.diff(powers) > 0):
        # descending by rank; ties allowed as the fully symmetric limit
        raise ValueError(f"powers must be non-increasing, got {powers}")
    pthres = float(pthres)
    if not (math.isfinite(pthres) and pthres >= 0):
        raise ValueError(f"pthres must be >= 0 and finite, got {pthres}")
    count = _count_events(
        lambda start, n_s: _margins_protocol(gamma_means, powers, cfg.seed, start, n_s),
        pthres,
        cfg,
    )
    return _estimate(count, cfg.samples, cfg.model)


def reproduce(means, pthres: float, cfg: McConfig) -> tuple[OutageResult, OutageResult]:
    """Run the estimator twice with identical inputs; the pair must match bit
    for bit, which is the determinism contract callers can assert on."""
    return sample_outage(means, pthres, cfg), sample_outage(means, pthres, cfg)
