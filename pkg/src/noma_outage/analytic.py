"""Closed-form outage probabilities for Rayleigh-faded superimposed uplinks.

The outage event is that the strongest of n independently faded signals fails
to clear the sum of the others by the SIC margin P:

    X_(1) - (X_(2) + ... + X_(n)) < P,   X_i ~ exponential(mean = means[i]).

Two closed-form variants are provided.  Both build on the per-user terms

    T_k = exp(-P / m_k) / prod_{i != k} (1 + m_i / m_k),

which equal Pr{X_k >= sum_{j != k} X_j + P}, pairwise-disjoint events for
P > 0.  The ``corrected`` variant returns 1 - sum_k T_k and is a genuine
probability; it matches the Monte Carlo and ordered-region quadrature
oracles.  The ``paper`` variant keeps an extra (n-1)! multiplicity factor,
1 - (n-1)! * sum_k T_k, the form obtained by integrating the symmetric
permutation-sum density over the unordered simplex: every ordered
configuration is then counted (n-1)! times, so for n >= 3 the value can drop
below 0 (for example equal means and P = 0 give -0.5 at n = 3).  It is
reproduced verbatim, never clamped, so the discrepancy stays visible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .scenario import ScenarioSpec, linearize

VARIANT_CORRECTED = "corrected"
VARIANT_PAPER = "paper"
VARIANTS = (VARIANT_CORRECTED, VARIANT_PAPER)

METHOD_CLOSED_FORM = "closed_form"
METHOD_QUADRATURE = "quadrature"
METHOD_MONTE_CARLO = "monte_carlo"
METHODS = (METHOD_CLOSED_FORM, METHOD_QUADRATURE, METHOD_MONTE_CARLO)

# factorials stay exact in double precision up to 20!; beyond that work in logs
_FACTORIAL_LIMIT = 20


@dataclass(frozen=True)
class OutageResult:
    """A labelled outage probability; no value travels without its method."""

    value: float
    method: str
    variant: str
    stderr: Optional[float] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if (self.stderr is not None) != (self.method == METHOD_MONTE_CARLO):
            raise ValueError("stderr is present exactly when method is monte_carlo")
        if self.stderr is not None and not (self.stderr >= 0):
            raise ValueError(f"stderr must be >= 0, got {self.stderr}")


def _validate_means(means: Sequence[float]) -> tuple[float, ...]:
    means = tuple(float(m) for m in means)
    if len(means) == 0:
        raise ValueError("means must be non-empty")
    if any(not (math.isfinite(m) and m > 0) for m in means):
        raise ValueError(f"all means must be > 0 and finite, got {means}")
    return means


def _validate_pthres(pthres: float) -> float:
    pthres = float(pthres)
    if not (math.isfinite(pthres) and pthres >= 0):
        raise ValueError(f"pthres must be >= 0 and finite, got {pthres}")
    return pthres


def term_sum(means: Sequence[float], pthres: float) -> float:
    """sum_k T_k, evaluated in log space.

    T_k = exp(-P/m_k - sum_{i!=k} log1p(m_i/m_k)) avoids overflow of the
    denominator product when the means span many orders of magnitude (path
    loss pushes ratios past 1e5 in the distance sweeps).  fsum keeps the
    result exactly permutation invariant.
    """
    means = _validate_means(means)
    pthres = _validate_pthres(pthres)
    terms = []
    for k, mk in enumerate(means):
        log_t = -pthres / mk - math.fsum(
            math.log1p(mi / mk) for i, mi in enumerate(means) if i != k
        )
        terms.append(math.exp(log_t))
    return math.fsum(terms)


def pout_rayleigh(
    means: Sequence[float], pthres: float, variant: str = VARIANT_CORRECTED
) -> OutageResult:
    """Closed-form outage probability for any number of superimposed signals.

    Parameters
    ----------
    means : positive mean metrics, one per signal.
    pthres : SIC margin on the same linear scale; 0 is allowed as a limit.
    variant : "corrected" (default) or "paper"; see the module docstring.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    means = _validate_means(means)
    s = term_sum(means, pthres)
    if variant == VARIANT_CORRECTED:
        value = 1.0 - s
    else:
        n = len(means)
        if n <= _FACTORIAL_LIMIT:
            value = 1.0 - float(math.factorial(n - 1)) * s
        else:
            value = 1.0 - (math.exp(math.lgamma(n) + math.log(s)) if s > 0.0 else 0.0)
    return OutageResult(value=value, method=METHOD_CLOSED_FORM, variant=variant)


def pout2(mean1: float, mean2: float, pthres: float) -> float:
    """Two-signal outage, 1 - sum of the two weighted exponentials.

    Equals m1/(m1+m2) e^(-P/m1) + m2/(m1+m2) e^(-P/m2) subtracted from 1;
    delegates to ``pout_rayleigh`` so the value is bit-identical to the
    general form (the two variants coincide for n = 2).
    """
    return pout_rayleigh((mean1, mean2), pthres).value


def pout3(
    mean1: float, mean2: float, mean3: float, pthres: float, variant: str = VARIANT_CORRECTED
) -> float:
    """Three-signal outage; the ``paper`` variant carries the 3!/3 = 2 factor."""
    return pout_rayleigh((mean1, mean2, mean3), pthres, variant).value


def pout_scenario(spec: ScenarioSpec, variant: str = VARIANT_CORRECTED) -> OutageResult:
    """Outage probability of a cell scenario via the closed form."""
    lin = linearize(spec)
    return pout_rayleigh(lin.means, lin.pthres_linear, variant)
