"""Cross-method validation: closed forms vs quadrature vs Monte Carlo.

Each row evaluates one randomized instance with every available method and
flags agreement at the tolerances the test suite uses: the corrected closed
form must sit within 3 standard errors of the Monte Carlo estimate and
within 1e-5 of the ordered-region quadrature; the literal (``paper``)
closed form must match the plain-simplex quadrature, which reproduces it by
construction.  The Monte Carlo flag is statistical, so the report passes
when at least 95% of the rows agree; the quadrature flags are deterministic
and must all hold.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .analytic import VARIANT_CORRECTED, VARIANT_PAPER, pout_rayleigh
from .montecarlo import McConfig, sample_outage
from .orderstat import REGION_ORDERED, REGION_PAPER_BOUNDS, pout_quadrature

QUAD_TOL = {2: 1e-7, 3: 1e-7, 4: 1e-6}
QUAD_AGREE_ABS = 1e-5
PAPER_QUAD_AGREE_ABS = 1e-4
MC_AGREE_SIGMAS = 3.0
MC_AGREE_FRACTION = 0.95

VALIDATION_CSV_HEADER = (
    "instance",
    "n",
    "means",
    "pthres",
    "pout_paper",
    "pout_corrected",
    "quad_paper_bounds",
    "quad_ordered",
    "mc_value",
    "mc_stderr",
    "agree_corrected_mc",
    "agree_corrected_quad",
    "agree_paper_quad",
)

# ratios of pthres to the largest mean, cycled across instances
_PTHRES_RATIOS = (0.0, 0.1, 0.5, 1.0, 2.0, 5.0)
_SIZES = (2, 3, 4)


@dataclass(frozen=True)
class ValidationRow:
    instance: int
    n: int
    means: tuple[float, ...]
    pthres: float
    pout_paper: float
    pout_corrected: float
    quad_paper_bounds: float
    quad_ordered: float
    mc_value: float
    mc_stderr: float
    agree_corrected_mc: bool
    agree_corrected_quad: bool
    agree_paper_quad: bool


@dataclass(frozen=True)
class ValidationReport:
    rows: tuple[ValidationRow, ...]
    mc_agree_fraction: float
    quad_agree_all: bool
    passed: bool


def _instances(n_instances: int, seed: int):
    """The canonical equal-means discrepancy row, then randomized draws."""
    yield 0, (1.0, 1.0, 1.0), 0.0
    rng = np.random.default_rng(seed)
    for i in range(1, n_instances + 1):
        n = _SIZES[(i - 1) % len(_SIZES)]
        means = tuple(float(m) for m in np.exp(rng.uniform(np.log(1e-2), np.log(1e2), n)))
        ratio = _PTHRES_RATIOS[(i - 1) % len(_PTHRES_RATIOS)]
        yield i, means, ratio * max(means)


def run_validation(
    n_instances: int = 6,
    seed: int = 0,
    samples: int = 1_000_000,
    workers: int = 1,
) -> ValidationReport:
    """Evaluate every method on the canonical row plus random instances."""
    if n_instances < 1:
        raise ValueError(f"n_instances must be >= 1, got {n_instances}")
    rows = []
    for idx, means, pthres in _instances(n_instances, seed):
        n = len(means)
        paper = pout_rayleigh(means, pthres, VARIANT_PAPER).value
        corrected = pout_rayleigh(means, pthres, VARIANT_CORRECTED).value
        tol = QUAD_TOL[n]
        quad_paper = pout_quadrature(means, pthres, REGION_PAPER_BOUNDS, tol)
        quad_ordered = pout_quadrature(means, pthres, REGION_ORDERED, tol)
        mc = sample_outage(
            means, pthres, McConfig(samples=samples, seed=seed + idx, workers=workers)
        )
        rows.append(
            ValidationRow(
                instance=idx,
                n=n,
                means=means,
                pthres=pthres,
                pout_paper=paper,
                pout_corrected=corrected,
                quad_paper_bounds=quad_paper,
                quad_ordered=quad_ordered,
                mc_value=mc.value,
                mc_stderr=mc.stderr,
                agree_corrected_mc=abs(corrected - mc.value) <= MC_AGREE_SIGMAS * mc.stderr,
                agree_corrected_quad=abs(corrected - quad_ordered) <= QUAD_AGREE_ABS,
                agree_paper_quad=abs(paper - quad_paper) <= PAPER_QUAD_AGREE_ABS,
            )
        )
    mc_fraction = sum(r.agree_corrected_mc for r in rows) / len(rows)
    quad_all = all(r.agree_corrected_quad and r.agree_paper_quad for r in rows)
    return ValidationReport(
        rows=tuple(rows),
        mc_agree_fraction=mc_fraction,
        quad_agree_all=quad_all,
        passed=quad_all and mc_fraction >= MC_AGREE_FRACTION,
    )


def format_table(report: ValidationReport) -> str:
    """Plain-text table, six significant digits per number."""
    header = (
        f"{'#':>3} {'n':>2} {'pthres':>12} {'paper':>13} {'corrected':>13} "
        f"{'quad_paper':>13} {'quad_ordered':>13} {'mc':>13} {'stderr':>10} {'flags':>5}"
    )
    lines = [header, "-" * len(header)]
    for r in report.rows:
        flags = (
            ("M" if r.agree_corrected_mc else "-")
            + ("Q" if r.agree_corrected_quad else "-")
            + ("P" if r.agree_paper_quad else "-")
        )
        lines.append(
            f"{r.instance:>3} {r.n:>2} {r.pthres:>12.6g} {r.pout_paper:>13.6g} "
            f"{r.pout_corrected:>13.6g} {r.quad_paper_bounds:>13.6g} "
            f"{r.quad_ordered:>13.6g} {r.mc_value:>13.6g} {r.mc_stderr:>10.3g} {flags:>5}"
        )
    lines.append(
        f"corrected vs MC agreement: {report.mc_agree_fraction:.1%} "
        f"(threshold {MC_AGREE_FRACTION:.0%}); quadrature agreement: "
        f"{'all rows' if report.quad_agree_all else 'FAILED'}"
    )
    lines.append(f"result: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)


def write_validation_csv(report: ValidationReport, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(VALIDATION_CSV_HEADER)
        for r in report.rows:
            writer.writerow(
                (
                    r.instance,
                    r.n,
                    " ".join(repr(m) for m in r.means),
                    repr(r.pthres),
                    repr(r.pout_paper),
                    repr(r.pout_corrected),
                    repr(r.quad_paper_bounds),
                    repr(r.quad_ordered),
                    repr(r.mc_value),
                    repr(r.mc_stderr),
                    int(r.agree_corrected_mc),
                    int(r.agree_corrected_quad),
                    int(r.agree_paper_quad),
                )
            )
