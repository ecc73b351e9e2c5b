"""Parameter sweeps over scenarios, including the built-in figure presets.

A sweep varies one scenario field over a grid and evaluates both closed-form
variants at every point.  The two presets reproduce the reference parameter
studies: ``fig1`` sweeps the near user's distance for two superimposed
signals at two carrier frequencies, ``fig2`` does the same for three signals
with different SNR triplets and far-user placements.  Output is CSV with one
row per (grid point, curve); formatting is deterministic so identical runs
are byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .analytic import (
    METHOD_CLOSED_FORM,
    VARIANT_CORRECTED,
    VARIANT_PAPER,
    pout_scenario,
)
from .scenario import ScenarioFormatError, ScenarioSpec, UeSpec, scenario_from_dict

SWEEP_FIELDS = ("distance_m", "snr_db", "carrier_hz", "pthres_dbm")
_PER_UE_FIELDS = ("distance_m", "snr_db")
_SWEEP_DOC_KEYS = {"base", "sweep", "label"}
_GRID_KEYS = {"field", "ue_id", "start", "stop", "points", "spacing"}

CSV_HEADER = ("sweep_value", "curve_label", "pout_corrected", "pout_paper", "method")

# preset constants: 100 m cell, fourth-power decay, -75 dBm SIC margin
PRESET_CELL_RADIUS_M = 100.0
PRESET_ALPHA = 4.0
PRESET_PTHRES_DBM = -75.0
PRESET_GRID_POINTS = 100
FIG1_SNR1_DB = (11.0, 8.0, 6.0)
FIG1_SNR2_DB = 6.0
FIG1_CARRIERS_HZ = (2e9, 28e9)
FIG2_CARRIER_HZ = 28e9
FIG2_SNR_TRIPLETS_DB = ((10.0, 10.0, 10.0), (12.0, 10.0, 8.0), (15.0, 10.0, 8.0))
FIG2_D2_FRACTION = 0.2
FIG2_D3_FRACTIONS = (0.5, 0.7, 0.9)
PRESETS = ("fig1", "fig2")


@dataclass(frozen=True)
class GridSpec:
    """Sweep grid: endpoints, point count and linear/log spacing."""

    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"spacing must be 'linear' or 'log', got {self.spacing!r}")
        if not isinstance(self.points, int) or self.points < 2:
            raise ValueError(f"points must be an integer >= 2, got {self.points}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("start and stop must be finite")
        if not self.start < self.stop:
            raise ValueError(f"start must be < stop, got {self.start} >= {self.stop}")
        if self.spacing == "log" and self.start <= 0:
            raise ValueError("log spacing requires start > 0")

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """One swept curve: a base scenario plus the field and grid to vary."""

    base: ScenarioSpec
    field: str
    grid: GridSpec
    ue_id: Optional[str] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.field not in SWEEP_FIELDS:
            raise ValueError(f"field must be one of {SWEEP_FIELDS}, got {self.field!r}")
        if self.field in _PER_UE_FIELDS:
            if self.ue_id is None:
                raise ValueError(f"field {self.field!r} needs a ue_id")
            if self.ue_id not in {ue.id for ue in self.base.ues}:
                raise ValueError(f"ue_id {self.ue_id!r} not present in the base scenario")
        elif self.ue_id is not None:
            raise ValueError(f"field {self.field!r} does not take a ue_id")


@dataclass(frozen=True)
class SweepRow:
    sweep_value: float
    curve_label: str
    pout_corrected: float
    pout_paper: float
    method: str = METHOD_CLOSED_FORM


def _apply_point(spec: SweepSpec, value: float) -> ScenarioSpec:
    base = spec.base
    if spec.field in _PER_UE_FIELDS:
        ues = tuple(
            replace(ue, **{spec.field: float(value)}) if ue.id == spec.ue_id else ue
            for ue in base.ues
        )
        return replace(base, ues=ues)
    return replace(base, **{spec.field: float(value)})


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate both closed-form variants along one curve."""
    label = spec.label or (
        f"{spec.field}[{spec.ue_id}]" if spec.ue_id is not None else spec.field
    )
    rows = []
    for value in spec.grid.values():
        point = _apply_point(spec, float(value))
        corrected = pout_scenario(point, VARIANT_CORRECTED).value
        paper = pout_scenario(point, VARIANT_PAPER).value
        rows.append(SweepRow(float(value), label, corrected, paper))
    return rows


def _preset_base(ues, carrier_hz) -> ScenarioSpec:
    return ScenarioSpec(
        ues=ues,
        carrier_hz=carrier_hz,
        alpha=PRESET_ALPHA,
        pthres_dbm=PRESET_PTHRES_DBM,
        cell_radius_m=PRESET_CELL_RADIUS_M,
    )


def _d1_grid() -> GridSpec:
    return GridSpec(start=1.0, stop=PRESET_CELL_RADIUS_M, points=PRESET_GRID_POINTS, spacing="log")


def preset_curves(name: str) -> list[SweepSpec]:
    """Expand a preset name into its per-curve sweep specs.

    fig1: two signals, the far user parked at the cell edge with 6 dB, the
    near user's SNR in {11, 8, 6} dB, at 2 and 28 GHz -> 6 curves.
    fig2: three signals at 28 GHz, SNR triplets (10,10,10)/(12,10,8)/(15,10,8),
    the second user at 0.2R and the third at {0.5, 0.7, 0.9}R -> 9 curves.
    Every curve sweeps the first user's distance over [1 m, R], 100 log points.
    """
    r = PRESET_CELL_RADIUS_M
    curves = []
    if name == "fig1":
        for snr1 in FIG1_SNR1_DB:
            for carrier in FIG1_CARRIERS_HZ:
                ues = (
                    UeSpec(id="ue1", distance_m=1.0, snr_db=snr1),
                    UeSpec(id="ue2", distance_m=r, snr_db=FIG1_SNR2_DB),
                )
                curves.append(
                    SweepSpec(
                        base=_preset_base(ues, carrier),
                        field="distance_m",
                        ue_id="ue1",
                        grid=_d1_grid(),
                        label=f"snr1={snr1:g}dB fc={carrier / 1e9:g}GHz",
                    )
                )
    elif name == "fig2":
        for triplet in FIG2_SNR_TRIPLETS_DB:
            for frac3 in FIG2_D3_FRACTIONS:
                ues = (
                    UeSpec(id="ue1", distance_m=1.0, snr_db=triplet[0]),
                    UeSpec(id="ue2", distance_m=FIG2_D2_FRACTION * r, snr_db=triplet[1]),
                    UeSpec(id="ue3", distance_m=frac3 * r, snr_db=triplet[2]),
                )
                label = "snr=" + "/".join(f"{s:g}" for s in triplet) + f" d3={frac3:g}R"
                curves.append(
                    SweepSpec(
                        base=_preset_base(ues, FIG2_CARRIER_HZ),
                        field="distance_m",
                        ue_id="ue1",
                        grid=_d1_grid(),
                        label=label,
                    )
                )
    else:
        raise ValueError(f"unknown preset {name!r}, expected one of {PRESETS}")
    return curves


def run_preset(name: str) -> list[SweepRow]:
    rows = []
    for curve in preset_curves(name):
        rows.extend(run_sweep(curve))
    return rows


def sweep_from_dict(doc: dict) -> SweepSpec:
    """Build a SweepSpec from a parsed JSON document (strict schema)."""
    if not isinstance(doc, dict):
        raise ScenarioFormatError(f"sweep document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _SWEEP_DOC_KEYS
    if unknown:
        raise ScenarioFormatError(f"unknown sweep field(s): {sorted(unknown)}")
    for key in ("base", "sweep"):
        if key not in doc:
            raise ScenarioFormatError(f"sweep: missing required field {key!r}")
    base = scenario_from_dict(doc["base"])
    grid_doc = doc["sweep"]
    if not isinstance(grid_doc, dict):
        raise ScenarioFormatError("sweep: field 'sweep' must be an object")
    bad = set(grid_doc) - _GRID_KEYS
    if bad:
        raise ScenarioFormatError(f"sweep: unknown field(s): {sorted(bad)}")
    for key in ("field", "start", "stop", "points"):
        if key not in grid_doc:
            raise ScenarioFormatError(f"sweep: missing required field {key!r}")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ScenarioFormatError("sweep: field 'label' must be a string")
    points = grid_doc["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ScenarioFormatError("sweep: field 'points' must be an integer")
    try:
        grid = GridSpec(
            start=float(grid_doc["start"]),
            stop=float(grid_doc["stop"]),
            points=points,
            spacing=grid_doc.get("spacing", "linear"),
        )
        return SweepSpec(
            base=base,
            field=grid_doc["field"],
            ue_id=grid_doc.get("ue_id"),
            grid=grid,
            label=label,
        )
    except (TypeError, ValueError) as exc:
        raise ScenarioFormatError(f"sweep: {exc}") from exc


def load_sweep(path) -> SweepSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioFormatError(f"{path}: invalid JSON: {exc}") from exc
    return sweep_from_dict(doc)


def write_sweep_csv(rows, path) -> None:
    """Write sweep rows as CSV: header row, LF line ends, round-trip floats."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(
                (
                    repr(row.sweep_value),
                    row.curve_label,
                    repr(row.pout_corrected),
                    repr(row.pout_paper),
                    row.method,
                )
            )
