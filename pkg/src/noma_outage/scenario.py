"""Cell scenario description and its conversion to linear-domain link metrics.

A scenario lists the superimposed uplink users (distance and assigned SNR),
the carrier frequency, the path-loss exponent and the SIC power threshold.
``linearize`` turns it into the vector of mean received-power metrics used by
the outage calculators: one positive mean per user, plus the threshold on the
same linear scale.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

SPEED_OF_LIGHT_M_S = 299_792_458.0

_SCENARIO_KEYS = {"carrier_hz", "alpha", "pthres_dbm", "cell_radius_m", "ues"}
_UE_KEYS = {"id", "distance_m", "snr_db"}


class ScenarioFormatError(ValueError):
    """A scenario or sweep document does not match the expected schema."""


class OrderingWarning(UserWarning):
    """The listed UE order disagrees with the resulting mean-power order."""


@dataclass(frozen=True)
class UeSpec:
    """One uplink user: label, distance from the receiver, assigned SNR."""

    id: str
    distance_m: float
    snr_db: float

    def __post_init__(self):
        if not (math.isfinite(self.distance_m) and self.distance_m > 0):
            raise ValueError(f"UE {self.id!r}: distance_m must be > 0, got {self.distance_m}")
        if not math.isfinite(self.snr_db):
            raise ValueError(f"UE {self.id!r}: snr_db must be finite, got {self.snr_db}")


@dataclass(frozen=True)
class ScenarioSpec:
    """A cell scenario: ordered UE list plus carrier, path-loss and threshold."""

    ues: tuple[UeSpec, ...]
    carrier_hz: float
    alpha: float
    pthres_dbm: float
    cell_radius_m: float

    def __post_init__(self):
        object.__setattr__(self, "ues", tuple(self.ues))
        if len(self.ues) < 1:
            raise ValueError("scenario needs at least one UE")
        ids = [ue.id for ue in self.ues]
        if len(set(ids)) != len(ids):
            raise ValueError(f"UE ids must be distinct, got {ids}")
        if not (math.isfinite(self.carrier_hz) and self.carrier_hz > 0):
            raise ValueError(f"carrier_hz must be > 0, got {self.carrier_hz}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not math.isfinite(self.pthres_dbm):
            raise ValueError(f"pthres_dbm must be finite, got {self.pthres_dbm}")
        if not (math.isfinite(self.cell_radius_m) and self.cell_radius_m > 0):
            raise ValueError(f"cell_radius_m must be > 0, got {self.cell_radius_m}")
        for ue in self.ues:
            if ue.distance_m > self.cell_radius_m:
                warnings.warn("UE distance exceeds the cell radius", stacklevel=2)
                break

    @property
    def n(self) -> int:
        return len(self.ues)


@dataclass(frozen=True)
class LinearScenario:
    """Linear-domain view of a scenario: mean metrics per UE and threshold."""

    means: tuple[float, ...]
    pthres_linear: float

    def __post_init__(self):
        object.__setattr__(self, "means", tuple(self.means))
        if any(not (math.isfinite(m) and m > 0) for m in self.means):
            raise ValueError(f"all means must be > 0 and finite, got {self.means}")
        if not (math.isfinite(self.pthres_linear) and self.pthres_linear > 0):
            raise ValueError(f"pthres_linear must be > 0, got {self.pthres_linear}")


def db_to_linear(value_db: float) -> float:
    """Convert a dB quantity to a linear power ratio."""
    if not math.isfinite(value_db):
        raise ValueError(f"value_db must be finite, got {value_db}")
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    """Inverse of ``db_to_linear``; requires a strictly positive ratio."""
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"value must be > 0 and finite, got {value}")
    return 10.0 * math.log10(value)


def dbm_to_linear(value_dbm: float) -> float:
    """Convert dBm to watts."""
    if not math.isfinite(value_dbm):
        raise ValueError(f"value_dbm must be finite, got {value_dbm}")
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def pathloss_mean_gain(carrier_hz: float, distance_m: float, alpha: float) -> float:
    """Mean squared channel envelope under free-space decay.

    Isotropic antennas: the reference gain at 1 m is (c / (4 pi f_c))^2 and
    distance scales it by D^(-alpha).
    """
    for name, v in (("carrier_hz", carrier_hz), ("distance_m", distance_m), ("alpha", alpha)):
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"{name} must be > 0 and finite, got {v}")
    k_p = (SPEED_OF_LIGHT_M_S / (4.0 * math.pi * carrier_hz)) ** 2
    return k_p * distance_m ** (-alpha)


def linearize(spec: ScenarioSpec) -> LinearScenario:
    """Derive the per-UE mean received-power metrics and linear threshold.

    UE i maps to means[i] = 10^(snr_db/10) * k_p * D_i^(-alpha); the order of
    the input list is preserved.  The SIC protocol expects the listed order to
    carry non-increasing means (strongest first); a disagreement is reported
    as an ``OrderingWarning`` but the result is still returned, since the
    outage formulas are symmetric in the means.
    """
    means = tuple(
        db_to_linear(ue.snr_db) * pathloss_mean_gain(spec.carrier_hz, ue.distance_m, spec.alpha)
        for ue in spec.ues
    )
    if any(a < b for a, b in zip(means, means[1:])):
        warnings.warn(
            "listed UE order does not give non-increasing mean received powers",
            OrderingWarning,
            stacklevel=2,
        )
    return LinearScenario(means=means, pthres_linear=dbm_to_linear(spec.pthres_dbm))


def _require_number(doc: dict, key: str, where: str) -> float:
    if key not in doc:
        raise ScenarioFormatError(f"{where}: missing required field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioFormatError(f"{where}: field {key!r} must be a number, got {v!r}")
    return float(v)


def scenario_from_dict(doc: dict) -> ScenarioSpec:
    """Build a ScenarioSpec from a parsed JSON document (strict schema)."""
    if not isinstance(doc, dict):
        raise ScenarioFormatError(f"scenario document must be an object, got {type(doc).__name__}")
    unknown = set(doc) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioFormatError(f"unknown scenario field(s): {sorted(unknown)}")
    if "ues" not in doc:
        raise ScenarioFormatError("scenario: missing required field 'ues'")
    if not isinstance(doc["ues"], list) or not doc["ues"]:
        raise ScenarioFormatError("scenario: field 'ues' must be a non-empty array")
    ues = []
    for i, entry in enumerate(doc["ues"]):
        where = f"ues[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioFormatError(f"{where}: must be an object")
        bad = set(entry) - _UE_KEYS
        if bad:
            raise ScenarioFormatError(f"{where}: unknown field(s): {sorted(bad)}")
        if "id" not in entry or not isinstance(entry["id"], str):
            raise ScenarioFormatError(f"{where}: field 'id' must be a string")
        try:
            ues.append(
                UeSpec(
                    id=entry["id"],
                    distance_m=_require_number(entry, "distance_m", where),
                    snr_db=_require_number(entry, "snr_db", where),
                )
            )
        except ValueError as exc:
            if isinstance(exc, ScenarioFormatError):
                raise
            raise ScenarioFormatError(f"{where}: {exc}") from exc
    try:
        return ScenarioSpec(
            ues=tuple(ues),
            carrier_hz=_require_number(doc, "carrier_hz", "scenario"),
            alpha=_require_number(doc, "alpha", "scenario"),
            pthres_dbm=_require_number(doc, "pthres_dbm", "scenario"),
            cell_radius_m=_require_number(doc, "cell_radius_m", "scenario"),
        )
    except ValueError as exc:
        if isinstance(exc, ScenarioFormatError):
            raise
        raise ScenarioFormatError(str(exc)) from exc


def load_scenario(path) -> ScenarioSpec:
    """Load a scenario JSON file; schema errors raise ScenarioFormatError."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioFormatError(f"{path}: invalid JSON: {exc}") from exc
    return scenario_from_dict(doc)
