"""Outage probability of uplink power-domain NOMA with SIC.

Three independent routes to the same quantity: closed-form expressions for
Rayleigh fading (`analytic`), order-statistics quadrature built on matrix
permanents (`orderstat`), and seeded Monte Carlo simulation (`montecarlo`),
plus a scenario/link-budget layer (`scenario`) and sweep/validation tooling
(`sweep`, `validation`, `cli`).
"""

from .analytic import (
    METHOD_CLOSED_FORM,
    METHOD_MONTE_CARLO,
    METHOD_QUADRATURE,
    VARIANT_CORRECTED,
    VARIANT_PAPER,
    VARIANTS,
    OutageResult,
    pout2,
    pout3,
    pout_rayleigh,
    pout_scenario,
    term_sum,
)
from .montecarlo import (
    MODEL_ORDER_THEN_PAIR,
    MODEL_PAIR_THEN_ORDER,
    McConfig,
    reproduce,
    sample_outage,
    sample_outage_protocol,
)
from .orderstat import (
    REGION_ORDERED,
    REGION_PAPER_BOUNDS,
    integral_I,
    joint_pdf_ordered,
    joint_pdf_ordered_permsum,
    ordered_density_mass,
    pdf_matrix,
    permanent,
    permanent_naive,
    pout_quadrature,
)
from .scenario import (
    SPEED_OF_LIGHT_M_S,
    LinearScenario,
    OrderingWarning,
    ScenarioFormatError,
    ScenarioSpec,
    UeSpec,
    db_to_linear,
    dbm_to_linear,
    linear_to_db,
    linearize,
    load_scenario,
    pathloss_mean_gain,
    scenario_from_dict,
)
from .sweep import (
    GridSpec,
    SweepRow,
    SweepSpec,
    load_sweep,
    preset_curves,
    run_preset,
    run_sweep,
    write_sweep_csv,
)
from .validation import ValidationReport, ValidationRow, run_validation

__version__ = "0.1.0"

__all__ = [
    "METHOD_CLOSED_FORM",
    "METHOD_MONTE_CARLO",
    "METHOD_QUADRATURE",
    "MODEL_ORDER_THEN_PAIR",
    "MODEL_PAIR_THEN_ORDER",
    "REGION_ORDERED",
    "REGION_PAPER_BOUNDS",
    "SPEED_OF_LIGHT_M_S",
    "VARIANTS",
    "VARIANT_CORRECTED",
    "VARIANT_PAPER",
    "GridSpec",
    "LinearScenario",
    "McConfig",
    "OrderingWarning",
    "OutageResult",
    "ScenarioFormatError",
    "ScenarioSpec",
    "SweepRow",
    "SweepSpec",
    "UeSpec",
    "ValidationReport",
    "ValidationRow",
    "db_to_linear",
    "dbm_to_linear",
    "integral_I",
    "joint_pdf_ordered",
    "joint_pdf_ordered_permsum",
    "linear_to_db",
    "linearize",
    "load_scenario",
    "load_sweep",
    "ordered_density_mass",
    "pathloss_mean_gain",
    "pdf_matrix",
    "permanent",
    "permanent_naive",
    "pout2",
    "pout3",
    "pout_quadrature",
    "pout_rayleigh",
    "pout_scenario",
    "preset_curves",
    "reproduce",
    "run_preset",
    "run_sweep",
    "run_validation",
    "sample_outage",
    "sample_outage_protocol",
    "scenario_from_dict",
    "term_sum",
    "write_sweep_csv",
]
