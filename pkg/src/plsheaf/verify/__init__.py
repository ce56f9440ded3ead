"""Scenario registry and report production."""

from .corpus import CLOSED_BODIES, CONES, OPEN_BODIES, cone_cell, corpus
from .scenarios import (
    Scenario,
    Setup,
    UnknownScenarioError,
    all_as_expected,
    conefou_closed_prediction,
    conefou_open_prediction,
    default_registry,
    fex_prediction,
    qcone_prediction,
    qcone_set,
    registry,
    reports_json,
    run_all,
    run_scenario,
)
