"""Coverage verification for sensor networks by relative persistent homology."""

import json

from . import _ripscover
from ._ripscover import Error, Scenario, corpus_scenario, generate_perturbation, hole_scenario, validate_perturbation

__all__ = [
    "Error",
    "Scenario",
    "check",
    "corpus_scenario",
    "coverage",
    "generate_perturbation",
    "hole_scenario",
    "load_scenario",
    "optimize",
    "validate_perturbation",
]


def load_scenario(path):
    with open(path) as f:
        return Scenario.from_json(f.read())


def check(scenario, stable=False, field="rational", grid_step=0.02):
    """Verdict dict of the dsg or stable criterion."""
    return json.loads(_ripscover.check(scenario, stable, field, grid_step))


def coverage(scenario, positions, grid_step=0.02):
    """Grid oracle over the restricted domain for balls of radius r_c at positions."""
    return json.loads(_ripscover.coverage(scenario, positions, grid_step))


def optimize(scenario, targets, lp="auto"):
    return json.loads(_ripscover.optimize(scenario, targets, lp))
