"""Lattice-theoretic verification of numerically Calabi-Yau orders on rational surfaces."""

from .scenarios import Scenario, builtin, hirzebruch2, load_scenario, p2_sextic, perturbed_sextic, quadric, \
    run_scenario

__version__ = "0.1.0"

__all__ = ["Scenario", "builtin", "hirzebruch2", "load_scenario", "p2_sextic", "perturbed_sextic", "quadric",
           "run_scenario"]
