"""Steady-state entanglement transfer in a dual cavity opto-magnomechanical network."""

__version__ = "0.1.0"

from .entanglement import PAIR_ORDER, UNSTABLE, Pair, log_negativity, steady_state, steady_state_entanglement
from .params import EnvironmentParams, SubsystemParams, SystemParams

__all__ = [
    "PAIR_ORDER",
    "UNSTABLE",
    "EnvironmentParams",
    "Pair",
    "SubsystemParams",
    "SystemParams",
    "log_negativity",
    "steady_state",
    "steady_state_entanglement",
]
