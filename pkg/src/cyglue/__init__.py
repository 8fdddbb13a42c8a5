"""Exact lattice computations for Calabi-Yau threefolds smoothed from two glued rational threefolds."""

from .lattice import DivisorClass, Isometry, Lattice
from .scenarios import Report, Scenario, load_scenario, run, sweep

__all__ = ["DivisorClass", "Isometry", "Lattice", "Report", "Scenario", "load_scenario", "run", "sweep"]
__version__ = "0.1.0"
