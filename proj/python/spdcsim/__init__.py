"""Biphoton mode structure and fiber-coupling model for Type-I SPDC."""

from ._core import (
    DataError,
    DomainError,
    ExperimentConfig,
    __version__,
    asymmetry_factor,
    conditional_mode,
    coupling_report,
    efficiency_sweep,
    focusing_parameter,
    synthesize_ring,
    thin_crystal_efficiency,
    waist_for_focusing,
    wavenumber,
)

__all__ = [
    "DataError",
    "DomainError",
    "ExperimentConfig",
    "__version__",
    "asymmetry_factor",
    "conditional_mode",
    "coupling_report",
    "efficiency_sweep",
    "focusing_parameter",
    "synthesize_ring",
    "thin_crystal_efficiency",
    "waist_for_focusing",
    "wavenumber",
]
