"""Finite-temperature dispersion forces between real-material surfaces.

The package computes the attractive force between two thick parallel
plates and between a sphere (or spherical lens) and a plate, at any
temperature, for ideal metals, free-electron metals with and without
dissipation, and dielectrics — together with the thermal and
finite-conductivity corrections, zero-frequency prescriptions,
asymptotic formulas, reference tables, and a command-line interface.

Quick start::

    from casimir import preset, force_plate_plate
    res = force_plate_plate(preset("Al"), "modified-sdm", 1e-6, 300.0)
    print(res.value, res.unit)   # negative = attraction
"""

__version__ = "0.1.0"

from .constants import effective_temperature, matsubara_spacing
from .models import (
    Dielectric,
    DrudeMetal,
    IdealMetal,
    PlasmaMetal,
    PRESET_NAMES,
    dimensionless,
    eval_epsilon,
    material_from_mapping,
    material_from_toml,
    material_label,
    preset,
    skin_depth,
)
from .reflection import (
    Prescription,
    PrescriptionError,
    ReflectionPair,
    diagonal_reflection,
    parse_prescription,
    reflection_pair,
    zero_frequency_values,
)
from .quadrature import ConvergenceError, IntegralResult, QuadratureSpec
from .lifshitz import (
    ForceResult,
    PlatePlate,
    SpherePlate,
    ThermalState,
    force,
    force_T0,
    force_kperp_representation,
    force_plate_plate,
    force_sphere_plate,
    free_energy_T0,
    free_energy_plate_plate,
)
from .asymptotics import (
    AsymptoticResult,
    high_temperature_ideal,
    high_temperature_pressure,
    high_temperature_sphere_force,
    ideal_force,
    low_temperature_pressure,
    low_temperature_sphere_force,
    plasma_series_pressure,
    plasma_series_sphere_force,
    relaxation_integral_1,
    relaxation_integral_2,
)
from .analysis import (
    DeltaTable,
    delta_T,
    delta_c,
    figure_data,
    gamma_sweep,
    make_table,
)

__all__ = [
    "__version__",
    # constants
    "effective_temperature", "matsubara_spacing",
    # models
    "IdealMetal", "PlasmaMetal", "DrudeMetal", "Dielectric", "preset",
    "PRESET_NAMES", "dimensionless", "eval_epsilon", "skin_depth",
    "material_from_mapping", "material_from_toml", "material_label",
    # reflection
    "Prescription", "PrescriptionError", "ReflectionPair",
    "parse_prescription", "reflection_pair", "diagonal_reflection",
    "zero_frequency_values",
    # quadrature
    "QuadratureSpec", "IntegralResult", "ConvergenceError",
    # lifshitz
    "PlatePlate", "SpherePlate", "ThermalState", "ForceResult", "force",
    "force_plate_plate", "force_sphere_plate", "free_energy_plate_plate",
    "force_T0", "free_energy_T0", "force_kperp_representation",
    # asymptotics
    "AsymptoticResult", "ideal_force", "high_temperature_ideal",
    "plasma_series_pressure", "plasma_series_sphere_force",
    "low_temperature_pressure", "low_temperature_sphere_force",
    "high_temperature_pressure", "high_temperature_sphere_force",
    "relaxation_integral_1", "relaxation_integral_2",
    # analysis
    "delta_T", "delta_c", "DeltaTable", "make_table", "gamma_sweep",
    "figure_data",
]
