"""Thermal magnetic noise near conducting slabs (Python front end to the C++ library)."""

from ._magnoise import (  # noqa: F401
    AsymptoticRegime,
    Convention,
    ConvergenceError,
    DissipationKernel,
    DomainError,
    GammaMethod,
    Material,
    RelaxationTimes,
    SlabConfig,
    SlabSystem,
    SpectralDensity,
    SpinContext,
    approximate_entanglement,
    dissipated_power,
    gamma_asymptotic,
    gamma_auto,
    gamma_integral,
    gamma_interpolated,
    gamma_static,
    gamma_two_slab,
    kane_amplification,
    kramers_kronig,
    lab_spectral_density,
    ohmic_approx,
    parse_quantity,
    reconstruct_field,
    relaxation_times,
    run_scenario,
    scenario_defaults,
    scenario_names,
    skin_depth,
    spin_entanglement_flat,
    survey,
    thermal_occupation_kernel,
    convention_convert,
)

__all__ = [name for name in dir() if not name.startswith("_")]
