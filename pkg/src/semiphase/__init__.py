"""Semiclassical phase-space estimators for quantum expectation values.

A trajectory-ensemble (Egorov-type) estimator built on a corrected
phase-space density that combines the Husimi function with Hermite
spectrograms, sampling schemes for the resulting signed mixtures, a
high-order symplectic classical propagator, and a Fourier grid
Schroedinger solver used as the quantum reference.
"""

from .states import Gaussian, GaussianSuperposition, TranslatedHermite, phase_point, split_blocks
from .densities import (
    density_grid,
    eval_husimi,
    eval_hermite_spectrogram,
    eval_hermite_spectrogram_sum,
    eval_mu,
    eval_wigner,
    gaussian_inner_product,
    symplectic_form,
)
from .sampling import (
    ProductDensity,
    SamplerConfig,
    SignedMixture,
    SphereRadialDensity,
    halton_points,
    sample_component,
    signed_mixture_decomposition,
)
from .dynamics import (
    IntegratorConfig,
    Potential,
    cubic_well,
    flow_ensemble,
    hamiltonian,
    harmonic,
    henon_heiles,
    propagate,
    step_order8,
    step_strang,
    torsional,
)
from .estimator import (
    ExpectationSeries,
    Observable,
    convergence_slope,
    observable_from_name,
    run_estimator,
    estimator_standard_errors,
    time_averaged_error,
)
from .reference import GridSpec, WaveField, grid_expectation, init_wavefield, propagate_strang, run_reference
from .config import ConfigError, RunConfig
from .harness import compare_runs, estimate_pipeline, experiment_pipeline, reference_pipeline, run_pipeline
from .presets import preset_catalog, torsional_eps_values
from . import cli, io

__version__ = "1.0.0"

__all__ = [
    "Gaussian",
    "GaussianSuperposition",
    "TranslatedHermite",
    "phase_point",
    "split_blocks",
    "density_grid",
    "eval_husimi",
    "eval_hermite_spectrogram",
    "eval_hermite_spectrogram_sum",
    "eval_mu",
    "eval_wigner",
    "gaussian_inner_product",
    "symplectic_form",
    "ProductDensity",
    "SamplerConfig",
    "SignedMixture",
    "SphereRadialDensity",
    "halton_points",
    "sample_component",
    "signed_mixture_decomposition",
    "IntegratorConfig",
    "Potential",
    "cubic_well",
    "flow_ensemble",
    "hamiltonian",
    "harmonic",
    "henon_heiles",
    "propagate",
    "step_order8",
    "step_strang",
    "torsional",
    "ExpectationSeries",
    "Observable",
    "convergence_slope",
    "observable_from_name",
    "run_estimator",
    "estimator_standard_errors",
    "time_averaged_error",
    "GridSpec",
    "WaveField",
    "grid_expectation",
    "init_wavefield",
    "propagate_strang",
    "run_reference",
    "ConfigError",
    "RunConfig",
    "compare_runs",
    "estimate_pipeline",
    "experiment_pipeline",
    "reference_pipeline",
    "run_pipeline",
    "preset_catalog",
    "torsional_eps_values",
    "cli",
    "io",
]
