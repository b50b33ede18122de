"""Subspace channel estimation for SIMO BPSK links: conventional vs widely linear.

The received-signal covariance of a single-user SIMO flat-fading BPSK link
has the channel direction as its principal eigenvector, so the channel can
be estimated blindly from a finite sample covariance.  Because BPSK makes
the received signal improper, a widely linear variant can run the same
estimator in the real-stacked domain, turning the inherent phase ambiguity
into a sign ambiguity.  This package implements both estimators, the four
ambiguity-resolution schemes (optimal, one-known-coefficient,
largest-magnitude, pilot-based), closed-form finite-sample MSE and
win-probability expressions for each combination, and a seeded Monte Carlo
harness that checks every closed form against simulation.
"""

from .ambiguity import (
    CorrectedEstimate,
    DegenerateCorrectionWarning,
    PilotBlock,
    Scenario,
    largest_mag_index,
    make_pilots,
    optimal_phase,
    optimal_sign,
    squared_error,
    suboptimal_phase,
    suboptimal_sign,
    training_phase,
    training_sign,
)
from .analysis import (
    BoundsRecord,
    TheoryQuery,
    delta_mse,
    error_decomposition,
    lmag_bounds,
    prob_sign_error_training,
    prob_sign_error_unconditional,
    prob_wl_wins_optimal,
    theory_mse,
)
from .channel import (
    ChannelRealization,
    ReceivedBlock,
    augmented_covariance,
    draw_block,
    draw_channel,
    from_real,
    psi_adjoint,
    psi_apply,
    psi_matrix,
    substream,
    to_real,
    true_covariance,
    true_real_covariance,
)
from .estimators import (
    EigendecompositionError,
    RawEstimate,
    conventional_estimate,
    principal_eigenvector,
    sample_covariance,
    wl_estimate,
)
from .harness import (
    ConfigError,
    ExperimentConfig,
    NumericalFailureError,
    ProbRow,
    SummaryRow,
    emit_csv,
    load_config,
    load_preset,
    preset_names,
    run_mse_sweep,
    run_prob_sweep,
    run_theory_table,
)
from .numerics import (
    RiceanParam,
    bessel_i,
    erf,
    expected_cos,
    gaussian_q,
    reg_lower_gamma,
    ricean_phase_pdf,
)
from . import ambiguity  # noqa: F401  (apply lives here; name clashes with builtins)

__version__ = "0.1.0"
