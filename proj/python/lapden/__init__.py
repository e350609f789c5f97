"""Fourth-order nonlinear diffusion denoising with a total-variation baseline."""

from ._lapden import (
    DivergenceError,
    LapdenError,
    add_noise,
    compute_metrics,
    d0_matrix,
    d1_matrix,
    default_tau,
    denoise_1d,
    denoise_2d,
    gaussian_noise,
    laplacian_2d,
    read_csv,
    read_pgm,
    run_experiment,
    sample_f2d,
    sample_f_sine,
    sample_g_jumps,
    stable_step_bound,
    tv_denoise_1d,
    tv_denoise_2d,
    write_csv,
    write_pgm,
)

__all__ = [
    "DivergenceError",
    "LapdenError",
    "add_noise",
    "compute_metrics",
    "d0_matrix",
    "d1_matrix",
    "default_tau",
    "denoise_1d",
    "denoise_2d",
    "gaussian_noise",
    "laplacian_2d",
    "read_csv",
    "read_pgm",
    "run_experiment",
    "sample_f2d",
    "sample_f_sine",
    "sample_g_jumps",
    "stable_step_bound",
    "tv_denoise_1d",
    "tv_denoise_2d",
    "write_csv",
    "write_pgm",
]
