"""Truncated-series construction and CR-flatness verification of rigid
Levi-degenerate hypersurface germs in C^3."""

from ._core import (
    CrflatError,
    HypersurfaceGerm,
    InvariantReport,
    RigidModelData,
    Series,
    Var,
    assemble_F,
    build_model_data,
    cauchy_pompeiu_check,
    compute_J,
    compute_S,
    compute_W,
    compute_rev,
    construct_germ,
    dbar_residual,
    eval_grid,
    expanded_ma_residual,
    fd_residual,
    full_report,
    integrate_t,
    liouville_equation_residual,
    liouville_log_residual,
    liouville_metric,
    ma_residual,
    max_order,
    monge_residual,
    mtilde0,
    rescale_z1,
    run_selftest,
    s1111_residuals,
    solve_dbar_u,
    specclass_residual,
)

__version__ = "0.1.0"

__all__ = [
    "CrflatError",
    "HypersurfaceGerm",
    "InvariantReport",
    "RigidModelData",
    "Series",
    "Var",
    "assemble_F",
    "build_model_data",
    "cauchy_pompeiu_check",
    "compute_J",
    "compute_S",
    "compute_W",
    "compute_rev",
    "construct_germ",
    "dbar_residual",
    "eval_grid",
    "expanded_ma_residual",
    "fd_residual",
    "full_report",
    "integrate_t",
    "liouville_equation_residual",
    "liouville_log_residual",
    "liouville_metric",
    "ma_residual",
    "max_order",
    "monge_residual",
    "mtilde0",
    "rescale_z1",
    "run_selftest",
    "s1111_residuals",
    "solve_dbar_u",
    "specclass_residual",
]
