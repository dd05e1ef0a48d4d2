"""Szegő-kernel Dirichlet solver and harmonic image warping (C++ core)."""

from ._core import (
    DEFAULT_FIT_LAMBDA,
    ConditioningError,
    DomainError,
    HardyError,
    InvalidArgument,
    NonConvergenceError,
    PgmError,
    SingularJacobianError,
    __version__,
    BoundaryCorrespondence,
    BoundarySample,
    DirichletProblem,
    HarmonicMap,
    JacobianValue,
    SolutionCoefficients,
    apply,
    boundary_residual,
    continuation,
    evaluate,
    evaluate_grad,
    fit_map,
    gram_matrix,
    invert_point,
    jacobian,
    make_grid_image,
    make_portrait_image,
    metrics,
    quadratic_press,
    read_pgm,
    recover_image,
    solve_dense_oracle,
    solve_recursive,
    szego,
    szego_re,
    szego_re_grad,
    warp_image,
    write_pgm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
