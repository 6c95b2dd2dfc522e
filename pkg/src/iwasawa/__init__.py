"""Exact p-adic measures on Z_p^d, divided power algebras and moment maps."""

from .gamma import (
    GammaElement,
    GammaSeries,
    divided_power_of_vector,
    gamma_functor,
    gamma_power,
    gamma_product,
    gamma_rank,
    gamma_to_tsym,
    multi_indices,
    sym_to_gamma,
    tsym_to_gamma,
    vector,
)
from .logstalk import (
    InterpolationWitness,
    LogStalkElement,
    comp_k,
    comp_k_direct,
    embed,
    interpolation_check,
    one_k,
    pr_k,
    transition,
    transition_via_composite,
)
from .measures import (
    DenseCapExceeded,
    FiniteMeasure,
    Measure,
    Point,
    ShapeMismatch,
    convolve,
    convolve_dense,
    delta,
    measure_at_level,
    pushforward,
    tensor,
    trace,
    uniform,
    zero,
)
from .moments import PowerSeriesTrunc, amice, laplace, mom_hat, mom_k, one_plus_t_power
from .padic import (
    PrecisionExhausted,
    PrecisionMismatch,
    Residue,
    binom_residue,
    legendre_valuation,
    reduce_precision,
)
from .towers import FiniteTower, StabilizedAt, Undetermined, ZeroAt, ml_diagnose, ml_report

__version__ = "0.1.0"
