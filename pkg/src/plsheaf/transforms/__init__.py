"""Stalk evaluators for kernel transforms and matching against predictions."""

from .evaluators import (
    conification_stalk,
    convolution_stalk,
    fourier_sato_stalk,
    kernel_compose_stalk,
    nh_fourier_stalk,
    restrict,
    rgamma_c,
    stalk_compose,
)
from .tamarkin import (
    PairingTKernel,
    SemilinearTKernel,
    TKernel,
    t_nonneg,
    tamarkin_check,
    tcomp_stalk,
    tilde,
    ttens_stalk,
)
from .matching import (
    RANDOM,
    USER,
    WITNESS,
    StalkSampleSet,
    VerificationReport,
    counterexample,
    fmt_point,
    match_predicted,
)
from .quadric import (
    choose_parameters,
    inscribed_piece,
    piece_below,
    quadric_prediction,
    quadric_surrogate,
    surrogate_region,
)
