"""Finite direct sums of shifted constant sheaves on semilinear sets."""

from .objects import (
    ConstructibleObject,
    Kernel,
    PairingKernel,
    SemilinearKernel,
    ShiftedTerm,
    constant,
    dsum,
    external,
    kernel_fiber,
    pullback_affine,
    slice_map,
    shift,
    stalk,
    tensor,
)
