"""Special functions for the product-of-exponentials distribution."""

from .bessel import (
    DEFAULT_BESSEL_POLICY,
    EULER_GAMMA,
    BesselEvalPolicy,
    bessel_k0,
    bessel_k1,
    k0_array,
    k1_array,
    x_k1,
    x_k1_complement,
)

__all__ = [
    "BesselEvalPolicy",
    "DEFAULT_BESSEL_POLICY",
    "EULER_GAMMA",
    "bessel_k0",
    "bessel_k1",
    "k0_array",
    "k1_array",
    "x_k1",
    "x_k1_complement",
]
