"""Wheel construction and lambda-sieving for large ``k``."""

from spsp_search.wheelsieve.sieve import (
    PREFILTER_LIMIT,
    SieveHit,
    sieve_candidate,
    sieve_class,
)
from spsp_search.wheelsieve.wheel import (
    DEFAULT_HEADROOM,
    SIGNATURE_WHEEL_MAX_T,
    WheelPlan,
    build_wheel_plan,
    crt_class,
    enumerate_wheel_residues,
)

__all__ = [
    "DEFAULT_HEADROOM",
    "PREFILTER_LIMIT",
    "SIGNATURE_WHEEL_MAX_T",
    "SieveHit",
    "WheelPlan",
    "build_wheel_plan",
    "crt_class",
    "enumerate_wheel_residues",
    "sieve_candidate",
    "sieve_class",
]
