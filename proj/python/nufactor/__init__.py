"""Python bindings for the nufactor library."""

from ._nufactor import (
    Error,
    SaddlePoint,
    combinatorial_c,
    divisor_sum,
    f_v,
    log_big_g,
    log_density,
    log_euler_h,
    log_square_harmonic,
    minorant_prime,
    pi_nu,
    primes,
    rough_count,
    run,
    scale_L,
    solve_saddle,
    tau_k,
)

__all__ = [
    "Error",
    "SaddlePoint",
    "combinatorial_c",
    "divisor_sum",
    "f_v",
    "log_big_g",
    "log_density",
    "log_euler_h",
    "log_square_harmonic",
    "minorant_prime",
    "pi_nu",
    "primes",
    "rough_count",
    "run",
    "scale_L",
    "solve_saddle",
    "tau_k",
]
