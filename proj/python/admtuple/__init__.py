"""Admissible prime k-tuples."""

from ._core import (
    Context,
    RalsConfig,
    RalsResult,
    brute_force_optimal,
    build_context,
    default_upper_bound,
    full_verify,
    normalized,
    read_tuple,
    sieve,
    sieve_methods,
    solve,
    write_tuple,
)

__all__ = [
    "Context",
    "RalsConfig",
    "RalsResult",
    "brute_force_optimal",
    "build_context",
    "default_upper_bound",
    "full_verify",
    "normalized",
    "read_tuple",
    "sieve",
    "sieve_methods",
    "solve",
    "write_tuple",
]
