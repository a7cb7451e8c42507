"""Exact alpha-TAG computations.

Alphas are exact: pass a str such as "7/2" or "3.5", an int, or a
fractions.Fraction. Sequence terms come back as int, cutoffs as Fraction.
"""

from ._core import (
    CutoffError,
    GameService,
    __version__,
    best_move,
    classify,
    degree_bounds,
    detect_recurrence,
    dominant_root,
    enumerate_cutoffs,
    gamma,
    generate,
    half_integer_survey,
    losing_piles,
    next_cutoff,
    q_sequence,
    s_sequence,
    stable_interval,
    window,
    zeckendorf,
)

__all__ = [
    "CutoffError",
    "GameService",
    "__version__",
    "best_move",
    "classify",
    "degree_bounds",
    "detect_recurrence",
    "dominant_root",
    "enumerate_cutoffs",
    "gamma",
    "generate",
    "half_integer_survey",
    "losing_piles",
    "next_cutoff",
    "q_sequence",
    "s_sequence",
    "stable_interval",
    "window",
    "zeckendorf",
]
