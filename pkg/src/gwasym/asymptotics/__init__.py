"""Large-order and large-degree analysis of GW invariants and free energies."""

from .core import (
    DEFAULT_ORDER,
    DataInsufficientError,
    GrowthFit,
    SequenceSample,
    agreement_digits,
    at_two_precisions,
    last_estimate,
    richardson,
    richardson_table,
)
from .diagonal import (
    DiagPolySet,
    bernoulli_poly,
    diagonal_action_extract,
    diagonal_prediction,
    diagonal_sequence,
    diagonal_terms,
    gen_diag_polys,
    q_window,
)
from .growth import (
    degree_column,
    estimate_action_from_fg,
    fit_exponential_rate,
    fit_log_exponent,
    fit_power_exponent,
)
from .large_degree import (
    HURWITZ_CHAT_CORRECTIONS,
    XP_CHAT_CORRECTIONS,
    chat_hurwitz_limit,
    hurwitz_chat_table,
    hurwitz_large_degree_prediction,
    hurwitz_large_degree_terms,
    xp_chat_table,
    xp_large_degree_prediction,
    xp_large_degree_terms,
)
from .saddle import (
    LineFit,
    SaddleFit,
    SaddleScan,
    least_squares_line,
    saddle_growth_prediction,
    saddle_linear_fit,
    saddle_scan,
)
from .towers import TruncatedFreeEnergy, free_energy_truncated, xp_tower_prediction, xp_tower_term

__all__ = [
    "DEFAULT_ORDER",
    "DataInsufficientError",
    "GrowthFit",
    "SequenceSample",
    "agreement_digits",
    "at_two_precisions",
    "last_estimate",
    "richardson",
    "richardson_table",
    "DiagPolySet",
    "bernoulli_poly",
    "diagonal_action_extract",
    "diagonal_prediction",
    "diagonal_sequence",
    "diagonal_terms",
    "gen_diag_polys",
    "q_window",
    "degree_column",
    "estimate_action_from_fg",
    "fit_exponential_rate",
    "fit_log_exponent",
    "fit_power_exponent",
    "HURWITZ_CHAT_CORRECTIONS",
    "XP_CHAT_CORRECTIONS",
    "chat_hurwitz_limit",
    "hurwitz_chat_table",
    "hurwitz_large_degree_prediction",
    "hurwitz_large_degree_terms",
    "xp_chat_table",
    "xp_large_degree_prediction",
    "xp_large_degree_terms",
    "LineFit",
    "SaddleFit",
    "SaddleScan",
    "least_squares_line",
    "saddle_growth_prediction",
    "saddle_linear_fit",
    "saddle_scan",
    "TruncatedFreeEnergy",
    "free_energy_truncated",
    "xp_tower_prediction",
    "xp_tower_term",
]
