"""Dimension of survivor sets for x -> dx mod 1 with the hole (0, t)."""

from .words import (Expansion, Word, common_prefix_len, concat_value, enumerate_lyndon,
                    expand, is_lyndon, is_lyndon_rotation, strongly_less, value)
from .orbits import (MembershipVerdict, PlateauRecord, approx_sequence, enumerate_plateaus,
                     in_bifurcation_set, in_K, in_U, orbit, plateau_interval, plateau_of, step)
from .dimension import (DimensionResult, PrecisionError, RootEnclosure, SeriesRep, entropy,
                        escape_rate, eta, holder_probe, markov_words, modulus_probe,
                        moran_residual, series_from_digits, series_of, solve_lambda, zeta)
from .oracle import (BudgetExceeded, SurvivorStats, bif_dim_estimate, dim_estimate,
                     escape_estimate, k_membership_crosscheck, survivor_count)

__version__ = "0.1.0"

__all__ = [
    "Expansion", "Word", "common_prefix_len", "concat_value", "enumerate_lyndon", "expand",
    "is_lyndon", "is_lyndon_rotation", "strongly_less", "value",
    "MembershipVerdict", "PlateauRecord", "approx_sequence", "enumerate_plateaus",
    "in_bifurcation_set", "in_K", "in_U", "orbit", "plateau_interval", "plateau_of", "step",
    "DimensionResult", "PrecisionError", "RootEnclosure", "SeriesRep", "entropy",
    "escape_rate", "eta", "holder_probe", "markov_words", "modulus_probe", "moran_residual",
    "series_from_digits", "series_of", "solve_lambda", "zeta",
    "BudgetExceeded", "SurvivorStats", "bif_dim_estimate", "dim_estimate", "escape_estimate",
    "k_membership_crosscheck", "survivor_count",
]
