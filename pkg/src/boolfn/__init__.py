"""Irreducible-degree classification of Boolean functions and NK-network tools."""

from .core import (
    BiasModel,
    SetFamily,
    TruthTable,
    bias_probability,
    from_set_family,
    from_wolfram,
    input_index,
    negate,
    sample,
    to_set_family,
    weight,
    wolfram_index,
)
from .counting import CountTable, beta, g_lambda, prob_lambda, rho, rho_table
from .irreducibility import f_count, is_canalizing, is_index_reducible, lambda_degree
from .ring import IndexSet, embed, intersect, is_reducible_on, project, shift_family, sym_diff

__version__ = "0.1.0"
