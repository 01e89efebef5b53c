"""Canonical (Duquenne-Guigues) basis computation with LinCbO and baselines."""

from .context import FormalContext, gen_contranominal, gen_random, read_cxt, read_fimi
from .dgbasis import AlgorithmId, BasisResult, compute_basis, lincbo, verify_basis
from .implications import Implication, Theory

__version__ = "0.1.0"

__all__ = [
    "AlgorithmId", "BasisResult", "FormalContext", "Implication", "Theory",
    "compute_basis", "gen_contranominal", "gen_random", "lincbo", "read_cxt",
    "read_fimi", "verify_basis",
]
