"""Summation polynomials, Weil descent, and first fall degrees over GF(2^n)."""

from .fieldalg import FieldElement, FieldSpec
from .semaev import SummationPoly, lemma_monomial_check, s2, s3, semaev_poly
from .descent import BoolPoly, DescentSystem, SubspaceBasis, descend, make_basis
from .firstfall import (FirstFallReport, GradedSystem, first_fall, moore_rank,
                        top_parts, verify_witness, witness_P0)
from .groebner import Budget, GBResult, dff_empirical, dreg_empirical, groebner_log
from .cli import BoundParams, crossover, run_experiment

__all__ = [
    "FieldElement", "FieldSpec", "SummationPoly", "lemma_monomial_check",
    "s2", "s3", "semaev_poly", "BoolPoly", "DescentSystem", "SubspaceBasis",
    "descend", "make_basis", "FirstFallReport", "GradedSystem", "first_fall",
    "moore_rank", "top_parts", "verify_witness", "witness_P0", "Budget",
    "GBResult", "dff_empirical", "dreg_empirical", "groebner_log",
    "BoundParams", "crossover", "run_experiment",
]

__version__ = "0.1.0"
