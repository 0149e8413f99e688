"""Exact calculator for non-Kählerness degrees and the dd^c-lemma property."""

from .bicomplex import (Bicomplex, CohomologySummary, StructureEquations, aeppli_numbers,
                        betti_numbers, bott_chern_numbers, build_ce_bicomplex,
                        dolbeault_numbers, summarize, validate_bicomplex)
from .constructions import (BlowupStep, blow_down, blow_up, delta_blow_up, delta_projectivize,
                            evaluate_blowup_sequence, exceptional_divisor, heredity_lift,
                            product_with_cpk, projectivize)
from .diamond import (BettiVector, BigradedTable, DeltaVector, ManifoldModel, ValidationReport,
                      delta, is_ddbar, validate_model)
from .errors import (BicomplexError, ConstructionError, DdbarError, ModelError, ParseError,
                     ShapeError)
from .linalg import GaussRational, Matrix, exact_rank
from .registry import builtin, builtin_model, load_model, load_structure, save_model

__version__ = "0.1.0"
