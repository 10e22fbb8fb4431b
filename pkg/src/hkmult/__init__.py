"""Hilbert-Kunz functions and multiplicity estimates over prime fields, with
checks of lower bounds in terms of classical invariants."""

from .gfpoly import GREVLEX, LEX, Polynomial, PolynomialError, PolynomialRing, PrimeField
from .groebner import (
    GBBudget,
    GBBudgetExceeded,
    GroebnerBasis,
    Ideal,
    QuotientRing,
    buchberger,
    colon,
    frobenius_power,
    intersection,
    normal_form,
)
from .hilbert import (
    InfiniteColengthError,
    MultiplicityError,
    artinian_profile,
    colength,
    dimension_and_multiplicity,
    hilbert_series,
)
from .hk import HKEstimate, associativity_check, hk_estimate, hk_function, relative_hk
from .bounds import RingAnalysis, deduce_regularity_class
from .radical import (
    build_radical_extension,
    check_nested_monotonicity_4_8,
    check_radical_bound_4_4,
    check_scaling_4_1,
    run_tower,
)
from .report import BOUND_IDS, BoundReport, Certificate
from .presentation import RingPresentation, parse_presentation
from .corpus import corpus, corpus_entry
from .pipeline import PipelineConfig, RunReport, run_corpus, run_pipeline

__version__ = "0.1.0"
