"""prclab: prime-representing-constant laboratory.

Builds minimal prime chains, certifies decimal digits of their limits
with outward-rounded interval arithmetic, and stress-tests the
inequalities, trace recurrences, residue patterns, and prime-gap
statistics that the construction rests on.
"""

from .chain import (
    ChainExhaustedError,
    DeadWindowError,
    ExponentSeq,
    PrimeChain,
    VerificationReport,
    admissible_window,
    build_min_chain,
    extend_min,
    verify_chain,
)
from .constants import CUBIC_NEARNESS_EXPONENT, PRIME_GAP_EXPONENT, step_decay_exponent
from .evaluator import (
    CertifiedDigits,
    NearnessRecord,
    bounds,
    certified_digits,
    check_nesting,
    mahler_table,
    nearness,
    nearness_table,
)
from .gaps import ExceptionalSurvey, GapSurveyRecord, exceptional_survey, gap_survey
from .intervals import PrecisionCapError, RealInterval, power_of_int, precision_cap
from .pisot import (
    ConjugateSet,
    MonicIntPoly,
    PisotVerdict,
    ReduciblePolynomialError,
    TraceSequence,
    UndecidableError,
    companion_power_sum,
    conjugates,
    cubic_scan,
    degree_bound,
    is_pisot,
    power_sum,
    quadratic_exclusion,
    tail_bound_check,
    trace_match,
)
from .primality import CertaintyPolicy, PrimalityVerdict, is_prime, smallest_prime_in
from .residues import ResidueReport, residue_report

__version__ = "0.1.0"

__all__ = [
    "CertaintyPolicy",
    "CertifiedDigits",
    "ChainExhaustedError",
    "ConjugateSet",
    "CUBIC_NEARNESS_EXPONENT",
    "DeadWindowError",
    "ExceptionalSurvey",
    "ExponentSeq",
    "GapSurveyRecord",
    "MonicIntPoly",
    "NearnessRecord",
    "PRIME_GAP_EXPONENT",
    "PisotVerdict",
    "PrecisionCapError",
    "PrimalityVerdict",
    "PrimeChain",
    "RealInterval",
    "ReduciblePolynomialError",
    "ResidueReport",
    "TraceSequence",
    "UndecidableError",
    "VerificationReport",
    "admissible_window",
    "bounds",
    "build_min_chain",
    "certified_digits",
    "check_nesting",
    "companion_power_sum",
    "conjugates",
    "cubic_scan",
    "degree_bound",
    "exceptional_survey",
    "extend_min",
    "gap_survey",
    "is_pisot",
    "is_prime",
    "mahler_table",
    "nearness",
    "nearness_table",
    "power_of_int",
    "power_sum",
    "precision_cap",
    "quadratic_exclusion",
    "residue_report",
    "smallest_prime_in",
    "step_decay_exponent",
    "tail_bound_check",
    "trace_match",
    "verify_chain",
]
