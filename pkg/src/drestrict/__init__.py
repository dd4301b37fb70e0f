"""Deterministic constructions of hitting sets, perfect hash families,
cover-free families and separating hash families from GV-bound codes."""

from .errors import (
    AlphabetTooSmall,
    BudgetExceeded,
    DegreeMismatch,
    DivisionByZero,
    DomainError,
    DRestrictError,
    EpsilonInfeasible,
    Infeasible,
    InsufficientAlphabet,
    NotPrimePower,
    ParseError,
    RegimeViolation,
    TooMany,
)
from .gfq import FieldSpec, field_make, next_prime_power, prev_prime_power
from .gvcode import CodeParams, LinearCode, construct_code, spcode2_params, spcode_params
from .hitter import HittingSet, build_dense_hitting, build_hitting, verify_hitting, verify_hitting_density
from .families import (
    build_cff,
    build_dense_phf,
    build_phf,
    build_phf_small_d,
    build_shf,
    build_shf_small_alphabet,
    greedy_phf,
    verify_cff,
    verify_phf,
    verify_phf_density,
    verify_shf,
)
from .kernels import BACKEND

__version__ = "0.1.0"
