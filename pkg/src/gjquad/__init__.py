"""Gauss-Jacobi and Gauss-Gegenbauer quadrature by a globally convergent
fourth-order fixed-point method, with a Golub-Welsch oracle for validation."""

from . import errors
from ._backend import KERNEL_NAME
from .core import DEFAULT_CONFIG, PrecisionConfig, QuadParams, make_params, moment
from .gegenbauer import RunStats, SymmetricRule, gegenbauer_rule
from .jacobi import GeneralRule, Scheme, jacobi_rule
from .oracle import QuadratureRule, compare_rules, exactness_check, golub_welsch

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CONFIG",
    "GeneralRule",
    "KERNEL_NAME",
    "PrecisionConfig",
    "QuadParams",
    "QuadratureRule",
    "RunStats",
    "Scheme",
    "SymmetricRule",
    "compare_rules",
    "errors",
    "exactness_check",
    "gegenbauer_rule",
    "golub_welsch",
    "jacobi_rule",
    "make_params",
    "moment",
]
