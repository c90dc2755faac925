"""Lax modal lambda calculi: typing, equations, normalization by evaluation, Kripke checks."""

from .syntax import Flavor, print_term, show_type
from .parse import ParseError, parse_ctx, parse_term, parse_type
from .typecheck import IllTyped, TypeMismatch, infer
from .nbe import decide_equal, norm
from .nf import check_inadmissible, enumerate_nf, inhabited

__all__ = [
    "Flavor", "IllTyped", "ParseError", "TypeMismatch", "check_inadmissible",
    "decide_equal", "enumerate_nf", "infer", "inhabited", "norm", "parse_ctx",
    "parse_term", "parse_type", "print_term", "show_type",
]
