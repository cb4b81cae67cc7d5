"""Exact computations in E(x_1..x_n) (x) F_p[y_1..y_n] for odd primes p."""

from __future__ import annotations

from .algebra import Element, exact_div, parse_element, power, serialize
from .context import (
    EXP_LIMIT,
    Context,
    ContextMismatchError,
    ExactDivisionError,
    ExponentOverflowError,
    ParseError,
)
from .identities import REGISTRY, run_case, sweep, verify_all
from .invariants import (
    bracket,
    dickson_q,
    l_det,
    l_omit,
    mui_m,
    v_det,
)
from .milnor import MilnorOp, apply, st_delta, st_u, steenrod_p
from .padic import (
    b_func,
    c_func,
    index_set_I,
    index_set_J,
    j_decompose,
)

__all__ = [
    "EXP_LIMIT",
    "Context",
    "ContextMismatchError",
    "Element",
    "ExactDivisionError",
    "ExponentOverflowError",
    "MilnorOp",
    "ParseError",
    "REGISTRY",
    "apply",
    "b_func",
    "bracket",
    "c_func",
    "dickson_q",
    "exact_div",
    "index_set_I",
    "index_set_J",
    "j_decompose",
    "l_det",
    "l_omit",
    "mui_m",
    "parse_element",
    "power",
    "run_case",
    "serialize",
    "st_delta",
    "st_u",
    "steenrod_p",
    "sweep",
    "v_det",
    "verify_all",
]

__version__ = "0.1.0"
