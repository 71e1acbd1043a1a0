"""Complete reducibility of tensor products of simple modules in characteristic p."""

from .charbox import Character, gf_mults, tensor, weyl_character, weyl_dim
from .crtools import CR, NOT_CR, UNKNOWN, CRVerdict, DeciderConfig, decide_cr, oracle_check
from .jantzen import simple_character, simple_tensor_comp_factors, weyl_comp_factors
from .rootsys import RootDatum, build_root_datum, format_weight, parse_type, parse_weight
from .steinberg import p_digits, refined_split, steinberg_simple_char

__version__ = "0.1.0"

__all__ = [
    "CR",
    "CRVerdict",
    "Character",
    "DeciderConfig",
    "NOT_CR",
    "RootDatum",
    "UNKNOWN",
    "build_root_datum",
    "decide_cr",
    "format_weight",
    "gf_mults",
    "oracle_check",
    "p_digits",
    "parse_type",
    "parse_weight",
    "refined_split",
    "simple_character",
    "simple_tensor_comp_factors",
    "steinberg_simple_char",
    "tensor",
    "weyl_character",
    "weyl_comp_factors",
    "weyl_dim",
]
