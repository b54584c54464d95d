"""Knot invariants of the Kinoshita-Terasaka and Conway families and their cosmetic-surgery obstructions."""

from .diagram import Crossing, PDCode, SkeinTriple, parse_pd
from .families import FamilySpec, generate, is_trivial_parameters, parse_family_spec
from .invariants import alexander, conway, finite_type, jones, kauffman_bracket
from .obstructions import InvariantReport, Verdict, analyze, analyze_family, big_o_invariant
from .poly import INF, LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "Crossing",
    "PDCode",
    "SkeinTriple",
    "parse_pd",
    "FamilySpec",
    "generate",
    "is_trivial_parameters",
    "parse_family_spec",
    "alexander",
    "conway",
    "finite_type",
    "jones",
    "kauffman_bracket",
    "InvariantReport",
    "Verdict",
    "analyze",
    "analyze_family",
    "big_o_invariant",
    "INF",
    "LaurentPoly",
]
