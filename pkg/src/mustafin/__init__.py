"""Exact computer algebra for Mustafin degenerations.

Core layers: coefficient domains (``coeffs``), sparse polynomials and term
orders (``polyring``), Groebner engines over fields and over L[pi]
(``groebner``).  On top: lattice configurations and special fibres
(``varieties``), degenerations of embedded subvarieties (``degeneration``),
parametric specialization of Groebner bases (``specialize``), and
syzygy-bundle admissibility (``syzygy``).  The ``cli`` module wires it all
to the command line.
"""

from .coeffs import DEFAULT_PRIME, GF, QQ, DomainError, PiRing
from .polyring import (
    Block,
    DegRevLex,
    Ideal,
    Lex,
    MPoly,
    TermOrder,
    VarUniverse,
    WeightedPiOrder,
    format_poly,
    grid_universe,
    parse_poly,
)

__all__ = [
    "DEFAULT_PRIME",
    "GF",
    "QQ",
    "DomainError",
    "PiRing",
    "Block",
    "DegRevLex",
    "Ideal",
    "Lex",
    "MPoly",
    "TermOrder",
    "VarUniverse",
    "WeightedPiOrder",
    "format_poly",
    "grid_universe",
    "parse_poly",
]

__version__ = "0.1.0"
