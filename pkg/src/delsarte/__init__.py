"""Picard numbers of Delsarte surfaces via Fermat coverings and character orbits."""

from .characters import Character, fermat_lambda, generate_characters, hodge_degree
from .delsarte import (
    CoveringError,
    DelsarteError,
    DelsarteSurface,
    analyze,
    compute_covering,
    invariant_characters,
    lefschetz_number,
    parse_exponent_matrix,
    picard_number_fermat,
    picard_number_quintic,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CoveringError",
    "DelsarteError",
    "DelsarteSurface",
    "analyze",
    "compute_covering",
    "fermat_lambda",
    "generate_characters",
    "hodge_degree",
    "invariant_characters",
    "lefschetz_number",
    "parse_exponent_matrix",
    "picard_number_fermat",
    "picard_number_quintic",
]
