from typing import Sequence

from services.lie_data.models import LieType
from services.poly.Invariants import c_polynomial
from services.poly.Polynomial import Polynomial
from services.poly.helper.PolynomialParser import SYMBOL_PATTERN, parse_polynomial
from shared.models.errors import UsageError


def symbol_weight(name: str) -> int:
    """Degree of a relation symbol: w_k -> 1, c_k -> k, y_i -> i, s<r>_<i> -> r."""
    match = SYMBOL_PATTERN.match(name)
    if match is None:
        raise UsageError(f"unknown symbol '{name}'")
    if match.group(1) == "w":
        return 1
    if match.group(1):
        return int(match.group(2))
    return int(match.group(3))


def grading(variables: Sequence[str]) -> dict[str, int]:
    return {name: symbol_weight(name) for name in variables}


def relation_degree(poly: Polynomial) -> int:
    """Weighted degree of a homogeneous relation.

    Raises:
        UsageError: the relation is not homogeneous.
    """
    return poly.weighted_degree(grading(poly.variables))


def is_kind(name: str, kind: str) -> bool:
    match = SYMBOL_PATTERN.match(name)
    return match is not None and match.group(1) == kind


def chern_symbols(variables: Sequence[str]) -> list[str]:
    return [name for name in variables if is_kind(name, "c")]


def chern_images(lie_type: LieType, names: Sequence[str], ring: Sequence[str]) -> dict[str, Polynomial]:
    """c_k -> the invariant polynomial c_k written over ``ring`` (which holds the weights)."""
    return {
        name: c_polynomial(lie_type, int(name[1:])).extend(ring)
        for name in names if is_kind(name, "c")
    }


def parse_over(text: str, ring: Sequence[str]) -> Polynomial:
    """Parse a relation and rewrite it over a fixed ring."""
    return parse_polynomial(text).extend(ring)


def zero_images(names: Sequence[str], ring: Sequence[str]) -> dict[str, Polynomial]:
    return {name: Polynomial.zero(ring) for name in names}
