"""Text form of polynomials: ``3*w1^2 - 3*w1*w2 + w2^2``.

Parsing goes through sympy (caret powers, rational coefficients ``a/b*``);
printing is done here so that printed text parses back to the same value.
"""

import re
from fractions import Fraction
from tokenize import TokenError
from typing import Sequence

from sympy import Poly, PolynomialError, Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from services.poly.Polynomial import Polynomial
from shared.models.errors import UsageError

# weights, Chern classes, special classes, Schubert classes s<r>_<i>
SYMBOL_PATTERN = re.compile(r"^(w|c|y)(\d+)$|^s(\d+)_(\d+)$")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_KIND_ORDER = {"w": 0, "c": 1, "y": 2, "s": 3}
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def symbol_sort_key(name: str) -> tuple[int, int, int]:
    match = SYMBOL_PATTERN.match(name)
    if match is None:
        raise UsageError(f"unknown symbol '{name}' (expected w<k>, c<k>, y<k> or s<r>_<i>)")
    if match.group(1):
        return (_KIND_ORDER[match.group(1)], int(match.group(2)), 0)
    return (_KIND_ORDER["s"], int(match.group(3)), int(match.group(4)))


def symbols_in(text: str) -> list[str]:
    """Distinct symbols of a text, sorted weights first."""
    names = set(_IDENTIFIER.findall(text))
    return sorted(names, key=symbol_sort_key)


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> Polynomial:
    """Parse the text form.

    Args:
        text: e.g. "2*w1^2 - 1/2*c4".
        variables: ring to parse into; defaults to the symbols found.

    Raises:
        UsageError: unknown symbol, syntax error, or a non-polynomial expression.
    """
    if not isinstance(text, str):
        text = str(text)
    found = symbols_in(text)
    ring = tuple(variables) if variables is not None else tuple(found)
    missing = [name for name in found if name not in ring]
    if missing:
        raise UsageError(f"symbols {missing} are not in the ring {ring}")
    local = {name: Symbol(name) for name in ring}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TokenError, TypeError, ValueError) as exc:
        raise UsageError(f"cannot parse polynomial '{text}': {exc}")
    if not ring:
        if not expr.is_Rational:
            raise UsageError(f"'{text}' is not a rational constant")
        return Polynomial.constant((), Fraction(int(expr.p), int(expr.q)))
    try:
        poly = Poly(expr, *(local[name] for name in ring))
    except PolynomialError as exc:
        raise UsageError(f"'{text}' is not a polynomial in {ring}: {exc}")
    terms = {}
    for exponents, coefficient in poly.terms():
        if not coefficient.is_Rational:
            raise UsageError(f"'{text}' has a non-rational coefficient {coefficient}")
        terms[tuple(exponents)] = Fraction(int(coefficient.p), int(coefficient.q))
    return Polynomial(ring, terms)


def format_monomial(variables: Sequence[str], exponents: Sequence[int]) -> str:
    factors = []
    for name, k in zip(variables, exponents):
        if k == 1:
            factors.append(name)
        elif k > 1:
            factors.append(f"{name}^{k}")
    return "*".join(factors)


def format_polynomial(poly: Polynomial) -> str:
    """Canonical text, terms in graded lexicographic order."""
    if poly.is_zero:
        return "0"
    pieces = []
    for exponents, coefficient in poly.sorted_terms():
        sign = "-" if coefficient < 0 else "+"
        magnitude = abs(coefficient)
        body = format_monomial(poly.variables, exponents)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = f"{magnitude}*{body}"
        pieces.append((sign, text))
    first_sign, first_text = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_text
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out
