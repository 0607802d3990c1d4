"""Sparse exact multivariate polynomials.

A polynomial is a mapping from exponent tuples (one entry per variable) to
nonzero coefficients. Coefficients are ``int`` whenever they are integral
and ``Fraction`` otherwise, so integral results never carry denominators.
"""

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from shared.models.errors import UsageError

Coefficient = int | Fraction
Exponents = tuple[int, ...]


def normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def weight_variables(rank: int) -> tuple[str, ...]:
    return tuple(f"w{k}" for k in range(1, rank + 1))


def _add_exponents(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial over an ordered tuple of variable names."""

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponents, Coefficient] | None = None) -> None:
        self.variables: tuple[str, ...] = tuple(variables)
        cleaned: dict[Exponents, Coefficient] = {}
        n = len(self.variables)
        for exponents, coefficient in (terms or {}).items():
            if len(exponents) != n:
                raise UsageError(f"exponent tuple {exponents} does not match {n} variables")
            if coefficient:
                cleaned[tuple(exponents)] = normalize(coefficient)
        self.terms: dict[Exponents, Coefficient] = cleaned
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, variables: tuple[str, ...], terms: dict[Exponents, Coefficient]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.variables = variables
        poly.terms = {e: normalize(c) for e, c in terms.items() if c}
        poly._hash = None
        return poly

    ##########################################
    ############## CONSTRUCTORS ##############
    ##########################################

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "Polynomial":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value: Coefficient) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "Polynomial":
        return cls.constant(variables, 1)

    @classmethod
    def variable(cls, variables: Sequence[str], name: str | int) -> "Polynomial":
        """The polynomial of one variable, given by name or 0-based position."""
        variables = tuple(variables)
        position = name if isinstance(name, int) else cls._position(variables, name)
        if not 0 <= position < len(variables):
            raise UsageError(f"variable position {position} out of range for {variables}")
        return cls(variables, {tuple(1 if j == position else 0 for j in range(len(variables))): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponents: Exponents, coefficient: Coefficient = 1) -> "Polynomial":
        return cls(variables, {tuple(exponents): coefficient})

    @classmethod
    def linear(cls, variables: Sequence[str], coefficients: Sequence[Coefficient]) -> "Polynomial":
        """Σ coefficients[j]·variables[j]; turns a weight vector into a linear form."""
        variables = tuple(variables)
        if len(coefficients) != len(variables):
            raise UsageError(f"{len(coefficients)} coefficients for {len(variables)} variables")
        n = len(variables)
        return cls(variables, {
            tuple(1 if j == position else 0 for j in range(n)): value
            for position, value in enumerate(coefficients)
        })

    @staticmethod
    def _position(variables: tuple[str, ...], name: str) -> int:
        try:
            return variables.index(name)
        except ValueError:
            raise UsageError(f"unknown variable '{name}' (ring has {', '.join(variables) or 'no variables'})")

    ##########################################
    ############## PROPERTIES ################
    ##########################################

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def constant_term(self) -> Coefficient:
        return self.terms.get((0,) * len(self.variables), 0)

    def coefficient(self, exponents: Exponents) -> Coefficient:
        return self.terms.get(tuple(exponents), 0)

    def degree_in(self, name: str) -> int:
        position = self._position(self.variables, name)
        return max((e[position] for e in self.terms), default=-1)

    def weighted_degrees(self, grading: Mapping[str, int]) -> set[int]:
        """Set of weighted degrees of the terms; variables absent from grading weigh 1."""
        weights = [grading.get(name, 1) for name in self.variables]
        return {sum(w * x for w, x in zip(weights, e)) for e in self.terms}

    def weighted_degree(self, grading: Mapping[str, int]) -> int:
        """Weighted degree of a weighted-homogeneous polynomial.

        Raises:
            UsageError: the polynomial is not homogeneous for the grading.
        """
        degrees = self.weighted_degrees(grading)
        if len(degrees) > 1:
            raise UsageError(f"{self} is not homogeneous (degrees {sorted(degrees)})")
        return degrees.pop() if degrees else -1

    def used_variables(self) -> tuple[str, ...]:
        return tuple(
            name for position, name in enumerate(self.variables)
            if any(e[position] for e in self.terms)
        )

    def sorted_terms(self) -> list[tuple[Exponents, Coefficient]]:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda item: (-sum(item[0]), tuple(-x for x in item[0])))

    ##########################################
    ############## ARITHMETIC ################
    ##########################################

    def _check_ring(self, other: "Polynomial") -> None:
        if self.variables != other.variables:
            raise UsageError(f"variable sets differ: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.variables, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self.terms)
        for exponents, coefficient in other.terms.items():
            result[exponents] = result.get(exponents, 0) + coefficient
        return Polynomial._trusted(self.variables, result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, factor: Coefficient) -> "Polynomial":
        if not factor:
            return Polynomial.zero(self.variables)
        return Polynomial._trusted(self.variables, {e: c * factor for e, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        result: dict[Exponents, Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = _add_exponents(e1, e2)
                result[key] = result.get(key, 0) + c1 * c2
        return Polynomial._trusted(self.variables, result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise UsageError(f"polynomial powers need a non-negative integer exponent, got {exponent}")
        result = Polynomial.one(self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.variables, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    ##########################################
    ############# SUBSTITUTION ###############
    ##########################################

    def substitute(self, images: Mapping[str, "Polynomial"], target_variables: Sequence[str] | None = None) -> "Polynomial":
        """Replace variables by polynomials of a target ring.

        Variables without an image must exist in the target ring and are kept.

        Raises:
            UsageError: an image over a different ring, or a kept variable missing from it.
        """
        target = tuple(target_variables) if target_variables is not None else self.variables
        resolved: list[Polynomial] = []
        for name in self.variables:
            image = images.get(name)
            if image is None:
                image = Polynomial.variable(target, name)
            elif image.variables != target:
                raise UsageError(f"image of {name} lives over {image.variables}, expected {target}")
            resolved.append(image)
        powers: dict[tuple[int, int], Polynomial] = {}

        def power(position: int, k: int) -> Polynomial:
            key = (position, k)
            if key not in powers:
                powers[key] = resolved[position] if k == 1 else power(position, k - 1) * resolved[position]
            return powers[key]

        result = Polynomial.zero(target)
        for exponents, coefficient in self.terms.items():
            term = Polynomial.constant(target, coefficient)
            for position, k in enumerate(exponents):
                if k:
                    term = term * power(position, k)
            result = result + term
        return result

    def substitute_linear(self, forms: Mapping[str, "Polynomial"] | Sequence["Polynomial"], target_variables: Sequence[str] | None = None) -> "Polynomial":
        """Replace each variable by a linear form; forms given by name or in variable order.

        Raises:
            UsageError: a form of degree above one.
        """
        if not isinstance(forms, Mapping):
            forms = dict(zip(self.variables, forms))
        for name, form in forms.items():
            if form.degree > 1:
                raise UsageError(f"image of {name} is not linear: {form}")
        if target_variables is None and forms:
            target_variables = next(iter(forms.values())).variables
        return self.substitute(forms, target_variables)

    def extend(self, variables: Sequence[str]) -> "Polynomial":
        """Rewrite over a larger ring containing every used variable."""
        variables = tuple(variables)
        used = set(self.used_variables())
        positions = [self._position(variables, name) if name in used else None for name in self.variables]
        result: dict[Exponents, Coefficient] = {}
        for exponents, coefficient in self.terms.items():
            target = [0] * len(variables)
            for j, k in enumerate(exponents):
                if k:
                    target[positions[j]] += k
            result[tuple(target)] = coefficient
        return Polynomial._trusted(variables, result)

    ##########################################
    ################ MOD P ###################
    ##########################################

    def reduce_mod(self, p: int) -> "Polynomial":
        """Coefficients reduced to symmetric residues in (-p/2, p/2].

        Raises:
            UsageError: a non-integral coefficient or p < 2.
        """
        if p < 2:
            raise UsageError(f"modulus must be at least 2, got {p}")
        if not self.is_integral():
            raise UsageError(f"cannot reduce {self} modulo {p}: non-integral coefficients")
        result = {}
        for exponents, coefficient in self.terms.items():
            residue = coefficient % p
            if residue > p // 2:
                residue -= p
            result[exponents] = residue
        return Polynomial._trusted(self.variables, result)

    ##########################################
    ################# TEXT ###################
    ##########################################

    def __str__(self) -> str:
        from services.poly.helper.PolynomialParser import format_polynomial
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r}, variables={self.variables})"


def sum_polynomials(variables: Sequence[str], polynomials: Iterable[Polynomial]) -> Polynomial:
    result: dict[Exponents, Coefficient] = {}
    variables = tuple(variables)
    for poly in polynomials:
        if poly.variables != variables:
            raise UsageError(f"variable sets differ: {variables} vs {poly.variables}")
        for exponents, coefficient in poly.terms.items():
            result[exponents] = result.get(exponents, 0) + coefficient
    return Polynomial._trusted(variables, result)
