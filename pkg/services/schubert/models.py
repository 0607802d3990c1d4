from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator

from services.poly.Polynomial import Exponents, Polynomial


class SchubertCombination(BaseModel):
    """Σ a_i s_{r,i} over slice r of one coset table.

    Attributes:
        table: label of the governing table, e.g. "F4/P{1}" or "G2/T".
        degree: r.
        coeffs: 1-based slice index -> integer coefficient, zeros dropped.
    """

    model_config = ConfigDict(frozen=True)

    table: str
    degree: int
    coeffs: dict[int, int] = {}

    @field_validator("coeffs")
    @classmethod
    def _drop_zeros(cls, coeffs: dict[int, int]) -> dict[int, int]:
        for index in coeffs:
            if index < 1:
                raise ValueError(f"slice indices are 1-based, got {index}")
        return {index: value for index, value in sorted(coeffs.items()) if value}

    ##########################################
    ############## CONSTRUCTORS ##############
    ##########################################

    @classmethod
    def zero(cls, table: str, degree: int) -> "SchubertCombination":
        return cls(table=table, degree=degree)

    @classmethod
    def indicator(cls, table: str, degree: int, index: int, value: int = 1) -> "SchubertCombination":
        return cls(table=table, degree=degree, coeffs={index: value})

    ##########################################
    ############## ARITHMETIC ################
    ##########################################

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check_compatible(self, other: "SchubertCombination") -> None:
        if self.table != other.table or self.degree != other.degree:
            raise ValueError(
                f"cannot combine {self.table} degree {self.degree} with {other.table} degree {other.degree}"
            )

    def __add__(self, other: "SchubertCombination") -> "SchubertCombination":
        self._check_compatible(other)
        coeffs = dict(self.coeffs)
        for index, value in other.coeffs.items():
            coeffs[index] = coeffs.get(index, 0) + value
        return SchubertCombination(table=self.table, degree=self.degree, coeffs=coeffs)

    def __neg__(self) -> "SchubertCombination":
        return self.scale(-1)

    def __sub__(self, other: "SchubertCombination") -> "SchubertCombination":
        return self + (-other)

    def scale(self, factor: int) -> "SchubertCombination":
        return SchubertCombination(
            table=self.table, degree=self.degree, coeffs={i: v * factor for i, v in self.coeffs.items()}
        )

    def as_tuple(self, size: int) -> tuple[int, ...]:
        """Dense coefficients a_1..a_size."""
        return tuple(self.coeffs.get(i, 0) for i in range(1, size + 1))

    ##########################################
    ################ PAYLOAD #################
    ##########################################

    def to_payload(self) -> dict:
        """JSON form; integers as decimal strings."""
        return {
            "table": self.table,
            "degree": self.degree,
            "coefficients": [{"i": i, "value": str(v)} for i, v in self.coeffs.items()],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "SchubertCombination":
        return cls(
            table=payload["table"],
            degree=int(payload["degree"]),
            coeffs={int(entry["i"]): int(entry["value"]) for entry in payload.get("coefficients", [])},
        )

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*s{self.degree}_{i}" for i, v in self.coeffs.items()).replace("+ -", "- ")


@dataclass(frozen=True)
class ExpansionConvention:
    """Orientation of the coefficient functional f ↦ a_w(f).

    With ``reverse_word`` False the operators of the stored word
    [i_1, ..., i_r] are applied last letter first; ``sign`` multiplies the
    constant term.
    """

    reverse_word: bool = False
    sign: int = 1

    @property
    def name(self) -> str:
        return f"{'reversed' if self.reverse_word else 'word'}{'' if self.sign > 0 else ',negated'}"


@dataclass
class LiftSpace:
    """Expansion data of the lift ring in one degree.

    Attributes:
        degree: r.
        variables: lift ring variables (weights, or ω_K and c_k).
        basis: exponent tuples of the chosen basis monomials, |W^r| of them.
        columns: expansion of each basis monomial, slice index -> integer.
        inverse: rows of the inverse of the square expansion matrix; row k
            holds the coefficient of basis monomial k in the lift of each class.
    """

    degree: int
    variables: tuple[str, ...]
    basis: list[Exponents]
    columns: list[dict[int, int]]
    inverse: list[list[Fraction]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.basis)

    def lift_polynomial(self, index: int) -> Polynomial:
        """The lift of s_{r,index} as a polynomial in the lift variables."""
        terms: dict[Exponents, Fraction] = {}
        for k, exponents in enumerate(self.basis):
            value = self.inverse[k][index - 1]
            if value:
                terms[exponents] = value
        return Polynomial(self.variables, terms)

    def to_payload(self) -> dict:
        return {
            "degree": self.degree,
            "variables": list(self.variables),
            "basis": [list(e) for e in self.basis],
            "columns": [{str(i): str(v) for i, v in sorted(col.items())} for col in self.columns],
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "LiftSpace":
        """Inverse of :meth:`to_payload`; the inverse matrix is rebuilt on install."""
        return cls(
            degree=int(payload["degree"]),
            variables=tuple(payload["variables"]),
            basis=[tuple(int(k) for k in e) for e in payload["basis"]],
            columns=[{int(i): int(v) for i, v in col.items()} for col in payload["columns"]],
        )


@dataclass
class GiambelliTable:
    """Giambelli polynomials of one degree.

    Attributes:
        table: label of the coset table.
        degree: r.
        generators: generator name -> degree.
        entries: slice index -> polynomial in the generator names.
    """

    table: str
    degree: int
    generators: dict[str, int]
    entries: dict[int, Polynomial] = field(default_factory=dict)

    def to_payload(self) -> dict:
        return {
            "table": self.table,
            "degree": self.degree,
            "generators": dict(self.generators),
            "entries": [{"class": f"s{self.degree}_{i}", "polynomial": str(p)} for i, p in sorted(self.entries.items())],
        }
