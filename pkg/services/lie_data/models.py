from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import re

from pydantic import BaseModel, ConfigDict, model_validator

from shared.models.errors import UsageError

# classical ranks stay at desk scale
MAX_CLASSICAL_RANK = 8

_EXCEPTIONAL_RANKS = {"G2": 2, "F4": 4, "E6": 6, "E7": 7, "E8": 8}


class LieFamily(str, Enum):
    A = "A"
    C = "C"
    G2 = "G2"
    F4 = "F4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"

    @property
    def is_exceptional(self) -> bool:
        return self.value in _EXCEPTIONAL_RANKS


class LieType(BaseModel):
    """A supported simple type, e.g. ``LieType.parse("E7")`` or ``LieType.parse("A3")``."""

    model_config = ConfigDict(frozen=True)

    family: LieFamily
    rank: int

    @model_validator(mode="after")
    def _rank_matches_family(self) -> "LieType":
        expected = _EXCEPTIONAL_RANKS.get(self.family.value)
        if expected is not None and self.rank != expected:
            raise ValueError(f"type {self.family.value} has rank {expected}, got {self.rank}")
        if expected is None and not 1 <= self.rank <= MAX_CLASSICAL_RANK:
            raise ValueError(f"rank of {self.family.value} must lie in 1..{MAX_CLASSICAL_RANK}, got {self.rank}")
        return self

    @classmethod
    def parse(cls, name: str) -> "LieType":
        """Parse "G2", "F4", "E6".."E8", "A<r>" or "C<r>" (case-insensitive).

        Raises:
            UsageError: unknown family or rank out of range.
        """
        text = name.strip().upper()
        if text in _EXCEPTIONAL_RANKS:
            return cls(family=LieFamily(text), rank=_EXCEPTIONAL_RANKS[text])
        match = re.fullmatch(r"([AC])(\d+)", text)
        if match is None:
            raise UsageError(f"unsupported Lie type '{name}'")
        try:
            return cls(family=LieFamily(match.group(1)), rank=int(match.group(2)))
        except ValueError as e:
            raise UsageError(f"unsupported Lie type '{name}': {e}")

    @property
    def name(self) -> str:
        if self.family.is_exceptional:
            return self.family.value
        return f"{self.family.value}{self.rank}"

    @property
    def is_exceptional(self) -> bool:
        return self.family.is_exceptional

    def __str__(self) -> str:
        return self.name


class CartanMatrix(BaseModel):
    """Cartan matrix under the Bourbaki node ordering.

    Row i holds the weight coordinates of the simple root α_i, i.e.
    α_i = Σ_j c_ij ω_j and c_ij = ⟨α_i, α_j^∨⟩.
    """

    model_config = ConfigDict(frozen=True)

    lie_type: LieType
    entries: tuple[tuple[int, ...], ...]
    ordering: str = "bourbaki"

    @model_validator(mode="after")
    def _check_entries(self) -> "CartanMatrix":
        n = len(self.entries)
        if n != self.lie_type.rank or any(len(row) != n for row in self.entries):
            raise ValueError(f"Cartan matrix of {self.lie_type} must be {self.lie_type.rank}x{self.lie_type.rank}")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise ValueError("Cartan matrix diagonal entries must be 2")
            for j in range(n):
                if i != j and self.entries[i][j] > 0:
                    raise ValueError("Cartan matrix off-diagonal entries must be <= 0")
                if (self.entries[i][j] == 0) != (self.entries[j][i] == 0):
                    raise ValueError("Cartan matrix zero pattern must be symmetric")
        self.half_lengths()
        return self

    @property
    def rank(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        """Weight coordinates of α_i for a 1-based node i."""
        return self.entries[i - 1]

    def half_lengths(self) -> tuple[Fraction, ...]:
        """Half squared lengths e_i = (α_i, α_i)/2 with short roots at 1.

        They solve c_ij e_j = c_ji e_i, so (α_i, α_j) = c_ij e_j.

        Raises:
            ValueError: the matrix is not symmetrizable.
        """
        n = self.rank
        e: list[Fraction | None] = [None] * n
        for start in range(n):
            if e[start] is not None:
                continue
            e[start] = Fraction(1)
            queue = [start]
            while queue:
                i = queue.pop()
                for j in range(n):
                    if j != i and self.entries[i][j] != 0 and e[j] is None:
                        e[j] = e[i] * self.entries[j][i] / self.entries[i][j]
                        queue.append(j)
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] * e[j] != self.entries[j][i] * e[i]:
                    raise ValueError("Cartan matrix is not symmetrizable")
        shortest = min(e)
        return tuple(x / shortest for x in e)


@dataclass(frozen=True, slots=True)
class PositiveRoot:
    """A positive root β = Σ m_j α_j.

    Attributes:
        index: 0-based position in the root order.
        simple: the coordinates m_j.
        weight: weight coordinates ⟨β, α_j^∨⟩.
        norm: the squared length (β, β), short roots at 2.
        coroot: the pairings ⟨ω_i, β^∨⟩.
    """

    index: int
    simple: tuple[int, ...]
    weight: tuple[int, ...]
    norm: Fraction
    coroot: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.simple)

    def is_simple(self) -> bool:
        return self.height == 1
