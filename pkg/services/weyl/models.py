from dataclasses import dataclass, field

from services.lie_data.models import LieType
from shared.helper.HelperMatrix import Matrix, Vector
from shared.models.errors import NotInTableError, TruncatedTableError

WeylWord = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class WeylElement:
    """A Weyl group element: its matrix on weight coordinates, length and minimized word."""

    matrix: Matrix
    length: int
    min_word: WeylWord


@dataclass(frozen=True, slots=True)
class CosetElement:
    """A minimal coset representative w_{r,i} stored in a CosetTable.

    Attributes:
        length: r.
        index: i, the 1-based position inside slice r.
        min_word: the lexicographically minimal reduced word.
        matrix: the matrix on weight coordinates.
        orbit: w(λ_K) with λ_K = Σ_{k∈K} ω_k; identifies the coset.
        parent: 0-based position in slice r−1 of the element obtained by
            dropping the first letter of min_word (None for the identity).
    """

    length: int
    index: int
    min_word: WeylWord
    matrix: Matrix
    orbit: Vector
    parent: int | None

    def as_weyl_element(self) -> WeylElement:
        return WeylElement(matrix=self.matrix, length=self.length, min_word=self.min_word)


@dataclass
class CosetTable:
    """The sets W^r(P_K; G) of minimal coset representatives, r = 0..max_length.

    When ``complete`` is False the table was cut at ``max_length`` and
    higher slices are unknown.
    """

    lie_type: LieType
    K: frozenset[int]
    slices: list[list[CosetElement]]
    complete: bool
    _orbit_index: dict[Vector, tuple[int, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._orbit_index:
            for r, elements in enumerate(self.slices):
                for element in elements:
                    self._orbit_index[element.orbit] = (r, element.index)

    ##########################################
    ################ GETTER ##################
    ##########################################

    @property
    def max_length(self) -> int:
        return len(self.slices) - 1

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    @property
    def is_full_flag(self) -> bool:
        return len(self.K) == self.rank

    @property
    def table_key(self) -> str:
        """Key of the degree caps, e.g. "E7/T" or "E8/P"."""
        return f"{self.lie_type.name}/{'T' if self.is_full_flag else 'P'}"

    @property
    def label(self) -> str:
        if self.is_full_flag:
            return f"{self.lie_type.name}/T"
        return f"{self.lie_type.name}/P{{{','.join(str(k) for k in sorted(self.K))}}}"

    def weight_vector(self) -> Vector:
        """λ_K = Σ_{k∈K} ω_k."""
        return tuple(1 if j + 1 in self.K else 0 for j in range(self.rank))

    def covers(self, r: int) -> bool:
        return r <= self.max_length

    def slice(self, r: int) -> list[CosetElement]:
        """Return W^r; empty above the top of a complete table.

        Raises:
            TruncatedTableError: r lies beyond a truncated table.
        """
        if r < 0:
            return []
        if r > self.max_length:
            if self.complete:
                return []
            raise TruncatedTableError(
                f"{self.label} is truncated at length {self.max_length}; degree {r} requested"
            )
        return self.slices[r]

    def element(self, r: int, i: int) -> CosetElement:
        elements = self.slice(r)
        if not 1 <= i <= len(elements):
            raise NotInTableError(f"{self.label} has no class s_{{{r},{i}}}")
        return elements[i - 1]

    def find_orbit(self, orbit: Vector) -> tuple[int, int] | None:
        return self._orbit_index.get(tuple(orbit))

    def size(self) -> int:
        return sum(len(s) for s in self.slices)

    def poincare_polynomial(self) -> list[int]:
        """Return [|W^0|, |W^1|, ...]; truncated tables give a truncated list."""
        return [len(s) for s in self.slices]

    def top_class(self) -> tuple[int, int] | None:
        if not self.complete or len(self.slices[-1]) != 1:
            return None
        return self.max_length, 1
