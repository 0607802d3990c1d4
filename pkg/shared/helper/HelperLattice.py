"""Integer lattices in Z^N kept in sparse echelon form.

Rows are dicts ``column -> int``. Every row owns a distinct pivot column (its
first nonzero entry) and rows are combined with unimodular xgcd steps, so the
lattice spanned never changes. Optionally each row tracks its integer
combination of the inserted generators; generators that reduce to zero
then yield a Z-basis of the relation (kernel) lattice among the inputs.
"""

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

SparseVector = dict[int, int]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = s·a + t·b = gcd(a, b) and g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _axpy(target: SparseVector, factor: int, source: SparseVector) -> SparseVector:
    """Return target + factor·source without zero entries."""
    result = dict(target)
    for key, val in source.items():
        new = result.get(key, 0) + factor * val
        if new:
            result[key] = new
        else:
            result.pop(key, None)
    return result


def _combine(u: SparseVector, a: int, v: SparseVector, b: int) -> SparseVector:
    """Return a·u + b·v without zero entries."""
    result = {k: a * x for k, x in u.items() if a * x}
    for key, val in v.items():
        new = result.get(key, 0) + b * val
        if new:
            result[key] = new
        else:
            result.pop(key, None)
    return result


class HelperLattice:
    def __init__(self, ambient_dimension: int, track_combinations: bool = False) -> None:
        self.dimension = ambient_dimension
        self.track = track_combinations
        self._rows: dict[int, SparseVector] = {}
        self._combos: dict[int, SparseVector] = {}
        self._kernel: list[SparseVector] = []
        self._generator_count = 0

    ##########################################
    ################ GETTER ##################
    ##########################################

    def rank(self) -> int:
        return len(self._rows)

    def pivots(self) -> dict[int, int]:
        """Return pivot column -> pivot entry (always positive)."""
        return {col: row[col] for col, row in self._rows.items()}

    def generator_count(self) -> int:
        return self._generator_count

    def kernel_basis(self) -> list[SparseVector]:
        """Z-basis of the relations among the inserted generators (needs tracking)."""
        return [dict(v) for v in self._kernel]

    ##########################################
    ################# CORE ###################
    ##########################################

    def add_vector(self, vector: SparseVector, combination: SparseVector | None = None) -> bool:
        """Insert a vector; return True if the rank grew.

        Without an explicit combination, the vector is recorded as the next
        generator (unit combination on its insertion index).
        """
        index = self._generator_count
        self._generator_count += 1
        vec = {k: v for k, v in vector.items() if v}
        combo = dict(combination) if combination is not None else ({index: 1} if self.track else {})

        while vec:
            col = min(vec)
            row = self._rows.get(col)
            if row is None:
                if vec[col] < 0:
                    vec = {k: -v for k, v in vec.items()}
                    combo = {k: -v for k, v in combo.items()}
                self._rows[col] = vec
                if self.track:
                    self._combos[col] = combo
                return True
            a, b = row[col], vec[col]
            if b % a == 0:
                q = b // a
                vec = _axpy(vec, -q, row)
                if self.track:
                    combo = _axpy(combo, -q, self._combos[col])
                continue
            # unimodular step: the pivot row becomes the gcd row
            g, s, t = xgcd(a, b)
            new_row = _combine(row, s, vec, t)
            vec = _combine(vec, a // g, row, -(b // g))
            if self.track:
                row_combo = self._combos[col]
                self._combos[col] = _combine(row_combo, s, combo, t)
                combo = _combine(combo, a // g, row_combo, -(b // g))
            self._rows[col] = new_row

        if self.track and combo:
            self._kernel.append(combo)
        return False

    def contains(self, vector: SparseVector) -> bool:
        return self.solve(vector, with_combination=False) is not None

    def solve(self, vector: SparseVector, with_combination: bool = True) -> SparseVector | None:
        """Express a vector through the generators.

        Returns:
            The integer combination of generators (or {} when combinations
            are not requested or not tracked), None if the vector is not in
            the lattice.
        """
        vec = {k: v for k, v in vector.items() if v}
        combo: SparseVector = {}
        while vec:
            col = min(vec)
            row = self._rows.get(col)
            if row is None or vec[col] % row[col] != 0:
                return None
            q = vec[col] // row[col]
            vec = _axpy(vec, -q, row)
            if with_combination and self.track:
                combo = _axpy(combo, q, self._combos[col])
        return combo

    def hermite_form(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Return the canonical row Hermite normal form as sorted sparse rows.

        Pivots are positive and every entry above a pivot is reduced into
        [0, pivot). Two lattices are equal iff their Hermite forms are.
        """
        order = sorted(self._rows)
        rows = {col: dict(self._rows[col]) for col in order}
        for position, col in enumerate(order):
            pivot = rows[col][col]
            for upper in order[:position]:
                entry = rows[upper].get(col, 0)
                q = entry // pivot
                if q:
                    rows[upper] = _axpy(rows[upper], -q, rows[col])
        return tuple(tuple(sorted(rows[col].items())) for col in order)

    def is_full(self) -> bool:
        """True iff the lattice is all of Z^N."""
        return self.rank() == self.dimension and all(v == 1 for v in self.pivots().values())

    def invariant_factors(self) -> list[int]:
        """Invariant factors of the lattice (cokernel torsion when of full rank)."""
        if not self._rows:
            return []
        dense = [[row.get(c, 0) for c in range(self.dimension)] for _, row in sorted(self._rows.items())]
        factors = invariant_factors(Matrix(dense), domain=ZZ)
        return [int(f) for f in factors]

    def cokernel_description(self) -> dict:
        """Summary used in failure reports: rank defect and torsion."""
        return {
            "rank": self.rank(),
            "dimension": self.dimension,
            "invariant_factors": [f for f in self.invariant_factors() if f != 1],
        }


def lattice_from(vectors: list[SparseVector], dimension: int, track_combinations: bool = False) -> HelperLattice:
    lattice = HelperLattice(dimension, track_combinations=track_combinations)
    for vector in vectors:
        lattice.add_vector(vector)
    return lattice
