from services.lie_data.RootSystem import RootSystem
from services.weyl.models import WeylElement, WeylWord
from shared.helper.HelperMatrix import Matrix, Vector, identity, left_reflect, mat_vec
from shared.models.errors import ResourceCapError, UsageError


class WeylGroup:
    """Words, lengths and minimized decompositions in the Weyl group of a root system.

    A word [i_1, ..., i_r] denotes σ_{i_1} ∘ ... ∘ σ_{i_r}; its matrix is
    S_{i_1} ··· S_{i_r} acting on weight coordinate columns.
    """

    def __init__(self, root_system: RootSystem) -> None:
        self.root_system = root_system
        self.rank = root_system.rank

    ##########################################
    ################ CORE ####################
    ##########################################

    def identity(self) -> WeylElement:
        return WeylElement(matrix=identity(self.rank), length=0, min_word=())

    def evaluate(self, word: WeylWord | list[int]) -> Matrix:
        """Matrix of a word.

        Raises:
            UsageError: a letter outside 1..n.
        """
        matrix = identity(self.rank)
        for letter in reversed(tuple(word)):
            self._check_letter(letter)
            matrix = left_reflect(matrix, letter - 1, self.root_system.cartan.row(letter))
        return matrix

    def element(self, value: WeylWord | list[int] | Matrix) -> WeylElement:
        matrix = self._as_matrix(value)
        word = self.min_word(matrix)
        return WeylElement(matrix=matrix, length=len(word), min_word=word)

    def length(self, value: WeylElement | WeylWord | list[int] | Matrix) -> int:
        """Number of positive roots sent to negative roots."""
        if isinstance(value, WeylElement):
            return value.length
        matrix = self._as_matrix(value)
        count = 0
        for root in self.root_system.positive_roots:
            if not self.root_system.is_positive_root(mat_vec(matrix, root.weight)):
                count += 1
        return count

    def min_word(self, value: WeylElement | Matrix) -> WeylWord:
        """Lexicographically minimal reduced word.

        Greedy: the smallest left descent i is read off the first negative
        coordinate of w(ρ); recurse on σ_i w.
        """
        matrix = value.matrix if isinstance(value, WeylElement) else value
        v = mat_vec(matrix, self.root_system.rho())
        word = []
        while True:
            descent = next((j for j, x in enumerate(v) if x < 0), None)
            if descent is None:
                return tuple(word)
            word.append(descent + 1)
            v = self.root_system.reflect_weight(descent + 1, v)

    ##########################################
    ############### CHECKER ##################
    ##########################################

    def left_descents(self, value: WeylElement | Matrix) -> set[int]:
        matrix = value.matrix if isinstance(value, WeylElement) else value
        v = mat_vec(matrix, self.root_system.rho())
        return {j + 1 for j, x in enumerate(v) if x < 0}

    def right_descents(self, value: WeylElement | Matrix) -> set[int]:
        matrix = value.matrix if isinstance(value, WeylElement) else value
        return {
            j for j in range(1, self.rank + 1)
            if not self.root_system.is_positive_root(mat_vec(matrix, self.root_system.simple_root(j)))
        }

    def is_reduced(self, word: WeylWord | list[int]) -> bool:
        return self.length(self.evaluate(word)) == len(word)

    def is_minimal_rep(self, value: WeylElement | WeylWord | list[int] | Matrix, K: frozenset[int] | set[int]) -> bool:
        """True iff l(wσ_j) > l(w) for every j ∉ K, i.e. w(α_j) > 0."""
        matrix = value.matrix if isinstance(value, WeylElement) else self._as_matrix(value)
        for j in range(1, self.rank + 1):
            if j in K:
                continue
            if not self.root_system.is_positive_root(mat_vec(matrix, self.root_system.simple_root(j))):
                return False
        return True

    ##########################################
    ########### BRUTE FORCE (small) ##########
    ##########################################

    def all_elements(self, cap: int = 100_000) -> list[WeylElement]:
        """Enumerate the whole group by breadth-first closure (small groups only).

        Raises:
            ResourceCapError: the group has more than cap elements.
        """
        start = identity(self.rank)
        seen = {start: ()}
        frontier = [start]
        while frontier:
            next_frontier = []
            for matrix in frontier:
                for i in range(1, self.rank + 1):
                    image = left_reflect(matrix, i - 1, self.root_system.cartan.row(i))
                    if image not in seen:
                        seen[image] = (i,) + seen[matrix]
                        next_frontier.append(image)
                        if len(seen) > cap:
                            raise ResourceCapError(f"{self.root_system.lie_type} Weyl group exceeds {cap} elements")
            frontier = next_frontier
        return [self.element(matrix) for matrix in seen]

    def reduced_words(self, value: WeylElement | Matrix) -> list[WeylWord]:
        """All reduced words of an element, sorted (exponential; small lengths only)."""
        matrix = value.matrix if isinstance(value, WeylElement) else value
        words: list[WeylWord] = []

        def walk(current: Matrix, prefix: WeylWord) -> None:
            descents = self.left_descents(current)
            if not descents:
                words.append(prefix)
                return
            for i in sorted(descents):
                walk(left_reflect(current, i - 1, self.root_system.cartan.row(i)), prefix + (i,))

        walk(matrix, ())
        return sorted(words)

    ##########################################
    ############### HELPERS ##################
    ##########################################

    def _check_letter(self, letter: int) -> None:
        if not isinstance(letter, int) or not 1 <= letter <= self.rank:
            raise UsageError(f"word letter {letter} out of range 1..{self.rank}")

    def _as_matrix(self, value) -> Matrix:
        if isinstance(value, WeylElement):
            return value.matrix
        if isinstance(value, (tuple, list)) and (not value or isinstance(value[0], int)):
            return self.evaluate(value)
        return tuple(tuple(row) for row in value)

    def orbit_of(self, matrix: Matrix, weight: Vector) -> Vector:
        return mat_vec(matrix, weight)
