from fractions import Fraction
from functools import lru_cache

from services.lie_data.CartanCatalog import CartanCatalog
from services.lie_data.models import CartanMatrix, LieType, PositiveRoot
from shared.helper.HelperMatrix import Matrix, Vector
from shared.models.errors import RootSystemError, UsageError


class RootSystem:
    """Positive roots, coroot pairings and reflections of one Cartan matrix.

    Node indices in the public methods are 1-based; root indices are the
    0-based positions in :attr:`positive_roots`. Instances are immutable
    after construction; use :func:`build_root_system` to share them.
    """

    def __init__(self, cartan: CartanMatrix) -> None:
        self.cartan = cartan
        self.lie_type: LieType = cartan.lie_type
        self.rank = cartan.rank
        self.half_lengths = cartan.half_lengths()
        self.simple_reflections: tuple[Matrix, ...] = tuple(
            CartanCatalog.simple_reflection(cartan, i) for i in range(1, self.rank + 1)
        )
        self.positive_roots: tuple[PositiveRoot, ...] = self._enumerate_roots()
        self._lookup: dict[Vector, int] = {}
        for root in self.positive_roots:
            self._lookup[root.weight] = root.index + 1
            self._lookup[tuple(-x for x in root.weight)] = -(root.index + 1)
        self._check_count()

    ##########################################
    ############### CHECKER ##################
    ##########################################

    def _check_count(self) -> None:
        expected = CartanCatalog.positive_root_count(self.lie_type)
        if len(self.positive_roots) != expected:
            raise RootSystemError(
                f"{self.lie_type}: found {len(self.positive_roots)} positive roots, expected {expected}"
            )

    ##########################################
    ############### BUILDING #################
    ##########################################

    def _weight_of(self, simple: Vector) -> Vector:
        n = self.rank
        return tuple(sum(simple[j] * self.cartan.entries[j][k] for j in range(n)) for k in range(n))

    def _norm_of(self, simple: Vector) -> Fraction:
        n = self.rank
        c, e = self.cartan.entries, self.half_lengths
        return sum(
            (simple[a] * simple[b] * c[a][b] * e[b] for a in range(n) for b in range(n) if simple[a] and simple[b]),
            Fraction(0),
        )

    def _enumerate_roots(self) -> tuple[PositiveRoot, ...]:
        """Close the simple roots under the simple reflections (breadth first)."""
        n = self.rank
        simple_roots = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        seen = set(simple_roots)
        frontier = list(simple_roots)
        while frontier:
            next_frontier = []
            for m in frontier:
                weight = self._weight_of(m)
                for i in range(n):
                    if weight[i] == 0:
                        continue
                    image = tuple(x - weight[i] if j == i else x for j, x in enumerate(m))
                    if any(x < 0 for x in image) or image in seen:
                        continue
                    seen.add(image)
                    next_frontier.append(image)
            frontier = next_frontier

        # height first, then descending lexicographic so that α_1..α_n lead
        ordered = sorted(seen, key=lambda m: (sum(m), tuple(-x for x in m)))
        roots = []
        for index, m in enumerate(ordered):
            norm = self._norm_of(m)
            coroot = []
            for i in range(n):
                pairing = m[i] * 2 * self.half_lengths[i] / norm
                if pairing.denominator != 1:
                    raise RootSystemError(f"non-integral coroot pairing for root {m} of {self.lie_type}")
                coroot.append(int(pairing))
            roots.append(PositiveRoot(index=index, simple=m, weight=self._weight_of(m), norm=norm, coroot=tuple(coroot)))
        return tuple(roots)

    ##########################################
    ################ GETTER ##################
    ##########################################

    def simple_root(self, i: int) -> Vector:
        """Weight coordinates of α_i (1-based)."""
        return self.cartan.row(i)

    def simple_reflection(self, i: int) -> Matrix:
        if not 1 <= i <= self.rank:
            raise UsageError(f"node index {i} out of range 1..{self.rank} for {self.lie_type}")
        return self.simple_reflections[i - 1]

    def rho(self) -> Vector:
        return (1,) * self.rank

    def root_lookup(self, weight: Vector) -> int | None:
        """Classify a weight vector.

        Returns:
            index+1 for a positive root, −(index+1) for a negative root,
            None for a non-root.
        """
        return self._lookup.get(tuple(weight))

    def is_positive_root(self, weight: Vector) -> bool:
        found = self._lookup.get(tuple(weight))
        return found is not None and found > 0

    def root_by_simple(self, simple: Vector) -> PositiveRoot:
        for root in self.positive_roots:
            if root.simple == tuple(simple):
                return root
        raise UsageError(f"{tuple(simple)} is not a positive root of {self.lie_type}")

    ##########################################
    ############# REFLECTIONS ################
    ##########################################

    def reflect_weight(self, i: int, weight: Vector) -> Vector:
        """σ_i(λ) = λ − λ_i α_i for a 1-based node i."""
        coefficient = weight[i - 1]
        if coefficient == 0:
            return tuple(weight)
        alpha = self.cartan.row(i)
        return tuple(x - coefficient * a for x, a in zip(weight, alpha))

    def reflection_for_root(self, root: PositiveRoot | int) -> Matrix:
        """Matrix of σ_β(x) = x − ⟨x, β^∨⟩ β on weight coordinates.

        Args:
            root: a PositiveRoot of this system or its 0-based index.

        Raises:
            UsageError: the root does not belong to this system.
        """
        if isinstance(root, int):
            if not 0 <= root < len(self.positive_roots):
                raise UsageError(f"root index {root} out of range for {self.lie_type}")
            root = self.positive_roots[root]
        elif self._lookup.get(root.weight) != root.index + 1:
            raise UsageError(f"{root.simple} is not a positive root of {self.lie_type}")
        n = self.rank
        return tuple(
            tuple((1 if a == b else 0) - root.weight[a] * root.coroot[b] for b in range(n))
            for a in range(n)
        )

    def parabolic_orbit(self, weight: Vector, K: frozenset[int] | set[int]) -> set[Vector]:
        """Orbit of a weight under the subgroup generated by σ_j, j ∉ K."""
        generators = [j for j in range(1, self.rank + 1) if j not in K]
        orbit = {tuple(weight)}
        frontier = [tuple(weight)]
        while frontier:
            next_frontier = []
            for w in frontier:
                for j in generators:
                    image = self.reflect_weight(j, w)
                    if image not in orbit:
                        orbit.add(image)
                        next_frontier.append(image)
            frontier = next_frontier
        return orbit


@lru_cache(maxsize=None)
def build_root_system(cartan: CartanMatrix) -> RootSystem:
    return RootSystem(cartan)


def root_system_for(lie_type: LieType) -> RootSystem:
    return build_root_system(CartanCatalog.cartan_matrix(lie_type))
