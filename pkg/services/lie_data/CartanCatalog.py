"""Built-in Cartan matrices, Weyl group degrees and simple reflections."""

from functools import lru_cache
from math import factorial, prod

from services.lie_data.models import CartanMatrix, LieFamily, LieType
from shared.helper.HelperMatrix import Matrix
from shared.models.errors import UsageError

# Bourbaki numbering; E_n: chain 1-3-4-...-n with node 2 attached to 4
_E_EDGES = [(1, 3), (2, 4)]

_EXCEPTIONAL_DEGREES: dict[str, tuple[int, ...]] = {
    "G2": (2, 6),
    "F4": (2, 6, 8, 12),
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
}


class CartanCatalog:

    ##########################################
    ################ GETTER ##################
    ##########################################

    @staticmethod
    @lru_cache(maxsize=None)
    def cartan_matrix(lie_type: LieType) -> CartanMatrix:
        """Return the Cartan matrix of a supported type.

        Args:
            lie_type: the type, e.g. ``LieType.parse("F4")``.

        Returns:
            CartanMatrix: rows are the simple roots in weight coordinates.
        """
        n = lie_type.rank
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

        def bond(i: int, j: int, c_ij: int = -1, c_ji: int = -1) -> None:
            c[i - 1][j - 1] = c_ij
            c[j - 1][i - 1] = c_ji

        family = lie_type.family
        if family in (LieFamily.A, LieFamily.C):
            for i in range(1, n):
                bond(i, i + 1)
            if family == LieFamily.C and n >= 2:
                # α_n is the long root
                bond(n - 1, n, -1, -2)
        elif family == LieFamily.G2:
            bond(1, 2, -1, -3)
        elif family == LieFamily.F4:
            bond(1, 2)
            bond(2, 3, -2, -1)
            bond(3, 4)
        else:
            for i, j in _E_EDGES:
                bond(i, j)
            for i in range(3, n):
                bond(i, i + 1)
        return CartanMatrix(lie_type=lie_type, entries=tuple(tuple(row) for row in c))

    @staticmethod
    def simple_reflection(cartan: CartanMatrix, i: int) -> Matrix:
        """Matrix of σ_i on weight coordinates.

        σ_i(ω_k) = ω_k for k ≠ i and σ_i(ω_i) = ω_i − α_i, so column i is
        e_i − (row i of the Cartan matrix).

        Raises:
            UsageError: i outside 1..n.
        """
        n = cartan.rank
        if not 1 <= i <= n:
            raise UsageError(f"node index {i} out of range 1..{n} for {cartan.lie_type}")
        row = cartan.row(i)
        return tuple(
            tuple((1 if a == b else 0) - (row[a] if b == i - 1 else 0) for b in range(n))
            for a in range(n)
        )

    @staticmethod
    def degrees(lie_type: LieType) -> tuple[int, ...]:
        """Degrees of the basic invariants of the Weyl group."""
        if lie_type.family == LieFamily.A:
            return tuple(range(2, lie_type.rank + 2))
        if lie_type.family == LieFamily.C:
            return tuple(2 * k for k in range(1, lie_type.rank + 1))
        return _EXCEPTIONAL_DEGREES[lie_type.family.value]

    @staticmethod
    def weyl_group_order(lie_type: LieType) -> int:
        return prod(CartanCatalog.degrees(lie_type))

    @staticmethod
    def positive_root_count(lie_type: LieType) -> int:
        """Number of positive roots, Σ (d_i − 1)."""
        return sum(d - 1 for d in CartanCatalog.degrees(lie_type))

    @staticmethod
    def flag_poincare_polynomial(lie_type: LieType) -> list[int]:
        """Coefficients of Π (1 + q + ... + q^{d−1}) over the degrees d."""
        coeffs = [1]
        for d in CartanCatalog.degrees(lie_type):
            new = [0] * (len(coeffs) + d - 1)
            for k, c in enumerate(coeffs):
                for j in range(d):
                    new[k + j] += c
            coeffs = new
        return coeffs


def classical_weyl_order(lie_type: LieType) -> int:
    """Closed forms (n+1)! and 2^n n! used to cross-check the degree lists."""
    n = lie_type.rank
    if lie_type.family == LieFamily.A:
        return factorial(n + 1)
    if lie_type.family == LieFamily.C:
        return 2 ** n * factorial(n)
    raise UsageError(f"{lie_type} is not classical")
