from services.lie_data.RootSystem import RootSystem
from services.poly.Polynomial import Coefficient, Exponents, Polynomial, weight_variables
from shared.models.errors import DivisibilityError, UsageError


class WeylAction:
    """Simple reflections and divided differences on polynomials in the weights.

    σ_i acts by ω_i ↦ ω_i − α_i = −ω_i − β_i (β_i = Σ_{j≠i} c_ij ω_j) and fixes
    the other weights. Writing f = Σ_k a_k ω_i^k with a_k free of ω_i,

        A_i f = (f − σ_i f) / α_i = Σ_k a_k Q_k,  Q_k = Σ_{j<k} x^j y^{k−1−j},

    with x = ω_i and y = σ_i ω_i, since x − y = α_i. The quotients Q_k are
    cached per node and exponent.
    """

    def __init__(self, root_system: RootSystem, debug_checks: bool = False) -> None:
        self.root_system = root_system
        self.rank = root_system.rank
        self.variables = weight_variables(self.rank)
        self.debug_checks = debug_checks
        self._x: list[Polynomial] = [Polynomial.variable(self.variables, i) for i in range(self.rank)]
        self._alpha: list[Polynomial] = [
            Polynomial.linear(self.variables, root_system.cartan.row(i)) for i in range(1, self.rank + 1)
        ]
        self._y: list[Polynomial] = [self._x[i] - self._alpha[i] for i in range(self.rank)]
        self._quotients: dict[tuple[int, int], Polynomial] = {}
        self._y_powers: dict[tuple[int, int], Polynomial] = {}

    ##########################################
    ################# CORE ###################
    ##########################################

    def simple_root(self, i: int) -> Polynomial:
        return self._alpha[self._node(i)]

    def reflect(self, i: int, f: Polynomial) -> Polynomial:
        """σ_i f."""
        position = self._node(i)
        self._check_ring(f)
        return self._collect(f, position, lambda k: self._y_power(position, k), keep_constant=True)

    def divided_difference(self, i: int, f: Polynomial) -> Polynomial:
        """A_i f = (f − σ_i f)/α_i.

        Raises:
            UsageError: f is not a polynomial in the weights of this root system.
            DivisibilityError: with debug checks on, the quotient fails α_i·A_i f = f − σ_i f.
        """
        position = self._node(i)
        self._check_ring(f)
        result = self._collect(f, position, lambda k: self._quotient(position, k), keep_constant=False)
        if self.debug_checks and self._alpha[position] * result != f - self.reflect(i, f):
            raise DivisibilityError(f"A_{i} quotient of {f} is not exact", node=i)
        return result

    def apply_word(self, word, f: Polynomial) -> Polynomial:
        """A_{i_1}(A_{i_2}(⋯A_{i_r}(f))) for word [i_1, ..., i_r]; the last letter acts first."""
        result = f
        for letter in reversed(tuple(word)):
            if result.is_zero:
                break
            result = self.divided_difference(letter, result)
        return result

    def is_invariant(self, f: Polynomial, nodes) -> bool:
        """True iff σ_j f = f for every node j in nodes."""
        return all(self.reflect(j, f) == f for j in nodes)

    def weight_form(self, vector) -> Polynomial:
        return Polynomial.linear(self.variables, vector)

    ##########################################
    ############### HELPERS ##################
    ##########################################

    def _collect(self, f: Polynomial, position: int, image, keep_constant: bool) -> Polynomial:
        result: dict[Exponents, Coefficient] = {}
        for exponents, coefficient in f.terms.items():
            k = exponents[position]
            if k == 0:
                if keep_constant:
                    result[exponents] = result.get(exponents, 0) + coefficient
                continue
            rest = exponents[:position] + (0,) + exponents[position + 1:]
            for q_exponents, q_coefficient in image(k).terms.items():
                key = tuple(a + b for a, b in zip(rest, q_exponents))
                result[key] = result.get(key, 0) + coefficient * q_coefficient
        return Polynomial(self.variables, result)

    def _y_power(self, position: int, k: int) -> Polynomial:
        key = (position, k)
        if key not in self._y_powers:
            previous = Polynomial.one(self.variables) if k == 1 else self._y_power(position, k - 1)
            self._y_powers[key] = previous * self._y[position]
        return self._y_powers[key]

    def _quotient(self, position: int, k: int) -> Polynomial:
        key = (position, k)
        if key not in self._quotients:
            if k == 1:
                value = Polynomial.one(self.variables)
            else:
                # Q_k = x·Q_{k−1} + y^{k−1}
                value = self._x[position] * self._quotient(position, k - 1) + self._y_power(position, k - 1)
            self._quotients[key] = value
        return self._quotients[key]

    def _node(self, i: int) -> int:
        if not isinstance(i, int) or not 1 <= i <= self.rank:
            raise UsageError(f"node {i} out of range 1..{self.rank}")
        return i - 1

    def _check_ring(self, f: Polynomial) -> None:
        if f.variables != self.variables:
            raise UsageError(f"expected a polynomial in {', '.join(self.variables)}, got one in {', '.join(f.variables)}")
