from typing import Mapping

from services.poly.Polynomial import Exponents, Polynomial
from services.schubert.SchubertCalculator import SchubertCalculator, graded_monomials
from services.schubert.models import GiambelliTable, SchubertCombination
from shared.helper.HelperLattice import HelperLattice
from shared.models.errors import GenerationError


class GiambelliSolver:
    """Express Schubert classes as integer polynomials in a set of generators.

    In degree r every generator monomial is expanded into slice r; each
    class s_{r,i} is then solved for in the integer span of these
    expansions. Monomials with fewer weight factors are inserted first, so
    the special classes are preferred in the printed polynomials.
    """

    def __init__(self, calculator: SchubertCalculator, generators: Mapping[str, SchubertCombination] | None = None, weights: list[int] | None = None) -> None:
        self.calculator = calculator
        self.logging = calculator.logging
        self.generators = dict(generators or {})
        if weights is None:
            weights = [k for k in range(1, calculator.root_system.rank + 1) if calculator.weight_allowed(k)]
        names = [f"w{k}" for k in weights] + sorted(self.generators, key=lambda n: (self.generators[n].degree, n))
        self.names: tuple[str, ...] = tuple(names)
        self.degrees: tuple[int, ...] = tuple(calculator.symbol_degree(n, self.generators) for n in names)
        self._expansions: dict[Exponents, dict[int, int]] = {}

    ##########################################
    ################# CORE ###################
    ##########################################

    def monomials(self, r: int) -> list[Exponents]:
        weight_count = sum(1 for d in self.degrees if d == 1)
        return sorted(
            graded_monomials(self.degrees, r),
            key=lambda e: (sum(e[:weight_count]), tuple(-k for k in e[weight_count:])),
        )

    def expansion(self, exponents: Exponents) -> dict[int, int]:
        cached = self._expansions.get(exponents)
        if cached is None:
            polynomial = Polynomial.monomial(self.names, exponents)
            cached = self.calculator.evaluate_generator_polynomial(polynomial, self.generators).coeffs
            self._expansions[exponents] = cached
        return cached

    def lattice(self, r: int) -> tuple[HelperLattice, list[Exponents]]:
        """The tracked lattice spanned by the generator monomials of degree r."""
        size = len(self.calculator.table.slice(r))
        lattice = HelperLattice(size, track_combinations=True)
        monomials = self.monomials(r)
        for exponents in monomials:
            lattice.add_vector({i - 1: v for i, v in self.expansion(exponents).items()})
        return lattice, monomials

    def solve(self, r: int) -> GiambelliTable:
        """Giambelli polynomials of every class of degree r.

        Raises:
            GenerationError: some class is not an integer combination of generator monomials.
        """
        size = len(self.calculator.table.slice(r))
        lattice, monomials = self.lattice(r)
        table = GiambelliTable(
            table=self.calculator.label, degree=r, generators=dict(zip(self.names, self.degrees))
        )
        missing = []
        for i in range(1, size + 1):
            combination = lattice.solve({i - 1: 1})
            if combination is None:
                missing.append(i)
                continue
            terms = {monomials[k]: v for k, v in combination.items()}
            table.entries[i] = Polynomial(self.names, terms)
        if missing:
            raise GenerationError(
                f"generators {list(self.names)} do not generate in degree {r} on {self.calculator.label}",
                degree=r,
                missing=[f"s{r}_{i}" for i in missing],
                cokernel=lattice.cokernel_description(),
            )
        self.logging.debug("Giambelli polynomials of degree %d: %d classes", r, size)
        return table

    def check(self, table: GiambelliTable) -> list[str]:
        """Classes whose Giambelli polynomial does not re-expand to their indicator."""
        failures = []
        for i, polynomial in table.entries.items():
            value = self.calculator.evaluate_generator_polynomial(polynomial, self.generators)
            if value.coeffs != {i: 1}:
                failures.append(f"s{table.degree}_{i}")
        return failures
