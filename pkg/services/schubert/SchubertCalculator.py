from fractions import Fraction
from typing import Iterator, Mapping

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from services.lie_data.LinearForms import distinguished_node
from services.lie_data.RootSystem import root_system_for
from services.lie_data.models import LieFamily, LieType
from services.poly.Invariants import c_polynomial
from services.poly.Polynomial import Coefficient, Exponents, Polynomial, weight_variables
from services.poly.WeylAction import WeylAction
from services.poly.helper.PolynomialParser import SYMBOL_PATTERN, parse_polynomial
from services.schubert.models import ExpansionConvention, LiftSpace, SchubertCombination
from services.weyl.models import CosetTable
from shared.helper.HelperConfig import HelperConfig
from shared.helper.HelperLattice import HelperLattice
from shared.helper.HelperMatrix import mat_vec
from shared.models.config import RunConfig
from shared.models.errors import (
    IntegralityError,
    LiftError,
    ResourceCapError,
    UsageError,
    VerificationError,
)

# lift ring kinds
LIFT_WEIGHTS = "weights"
LIFT_CHERN = "chern"
LIFT_EMBEDDED = "embedded"

# F4/P{1}: c_3 -> (6), c_4 -> (2, 7)
CALIBRATION_TARGETS: dict[int, dict[int, int]] = {3: {1: 6}, 4: {1: 2, 2: 7}}


def chern_lift_variables(lie_type: LieType) -> tuple[tuple[str, ...], tuple[int, ...]]:
    """Lift ring of the distinguished Grassmannian: ω_K and the c_k generating its invariants."""
    node = distinguished_node(lie_type)
    if lie_type.family == LieFamily.F4:
        degrees = (2, 4, 6)
    else:
        degrees = tuple(range(2, lie_type.rank + 1))
    return (f"w{node}",) + tuple(f"c{k}" for k in degrees), (1,) + degrees


def lift_kind_for(lie_type: LieType, K: frozenset[int]) -> str:
    if len(K) == lie_type.rank:
        return LIFT_WEIGHTS
    if (
        lie_type.family in (LieFamily.F4, LieFamily.E6, LieFamily.E7, LieFamily.E8)
        and K == frozenset({distinguished_node(lie_type)})
    ):
        return LIFT_CHERN
    return LIFT_EMBEDDED


class SchubertCalculator:
    """Schubert calculus on one coset table.

    Expansion uses divided differences along the parent tree of the table;
    multiplication by weights uses the Chevalley rule; products of classes go
    through rational lifts into an invariant polynomial ring whose monomials
    have known expansions.
    """

    def __init__(
        self,
        helper_config: HelperConfig,
        run_config: RunConfig,
        table: CosetTable,
        convention: ExpansionConvention | None = None,
        full_flag: "SchubertCalculator | None" = None,
    ) -> None:
        self.logging = helper_config.get_logger()
        self._run_config = run_config
        self.table = table
        self.lie_type = table.lie_type
        self.root_system = root_system_for(table.lie_type)
        self.action = WeylAction(self.root_system, debug_checks=run_config.debug_checks)
        self.variables = weight_variables(self.root_system.rank)
        self.convention = convention or ExpansionConvention()
        self.full_flag = full_flag
        self.lift_kind, self.lift_variables, self.lift_degrees = self._lift_ring()
        self._lift_images = [self._lift_image(name) for name in self.lift_variables]
        self._chevalley_memo: dict[tuple[int, int, int], dict[int, int]] = {}
        self._columns: dict[Exponents, dict[int, int]] = {}
        self._weight_images: dict[Exponents, Polynomial] = {}
        self._lift_spaces: dict[int, LiftSpace] = {}
        self._class_memo: dict[tuple, dict[int, int]] = {}
        self._embedded_slices: dict[int, dict[int, int]] = {}

    ##########################################
    ################ GETTER ##################
    ##########################################

    @property
    def label(self) -> str:
        return self.table.label

    def combination(self, degree: int, coeffs: Mapping[int, Coefficient]) -> SchubertCombination:
        """Wrap coefficients into a combination on this table.

        Raises:
            IntegralityError: a non-integral coefficient.
        """
        bad = {i: str(v) for i, v in coeffs.items() if not isinstance(v, int)}
        if bad:
            raise IntegralityError(f"rational coefficients {bad} in degree {degree} on {self.label}", degree=degree)
        return SchubertCombination(table=self.label, degree=degree, coeffs=dict(coeffs))

    def basis_class(self, r: int, i: int) -> SchubertCombination:
        self.table.element(r, i)
        return SchubertCombination.indicator(self.label, r, i)

    def weight_allowed(self, node: int) -> bool:
        """ω_node is a class on this table (always on the full flag, else node ∈ K)."""
        return self.table.is_full_flag or node in self.table.K

    ##########################################
    ############### EXPANSION ################
    ##########################################

    def lr_expand(self, f: Polynomial | str, degree: int | None = None) -> SchubertCombination:
        """Expand a homogeneous polynomial in the weights into the Schubert basis.

        Raises:
            UsageError: inhomogeneous input or a degree mismatch.
            IntegralityError: a rational coefficient in the result.
            TruncatedTableError: the table does not reach the degree.
        """
        f = self._as_weight_polynomial(f)
        r = self._degree_of(f, degree)
        return self.combination(r, self._expand(f, r))

    def _as_weight_polynomial(self, f: Polynomial | str) -> Polynomial:
        if isinstance(f, str):
            return parse_polynomial(f, self.variables)
        if f.variables != self.variables:
            return f.extend(self.variables)
        return f

    def _degree_of(self, f: Polynomial, degree: int | None) -> int:
        if f.is_zero:
            return degree or 0
        if not f.is_homogeneous():
            raise UsageError(f"cannot expand the inhomogeneous polynomial {f}")
        if degree is not None and degree != f.degree:
            raise UsageError(f"polynomial of degree {f.degree} where degree {degree} was expected")
        return f.degree

    def _expand(self, f: Polynomial, r: int) -> dict[int, Coefficient]:
        """Raw coefficients a_w(f) of slice r, possibly rational."""
        self._check_degree(r)
        elements = self.table.slice(r)
        if f.is_zero or not elements:
            return {}
        sign = self.convention.sign
        if r == 0:
            return {1: sign * f.constant_term()}
        if self.convention.reverse_word:
            out = {}
            for element in elements:
                value = self.action.apply_word(tuple(reversed(element.min_word)), f).constant_term()
                if value:
                    out[element.index] = sign * value
            return out
        # walk the parent tree: value(u) = A_{first letter of u}(value(parent of u))
        needed: list[set[int]] = [set() for _ in range(r + 1)]
        needed[r] = set(range(len(elements)))
        for level in range(r, 0, -1):
            level_slice = self.table.slices[level]
            needed[level - 1] = {level_slice[p].parent for p in needed[level]}
        values: dict[int, Polynomial] = {0: f}
        for level in range(1, r + 1):
            level_slice = self.table.slices[level]
            current: dict[int, Polynomial] = {}
            for position in sorted(needed[level]):
                element = level_slice[position]
                parent_value = values.get(element.parent)
                if parent_value is None:
                    continue
                result = self.action.divided_difference(element.min_word[0], parent_value)
                if not result.is_zero:
                    current[position] = result
            values = current
        return {position + 1: sign * value.constant_term() for position, value in values.items()}

    ##########################################
    ############### CHEVALLEY ################
    ##########################################

    def chevalley_multiply(self, i: int, x: SchubertCombination) -> SchubertCombination:
        """ω_i · x by the Chevalley rule.

        Raises:
            UsageError: ω_i is no class on this table, or x lives elsewhere.
            TruncatedTableError: the table does not reach degree(x) + 1.
        """
        self._check_own(x)
        return self.combination(x.degree + 1, self._chevalley(i, x.degree, x.coeffs))

    def _chevalley(self, i: int, r: int, coeffs: Mapping[int, Coefficient]) -> dict[int, Coefficient]:
        if not 1 <= i <= self.root_system.rank or not self.weight_allowed(i):
            raise UsageError(f"ω_{i} is not a class on {self.label}")
        self._check_degree(r + 1)
        if not self.table.slice(r + 1):
            return {}
        out: dict[int, Coefficient] = {}
        for index, value in coeffs.items():
            for target, c in self._chevalley_row(i, r, index).items():
                out[target] = out.get(target, 0) + value * c
        return {k: v for k, v in out.items() if v}

    def _chevalley_row(self, i: int, r: int, index: int) -> dict[int, int]:
        """ω_i · s_u = Σ ⟨ω_i, β^∨⟩ s_{uσ_β} over β with uσ_β ∈ W^{r+1}."""
        key = (i, r, index)
        memo = self._chevalley_memo.get(key)
        if memo is not None:
            return memo
        u = self.table.element(r, index)
        weight = self.table.weight_vector()
        full = self.table.is_full_flag
        row: dict[int, int] = {}
        for root in self.root_system.positive_roots:
            c = root.coroot[i - 1]
            if c == 0:
                continue
            pairing = sum(x * y for x, y in zip(weight, root.coroot))
            if pairing == 0:
                continue
            image = mat_vec(u.matrix, root.weight)
            found = self.table.find_orbit(tuple(m - pairing * x for m, x in zip(u.orbit, image)))
            if found is None or found[0] != r + 1:
                continue
            if not full:
                target = self.table.element(*found)
                product = tuple(
                    tuple(u.matrix[a][b] - image[a] * root.coroot[b] for b in range(len(image)))
                    for a in range(len(image))
                )
                if target.matrix != product:
                    continue
            row[found[1]] = row.get(found[1], 0) + c
        self._chevalley_memo[key] = row
        return row

    def apply_weight_monomial(self, exponents: Exponents, r: int, coeffs: Mapping[int, Coefficient]) -> dict[int, Coefficient]:
        """ω^exponents · Σ coeffs s_{r,i} by repeated Chevalley steps."""
        current = dict(coeffs)
        degree = r
        for position, k in enumerate(exponents):
            for _ in range(k):
                if not current:
                    return {}
                current = self._chevalley(position + 1, degree, current)
                degree += 1
        return current

    def oracle_mismatches(self, max_degree: int | None = None) -> list[str]:
        """ω-monomials whose iterated Chevalley image differs from lr_expand."""
        max_degree = self._run_config.check_degree if max_degree is None else max_degree
        nodes = [k for k in range(1, self.root_system.rank + 1) if self.weight_allowed(k)]
        mismatches = []
        for d in range(0, max_degree + 1):
            if not self.table.covers(d) and not self.table.complete:
                break
            for exponents in graded_monomials([1] * len(nodes), d):
                full = [0] * self.root_system.rank
                for node, k in zip(nodes, exponents):
                    full[node - 1] = k
                f = Polynomial.monomial(self.variables, tuple(full))
                by_chevalley = self.apply_weight_monomial(tuple(full), 0, {1: 1})
                if by_chevalley != self._expand(f, d):
                    mismatches.append(str(f))
        self.logging.debug("oracle check up to degree %d: %d mismatches", max_degree, len(mismatches))
        return mismatches

    ##########################################
    ################# LIFTS ##################
    ##########################################

    def _lift_ring(self) -> tuple[str, tuple[str, ...], tuple[int, ...]]:
        kind = lift_kind_for(self.lie_type, self.table.K)
        if kind == LIFT_CHERN:
            variables, degrees = chern_lift_variables(self.lie_type)
            return kind, variables, degrees
        return kind, self.variables, (1,) * len(self.variables)

    def computed_lift_spaces(self) -> list[LiftSpace]:
        return [self._lift_spaces[r] for r in sorted(self._lift_spaces)]

    def _lift_image(self, name: str) -> Polynomial:
        if name.startswith("c"):
            return c_polynomial(self.lie_type, int(name[1:]))
        return Polynomial.variable(self.variables, name)

    def to_weights(self, lifted: Polynomial) -> Polynomial:
        """Rewrite a polynomial in the lift variables in terms of the weights."""
        if lifted.variables == self.variables:
            return lifted
        return lifted.substitute(dict(zip(self.lift_variables, self._lift_images)), self.variables)

    def _weight_image(self, exponents: Exponents) -> Polynomial:
        image = self._weight_images.get(exponents)
        if image is not None:
            return image
        last = max((j for j, k in enumerate(exponents) if k), default=None)
        if last is None:
            image = Polynomial.one(self.variables)
        else:
            lower = exponents[:last] + (exponents[last] - 1,) + exponents[last + 1:]
            image = self._weight_image(lower) * self._lift_images[last]
        self._weight_images[exponents] = image
        return image

    def column(self, exponents: Exponents) -> dict[int, int]:
        """Expansion of one monomial of the lift ring (memoised).

        Monomials with a weight factor come from a lower column by Chevalley;
        pure invariant monomials are expanded by divided differences.
        """
        exponents = tuple(exponents)
        cached = self._columns.get(exponents)
        if cached is not None:
            return cached
        degree = sum(d * k for d, k in zip(self.lift_degrees, exponents))
        weight_position = next(
            (j for j, k in enumerate(exponents) if k and self.lift_degrees[j] == 1), None
        )
        if degree == 0:
            column = {1: 1}
        elif weight_position is not None:
            lower = exponents[:weight_position] + (exponents[weight_position] - 1,) + exponents[weight_position + 1:]
            node = int(self.lift_variables[weight_position][1:])
            column = self._chevalley(node, degree - 1, self.column(lower))
        else:
            raw = self._expand(self._weight_image(exponents), degree)
            column = self.combination(degree, raw).coeffs
        self._columns[exponents] = column
        return column

    def lift_space(self, r: int) -> LiftSpace:
        """Basis monomials of degree r with an invertible expansion matrix.

        Raises:
            LiftError: the monomials of degree r do not span slice r.
        """
        if self.lift_kind == LIFT_EMBEDDED:
            return self._require_full_flag(r).lift_space(r)
        space = self._lift_spaces.get(r)
        if space is not None:
            return space
        self._check_degree(r)
        size = len(self.table.slice(r))
        lattice = HelperLattice(size)
        basis: list[Exponents] = []
        columns: list[dict[int, int]] = []
        for exponents in self._lift_monomials(r):
            if lattice.rank() == size:
                break
            column = self.column(exponents)
            if lattice.add_vector({i - 1: v for i, v in column.items()}):
                basis.append(exponents)
                columns.append(column)
        if lattice.rank() < size:
            raise LiftError(
                f"lift monomials of degree {r} span rank {lattice.rank()} of {size} on {self.label}",
                degree=r,
            )
        space = self.install_lift_space(LiftSpace(degree=r, variables=self.lift_variables, basis=basis, columns=columns))
        self.logging.debug("lift space of degree %d: %d basis monomials", r, size)
        return space

    def install_lift_space(self, space: LiftSpace) -> LiftSpace:
        """Invert the expansion matrix of a (possibly cached) lift space and register it.

        Raises:
            LiftError: the columns are singular or belong to another ring.
        """
        if space.variables != self.lift_variables:
            raise LiftError(f"lift space over {space.variables} does not fit {self.label}")
        size = len(space.basis)
        if size:
            dense = [[column.get(row + 1, 0) for column in space.columns] for row in range(size)]
            try:
                inverse = DomainMatrix.from_list(dense, QQ).inv().to_list()
            except DMNonInvertibleMatrixError:
                raise LiftError(f"singular expansion matrix in degree {space.degree} on {self.label}")
            space.inverse = [
                [Fraction(int(entry.numerator), int(entry.denominator)) for entry in row] for row in inverse
            ]
        for exponents, column in zip(space.basis, space.columns):
            self._columns.setdefault(tuple(exponents), column)
        self._lift_spaces[space.degree] = space
        return space

    def lift(self, r: int, i: int) -> Polynomial:
        """A rational lift of s_{r,i}: a polynomial in the lift variables expanding to the class."""
        return self.lift_combination(self.basis_class(r, i))

    def lift_combination(self, x: SchubertCombination) -> Polynomial:
        self._check_own(x)
        if self.lift_kind == LIFT_EMBEDDED:
            full_flag = self._require_full_flag(x.degree)
            return full_flag.lift_combination(self.push_to_full_flag(x))
        space = self.lift_space(x.degree)
        result = Polynomial.zero(self.lift_variables)
        for index, value in x.coeffs.items():
            result = result + space.lift_polynomial(index) * value
        return result

    ##########################################
    ################ PRODUCTS ################
    ##########################################

    def schubert_product(self, x: SchubertCombination, y: SchubertCombination) -> SchubertCombination:
        """x·y through a rational lift of the arguments.

        Raises:
            IntegralityError: a rational coefficient in the product.
            TruncatedTableError: the table does not reach degree(x) + degree(y).
        """
        self._check_own(x)
        self._check_own(y)
        r = x.degree + y.degree
        self._check_degree(r)
        if not self.table.slice(r):
            return SchubertCombination.zero(self.label, r)
        if x.degree > y.degree:
            x, y = y, x
        if x.degree == 0:
            return y.scale(x.coeffs.get(1, 0))
        if self.lift_kind == LIFT_EMBEDDED:
            return self._product_via_full_flag(x, y)
        total: dict[int, Coefficient] = {}
        lifted = self.lift_combination(x)
        if self.lift_kind == LIFT_WEIGHTS:
            for exponents, a in lifted.terms.items():
                for index, value in self.apply_weight_monomial(exponents, y.degree, y.coeffs).items():
                    total[index] = total.get(index, 0) + a * value
        else:
            other = self.lift_combination(y)
            for ex, a in lifted.terms.items():
                for ey, b in other.terms.items():
                    for index, value in self.column(tuple(p + q for p, q in zip(ex, ey))).items():
                        total[index] = total.get(index, 0) + a * b * value
        return self.combination(r, {i: _normalize(v) for i, v in total.items() if v})

    def poincare_pairing(self, x: SchubertCombination, y: SchubertCombination) -> int:
        """Coefficient of the top class in x·y (0 unless the degrees are complementary).

        Raises:
            UsageError: the table is truncated.
        """
        top = self.table.top_class()
        if top is None:
            raise UsageError(f"{self.label} has no top class (truncated table)")
        if x.degree + y.degree != top[0]:
            return 0
        return self.schubert_product(x, y).coeffs.get(top[1], 0)

    ##########################################
    ############## EVALUATION ################
    ##########################################

    def evaluate_generator_polynomial(
        self,
        expr: Polynomial | str,
        generators: Mapping[str, SchubertCombination] | None = None,
        class_calculator: "SchubertCalculator | None" = None,
    ) -> SchubertCombination:
        """Evaluate a polynomial in named classes.

        Weights that are classes here are applied by Chevalley; the remaining
        factors (special classes y_k, c_k, s<r>_<i>, other weights) are
        multiplied on ``class_calculator`` (default: this table) and pulled
        back.

        Raises:
            UsageError: an unknown generator or an inhomogeneous expression.
        """
        generators = dict(generators or {})
        classes = class_calculator or self
        if isinstance(expr, str):
            expr = parse_polynomial(expr)
        grading = {name: classes.symbol_degree(name, generators) for name in expr.variables}
        r = expr.weighted_degree(grading) if not expr.is_zero else 0
        self._check_degree(r)
        total: dict[int, Coefficient] = {}
        for exponents, coefficient in expr.terms.items():
            weights: list[int] = [0] * self.root_system.rank
            class_part: dict[str, int] = {}
            for name, k in zip(expr.variables, exponents):
                if not k:
                    continue
                match = SYMBOL_PATTERN.match(name)
                if match and match.group(1) == "w" and self.weight_allowed(int(match.group(2))):
                    weights[int(match.group(2)) - 1] += k
                else:
                    class_part[name] = k
            base_degree, base = classes.evaluate_class_monomial(class_part, generators)
            if classes is not self:
                base = self.pull_back(base_degree, base, classes)
            for index, value in self.apply_weight_monomial(tuple(weights), base_degree, base).items():
                total[index] = total.get(index, 0) + coefficient * value
        return self.combination(r, {i: _normalize(v) for i, v in total.items() if v})

    def symbol_degree(self, name: str, generators: Mapping[str, SchubertCombination]) -> int:
        if name in generators:
            return generators[name].degree
        match = SYMBOL_PATTERN.match(name)
        if match is None:
            raise UsageError(f"unknown generator '{name}'")
        if match.group(1) in ("w",):
            return 1
        if match.group(1) == "c":
            return int(match.group(2))
        if match.group(3):
            return int(match.group(3))
        raise UsageError(f"unknown generator '{name}' on {self.label}")

    def resolve_symbol(self, name: str, generators: Mapping[str, SchubertCombination]) -> SchubertCombination:
        """A single generator as a combination on this table.

        Raises:
            UsageError: unknown name, a weight that is no class here, or a c_k that is not W(P)-invariant.
        """
        if name in generators:
            self._check_own(generators[name])
            return generators[name]
        match = SYMBOL_PATTERN.match(name)
        if match is None:
            raise UsageError(f"unknown generator '{name}'")
        if match.group(1) == "w":
            node = int(match.group(2))
            return self.chevalley_multiply(node, self.basis_class(0, 1))
        if match.group(1) == "c":
            f = c_polynomial(self.lie_type, int(match.group(2)))
            if not self.verify_invariance(f, self.table.K):
                raise UsageError(f"{name} is not a class on {self.label}")
            return self.lr_expand(f)
        if match.group(3):
            return self.basis_class(int(match.group(3)), int(match.group(4)))
        raise UsageError(f"unknown generator '{name}' on {self.label}")

    def evaluate_class_monomial(self, class_part: Mapping[str, int], generators: Mapping[str, SchubertCombination]) -> tuple[int, dict[int, int]]:
        """Product of generators with multiplicities; returns (degree, coefficients)."""
        key = tuple(sorted(class_part.items())) + tuple(
            (name, generators[name].degree, tuple(generators[name].coeffs.items()))
            for name in sorted(class_part) if name in generators
        )
        memo = self._class_memo.get(key)
        if memo is not None:
            return sum(self.symbol_degree(n, generators) * k for n, k in class_part.items()), memo
        if self.lift_kind == LIFT_CHERN and all(name in self.lift_variables for name in class_part):
            exponents = tuple(class_part.get(name, 0) for name in self.lift_variables)
            result = self.combination(
                sum(d * k for d, k in zip(self.lift_degrees, exponents)), self.column(exponents)
            )
        else:
            result = self.basis_class(0, 1)
            factors = sorted(class_part.items(), key=lambda item: -self.symbol_degree(item[0], generators))
            for name, k in factors:
                factor = self.resolve_symbol(name, generators)
                for _ in range(k):
                    result = self.schubert_product(result, factor)
        self._class_memo[key] = result.coeffs
        return result.degree, result.coeffs

    def verify_invariance(self, f: Polynomial, K) -> bool:
        """True iff σ_j f = f for every node j ∉ K."""
        f = self._as_weight_polynomial(f)
        return self.action.is_invariant(f, [j for j in range(1, self.root_system.rank + 1) if j not in K])

    ##########################################
    ############### EMBEDDING ################
    ##########################################

    def pull_back(self, degree: int, coeffs: Mapping[int, Coefficient], source: "SchubertCalculator") -> dict[int, Coefficient]:
        """Pull classes of a coarser table (K_source ⊆ K) back to this table.

        Raises:
            UsageError: the source table is not coarser than this one.
        """
        if source.lie_type != self.lie_type or not source.table.K <= self.table.K:
            raise UsageError(f"cannot pull classes of {source.label} back to {self.label}")
        if not coeffs:
            return {}
        weight = self.table.weight_vector()
        out = {}
        for index, value in coeffs.items():
            element = source.table.element(degree, index)
            found = self.table.find_orbit(mat_vec(element.matrix, weight))
            if found is None or found[0] != degree:
                self.table.slice(degree)
                raise UsageError(f"{element.min_word} of {source.label} has no image on {self.label}")
            out[found[1]] = value
        return out

    def push_to_full_flag(self, x: SchubertCombination) -> SchubertCombination:
        full_flag = self._require_full_flag(x.degree)
        return full_flag.combination(x.degree, full_flag.pull_back(x.degree, x.coeffs, self))

    def _embedded_slice(self, r: int) -> dict[int, int]:
        """full-flag index -> own index for slice r."""
        cached = self._embedded_slices.get(r)
        if cached is None:
            full_flag = self._require_full_flag(r)
            rho = full_flag.table.weight_vector()
            cached = {}
            for element in self.table.slice(r):
                found = full_flag.table.find_orbit(mat_vec(element.matrix, rho))
                if found is None or found[0] != r:
                    raise LiftError(f"{element.min_word} has no image on {full_flag.label}")
                cached[found[1]] = element.index
            self._embedded_slices[r] = cached
        return cached

    def _product_via_full_flag(self, x: SchubertCombination, y: SchubertCombination) -> SchubertCombination:
        r = x.degree + y.degree
        full_flag = self._require_full_flag(r)
        product = full_flag.schubert_product(self.push_to_full_flag(x), self.push_to_full_flag(y))
        back = self._embedded_slice(r)
        stray = [i for i in product.coeffs if i not in back]
        if stray:
            raise LiftError(f"product of {x} and {y} leaves {self.label}", degree=r)
        return self.combination(r, {back[i]: v for i, v in product.coeffs.items()})

    def _require_full_flag(self, r: int) -> "SchubertCalculator":
        if self.full_flag is None:
            raise LiftError(f"{self.label} needs a full-flag table for products and lifts")
        self.full_flag.table.slice(r)
        return self.full_flag

    ##########################################
    ############### HELPERS ##################
    ##########################################

    def _check_own(self, x: SchubertCombination) -> None:
        if x.table != self.label:
            raise UsageError(f"combination on {x.table} used with {self.label}")
        if x.coeffs and max(x.coeffs) > len(self.table.slice(x.degree)):
            raise UsageError(f"{self.label} has no class s_{{{x.degree},{max(x.coeffs)}}}")

    def _check_degree(self, r: int) -> None:
        cap = self._run_config.degree_cap(self.table.table_key)
        if cap is not None and r > cap:
            raise ResourceCapError(
                f"degree {r} exceeds the cap {cap} of {self.table.table_key}; raise SCHUBERT_DEGREE_CAPS or pass --long",
                degree=r,
            )

    def _lift_monomials(self, r: int) -> Iterator[Exponents]:
        """Monomials of the lift ring of degree r, those with more weight factors first."""
        yield from sorted(graded_monomials(self.lift_degrees, r), key=lambda e: (-sum(e[j] for j, d in enumerate(self.lift_degrees) if d == 1), tuple(-k for k in e)))


def graded_monomials(degrees, r: int) -> Iterator[Exponents]:
    """Exponent tuples e with Σ degrees[j]·e[j] = r."""
    degrees = tuple(degrees)
    if not degrees:
        if r == 0:
            yield ()
        return
    first, rest = degrees[0], degrees[1:]
    for k in range(r // first, -1, -1):
        for tail in graded_monomials(rest, r - k * first):
            yield (k,) + tail


def _normalize(value: Coefficient) -> Coefficient:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def calibrate_convention(helper_config: HelperConfig, run_config: RunConfig, table: CosetTable) -> ExpansionConvention:
    """Pick the orientation of the coefficient functional reproducing the F4 values.

    Raises:
        VerificationError: no candidate or more than one candidate matches.
    """
    if table.lie_type != LieType.parse("F4") or table.K != frozenset({1}):
        raise UsageError(f"calibration runs on F4/P{{1}}, not {table.label}")
    f4 = table.lie_type
    matches = []
    for reverse_word in (False, True):
        for sign in (1, -1):
            convention = ExpansionConvention(reverse_word=reverse_word, sign=sign)
            calculator = SchubertCalculator(helper_config, run_config, table, convention=convention)
            if all(
                calculator._expand(c_polynomial(f4, k), k) == expected
                for k, expected in CALIBRATION_TARGETS.items()
            ):
                matches.append(convention)
    if len(matches) != 1:
        raise VerificationError(
            f"calibration found {len(matches)} matching conventions: {[m.name for m in matches]}"
        )
    return matches[0]
