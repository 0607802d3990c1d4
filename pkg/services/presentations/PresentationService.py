"""Verification of integral presentations of H*(G/T) and H*(G/P).

Each check evaluates polynomials in weights, Chern invariants c_k and
special classes y_i on the coset table they belong to and reports one
CheckResult per relation, table row or degree. Checks above the configured
tier, beyond the wall-clock budget or past a degree cap are reported as
skipped instead of failing the run.
"""

import time

from services.lie_data.LinearForms import distinguished_node
from services.lie_data.models import LieFamily, LieType
from services.poly.Invariants import c_polynomial, classical_relation
from services.poly.Polynomial import Polynomial, weight_variables
from services.poly.helper.PolynomialParser import format_polynomial, parse_polynomial
from services.presentations.FixtureLoader import FixtureLoader
from services.presentations.ModPEliminator import ModPEliminator
from services.presentations.helper.RelationRing import (
    chern_images,
    is_kind,
    relation_degree,
    zero_images,
)
from services.presentations.models import (
    SKIP_BUDGET,
    SKIP_CAP,
    SKIP_TIER,
    STATUS_ERRATUM,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SIGN_NOTE,
    STATUS_SKIPPED,
    CheckResult,
    PresentationFixture,
    Relation,
    VerificationReport,
)
from services.schubert.GiambelliSolver import GiambelliSolver
from services.schubert.SchubertCalculator import SchubertCalculator, graded_monomials
from services.schubert.SchubertService import SchubertService
from services.schubert.models import SchubertCombination
from services.weyl.CosetDecomposer import CosetDecomposer
from shared.helper.HelperConfig import HelperConfig
from shared.helper.HelperLattice import HelperLattice, lattice_from
from shared.models.config import RunConfig
from shared.models.errors import GenerationError, ResourceCapError, TruncatedTableError, UsageError

# classical fibres whose relations are expanded on their own flag manifolds
CLASSICAL_CHECK_TYPES = ("A1", "A2", "A3", "C2", "C3")


def levi_chain(lie_type: LieType) -> tuple[LieType, dict[int, int], int]:
    """Classical fibre of G/T -> G/P_node: (fibre type, node -> fibre node, dropped node).

    F4 restricts to C3 through w4, w3, w2; E_n restricts to A_{n-1} through
    w_n, ..., w4, w3, w1.

    Raises:
        UsageError: types without a distinguished Grassmannian.
    """
    if lie_type.family == LieFamily.F4:
        return LieType.parse("C3"), {4: 1, 3: 2, 2: 3}, 1
    if lie_type.family in (LieFamily.E6, LieFamily.E7, LieFamily.E8):
        n = lie_type.rank
        chain = list(range(n, 2, -1)) + [1]
        return LieType.parse(f"A{n - 1}"), {node: k for k, node in enumerate(chain, start=1)}, 2
    raise UsageError(f"{lie_type} has no classical fibre")


class PresentationService:
    def __init__(
        self,
        helper_config: HelperConfig,
        run_config: RunConfig,
        schubert_service: SchubertService,
        loader: FixtureLoader | None = None,
    ) -> None:
        self.logging = helper_config.get_logger()
        self._run_config = run_config
        self._schubert = schubert_service
        self.loader = loader or FixtureLoader(helper_config, run_config)
        self.eliminator = ModPEliminator(helper_config, self.loader)
        self._modulo_lattices: dict[tuple[str, int, int], HelperLattice] = {}
        self._clock = time.monotonic

    ##########################################
    ############## CALCULATORS ###############
    ##########################################

    async def grassmannian(self, lie_type: LieType) -> SchubertCalculator:
        return await self._schubert.get_calculator(lie_type, {distinguished_node(lie_type)})

    async def full_flag(self, lie_type: LieType, max_length: int | None = None) -> SchubertCalculator:
        return await self._schubert.get_calculator(lie_type, range(1, lie_type.rank + 1), max_length=max_length)

    def special_generators(self, calculator: SchubertCalculator) -> dict[str, SchubertCombination]:
        """Special classes present on the calculator's table; classes beyond a truncation are left out."""
        group = self.loader.special_class_group(calculator.lie_type)
        classes = group.classes if calculator.table.is_full_flag else group.all_classes()
        generators = {}
        for name, word in classes.items():
            try:
                r, i = CosetDecomposer.index_of(calculator.table, word)
            except TruncatedTableError:
                self.logging.debug("%s lies beyond the truncation of %s", name, calculator.label)
                continue
            generators[name] = calculator.basis_class(r, i)
        return generators

    async def _fixture_calculator(self, fixture: PresentationFixture, degree: int) -> SchubertCalculator:
        if fixture.is_full_flag:
            return await self.full_flag(fixture.lie_type, max_length=degree)
        return await self._schubert.get_calculator(fixture.lie_type, fixture.K)

    ##########################################
    ############# CHERN CLASSES ##############
    ##########################################

    async def verify_chern_formulas(self, lie_type: LieType | str) -> VerificationReport:
        """Expand c_k and its formula in the special classes on G/P_node and compare."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        report = VerificationReport(title=f"{lie_type.name} Chern class formulas")
        grassmannian = await self.grassmannian(lie_type)
        generators = self.special_generators(grassmannian)
        for formula in self.loader.chern_formulas(lie_type):
            name = f"c{formula.k}"
            try:
                lhs = grassmannian.lr_expand(c_polynomial(lie_type, formula.k), formula.k)
                value = grassmannian.evaluate_generator_polynomial(formula.rhs, generators)
                if value == lhs:
                    report.add(name, STATUS_PASS, degree=formula.k)
                    continue
                if formula.corrected and grassmannian.evaluate_generator_polynomial(formula.corrected, generators) == lhs:
                    report.add(name, STATUS_ERRATUM, degree=formula.k, variant=formula.corrected, note=formula.erratum)
                    continue
                if formula.sign_tolerant and value == -lhs:
                    report.add(name, STATUS_SIGN_NOTE, degree=formula.k, note="formula matches c_k up to sign")
                    continue
                report.add(name, STATUS_FAIL, degree=formula.k, witness={"c_k": lhs.to_payload(), "formula": value.to_payload()})
            except ResourceCapError as e:
                report.add(name, STATUS_SKIPPED, degree=formula.k, reason=SKIP_CAP, note=e.message)
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    async def chern_coefficient_report(self, lie_type: LieType | str) -> VerificationReport:
        """Schubert coefficients of each c_k on G/P_node against the reference rows."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        golden = self.loader.golden_tables().chern_coefficients.get(lie_type.name)
        if golden is None:
            raise UsageError(f"no Chern coefficient rows are recorded for {lie_type}")
        report = VerificationReport(title=f"{lie_type.name} Chern coefficients")
        grassmannian = await self.grassmannian(lie_type)
        for k, row in sorted(golden.rows.items()):
            name = f"c{k}"
            try:
                size = len(grassmannian.table.slice(k))
                got = grassmannian.lr_expand(c_polynomial(lie_type, k), k).as_tuple(size)
            except ResourceCapError as e:
                report.add(name, STATUS_SKIPPED, degree=k, reason=SKIP_CAP, note=e.message)
                continue
            expected = tuple(row)
            if len(expected) != size:
                report.add(name, STATUS_FAIL, degree=k, note=f"slice {k} has {size} classes", witness={"got": list(got)})
            elif got == expected:
                report.add(name, STATUS_PASS, degree=k)
            elif k in golden.sign_tolerant and got == tuple(-v for v in expected):
                report.add(name, STATUS_SIGN_NOTE, degree=k, note="row matches up to sign")
            else:
                report.add(name, STATUS_FAIL, degree=k, witness={"expected": list(expected), "got": list(got)})
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    async def giambelli_report(self, lie_type: LieType | str) -> VerificationReport:
        """Reference Giambelli polynomials re-expanded on G/P_node, next to the solver's own."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        entries = self.loader.golden_tables().giambelli.get(lie_type.name)
        if entries is None:
            raise UsageError(f"no Giambelli polynomials are recorded for {lie_type}")
        report = VerificationReport(title=f"{lie_type.name} Giambelli polynomials")
        grassmannian = await self.grassmannian(lie_type)
        generators = self.special_generators(grassmannian)
        solver = GiambelliSolver(grassmannian, generators)
        solved: dict[int, dict[int, Polynomial]] = {}
        for k in sorted({entry.k for entry in entries}):
            try:
                table = solver.solve(k)
            except GenerationError as e:
                report.add(f"solver:{k}", STATUS_FAIL, degree=k, witness=e.details)
                continue
            except ResourceCapError as e:
                report.add(f"solver:{k}", STATUS_SKIPPED, degree=k, reason=SKIP_CAP, note=e.message)
                continue
            failures = solver.check(table)
            report.add(f"solver:{k}", STATUS_FAIL if failures else STATUS_PASS, degree=k,
                       witness={"classes": failures} if failures else None)
            solved[k] = table.entries

        for entry in entries:
            name = f"s{entry.k}_{entry.i}"
            try:
                value = grassmannian.evaluate_generator_polynomial(entry.polynomial, generators)
                corrected_ok = entry.corrected is not None and grassmannian.evaluate_generator_polynomial(
                    entry.corrected, generators
                ).coeffs == {entry.i: 1}
            except ResourceCapError as e:
                report.add(name, STATUS_SKIPPED, degree=entry.k, reason=SKIP_CAP, note=e.message)
                continue
            note = None
            own = solved.get(entry.k, {}).get(entry.i)
            if own is not None:
                printed = parse_polynomial(entry.corrected or entry.polynomial).extend(solver.names)
                if printed != own:
                    note = f"solver gives {format_polynomial(own)}"
            if value.coeffs == {entry.i: 1}:
                report.add(name, STATUS_PASS, degree=entry.k, note=note)
            elif corrected_ok:
                report.add(name, STATUS_ERRATUM, degree=entry.k, variant=entry.corrected,
                           note="; ".join(n for n in (entry.erratum, note) if n))
            else:
                report.add(name, STATUS_FAIL, degree=entry.k, note=note, witness=value.to_payload())
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    ##########################################
    ############### RELATIONS ################
    ##########################################

    async def verify_relations(self, name: str) -> VerificationReport:
        """Check that every relation of a presentation vanishes in cohomology.

        The printed form is tried first, then the recorded alternatives.
        """
        fixture = self.loader.presentation(name)
        report = VerificationReport(title=f"{fixture.name} relations")
        budget = self._run_config.budget_seconds
        start = self._clock()
        for relation in fixture.relations:
            degree = relation_degree(parse_polynomial(relation.polynomial))
            if relation.tier > self._run_config.tier:
                report.add(relation.name, STATUS_SKIPPED, degree=degree, reason=SKIP_TIER,
                           note=f"tier {relation.tier} above {self._run_config.tier}")
                continue
            if budget and self._clock() - start > budget:
                report.add(relation.name, STATUS_SKIPPED, degree=degree, reason=SKIP_BUDGET)
                continue
            try:
                report.checks.append(await self._check_relation(fixture, relation, degree))
            except ResourceCapError as e:
                report.add(relation.name, STATUS_SKIPPED, degree=degree, reason=SKIP_CAP, note=e.message)
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    async def _check_relation(self, fixture: PresentationFixture, relation: Relation, degree: int) -> CheckResult:
        variants = [relation.polynomial] + relation.alternatives
        first_value = None
        for position, text in enumerate(variants):
            value, vanishes = await self._evaluate_relation(fixture, text, relation.modulo_ideal)
            if vanishes:
                if position == 0:
                    note = f"vanishes modulo {relation.modulo_ideal}" if relation.modulo_ideal else None
                    return CheckResult(name=relation.name, status=STATUS_PASS, degree=degree, note=note)
                return CheckResult(name=relation.name, status=STATUS_ERRATUM, degree=degree, variant=text, note=relation.erratum)
            if first_value is None:
                first_value = value
        return CheckResult(name=relation.name, status=STATUS_FAIL, degree=degree, witness=first_value.to_payload())

    async def _evaluate_relation(self, fixture: PresentationFixture, text: str, modulo: str | None) -> tuple[SchubertCombination, bool]:
        """Value of a relation and whether it vanishes (or lies in the ideal of ``modulo``).

        Relations in the distinguished weight, c's and y's live on G/P_node;
        the others are evaluated on a G/T table truncated at their degree.
        """
        lie_type = fixture.lie_type
        poly = parse_polynomial(text)
        degree = relation_degree(poly)
        weights = {name for name in poly.used_variables() if is_kind(name, "w")}
        if lie_type.family == LieFamily.G2:
            calculator = await self.full_flag(lie_type, max_length=degree)
            value = calculator.evaluate_generator_polynomial(poly, self.special_generators(calculator))
        elif not fixture.is_full_flag and fixture.K != frozenset({distinguished_node(lie_type)}):
            calculator = await self._fixture_calculator(fixture, degree)
            value = calculator.evaluate_generator_polynomial(poly, self.special_generators(calculator))
        else:
            grassmannian = await self.grassmannian(lie_type)
            generators = self.special_generators(grassmannian)
            if weights <= {f"w{distinguished_node(lie_type)}"}:
                calculator = grassmannian
                value = grassmannian.evaluate_generator_polynomial(poly, generators)
            else:
                calculator = await self.full_flag(lie_type, max_length=degree)
                value = calculator.evaluate_generator_polynomial(poly, generators, class_calculator=grassmannian)
        if value.is_zero:
            return value, True
        if modulo is None:
            return value, False
        return value, self._modulo_lattice(calculator, modulo, degree).contains({i - 1: v for i, v in value.coeffs.items()})

    def _modulo_lattice(self, calculator: SchubertCalculator, weight: str, degree: int) -> HelperLattice:
        """Image of multiplication by a weight from degree-1 into degree."""
        node = int(weight[1:])
        key = (calculator.label, node, degree)
        lattice = self._modulo_lattices.get(key)
        if lattice is None:
            lattice = HelperLattice(len(calculator.table.slice(degree)))
            for i in range(1, len(calculator.table.slice(degree - 1)) + 1):
                image = calculator.chevalley_multiply(node, calculator.basis_class(degree - 1, i))
                lattice.add_vector({j - 1: v for j, v in image.coeffs.items()})
            self._modulo_lattices[key] = lattice
        return lattice

    ##########################################
    ######### GENERATION AND KERNEL ##########
    ##########################################

    async def _solver_for(self, fixture: PresentationFixture, degree: int) -> GiambelliSolver:
        calculator = await self._fixture_calculator(fixture, degree)
        present = self.special_generators(calculator)
        generators = {name: present[name] for name in fixture.ring if name in present}
        weights = [int(name[1:]) for name in fixture.ring if is_kind(name, "w")]
        return GiambelliSolver(calculator, generators, weights=weights)

    async def verify_generation(self, name: str, degree: int) -> VerificationReport:
        """The monomials in the ring generators span H^{2r} over Z."""
        fixture = self.loader.presentation(name)
        report = VerificationReport(title=f"{fixture.name} generation")
        for r in range(degree + 1):
            try:
                solver = await self._solver_for(fixture, r)
                lattice, _ = solver.lattice(r)
            except ResourceCapError as e:
                report.add(f"degree-{r}", STATUS_SKIPPED, degree=r, reason=SKIP_CAP, note=e.message)
                continue
            if lattice.is_full():
                report.add(f"degree-{r}", STATUS_PASS, degree=r)
            else:
                report.add(f"degree-{r}", STATUS_FAIL, degree=r, witness=lattice.cokernel_description())
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    def _relation_in_ring(self, fixture: PresentationFixture, text: str, names: tuple[str, ...]) -> Polynomial:
        """A relation rewritten over the solver ring; c_k becomes its polynomial in the weights
        (on G/T) or its formula in the special classes (on G/P)."""
        lie_type = fixture.lie_type
        poly = parse_polynomial(text)
        chern = [n for n in poly.variables if is_kind(n, "c")]
        if not chern:
            return poly.extend(names)
        if fixture.is_full_flag:
            images = chern_images(lie_type, chern, names)
        else:
            formulas = {f"c{f.k}": f.corrected or f.rhs for f in self.loader.chern_formulas(lie_type)}
            images = {n: parse_polynomial(formulas[n]).extend(names) for n in chern}
        return poly.substitute(images, names)

    async def verify_kernel(self, name: str, degree: int) -> VerificationReport:
        """In each degree up to ``degree`` the kernel of Z[ring] -> H* equals the ideal of the relations."""
        fixture = self.loader.presentation(name)
        report = VerificationReport(title=f"{fixture.name} kernel")
        for r in range(degree + 1):
            try:
                result = await self._kernel_in_degree(fixture, r)
            except ResourceCapError as e:
                result = CheckResult(name=f"degree-{r}", status=STATUS_SKIPPED, degree=r, reason=SKIP_CAP, note=e.message)
            report.checks.append(result)
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    async def _kernel_in_degree(self, fixture: PresentationFixture, r: int) -> CheckResult:
        solver = await self._solver_for(fixture, r)
        lattice, monomials = solver.lattice(r)
        index = {m: j for j, m in enumerate(monomials)}
        ideal_vectors = []
        skipped = []
        for relation in fixture.relations:
            if relation.modulo_ideal:
                skipped.append(relation.name)
                continue
            text = relation.effective_polynomial
            if relation_degree(parse_polynomial(text)) > r:
                continue
            f = self._relation_in_ring(fixture, text, solver.names)
            if f.is_zero:
                continue
            e = f.weighted_degree(dict(zip(solver.names, solver.degrees)))
            for multiplier in graded_monomials(solver.degrees, r - e):
                vector: dict[int, int] = {}
                for exponents, coefficient in f.terms.items():
                    j = index[tuple(a + b for a, b in zip(exponents, multiplier))]
                    vector[j] = vector.get(j, 0) + coefficient
                ideal_vectors.append(vector)
        kernel = lattice.kernel_basis()
        ideal = lattice_from(ideal_vectors, len(monomials))
        note = f"relations {skipped} hold only modulo an ideal" if skipped else None
        if lattice_from(kernel, len(monomials)).hermite_form() == ideal.hermite_form():
            return CheckResult(name=f"degree-{r}", status=STATUS_PASS, degree=r, note=note)

        def as_polynomial(vector: dict[int, int]) -> str:
            return format_polynomial(Polynomial(solver.names, {monomials[j]: v for j, v in vector.items()}))

        witness = next(({"kernel_element_outside_ideal": as_polynomial(v)} for v in kernel if not ideal.contains(v)), None)
        if witness is None:
            span = lattice_from(kernel, len(monomials))
            witness = next(
                ({"ideal_element_not_vanishing": as_polynomial(v)} for v in ideal_vectors if not span.contains(v)),
                {},
            )
        return CheckResult(name=f"degree-{r}", status=STATUS_FAIL, degree=r, note=note, witness=witness)

    ##########################################
    ############## RESTRICTION ###############
    ##########################################

    async def verify_restriction(self, lie_type: LieType | str) -> VerificationReport:
        """Restrict the Chern class relations to the classical fibre and compare with its relations.

        With w_node and every y_i set to zero, c_k - (formula) must become
        the k-th classical relation of the fibre up to sign. The classical
        relations themselves are checked to vanish on small flag manifolds.
        """
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        fibre, chain, _ = levi_chain(lie_type)
        report = VerificationReport(title=f"{lie_type.name} restriction to {fibre.name}")
        fibre_ring = weight_variables(fibre.rank)
        weight_images = {
            f"w{node}": Polynomial.variable(fibre_ring, f"w{chain[node]}") if node in chain else Polynomial.zero(fibre_ring)
            for node in range(1, lie_type.rank + 1)
        }
        for formula in self.loader.chern_formulas(lie_type):
            k = formula.k
            if k < 2 or (lie_type.family == LieFamily.F4 and k % 2):
                continue
            g = parse_polynomial(f"c{k} - ({formula.corrected or formula.rhs})")
            images = zero_images([n for n in g.variables if not is_kind(n, "c")], fibre_ring)
            for name in g.variables:
                if is_kind(name, "c"):
                    images[name] = c_polynomial(lie_type, int(name[1:])).substitute(weight_images, fibre_ring)
            value = g.substitute(images, fibre_ring)
            expected = classical_relation(fibre, k)
            name = f"g{k}"
            if value == expected:
                report.add(name, STATUS_PASS, degree=k)
            elif value == -expected:
                report.add(name, STATUS_PASS, degree=k, note=f"restricts to -s_{k}")
            else:
                report.add(name, STATUS_FAIL, degree=k, witness={
                    "restriction": format_polynomial(value), "expected": format_polynomial(expected),
                })
        for type_name in CLASSICAL_CHECK_TYPES:
            report.extend(await self.verify_classical_relations(type_name))
        self.logging.info("%s: %s", report.title, report.counts())
        return report

    async def verify_classical_relations(self, lie_type: LieType | str) -> VerificationReport:
        """Every classical relation s_k expands to zero on the flag manifold of an A_r or C_r."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        report = VerificationReport(title=lie_type.name)
        calculator = await self.full_flag(lie_type)
        if lie_type.family == LieFamily.A:
            indices = range(2, lie_type.rank + 2)
        else:
            indices = range(2, 2 * lie_type.rank + 1, 2)
        for k in indices:
            value = calculator.lr_expand(classical_relation(lie_type, k), k)
            report.add(f"s{k}", STATUS_PASS if value.is_zero else STATUS_FAIL, degree=k,
                       witness=None if value.is_zero else value.to_payload())
        return report

    ##########################################
    ######### MONOTONOUS GENERATION ##########
    ##########################################

    async def verify_monotonous_spanning(self, lie_type: LieType | str, max_degree: int) -> VerificationReport:
        """Weight monomials times 1 and the monotonous monomials span H^{2r}(G/T) over Z."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        report = VerificationReport(title=f"{lie_type.name} monotonous spanning")
        calculator = await self.full_flag(lie_type, max_length=max_degree)
        generators = self.special_generators(calculator)
        monotonous = self.eliminator.monotonous_monomials(lie_type, max_degree)
        names = weight_variables(lie_type.rank) + monotonous[0].variables
        rank = lie_type.rank
        for r in range(max_degree + 1):
            lattice = HelperLattice(len(calculator.table.slice(r)))
            for m in monotonous:
                d = m.weighted_degree({name: int(name[1:]) for name in m.variables})
                if d > r:
                    continue
                for weights in graded_monomials([1] * rank, r - d):
                    monomial = Polynomial.monomial(names, tuple(weights) + next(iter(m.terms)))
                    monomial = monomial.extend(monomial.used_variables())
                    value = calculator.evaluate_generator_polynomial(monomial, generators)
                    lattice.add_vector({i - 1: v for i, v in value.coeffs.items()})
            if lattice.is_full():
                report.add(f"degree-{r}", STATUS_PASS, degree=r)
            else:
                report.add(f"degree-{r}", STATUS_FAIL, degree=r, witness=lattice.cokernel_description())
        self.logging.info("%s: %s", report.title, report.counts())
        return report
