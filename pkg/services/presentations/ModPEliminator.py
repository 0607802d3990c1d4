"""Mod-p presentations derived from an integral full-flag presentation.

The relations of H*(G/T) split into rho_i (in the ideal of the weights),
lambda_j = p_j*y_j + ... and mu_j = y_j^{k_j} + ... . For a prime p every
generator with p_j != p is eliminated through its lambda_j; the remaining
relations, reduced mod p, present H*(G/T; F_p).
"""

from itertools import product

from sympy import GF, isprime
from sympy.polys.matrices import DomainMatrix

from services.lie_data.CartanCatalog import CartanCatalog
from services.lie_data.models import LieFamily, LieType
from services.poly.Polynomial import Polynomial, weight_variables
from services.poly.helper.PolynomialParser import format_polynomial, symbols_in
from services.presentations.FixtureLoader import FixtureLoader
from services.presentations.helper.RelationRing import (
    chern_images,
    chern_symbols,
    grading,
    parse_over,
    relation_degree,
    zero_images,
)
from services.presentations.models import (
    STATUS_FAIL,
    STATUS_PASS,
    BasicData,
    ClassicalBasicData,
    DerivedRelation,
    ModPPresentation,
    RoleFixture,
    VerificationReport,
    class_index,
)
from services.schubert.SchubertCalculator import graded_monomials
from shared.helper.HelperConfig import HelperConfig
from shared.models.errors import EliminationError, UsageError

_CLASSICAL_NAMES = {LieFamily.A: "SU(n)", LieFamily.C: "Sp(n)"}


class ModPEliminator:
    def __init__(self, helper_config: HelperConfig, loader: FixtureLoader) -> None:
        self.logging = helper_config.get_logger()
        self._loader = loader

    ##########################################
    ############## BASIC DATA ################
    ##########################################

    def basic_data(self, lie_type: LieType | str) -> BasicData | ClassicalBasicData:
        """(k, m) and the degree/prime/exponent lists of a type; formula strings for SU(n) and Sp(n)."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        fixture = self._loader.basic_data()
        if lie_type.family in _CLASSICAL_NAMES:
            return fixture.classical[_CLASSICAL_NAMES[lie_type.family]]
        data = fixture.basic_data.get(lie_type.name)
        if data is None:
            raise UsageError(f"no basic data is recorded for {lie_type}")
        return data

    def _exceptional_data(self, lie_type: LieType) -> BasicData:
        data = self.basic_data(lie_type)
        if not isinstance(data, BasicData):
            raise UsageError(f"{lie_type} has no generators y_j")
        return data

    ##########################################
    ############### CONTEXT ##################
    ##########################################

    def _context(self, lie_type: LieType) -> tuple[RoleFixture, BasicData, tuple[str, ...], dict[str, Polynomial]]:
        """Roles, basic data, the ring (weights, c's, y's) and the role relations parsed over it."""
        roles = self._loader.roles(lie_type)
        data = self._exceptional_data(lie_type)
        fixture = self._loader.presentation(roles.presentation)
        names = list(roles.rho) + [n for role in roles.generators.values() for n in (role.lam, role.mu)]
        texts = {name: fixture.relation(name).effective_polynomial for name in names}
        used = {s for text in texts.values() for s in symbols_in(text)}
        ring = (
            weight_variables(lie_type.rank)
            + tuple(sorted(chern_symbols(used), key=lambda n: int(n[1:])))
            + tuple(data.generator_names())
        )
        return roles, data, ring, {name: parse_over(text, ring) for name, text in texts.items()}

    ##########################################
    ################# SHAPE ##################
    ##########################################

    def presentation_shape(self, lie_type: LieType | str) -> VerificationReport:
        """Check rho_i|0 = 0, lambda_j|0 = p_j*y_j and mu_j|0 = y_j^{k_j} with weights and c's set to 0.

        Raises:
            FixtureUnavailableError: no roles are recorded for the type.
        """
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        roles, data, ring, relations = self._context(lie_type)
        generators = tuple(data.generator_names())
        zero = zero_images([n for n in ring if n not in generators], generators)
        report = VerificationReport(title=f"{lie_type.name} presentation shape")

        def restrict(name: str) -> Polynomial:
            return relations[name].substitute(zero, generators)

        for name in roles.rho:
            value = restrict(name)
            report.add(f"rho:{name}", STATUS_PASS if value.is_zero else STATUS_FAIL,
                       witness=None if value.is_zero else {"restriction": format_polynomial(value)})
        primes = data.primes_by_generator()
        exponents = data.exponents_by_generator()
        for generator, role in roles.generators.items():
            y = Polynomial.variable(generators, generator)
            for label, name, expected in (
                ("lambda", role.lam, y.scale(primes[generator])),
                ("mu", role.mu, y ** exponents[generator]),
            ):
                value = restrict(name)
                ok = value == expected
                report.add(
                    f"{label}:{generator}",
                    STATUS_PASS if ok else STATUS_FAIL,
                    note=name,
                    witness=None if ok else {"expected": format_polynomial(expected), "got": format_polynomial(value)},
                )
        self.logging.info("shape of %s: %s", lie_type.name, report.counts())
        return report

    ##########################################
    ############## ELIMINATION ###############
    ##########################################

    def mod_p_presentation(self, lie_type: LieType | str, p: int) -> ModPPresentation:
        """Eliminate every y_s with p_s != p and reduce the remaining relations mod p.

        Raises:
            UsageError: p is not a prime.
            EliminationError: some lambda_s cannot be solved for y_s modulo p.
            FixtureUnavailableError: no roles are recorded for the type.
        """
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        if not isprime(p):
            raise UsageError(f"{p} is not a prime")
        roles, data, ring, relations = self._context(lie_type)
        primes = data.primes_by_generator()
        generators = data.generator_names()
        kept = [y for y in generators if primes[y] == p]
        eliminated = [y for y in generators if primes[y] != p]

        substitutions: dict[str, Polynomial] = {}

        def reduced(name: str) -> Polynomial:
            poly = relations[name]
            if substitutions:
                poly = poly.substitute(substitutions, ring)
            return poly.reduce_mod(p)

        for y in eliminated:
            lam = relations[roles.generators[y].lam]
            if substitutions:
                lam = lam.substitute(substitutions, ring)
            y_poly = Polynomial.variable(ring, y)
            p_y = lam.coefficient(next(iter(y_poly.terms)))
            alpha = lam - y_poly.scale(p_y)
            if not alpha.is_zero and alpha.degree_in(y) > 0:
                raise EliminationError(f"{roles.generators[y].lam} is not linear in {y}", generator=y)
            if p_y % p == 0:
                raise EliminationError(f"coefficient {p_y} of {y} vanishes modulo {p}", generator=y, prime=p)
            q = next(q for q in range(1, p) if (q * p_y) % p == p - 1)
            substitutions[y] = alpha.scale(q).reduce_mod(p)
            self.logging.debug("%s mod %d: %s := %s", lie_type.name, p, y, substitutions[y])

        out_ring = tuple(n for n in ring if n not in eliminated)
        derived: list[DerivedRelation] = []

        def emit(prefix: str, name: str, source: str) -> None:
            poly = reduced(name).extend(out_ring)
            degree = relation_degree(relations[name])
            if poly.is_zero:
                self.logging.warning("%s relation %s vanishes modulo %d", lie_type.name, name, p)
            label = f"{prefix}{degree}"
            taken = {r.name for r in derived}
            suffix = 1
            while label in taken:
                suffix += 1
                label = f"{prefix}{degree}_{suffix}"
            derived.append(DerivedRelation(name=label, degree=degree, polynomial=poly, source=source))

        for name in roles.rho:
            emit("gamma", name, f"rho:{name}")
        for y in kept:
            emit("gamma", roles.generators[y].lam, f"lambda:{y}")
        for y in eliminated:
            emit("gamma", roles.generators[y].mu, f"mu:{y}")
        for y in kept:
            emit("h", roles.generators[y].mu, f"mu:{y}")
        derived.sort(key=lambda r: (r.degree, r.name))

        presentation = ModPPresentation(
            group=lie_type.name,
            prime=p,
            generators=list(weight_variables(lie_type.rank)) + kept,
            relations=derived,
            substitutions={y: poly.extend(out_ring) for y, poly in substitutions.items()},
        )
        self.logging.info(
            "%s mod %d: generators %s, relation degrees %s",
            lie_type.name, p, presentation.generators, presentation.relation_degrees(),
        )
        return presentation

    ##########################################
    ########### GRADED DIMENSIONS ############
    ##########################################

    def graded_dimensions(self, presentation: ModPPresentation, max_degree: int) -> list[int]:
        """dim_{F_p} of the presented algebra in degrees 0..max_degree (polynomial degree)."""
        lie_type = LieType.parse(presentation.group)
        p = presentation.prime
        ring = tuple(presentation.generators)
        degrees = tuple(grading(ring)[name] for name in ring)
        relations = []
        for relation in presentation.relations:
            poly = relation.polynomial
            images = chern_images(lie_type, poly.variables, ring)
            poly = poly.substitute(images, ring) if images else poly.extend(ring)
            poly = poly.reduce_mod(p)
            if not poly.is_zero:
                relations.append((relation.degree, poly))
        field = GF(p)
        dimensions = []
        for d in range(max_degree + 1):
            columns = {e: j for j, e in enumerate(graded_monomials(degrees, d))}
            rows: dict[int, dict[int, object]] = {}
            for e_degree, poly in relations:
                if e_degree > d:
                    continue
                for multiplier in graded_monomials(degrees, d - e_degree):
                    row: dict[int, int] = {}
                    for exponents, coefficient in poly.terms.items():
                        j = columns[tuple(a + b for a, b in zip(exponents, multiplier))]
                        row[j] = (row.get(j, 0) + coefficient) % p
                    row = {j: field(v) for j, v in row.items() if v}
                    if row:
                        rows[len(rows)] = row
            rank = DomainMatrix(rows, (len(rows), len(columns)), field).rank() if rows else 0
            dimensions.append(len(columns) - rank)
            self.logging.debug("%s mod %d degree %d: %d monomials, rank %d", lie_type.name, p, d, len(columns), rank)
        return dimensions

    def expected_dimensions(self, lie_type: LieType | str, max_degree: int) -> list[int]:
        """Betti numbers of G/T in degrees 0..max_degree."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        poincare = CartanCatalog.flag_poincare_polynomial(lie_type)
        return [poincare[d] if d < len(poincare) else 0 for d in range(max_degree + 1)]

    ##########################################
    ########## MONOTONOUS MONOMIALS ##########
    ##########################################

    def monotonous_basis(self, lie_type: LieType | str, p: int, max_degree: int | None = None) -> list[Polynomial]:
        """1 and the products of y_t^{r_t}, 1 <= r_t < k_t, over subsets of {t : p_t = p}."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        data = self._exceptional_data(lie_type)
        generators = tuple(data.generator_names())
        exponents = data.exponents_by_generator()
        primes = data.primes_by_generator()
        ranges = [range(exponents[y]) if primes[y] == p else range(1) for y in generators]
        monomials = []
        for e in product(*ranges):
            degree = sum(k * class_index(y) for k, y in zip(e, generators))
            if max_degree is None or degree <= max_degree:
                monomials.append((degree, e))
        monomials.sort(key=lambda item: (item[0], tuple(-k for k in item[1])))
        return [Polynomial.monomial(generators, e) for _, e in monomials]

    def monotonous_monomials(self, lie_type: LieType | str, max_degree: int | None = None) -> list[Polynomial]:
        """Union of the p-monotonous monomials over the primes of the type, 1 included once."""
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        seen: dict[Polynomial, None] = {}
        for p in sorted(set(self._exceptional_data(lie_type).primes)):
            for monomial in self.monotonous_basis(lie_type, p, max_degree):
                seen.setdefault(monomial, None)
        return list(seen)
