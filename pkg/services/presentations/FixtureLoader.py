"""YAML fixtures of the presentation checks.

Every file under the fixture directory is loaded once, validated into its
pydantic model and cross-checked: special class words against the Weyl
group, relations for homogeneity and known symbols, basic data against the
relation roles.
"""

import os

import yaml
from pydantic import ValidationError

from services.lie_data.RootSystem import root_system_for
from services.lie_data.models import LieType
from services.poly.helper.PolynomialParser import parse_polynomial, symbols_in
from services.presentations.helper.RelationRing import is_kind, relation_degree
from services.presentations.models import (
    BasicDataFixture,
    ChernFormula,
    GoldenTables,
    PresentationFixture,
    RoleFixture,
    SpecialClassGroup,
    SpecialClassTable,
    class_index,
)
from services.weyl.WeylGroup import WeylGroup
from shared.helper.HelperConfig import HelperConfig
from shared.models.config import RunConfig
from shared.models.errors import FixtureError, FixtureUnavailableError, UsageError

SPECIAL_CLASSES_FILE = "special_classes.yml"
PRESENTATIONS_FILE = "presentations.yml"
CHERN_FORMULAS_FILE = "chern_formulas.yml"
GOLDEN_TABLES_FILE = "golden_tables.yml"
BASIC_DATA_FILE = "basic_data.yml"


class FixtureLoader:
    def __init__(self, helper_config: HelperConfig, run_config: RunConfig) -> None:
        self.logging = helper_config.get_logger()
        self._fixture_dir = run_config.fixture_dir
        self._special: SpecialClassTable | None = None
        self._presentations: dict[str, PresentationFixture] | None = None
        self._chern: dict[str, list[ChernFormula]] | None = None
        self._golden: GoldenTables | None = None
        self._basic: BasicDataFixture | None = None
        self._checked_words: set[str] = set()

    ##########################################
    ################ LOADING #################
    ##########################################

    def _read(self, filename: str):
        path = os.path.join(self._fixture_dir, filename)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = yaml.safe_load(fh)
        except FileNotFoundError:
            raise FixtureError(f"fixture file '{path}' does not exist", path=path)
        except yaml.YAMLError as e:
            raise FixtureError(f"fixture file '{path}' is not valid YAML: {e}", path=path)
        self.logging.debug("loaded fixture file %s", path)
        return raw

    def _validate(self, model, raw, filename: str):
        try:
            return model.model_validate(raw)
        except ValidationError as e:
            raise FixtureError(f"{filename}: {e}", file=filename)

    ##########################################
    ############ SPECIAL CLASSES #############
    ##########################################

    def special_classes(self) -> SpecialClassTable:
        if self._special is None:
            raw = self._read(SPECIAL_CLASSES_FILE)
            self._special = self._validate(SpecialClassTable, {"types": raw}, SPECIAL_CLASSES_FILE)
        return self._special

    def special_class_group(self, lie_type: LieType | str) -> SpecialClassGroup:
        """Special classes of a type, with every word checked against its Weyl group.

        Raises:
            UsageError: no classes are recorded for the type.
            FixtureError: a word is not reduced, not minimal for K={node}, or of the wrong length.
        """
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        group = self.special_classes().for_type(lie_type)
        if lie_type.name not in self._checked_words:
            self._check_words(lie_type, group)
            self._checked_words.add(lie_type.name)
        return group

    def _check_words(self, lie_type: LieType, group: SpecialClassGroup) -> None:
        weyl = WeylGroup(root_system_for(lie_type))
        K = {group.node} if group.node is not None else set()
        for name, word in group.all_classes().items():
            if not weyl.is_reduced(word):
                raise FixtureError(f"{lie_type} {name}: word {word} is not reduced", name=name)
            if K and not weyl.is_minimal_rep(word, K):
                raise FixtureError(f"{lie_type} {name}: word {word} is not minimal for K={sorted(K)}", name=name)
            if weyl.length(word) != class_index(name):
                raise FixtureError(f"{lie_type} {name}: word {word} has length {weyl.length(word)}", name=name)

    ##########################################
    ############# PRESENTATIONS ##############
    ##########################################

    def presentations(self) -> dict[str, PresentationFixture]:
        if self._presentations is None:
            raw = self._read(PRESENTATIONS_FILE)
            if not isinstance(raw, list):
                raise FixtureError(f"{PRESENTATIONS_FILE} must hold a list of presentations")
            loaded = [self._validate(PresentationFixture, item, PRESENTATIONS_FILE) for item in raw]
            presentations = {}
            for fixture in loaded:
                if fixture.name in presentations:
                    raise FixtureError(f"presentation '{fixture.name}' is defined twice")
                self._check_presentation(fixture)
                presentations[fixture.name] = fixture
            self._presentations = presentations
            self.logging.info("loaded %d presentations", len(presentations))
        return self._presentations

    def presentation(self, name: str) -> PresentationFixture:
        """Presentation by table label ("E7/T", "F4/P{1}").

        Raises:
            UsageError: no presentation of that name.
        """
        fixture = self.presentations().get(name)
        if fixture is None:
            raise UsageError(f"unknown presentation '{name}' (known: {', '.join(self.presentations())})")
        return fixture

    def _check_presentation(self, fixture: PresentationFixture) -> None:
        try:
            lie_type = fixture.lie_type
        except (ValueError, UsageError) as e:
            raise FixtureError(f"{fixture.name}: {e}")
        group = self.special_classes().types.get(lie_type.name)
        grassmannian = set(group.grassmannian) if group is not None else set()
        allowed = set(fixture.ring) | grassmannian
        for relation in fixture.relations:
            for text in [relation.polynomial] + relation.alternatives:
                unknown = [s for s in symbols_in(text) if s not in allowed and not is_kind(s, "c")]
                if unknown:
                    raise FixtureError(f"{fixture.name} {relation.name}: unknown symbols {unknown}", relation=relation.name)
                try:
                    relation_degree(parse_polynomial(text))
                except UsageError as e:
                    raise FixtureError(f"{fixture.name} {relation.name}: {e.message}", relation=relation.name)

    ##########################################
    ############## REFERENCES ################
    ##########################################

    def chern_formulas(self, lie_type: LieType | str) -> list[ChernFormula]:
        if self._chern is None:
            raw = self._read(CHERN_FORMULAS_FILE) or {}
            self._chern = {
                name: [self._validate(ChernFormula, item, CHERN_FORMULAS_FILE) for item in items]
                for name, items in raw.items()
            }
        name = lie_type if isinstance(lie_type, str) else lie_type.name
        formulas = self._chern.get(name)
        if formulas is None:
            raise UsageError(f"no Chern class formulas are recorded for {name}")
        return formulas

    def golden_tables(self) -> GoldenTables:
        if self._golden is None:
            self._golden = self._validate(GoldenTables, self._read(GOLDEN_TABLES_FILE), GOLDEN_TABLES_FILE)
        return self._golden

    def basic_data(self) -> BasicDataFixture:
        if self._basic is None:
            basic = self._validate(BasicDataFixture, self._read(BASIC_DATA_FILE), BASIC_DATA_FILE)
            for name, roles in basic.roles.items():
                self._check_roles(name, roles, basic)
            self._basic = basic
        return self._basic

    def roles(self, lie_type: LieType | str) -> RoleFixture:
        """Relation roles of a type's full-flag presentation.

        Raises:
            FixtureUnavailableError: no consistent roles are recorded (E8).
        """
        name = lie_type if isinstance(lie_type, str) else lie_type.name
        roles = self.basic_data().roles.get(name)
        if roles is None:
            raise FixtureUnavailableError(f"no relation roles are recorded for {name}")
        return roles

    def _check_roles(self, name: str, roles: RoleFixture, basic: BasicDataFixture) -> None:
        data = basic.basic_data.get(name)
        if data is None:
            raise FixtureError(f"roles of {name} have no basic data")
        fixture = self.presentation(roles.presentation)

        def degree_of(relation_name: str) -> int:
            relation = fixture.relation(relation_name)
            return 2 * relation_degree(parse_polynomial(relation.effective_polynomial))

        if sorted(degree_of(r) for r in roles.rho) != sorted(data.rho_degrees):
            raise FixtureError(f"{name}: rho relations {roles.rho} do not have the degrees {data.rho_degrees}")
        if list(roles.generators) != data.generator_names():
            raise FixtureError(f"{name}: role generators {list(roles.generators)} differ from {data.generator_names()}")
        for generator, role in roles.generators.items():
            y_degree = 2 * class_index(generator)
            k = data.exponents_by_generator()[generator]
            if degree_of(role.lam) != y_degree:
                raise FixtureError(f"{name}: {role.lam} has not the degree of {generator}")
            if degree_of(role.mu) != k * y_degree:
                raise FixtureError(f"{name}: {role.mu} has not the degree of {generator}^{k}")
