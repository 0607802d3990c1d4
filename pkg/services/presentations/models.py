import re
from dataclasses import dataclass, field

from pydantic import BaseModel, Field, field_validator, model_validator

from services.lie_data.models import LieType
from services.poly.Polynomial import Polynomial
from services.poly.helper.PolynomialParser import format_polynomial
from shared.models.errors import UsageError

_CLASS_NAME = re.compile(r"^y(\d+)$")

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_SKIPPED = "skipped"
STATUS_ERRATUM = "pass-with-erratum"
STATUS_SIGN_NOTE = "pass-with-sign-note"

SKIP_TIER = "tier"
SKIP_BUDGET = "budget"
SKIP_CAP = "cap"


def class_index(name: str) -> int:
    """Subscript of a special class name; y9 -> 9."""
    match = _CLASS_NAME.match(name)
    if match is None:
        raise ValueError(f"'{name}' is not a special class name y<i>")
    return int(match.group(1))


##########################################
############ SPECIAL CLASSES #############
##########################################

class SpecialClassGroup(BaseModel):
    """Special classes of one type: shared ones and Grassmannian-only ones."""

    node: int | None = None
    classes: dict[str, list[int]]
    grassmannian: dict[str, list[int]] = Field(default_factory=dict)

    @field_validator("classes", "grassmannian")
    @classmethod
    def _names_and_lengths(cls, classes: dict[str, list[int]]) -> dict[str, list[int]]:
        for name, word in classes.items():
            if len(word) != class_index(name):
                raise ValueError(f"{name} has a word of length {len(word)}: {word}")
        return classes

    def all_classes(self) -> dict[str, list[int]]:
        merged = dict(self.classes)
        merged.update(self.grassmannian)
        return dict(sorted(merged.items(), key=lambda item: class_index(item[0])))


class SpecialClassTable(BaseModel):
    types: dict[str, SpecialClassGroup]

    def for_type(self, lie_type: LieType) -> SpecialClassGroup:
        group = self.types.get(lie_type.name)
        if group is None:
            raise UsageError(f"no special classes are recorded for {lie_type}")
        return group


##########################################
############# PRESENTATIONS ##############
##########################################

class Relation(BaseModel):
    name: str
    polynomial: str
    tier: int = Field(default=1, ge=1, le=3)
    modulo_ideal: str | None = None
    alternatives: list[str] = Field(default_factory=list)
    erratum: str | None = None

    @property
    def effective_polynomial(self) -> str:
        """The form used downstream: the first alternative when the printed one is a known misprint."""
        if self.erratum and self.alternatives:
            return self.alternatives[0]
        return self.polynomial


class PresentationFixture(BaseModel):
    name: str
    group: str
    parabolic: str | list[int]
    ring: list[str]
    relations: list[Relation]

    @field_validator("parabolic")
    @classmethod
    def _parabolic_form(cls, parabolic: str | list[int]) -> str | list[int]:
        if isinstance(parabolic, str) and parabolic != "all":
            raise ValueError(f"parabolic must be 'all' or a node list, got '{parabolic}'")
        return parabolic

    @model_validator(mode="after")
    def _unique_relation_names(self) -> "PresentationFixture":
        names = [r.name for r in self.relations]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate relation names in {self.name}: {names}")
        return self

    @property
    def lie_type(self) -> LieType:
        return LieType.parse(self.group)

    @property
    def is_full_flag(self) -> bool:
        return self.parabolic == "all"

    @property
    def K(self) -> frozenset[int]:
        if self.is_full_flag:
            return frozenset(range(1, self.lie_type.rank + 1))
        return frozenset(self.parabolic)

    def relation(self, name: str) -> Relation:
        for relation in self.relations:
            if relation.name == name:
                return relation
        raise UsageError(f"{self.name} has no relation '{name}'")


class ChernFormula(BaseModel):
    k: int = Field(ge=1)
    rhs: str
    corrected: str | None = None
    erratum: str | None = None
    sign_tolerant: bool = False


class ChernCoefficientRows(BaseModel):
    rows: dict[int, list[int]]
    sign_tolerant: list[int] = Field(default_factory=list)


class GiambelliEntry(BaseModel):
    k: int = Field(ge=0)
    i: int = Field(ge=1)
    polynomial: str
    corrected: str | None = None
    erratum: str | None = None


class GoldenTables(BaseModel):
    chern_coefficients: dict[str, ChernCoefficientRows]
    giambelli: dict[str, list[GiambelliEntry]]


##########################################
############## BASIC DATA ################
##########################################

class BasicData(BaseModel):
    """(k, m), relation and generator degrees (cohomological), primes p_j and exponents k_j."""

    k: int = Field(ge=0)
    m: int = Field(ge=0)
    rho_degrees: list[int]
    y_degrees: list[int]
    primes: list[int]
    exponents: list[int]

    @model_validator(mode="after")
    def _consistent(self) -> "BasicData":
        if len(self.rho_degrees) != self.k:
            raise ValueError(f"{len(self.rho_degrees)} relation degrees for k = {self.k}")
        if not len(self.y_degrees) == len(self.primes) == len(self.exponents) == self.m:
            raise ValueError(f"generator lists do not all have length m = {self.m}")
        bad = [p for p in self.primes if p not in (2, 3, 5)]
        if bad:
            raise ValueError(f"primes {bad} outside {{2, 3, 5}}")
        if any(d % 2 for d in self.rho_degrees + self.y_degrees):
            raise ValueError("cohomological degrees must be even")
        return self

    def generator_names(self) -> list[str]:
        return [f"y{d // 2}" for d in self.y_degrees]

    def primes_by_generator(self) -> dict[str, int]:
        return dict(zip(self.generator_names(), self.primes))

    def exponents_by_generator(self) -> dict[str, int]:
        return dict(zip(self.generator_names(), self.exponents))


class ClassicalBasicData(BaseModel):
    km: str
    rho_degrees: str
    y_degrees: str | None = None
    primes: str | None = None
    exponents: str | None = None


class GeneratorRole(BaseModel):
    lam: str
    mu: str


class RoleFixture(BaseModel):
    presentation: str
    rho: list[str]
    generators: dict[str, GeneratorRole]


class BasicDataFixture(BaseModel):
    basic_data: dict[str, BasicData]
    classical: dict[str, ClassicalBasicData] = Field(default_factory=dict)
    roles: dict[str, RoleFixture] = Field(default_factory=dict)


##########################################
################ REPORTS #################
##########################################

class CheckResult(BaseModel):
    name: str
    status: str
    degree: int | None = None
    reason: str | None = None
    variant: str | None = None
    note: str | None = None
    witness: dict | None = None

    @property
    def failed(self) -> bool:
        return self.status == STATUS_FAIL


class VerificationReport(BaseModel):
    title: str
    checks: list[CheckResult] = Field(default_factory=list)

    def add(self, name: str, status: str, **fields) -> CheckResult:
        result = CheckResult(name=name, status=status, **fields)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport") -> None:
        for check in other.checks:
            self.checks.append(check.model_copy(update={"name": f"{other.title}:{check.name}"}))

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.failed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def status_of(self, name: str) -> str:
        for check in self.checks:
            if check.name == name:
                return check.status
        raise KeyError(name)

    def counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for check in self.checks:
            counts[check.status] = counts.get(check.status, 0) + 1
        return dict(sorted(counts.items()))

    def to_payload(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [c.model_dump(exclude_none=True) for c in self.checks],
        }


##########################################
################# MOD P ##################
##########################################

@dataclass
class DerivedRelation:
    name: str
    degree: int
    polynomial: Polynomial
    source: str

    def to_payload(self) -> dict:
        return {
            "name": self.name,
            "degree": 2 * self.degree,
            "source": self.source,
            "polynomial": format_polynomial(self.polynomial),
        }


@dataclass
class ModPPresentation:
    """A presentation of H*(G/T; F_p) derived by eliminating generators."""

    group: str
    prime: int
    generators: list[str]
    relations: list[DerivedRelation]
    substitutions: dict[str, Polynomial] = field(default_factory=dict)

    def relation_degrees(self) -> list[int]:
        """Cohomological degrees of the relations, sorted."""
        return sorted(2 * r.degree for r in self.relations)

    def relation(self, name: str) -> DerivedRelation:
        for relation in self.relations:
            if relation.name == name:
                return relation
        raise KeyError(name)

    def to_payload(self) -> dict:
        return {
            "group": self.group,
            "prime": self.prime,
            "generators": list(self.generators),
            "relation_degrees": self.relation_degrees(),
            "relations": [r.to_payload() for r in self.relations],
            "substitutions": {name: format_polynomial(p) for name, p in self.substitutions.items()},
        }
