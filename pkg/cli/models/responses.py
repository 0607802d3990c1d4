from pydantic import BaseModel, ConfigDict, Field

from services.presentations.models import VerificationReport
from services.schubert.models import GiambelliTable, SchubertCombination
from services.weyl.models import CosetTable
from shared.models.errors import SchubertEngineError


class CommandResponse(BaseModel):
    """Base of every command output; ``succeeded`` decides the exit code."""

    def succeeded(self) -> bool:
        return True


class ErrorDetail(BaseModel):
    type: str
    message: str
    details: dict = {}


class ErrorResponse(CommandResponse):
    error: ErrorDetail

    @classmethod
    def from_error(cls, error: SchubertEngineError) -> "ErrorResponse":
        return cls(error=ErrorDetail(type=error.type_name, message=error.message, details=error.details))

    def succeeded(self) -> bool:
        return False


##########################################
############## SCHUBERT ##################
##########################################

class CosetEntry(BaseModel):
    r: int
    i: int
    word: list[int]


class CosetListing(CommandResponse):
    table: str
    complete: bool
    max_length: int
    size: int
    poincare: list[int]
    entries: list[CosetEntry]

    @classmethod
    def from_table(cls, table: CosetTable) -> "CosetListing":
        entries = [
            CosetEntry(r=element.length, i=element.index, word=list(element.min_word))
            for r in range(table.max_length + 1)
            for element in table.slice(r)
        ]
        return cls(
            table=table.label,
            complete=table.complete,
            max_length=table.max_length,
            size=table.size(),
            poincare=table.poincare_polynomial(),
            entries=entries,
        )


class CoefficientItem(BaseModel):
    i: int
    value: str


class ExpansionResponse(CommandResponse):
    table: str
    degree: int
    expression: str | None = None
    coefficients: list[CoefficientItem]

    @classmethod
    def from_combination(cls, combination: SchubertCombination, expression: str | None = None) -> "ExpansionResponse":
        payload = combination.to_payload()
        return cls(expression=expression, **payload)


class GiambelliItem(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    class_name: str = Field(alias="class")
    polynomial: str


class GiambelliResponse(CommandResponse):
    table: str
    degree: int
    generators: dict[str, int]
    entries: list[GiambelliItem]

    @classmethod
    def from_table(cls, table: GiambelliTable) -> "GiambelliResponse":
        return cls.model_validate(table.to_payload())


##########################################
############ VERIFICATION ################
##########################################

class ReportResponse(CommandResponse):
    passed: bool
    counts: dict[str, int]
    reports: list[dict]

    @classmethod
    def from_reports(cls, reports: list[VerificationReport], **extra) -> "ReportResponse":
        counts: dict[str, int] = {}
        for report in reports:
            for status, count in report.counts().items():
                counts[status] = counts.get(status, 0) + count
        return cls(
            passed=all(report.passed for report in reports),
            counts=dict(sorted(counts.items())),
            reports=[report.to_payload() for report in reports],
            **extra,
        )

    def succeeded(self) -> bool:
        return self.passed


class SpanningResponse(ReportResponse):
    monomials: list[str]


class ModPResponse(CommandResponse):
    presentation: dict
    dimensions: list[int] | None = None
    expected: list[int] | None = None

    def succeeded(self) -> bool:
        return self.dimensions is None or self.dimensions == self.expected


class BasicDataResponse(CommandResponse):
    group: str
    data: dict


##########################################
################ CACHE ###################
##########################################

class CacheStatsResponse(CommandResponse):
    engine: str
    entries: dict[str, int]


class CacheClearResponse(CommandResponse):
    engine: str
    removed: int


class CacheVerifyResponse(CommandResponse):
    mismatches: list[str]

    def succeeded(self) -> bool:
        return not self.mismatches


class CacheWarmResponse(CommandResponse):
    table: str
    degrees: int
    lift_spaces_stored: int
