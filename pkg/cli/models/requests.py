from pydantic import BaseModel, Field, ValidationError, field_validator

from services.lie_data.models import LieType
from shared.models.errors import UsageError


class TableRequest(BaseModel):
    """A coset table selected by ``--group``, ``--parabolic`` and ``--max-length``."""

    group: str
    parabolic: str = "all"
    max_length: int | None = Field(default=None, ge=0)

    @field_validator("parabolic")
    @classmethod
    def _node_list(cls, parabolic: str) -> str:
        text = parabolic.strip().lower()
        if text == "all":
            return text
        nodes = [part.strip() for part in text.split(",") if part.strip()]
        if not nodes or not all(node.isdigit() for node in nodes):
            raise ValueError(f"parabolic must be 'all' or a comma list of nodes, got '{parabolic}'")
        return ",".join(nodes)

    @property
    def lie_type(self) -> LieType:
        return LieType.parse(self.group)

    @property
    def K(self) -> frozenset[int]:
        if self.parabolic == "all":
            return frozenset(range(1, self.lie_type.rank + 1))
        return frozenset(int(node) for node in self.parabolic.split(","))


class ModPRequest(BaseModel):
    group: str
    prime: int = Field(ge=2)
    dims: int | None = Field(default=None, ge=0)


def build_request(model: type[BaseModel], **fields) -> BaseModel:
    """Validate CLI arguments into a request model.

    Raises:
        UsageError: the arguments do not validate.
    """
    try:
        return model(**fields)
    except ValidationError as e:
        problems = "; ".join(error["msg"] for error in e.errors())
        raise UsageError(f"invalid arguments: {problems}")
