from pydantic import BaseModel, ConfigDict, ValidationError

from dunkl_bose.errors import DomainError


class DataModel(BaseModel):
    """
    Base class for every immutable record the library hands out.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    @classmethod
    def build(cls, **fields):
        """Construct the model, re-raising validation failures as DomainError."""

        try:
            return cls(**fields)
        except ValidationError as e:
            messages = "; ".join(error["msg"] for error in e.errors())

            raise DomainError(f"{cls.__name__}: {messages}") from e
