import json
from fractions import Fraction
from typing import Any, Dict

from pydantic import BaseModel
from enum import Enum


def to_jsonable(value: Any) -> Any:
    """Recursively convert results into plain JSON types."""
    if isinstance(value, BaseModel):
        return to_jsonable(value.dict())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, float) and (value != value or value in (float("inf"), float("-inf"))):
        # JSON has no inf/nan literals
        return str(value)
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        # numpy scalars
        return to_jsonable(value.item())
    return value


class OutputRecord(BaseModel):
    command: str
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    timing_ms: float = 0.0

    def serialize(self) -> str:
        payload = {
            "command": self.command,
            "inputs": to_jsonable(self.inputs),
            "results": to_jsonable(self.results),
            "timing_ms": self.timing_ms,
        }
        return json.dumps(payload, sort_keys=True)

    @classmethod
    def parse(cls, text: str) -> "OutputRecord":
        return cls(**json.loads(text))
