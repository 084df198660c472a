from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


class Verdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    check: str
    passed: bool
    detail: str = ""
    counterexample: Optional[str] = None
    data: dict[str, Any] = Field(default_factory=dict)
