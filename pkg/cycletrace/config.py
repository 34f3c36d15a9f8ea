import os
from typing import Mapping, Optional

from pydantic import BaseModel, Field

BUDGET_ENV = "CYCLETRACE_BUDGET"
JOBS_ENV = "CYCLETRACE_JOBS"
DEFAULT_BUDGET = 10 ** 7


class Settings(BaseModel):
    """Search limits. ``budget`` caps the size of any exhaustive scan."""

    budget: int = Field(default=DEFAULT_BUDGET, gt=0)
    jobs: int = Field(default=1, gt=0)

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "Settings":
        environ = os.environ if environ is None else environ
        values = {}
        if environ.get(BUDGET_ENV):
            values["budget"] = environ[BUDGET_ENV]
        if environ.get(JOBS_ENV):
            values["jobs"] = environ[JOBS_ENV]
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
