from __future__ import annotations

"""Application configuration using Pydantic BaseSettings.

This centralizes environment variable parsing & validation for both the HTTP
server and the command line. Values can come from the process environment or a
local `.env` file (loaded by python-dotenv in the entry points).

The fuzz settings document the random word distribution used by `biorder fuzz`:
syllable counts are geometric with mean FUZZ_MEAN_SYLLABLES, exponents uniform
in [-FUZZ_MAX_EXPONENT, FUZZ_MAX_EXPONENT] and indexed generator subscripts
uniform in [-FUZZ_INDEX_RANGE, FUZZ_INDEX_RANGE]. Keeping these identical across
runs is what makes a printed counterexample reproducible from its seed.
"""

from pydantic import Field
from pydantic_settings import BaseSettings
from pydantic import model_validator


class Settings(BaseSettings):
    # Core web config
    PORT: int = Field(default=8000, description="Port hypercorn should bind to")
    HOST: str = Field(default="0.0.0.0", description="Host interface to bind")
    RELOAD: bool = Field(default=False, description="Enable autoreload (dev only)")

    LOG_LEVEL: str = Field(default="WARNING", description="Level for the app.* loggers")

    # Fuzzer defaults
    FUZZ_SAMPLES: int = Field(default=300, ge=1, description="Default number of fuzz trials")
    FUZZ_SEED: int = Field(default=0, description="Default fuzz seed")
    FUZZ_MEAN_SYLLABLES: float = Field(
        default=4.0, description="Mean of the geometric syllable count of random words"
    )
    FUZZ_MAX_EXPONENT: int = Field(
        default=3, description="Random syllable exponents are uniform in [-n, n]"
    )
    FUZZ_INDEX_RANGE: int = Field(
        default=3, description="Random x[i,j] subscripts are uniform in [-n, n]"
    )
    FUZZ_SHRINK_ROUNDS: int = Field(
        default=64, ge=0, description="Cap on greedy counterexample shrinking passes"
    )

    # Lattice order searches
    LEVITT_SEARCH_RADIUS: int = Field(
        default=10, description="Max-norm radius of exhaustive violation searches on Z^2"
    )

    model_config = {
        "env_file": ".env",
        "case_sensitive": False,
        "extra": "ignore",
    }

    @model_validator(mode="after")
    def validate_ranges(self):  # type: ignore[override]
        if self.FUZZ_MEAN_SYLLABLES <= 0:
            raise ValueError("FUZZ_MEAN_SYLLABLES must be positive")
        if self.FUZZ_MAX_EXPONENT < 1:
            raise ValueError("FUZZ_MAX_EXPONENT must be at least 1")
        if self.FUZZ_INDEX_RANGE < 0:
            raise ValueError("FUZZ_INDEX_RANGE must be non-negative")
        if self.LEVITT_SEARCH_RADIUS < 1:
            raise ValueError("LEVITT_SEARCH_RADIUS must be at least 1")
        return self


settings = Settings()  # singleton-style importable instance

__all__ = ["settings", "Settings"]
