"""Application settings and configuration.

Priority: environment variable > configs/defaults.yaml > built-in default.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime

from utils.logging import get_logger

load_dotenv()

logger = get_logger(__name__)

CONFIG_DIR = Path(__file__).parent.parent.parent / "configs"
DEFAULTS_FILE = CONFIG_DIR / "defaults.yaml"


def load_yaml_defaults(path: Path = DEFAULTS_FILE) -> Dict[str, Any]:
    """
    Flatten the YAML defaults into Settings field names.

    Returns:
        Dict of field values, or an empty dict when the file is missing or broken
    """
    try:
        if path.exists():
            with open(path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
            engine = raw.get("engine", {})
            repro = raw.get("repro", {})
            output = raw.get("output", {})
            values = {
                "CHARACTERISTIC": engine.get("characteristic"),
                "ORDER": engine.get("order"),
                "RESOLUTION_BOUND": engine.get("resolution_bound"),
                "WINDOW": engine.get("window"),
                "FILTRATION_BOUND": engine.get("filtration_bound"),
                "SEED": engine.get("seed"),
                "DEEP_TIMEOUT_SECONDS": repro.get("deep_timeout_seconds"),
                "OUTPUT_FORMAT": output.get("format"),
                "LOG_LEVEL": output.get("log_level"),
            }
            return {k: v for k, v in values.items() if v is not None}
    except Exception as e:
        logger.warning("Failed to load config from %s: %s", path, e)
    return {}


class Settings(BaseSettings):
    CHARACTERISTIC: int = 32003
    ORDER: str = "local"
    RESOLUTION_BOUND: int = 8
    WINDOW: tuple[int, int] = (2, 8)
    FILTRATION_BOUND: int = 6
    SEED: Optional[int] = None
    DEEP_TIMEOUT_SECONDS: float = 1800.0
    OUTPUT_FORMAT: str = "text"
    LOG_LEVEL: str = "WARNING"

    @field_validator("WINDOW", mode="before")
    @classmethod
    def parse_window(cls, v: Union[str, list, tuple]) -> tuple[int, int]:
        """Accept ``[a, b]``, ``"a,b"`` or a JSON list."""
        if isinstance(v, str):
            text = v.strip()
            if text.startswith("["):
                try:
                    v = json.loads(text)
                except json.JSONDecodeError:
                    raise ValueError(f"window is not valid JSON: {text}")
            else:
                v = [part for part in text.split(",") if part.strip()]
        values = [int(x) for x in v]
        if len(values) != 2 or values[0] > values[1]:
            raise ValueError(f"window must be two increasing integers, got {values}")
        return values[0], values[1]

    @field_validator("CHARACTERISTIC")
    @classmethod
    def check_characteristic(cls, v: int) -> int:
        if v != 0 and (v >= 2**31 or not isprime(v)):
            raise ValueError(f"characteristic must be 0 or a prime below 2^31, got {v}")
        return v

    @field_validator("ORDER")
    @classmethod
    def check_order(cls, v: str) -> str:
        if v.lower() not in {"local", "ds", "grevlex", "global", "dp"}:
            raise ValueError(f"unknown monomial order {v}")
        return v.lower()

    @field_validator("OUTPUT_FORMAT")
    @classmethod
    def check_format(cls, v: str) -> str:
        if v not in {"text", "json"}:
            raise ValueError(f"output format must be text or json, got {v}")
        return v

    model_config = SettingsConfigDict(
        env_prefix="LINKAGE_",
        env_file=".env",
        extra="ignore",
    )


def build_settings(**overrides: Any) -> Settings:
    """Settings with YAML defaults underneath the environment and ``overrides`` on top."""
    base = Settings()
    explicit = base.model_fields_set
    values = {k: v for k, v in load_yaml_defaults().items() if k not in explicit}
    merged = {**base.model_dump(), **values}
    for key in explicit:
        merged[key] = getattr(base, key)
    merged.update({k.upper(): v for k, v in overrides.items() if v is not None})
    return Settings.model_validate(merged)


settings = build_settings()
