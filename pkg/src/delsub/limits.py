"""Size caps for exhaustive enumeration, overridable per call or via environment."""

import os

DEFAULT_BALL_CAP = 1 << 22
DEFAULT_ENUM_CAP = 1 << 26

BALL_CAP_ENV = "DELSUB_BALL_CAP"
ENUM_CAP_ENV = "DELSUB_ENUM_CAP"


def _resolve(explicit: int | None, env_var: str, default: int) -> int:
    if explicit is not None:
        if explicit <= 0:
            raise ValueError("cap must be positive")
        return explicit
    raw = os.environ.get(env_var)
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError(f"{env_var} must be positive")
        return value
    return default


def ball_cap(explicit: int | None = None) -> int:
    return _resolve(explicit, BALL_CAP_ENV, DEFAULT_BALL_CAP)


def enum_cap(explicit: int | None = None) -> int:
    return _resolve(explicit, ENUM_CAP_ENV, DEFAULT_ENUM_CAP)
