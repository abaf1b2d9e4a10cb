from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from .errors import InvalidSpecError


# Defaults
HORIZON_PERIODS = 4
VERIFY_WORKERS = 4
INDUCED_MAX_ORDER = 27
INDUCED_MAX_MULTIPLE = 6
RHO_MAX_ORDER = 12
RHO_MAX_ABS_N = 24
NEGATIVE_N_ADVISORY = "n<0 outside proven range"


@dataclass(frozen=True)
class Settings:
    """
    Tunables for sweeps and class enumeration.
    Everything here has a default, a YAML file may override any subset.
    """
    horizon_periods: int = HORIZON_PERIODS
    verify_workers: int = VERIFY_WORKERS
    induced_max_order: int = INDUCED_MAX_ORDER
    induced_max_multiple: int = INDUCED_MAX_MULTIPLE
    rho_max_order: int = RHO_MAX_ORDER
    rho_max_abs_n: int = RHO_MAX_ABS_N

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise InvalidSpecError(f"must be a positive integer, got {value!r}", path=f"$.{f.name}")


def load_settings(path: Optional[Union[str, Path]] = None, **overrides: Any) -> Settings:
    """
    Build Settings from an optional YAML mapping plus keyword overrides.
    Unknown keys are rejected.
    """
    data: Dict[str, Any] = {}
    if path:
        try:
            with open(path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f) or {}
        except OSError as e:
            raise InvalidSpecError(f"cannot read settings: {e.strerror or e}", path=str(path)) from e
        except yaml.YAMLError as e:
            raise InvalidSpecError(f"not valid YAML: {e}", path=str(path)) from e
        if not isinstance(loaded, dict):
            raise InvalidSpecError("settings file must hold a mapping", path="$")
        data.update(loaded)
    data.update({k: v for k, v in overrides.items() if v is not None})

    known = {f.name for f in fields(Settings)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise InvalidSpecError(f"unknown settings: {', '.join(unknown)}", path="$")
    return replace(Settings(), **data)
