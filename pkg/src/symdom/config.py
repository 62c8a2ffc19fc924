"""Run configuration: a versioned, strictly-validated JSON schema.

Unknown keys are rejected everywhere so that experiment configs stay
reproducible artifacts; all randomness flows from the single `seed`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dynamics import SelfMap, map_from_dict
from .errors import ConfigError
from .factors import (
    Element,
    Factor,
    element_from_pairs,
    element_to_pairs,
    factor_from_spec,
    factor_to_spec,
)
from .horofunction import HorofunctionData, horofunction_from_limit_data

SCHEMA = "symdom.run/1"

TOLERANCE_NAMES = {
    "eh_tol": 1e-12,
    "cluster_tol": 1e-3,
    "closure_tol": 1e-3,
    "unit_threshold": 1e-3,  # limit points count as boundary above 1 - this
    "bisect_tol": 1e-10,
    "sigma_floor": 1e-9,
    "tripotent_check": 1e-8,
    "escape_tol": 1e-3,
}

_TOP_KEYS = {
    "schema",
    "factor",
    "map",
    "starts",
    "iterations",
    "seed",
    "tolerances",
    "horofunction",
    "slice",
    "s_list",
    "wolff",
}
_WOLFF_KEYS = {"beta_ks", "invariance_samples", "sample_norm"}
_SLICE_KEYS = {"origin", "e1", "e2", "extent", "resolution"}
_HORO_KEYS = {"frame", "sigma"}


@dataclass
class RunConfig:
    """Validated experiment configuration; see `run_config_from_dict`."""

    factor: Factor
    map: SelfMap | None = None
    starts: list[Element] = field(default_factory=list)
    iterations: int = 200
    seed: int = 0
    tolerances: dict = field(default_factory=dict)
    horofunction: HorofunctionData | None = None
    slice: dict | None = None
    s_list: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0])
    wolff: dict = field(default_factory=dict)

    def tol(self, name: str) -> float:
        if name not in TOLERANCE_NAMES:
            raise ConfigError(f"unknown tolerance {name!r}")
        return float(self.tolerances.get(name, TOLERANCE_NAMES[name]))


def _check_keys(obj: dict, allowed: set, where: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object, got {type(obj).__name__}")
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {where}")


def run_config_from_dict(data: dict) -> RunConfig:
    _check_keys(data, _TOP_KEYS, "run config")
    if data.get("schema") != SCHEMA:
        raise ConfigError(
            f"config schema must be {SCHEMA!r}, got {data.get('schema')!r}"
        )
    if "factor" not in data:
        raise ConfigError("config needs a 'factor' spec")
    factor = factor_from_spec(data["factor"])
    cfg = RunConfig(factor=factor)
    if "map" in data:
        cfg.map = map_from_dict(factor, data["map"])
    if "starts" in data:
        if not isinstance(data["starts"], list):
            raise ConfigError("'starts' must be a list of elements")
        cfg.starts = [element_from_pairs(factor, s) for s in data["starts"]]
    if "iterations" in data:
        n = data["iterations"]
        if not isinstance(n, int) or n < 0:
            raise ConfigError(f"'iterations' must be a non-negative integer, got {n!r}")
        cfg.iterations = n
    if "seed" in data:
        if not isinstance(data["seed"], int):
            raise ConfigError("'seed' must be an integer")
        cfg.seed = data["seed"]
    if "tolerances" in data:
        _check_keys(data["tolerances"], set(TOLERANCE_NAMES), "tolerances")
        cfg.tolerances = {k: float(v) for k, v in data["tolerances"].items()}
    if "horofunction" in data:
        _check_keys(data["horofunction"], _HORO_KEYS, "horofunction")
        frame = [element_from_pairs(factor, e) for e in data["horofunction"]["frame"]]
        sigma = [float(s) for s in data["horofunction"]["sigma"]]
        cfg.horofunction = horofunction_from_limit_data(frame, sigma)
    if "slice" in data:
        _check_keys(data["slice"], _SLICE_KEYS, "slice")
        sl = dict(data["slice"])
        for key in ("origin", "e1", "e2"):
            if key not in sl:
                raise ConfigError(f"slice needs '{key}'")
            sl[key] = element_from_pairs(factor, sl[key])
        sl.setdefault("extent", [-1.0, 1.0, -1.0, 1.0])
        sl.setdefault("resolution", 41)
        if len(sl["extent"]) != 4:
            raise ConfigError("slice extent must be [umin, umax, vmin, vmax]")
        cfg.slice = sl
    if "s_list" in data:
        cfg.s_list = [float(s) for s in data["s_list"]]
        if any(s <= 0 for s in cfg.s_list):
            raise ConfigError("hororadii in s_list must be positive")
    if "wolff" in data:
        _check_keys(data["wolff"], _WOLFF_KEYS, "wolff options")
        cfg.wolff = dict(data["wolff"])
    return cfg


def run_config_to_dict(cfg: RunConfig) -> dict:
    out: dict = {"schema": SCHEMA, "factor": factor_to_spec(cfg.factor)}
    if cfg.map is not None:
        out["map"] = cfg.map.to_dict()
    if cfg.starts:
        out["starts"] = [element_to_pairs(s) for s in cfg.starts]
    out["iterations"] = cfg.iterations
    out["seed"] = cfg.seed
    if cfg.tolerances:
        out["tolerances"] = dict(cfg.tolerances)
    if cfg.horofunction is not None:
        out["horofunction"] = {
            "frame": [element_to_pairs(e) for e in cfg.horofunction.frame],
            "sigma": list(cfg.horofunction.sigma),
        }
    if cfg.slice is not None:
        sl = dict(cfg.slice)
        for key in ("origin", "e1", "e2"):
            sl[key] = element_to_pairs(sl[key])
        out["slice"] = sl
    out["s_list"] = list(cfg.s_list)
    if cfg.wolff:
        out["wolff"] = dict(cfg.wolff)
    return out
