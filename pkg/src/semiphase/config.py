"""Run configuration: JSON schema, validation, and object construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import jsonschema

from . import dynamics
from .dynamics import IntegratorConfig
from .estimator import observable_from_name
from .reference import GridSpec
from .sampling import SamplerConfig
from .states import Gaussian, GaussianSuperposition, TranslatedHermite

__all__ = ["RUN_CONFIG_SCHEMA", "RunConfig", "ConfigError"]


class ConfigError(ValueError):
    """Configuration rejected; message carries the JSON-pointer path."""


RUN_CONFIG_SCHEMA = {
    "type": "object",
    "required": ["eps", "potential", "initial_state", "methods", "sampler",
                 "integrator", "observables"],
    "additionalProperties": False,
    "properties": {
        "eps": {"type": "number", "exclusiveMinimum": 0},
        "potential": {
            "type": "object",
            "required": ["name"],
            "additionalProperties": False,
            "properties": {
                "name": {"enum": ["harmonic", "torsional", "henon-heiles", "cubic-well"]},
                "dim": {"type": "integer", "minimum": 1},
                "params": {"type": "object"},
            },
        },
        "initial_state": {
            "type": "object",
            "required": ["family"],
            "additionalProperties": False,
            "properties": {
                "family": {"enum": ["gaussian", "hermite", "superposition"]},
                "center": {"type": "array", "items": {"type": "number"}},
                "centers": {
                    "type": "array", "minItems": 2, "maxItems": 2,
                    "items": {"type": "array", "items": {"type": "number"}},
                },
                "k": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
        },
        "methods": {
            "type": "array", "minItems": 1,
            "items": {"enum": ["spectrogram", "naive-husimi", "wigner"]},
        },
        "sampler": {
            "type": "object",
            "required": ["mode", "count"],
            "additionalProperties": False,
            "properties": {
                "mode": {"enum": ["mc", "halton"]},
                "count": {"type": "integer", "minimum": 1},
                "seeds": {"type": "array", "minItems": 1,
                          "items": {"type": "integer"}},
                "halton_skip": {"type": "integer", "minimum": 0},
            },
        },
        "integrator": {
            "type": "object",
            "required": ["dt", "t_final"],
            "additionalProperties": False,
            "properties": {
                "scheme": {"enum": ["strang", "order8"]},
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "t_final": {"type": "number", "exclusiveMinimum": 0},
                "record_stride": {"type": "integer", "minimum": 1},
            },
        },
        "observables": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "reference": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "enabled": {"type": "boolean"},
                "mins": {"type": "array", "items": {"type": "number"}},
                "maxs": {"type": "array", "items": {"type": "number"}},
                "nodes": {"type": "array", "items": {"type": "integer", "minimum": 16}},
                "dt": {"type": "number", "exclusiveMinimum": 0},
                "record_stride": {"type": "integer", "minimum": 1},
                "boundary_tol": {"type": "number", "exclusiveMinimum": 0},
                "boundary_warn": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "gaussian_negative": {"enum": ["factorized", "sphere"]},
        "output_dir": {"type": "string"},
    },
}

_POTENTIALS = {
    "harmonic": lambda dim, params: dynamics.harmonic(dim or 1),
    "torsional": lambda dim, params: dynamics.torsional(),
    "henon-heiles": lambda dim, params: dynamics.henon_heiles(dim or 32, **(params or {})),
    "cubic-well": lambda dim, params: dynamics.cubic_well(**(params or {})),
}


@dataclass(frozen=True)
class RunConfig:
    """Validated, fully-specified run description.

    ``raw`` is the exact dict the config was built from; it round-trips
    through the metadata sidecars.
    """

    raw: dict = field(repr=False)

    @staticmethod
    def validate(data):
        validator = jsonschema.Draft202012Validator(RUN_CONFIG_SCHEMA)
        errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
        if errors:
            msgs = []
            for e in errors:
                pointer = "/" + "/".join(str(p) for p in e.absolute_path)
                msgs.append(f"{pointer}: {e.message}")
            raise ConfigError("; ".join(msgs))

    @classmethod
    def from_dict(cls, data):
        cls.validate(data)
        cfg = cls(raw=json.loads(json.dumps(data)))
        cfg._cross_check()
        return cfg

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return json.loads(json.dumps(self.raw))

    # -- constructed objects -------------------------------------------------

    @property
    def eps(self):
        return float(self.raw["eps"])

    def potential(self):
        spec = self.raw["potential"]
        return _POTENTIALS[spec["name"]](spec.get("dim"), spec.get("params"))

    def state(self):
        spec = self.raw["initial_state"]
        fam = spec["family"]
        if fam == "gaussian":
            return Gaussian(spec["center"], self.eps)
        if fam == "hermite":
            return TranslatedHermite(spec["center"], tuple(spec["k"]), self.eps)
        return GaussianSuperposition(tuple(spec["centers"]), self.eps)

    def sampler(self, seed=None):
        s = self.raw["sampler"]
        if seed is None:
            seed = self.seeds[0]
        return SamplerConfig(mode=s["mode"], count=s["count"], seed=seed,
                             halton_skip=s.get("halton_skip", 64))

    @property
    def seeds(self):
        return list(self.raw["sampler"].get("seeds", [0]))

    def integrator(self):
        i = self.raw["integrator"]
        return IntegratorConfig(scheme=i.get("scheme", "order8"), dt=i["dt"],
                                t_final=i["t_final"],
                                record_stride=i.get("record_stride", 10))

    def observables(self):
        pot = self.potential()
        return [observable_from_name(name, pot.dim, pot)
                for name in self.raw["observables"]]

    @property
    def methods(self):
        return list(self.raw["methods"])

    @property
    def gaussian_negative(self):
        return self.raw.get("gaussian_negative", "factorized")

    def reference_grid(self):
        r = self.raw.get("reference")
        if not r or not r.get("enabled", True):
            return None
        return GridSpec(tuple(r["mins"]), tuple(r["maxs"]), tuple(r["nodes"]))

    def reference_dt(self):
        return self.raw.get("reference", {}).get("dt")

    def reference_record_stride(self):
        return self.raw.get("reference", {}).get("record_stride", 10)

    def reference_boundary_tol(self):
        return self.raw.get("reference", {}).get("boundary_tol", 1e-10)

    def reference_boundary_warn(self):
        r = self.raw.get("reference", {})
        return r.get("boundary_warn", max(r.get("boundary_tol", 1e-10), 1e-8))

    # -- cross-field checks --------------------------------------------------

    def _cross_check(self):
        try:
            pot = self.potential()
            state = self.state()
        except (TypeError, KeyError) as exc:
            raise ConfigError(f"/initial_state: incomplete state spec ({exc})") from exc
        if pot.dim != state.dim:
            raise ConfigError(
                f"/potential: dimension {pot.dim} != state dimension {state.dim}"
            )
        if "wigner" in self.methods and not isinstance(state, Gaussian):
            raise ConfigError("/methods: the wigner baseline requires a gaussian state")
        for name in self.raw["observables"]:
            try:
                observable_from_name(name, pot.dim, pot)
            except ValueError as exc:
                raise ConfigError(f"/observables: {exc}") from exc
        self.integrator()  # raises on inconsistent dt / t_final
        grid = self.reference_grid()
        if grid is not None:
            if grid.dim != pot.dim:
                raise ConfigError("/reference: grid dimension mismatch")
            if self.reference_dt() is None:
                raise ConfigError("/reference: dt required when enabled")

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.raw == other.raw
