"""Resource bounds and seeds, with environment-variable fallbacks."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace

DEFAULT_SEED = 20171


@dataclass(frozen=True)
class Config:
    enumeration_bound: int = 10**6
    index_bound: int = 10**4
    lattice_bound: int = 5040
    seed: int = DEFAULT_SEED
    # symmetric-group witness construction
    symmetric_cap: int = 16
    fallback_attempts: int = 10**4
    allow_degenerate: bool = False

    def replace(self, **changes) -> "Config":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_env(cls, environ=None) -> "Config":
        env = os.environ if environ is None else environ
        changes = {}
        if env.get("FRATTINI_LATTICE_BOUND"):
            changes["lattice_bound"] = int(env["FRATTINI_LATTICE_BOUND"])
        if env.get("FRATTINI_SEED"):
            changes["seed"] = int(env["FRATTINI_SEED"])
        return cls(**changes)


DEFAULT = Config()
