"""Theory registry: resolve names and JSON definitions to theory handles.

The default catalog is always available; a JSON config (see
``RunConfig``) can add parameterized entries.  Names follow the
catalog's own naming (``T_eq_P``, ``T_leq_3``, ``T_mn_2_5``, ...), with
a few spellings normalized (``T=P``, ``Teq``, ``Th_of(toy)``).
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field

from .catalog import (
    BigModelTagTheory,
    CapOrUnboundedTheory,
    EqualityTheory,
    ExactSizeTheory,
    GapIndexTheory,
    InfiniteOnlyTheory,
    MaxSizeTheory,
    MinSizeTheory,
    MixedTagTheory,
    OracleFloorTheory,
    SingletonOrInfiniteTheory,
    SizeCapTheory,
    SizePinTheory,
    StepTheory,
    TaggedInfinityTheory,
    TwoSizeTheory,
    default_catalog,
    make_complete_theory,
    toy_inner_theory,
)
from .errors import CombineKitError
from .sets import parse_set_literal
from .theories import FOracle, Theory, doubling_oracle, identity_oracle

CONFIG_ENV_VAR = "COMBINEKIT_CONFIG"


class RegistryError(CombineKitError):
    pass


def _oracle_from_json(spec) -> FOracle:
    if spec is None:
        return identity_oracle()
    kind = spec.get("kind", "identity")
    if kind == "identity":
        return identity_oracle()
    if kind == "double":
        return doubling_oracle()
    raise RegistryError(f"unknown oracle kind {kind!r}")


def theory_from_json(spec: dict, registry: "Registry | None" = None) -> Theory:
    """Build a theory handle from its JSON definition."""
    kind = spec.get("kind")
    fam = spec.get("family", "P")
    if kind in ("T_eq", "Teq"):
        return EqualityTheory()
    if kind == "T_inf":
        return InfiniteOnlyTheory()
    if kind == "T_eq_n":
        return ExactSizeTheory(int(spec["n"]))
    if kind == "T_leq_n":
        return MaxSizeTheory(int(spec["n"]))
    if kind == "T_geq_n":
        return MinSizeTheory(int(spec["n"]))
    if kind == "T_eq_P":
        return SizePinTheory(fam)
    if kind == "T_gt_n_P":
        return BigModelTagTheory(int(spec["n"]), fam)
    if kind == "T_mn":
        return TwoSizeTheory(int(spec["m"]), int(spec["n"]), fam)
    if kind == "T_leq_S":
        return SizeCapTheory(parse_set_literal(spec["S"]), _oracle_from_json(spec.get("F")), fam)
    if kind == "Th_of":
        inner_spec = spec["inner"]
        if isinstance(inner_spec, str):
            if registry is None:
                raise RegistryError("inner theory reference needs a registry")
            inner = registry.resolve(inner_spec)
        else:
            inner = theory_from_json(inner_spec, registry)
        return GapIndexTheory(inner, fam)
    if kind == "T_d":
        return MixedTagTheory(int(spec["n"]), _oracle_from_json(spec.get("F")), fam)
    if kind == "T_cfs":
        return CapOrUnboundedTheory(_oracle_from_json(spec.get("F")), fam)
    if kind == "T_si":
        return TaggedInfinityTheory(fam)
    if kind == "T_cs":
        return SingletonOrInfiniteTheory(fam)
    if kind == "T_ns":
        return StepTheory(int(spec["n"]), int(spec["n"]), fam)
    if kind == "T_step":
        return StepTheory(int(spec["pin"]), int(spec["floor"]), fam)
    if kind == "T_geq_F":
        return OracleFloorTheory(_oracle_from_json(spec.get("F")), fam)
    if kind == "toy":
        return toy_inner_theory()
    if kind == "complete":
        return make_complete_theory(spec["role"], n=spec.get("n"))
    raise RegistryError(f"unknown theory kind {kind!r}")


_DYNAMIC_PATTERNS: list[tuple[re.Pattern, callable]] = [
    (re.compile(r"^T_eq_(\d+)$"), lambda m: ExactSizeTheory(int(m.group(1)))),
    (re.compile(r"^T_leq_(\d+)$"), lambda m: MaxSizeTheory(int(m.group(1)))),
    (re.compile(r"^T_geq_(\d+)$"), lambda m: MinSizeTheory(int(m.group(1)))),
    (re.compile(r"^T_gt_(\d+)_P$"), lambda m: BigModelTagTheory(int(m.group(1)))),
    (re.compile(r"^T_mn_(\d+)_(\d+)$"), lambda m: TwoSizeTheory(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^T_d_(\d+)$"), lambda m: MixedTagTheory(int(m.group(1)))),
    (re.compile(r"^T_ns_(\d+)$"), lambda m: StepTheory(int(m.group(1)), int(m.group(1)))),
    (re.compile(r"^complete_nshiny_(\d+)$"), lambda m: make_complete_theory("n-shiny-complete", n=int(m.group(1)))),
]

_ALIASES = {
    "T=P": "T_eq_P",
    "Teq": "T_eq",
    "Tinf": "T_inf",
}


@dataclass
class RunConfig:
    """CLI-facing configuration: extra theory definitions plus defaults."""

    theories: dict = field(default_factory=dict)
    brute_bound: int = 6
    iteration_cap: int = 10_000
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.brute_bound < 1 or self.iteration_cap < 1:
            raise ValueError("bounds must be >= 1")

    @staticmethod
    def from_file(path: str) -> "RunConfig":
        with open(path) as fh:
            raw = json.load(fh)
        return RunConfig(
            theories=raw.get("theories", {}),
            brute_bound=raw.get("K", 6),
            iteration_cap=raw.get("cap", 10_000),
            seed=raw.get("seed", 0),
            output_format=raw.get("format", "json"),
        )


class Registry:
    """Named theory handles: default catalog + config additions."""

    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig()
        self._theories: dict[str, Theory] = {}
        for t in default_catalog():
            self._theories[t.name] = t
        # Convenience spellings for the size-cap entries.
        from .sets import evens, upfrom

        for t in list(self._theories.values()):
            if isinstance(t, SizeCapTheory):
                if t.s == evens():
                    self._theories["T_leq_S_evens"] = t
                elif t.s == upfrom(1):
                    self._theories["T_leq_S_all"] = t
        for name, spec in self.config.theories.items():
            self._theories[name] = theory_from_json(spec, self)

    def names(self) -> list[str]:
        return sorted(self._theories)

    def resolve(self, name: str) -> Theory:
        name = name.strip()
        name = _ALIASES.get(name, name)
        if name in self._theories:
            return self._theories[name]
        for pattern, build in _DYNAMIC_PATTERNS:
            m = pattern.match(name)
            if m:
                t = build(m)
                self._theories[t.name] = t
                return t
        raise RegistryError(f"unknown theory {name!r}; known: {', '.join(self.names())}")

    def all_theories(self) -> list[Theory]:
        seen: set[int] = set()
        out = []
        for name in sorted(self._theories):
            t = self._theories[name]
            if id(t) not in seen:
                seen.add(id(t))
                out.append(t)
        return out


def load_registry(config_path: str | None = None) -> Registry:
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    config = RunConfig.from_file(path) if path else RunConfig()
    return Registry(config)
