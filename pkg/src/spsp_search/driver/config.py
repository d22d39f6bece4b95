"""Search configuration and bound parsing."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, fields
from decimal import Decimal, InvalidOperation
from pathlib import Path

from spsp_search.bigmath import Natural, iroot_round
from spsp_search.gcdfilter import (
    DEFAULT_RHO_MAX_STEPS,
    DEFAULT_SIEVE_LIMIT,
    DEFAULT_TRIAL_LIMIT,
)
from spsp_search.primestream import DEFAULT_SEGMENT_SIZE
from spsp_search.wheelsieve import DEFAULT_HEADROOM

MAX_BASES = 13
DEFAULT_CHECKPOINT_EVERY = 10**4

_ALIASES = {"bases": "m", "out": "output_path", "resume": "resume_from", "x": "cutoff"}


def parse_bound(text: str | int) -> Natural:
    """Parse a decimal bound such as ``2048``, ``1.4e6`` or ``10^7``.

    Raises:
        ValueError: If the text is not a number or is not integral.

    Example:
        >>> parse_bound("1.4e6"), parse_bound("10^7")
        (1400000, 10000000)
    """

    if isinstance(text, int):
        return text
    cleaned = text.strip().replace("_", "")
    try:
        if "^" in cleaned:
            base, exponent = cleaned.split("^", 1)
            value = Decimal(base) ** int(exponent)
        else:
            value = Decimal(cleaned)
    except (InvalidOperation, ValueError) as exc:
        raise ValueError(f"Not a decimal bound: {text!r}") from exc
    if not value.is_finite() or value != value.to_integral_value():
        raise ValueError(f"Bound must be an integer: {text!r}")
    return int(value)


@dataclass(frozen=True)
class SearchConfig:
    """Parameters of one tabulation run.

    ``cutoff`` separates the GCD phase (``k <= cutoff``) from the sieve phase;
    it defaults to the nearest integer to ``bound ** (1/3)``.
    """

    bound: Natural
    m: int
    cutoff: Natural | None = None
    t_max: int | None = None
    headroom: int = DEFAULT_HEADROOM
    workers: int = 1
    output_path: Path | None = None
    resume_from: Path | None = None
    segment_size: int = DEFAULT_SEGMENT_SIZE
    trial_division_limit: int = DEFAULT_TRIAL_LIMIT
    residual_sieve_limit: int = DEFAULT_SIEVE_LIMIT
    rho_max_steps: int = DEFAULT_RHO_MAX_STEPS
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY
    use_signatures: bool = True

    def __post_init__(self) -> None:
        if self.bound < 9:
            raise ValueError("bound must be at least 9")
        if not 1 <= self.m <= MAX_BASES:
            raise ValueError(f"m must be between 1 and {MAX_BASES}")
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", max(2, iroot_round(self.bound, 3)))
        if not 2 <= self.x <= math.isqrt(self.bound):
            raise ValueError("cutoff must lie between 2 and sqrt(bound)")
        if self.t_max is not None and self.t_max < 2:
            raise ValueError("t_max must be at least 2")
        for name in (
            "headroom",
            "workers",
            "segment_size",
            "trial_division_limit",
            "residual_sieve_limit",
            "rho_max_steps",
            "checkpoint_every",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")

    @property
    def x(self) -> Natural:
        """The resolved cutoff."""

        if self.cutoff is None:
            return max(2, iroot_round(self.bound, 3))
        return self.cutoff

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]) -> SearchConfig:
        """Build a config from plain values, accepting CLI-style key aliases.

        Raises:
            ValueError: If a key is unknown or a required key is missing.
        """

        known = {f.name for f in fields(cls)}
        values: dict[str, object] = {}
        for key, value in mapping.items():
            name = _ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
            if name not in known:
                raise ValueError(f"Unknown configuration key: {key}")
            values[name] = value
        for name in ("bound", "m"):
            if name not in values:
                raise ValueError(f"Configuration is missing {name!r}")

        values["bound"] = parse_bound(_as_bound(values["bound"]))
        if values.get("cutoff") is not None:
            values["cutoff"] = parse_bound(_as_bound(values["cutoff"]))
        for name in ("output_path", "resume_from"):
            if values.get(name) is not None:
                values[name] = Path(str(values[name]))
        return cls(**values)  # type: ignore[arg-type]

    @classmethod
    def from_yaml(cls, text: str) -> SearchConfig:
        """Parse a YAML document into a config."""

        try:
            import yaml
        except ImportError as exc:  # pragma: no cover - optional dependency
            raise RuntimeError(
                "Reading YAML configurations requires the PyYAML dependency"
            ) from exc
        parsed = yaml.safe_load(text) or {}
        if not isinstance(parsed, Mapping):
            raise ValueError("A YAML configuration must be a mapping")
        return cls.from_mapping(parsed)


def _as_bound(value: object) -> str | int:
    if isinstance(value, bool):
        raise ValueError("Bounds must be numbers")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return repr(value)
    return str(value)


__all__ = ["DEFAULT_CHECKPOINT_EVERY", "MAX_BASES", "SearchConfig", "parse_bound"]
