"""Plain-text hit files.

A hit file starts with one ``#`` header line recording the search parameters
and then holds one tab-separated record per hit::

    n <TAB> t <TAB> p1*p2*... <TAB> bases_passed <TAB> phase
"""

from __future__ import annotations

from collections.abc import Iterable
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from spsp_search.driver.config import SearchConfig
from spsp_search.driver.records import Hit, Phase


def package_version() -> str:
    try:
        return version("spsp-search")
    except PackageNotFoundError:
        return "0+unknown"


def format_header(cfg: SearchConfig) -> str:
    return f"# B={cfg.bound} m={cfg.m} X={cfg.x} version={package_version()}"


def format_hit(hit: Hit) -> str:
    factors = "*".join(str(p) for p in hit.factors)
    return f"{hit.n}\t{hit.t}\t{factors}\t{hit.bases_passed}\t{hit.found_by.value}"


def parse_hit(line: str) -> Hit:
    """Parse one record line.

    Raises:
        ValueError: If the line does not have five tab-separated fields or the
            factors do not multiply to ``n``.
    """

    parts = line.rstrip("\n").split("\t")
    if len(parts) != 5:
        raise ValueError(f"Malformed hit record: {line!r}")
    n, t, factors, bases_passed, phase = parts
    hit = Hit(
        n=int(n),
        factors=tuple(int(p) for p in factors.split("*")),
        bases_passed=int(bases_passed),
        found_by=Phase(phase),
    )
    if hit.t != int(t):
        raise ValueError(f"Record claims t={t} but lists {hit.t} factors")
    return hit


def read_hits(path: Path) -> list[Hit]:
    """Return the hits stored in ``path``, or an empty list if it does not exist."""

    if not path.exists():
        return []
    hits = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        hits.append(parse_hit(line))
    return hits


def append_hit(path: Path, cfg: SearchConfig, hit: Hit) -> None:
    """Append ``hit``, writing the header first when the file is new."""

    new_file = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8") as handle:
        if new_file:
            handle.write(format_header(cfg) + "\n")
        handle.write(format_hit(hit) + "\n")


def write_hits(path: Path, cfg: SearchConfig, hits: Iterable[Hit]) -> None:
    """Rewrite ``path`` with a header and the given hits in order."""

    lines = [format_header(cfg), *(format_hit(hit) for hit in hits)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


__all__ = [
    "append_hit",
    "format_header",
    "format_hit",
    "package_version",
    "parse_hit",
    "read_hits",
    "write_hits",
]
