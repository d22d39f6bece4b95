"""Namespace conveniences for the :mod:`spsp_search` package."""

from __future__ import annotations

from importlib import import_module
from pkgutil import extend_path
from types import ModuleType

__path__ = list(extend_path(__path__, __name__))

_SUBMODULES: dict[str, str] = {
    "bigmath": "spsp_search.bigmath",
    "signatures": "spsp_search.signatures",
    "primestream": "spsp_search.primestream",
    "sigtable": "spsp_search.sigtable",
    "gcdfilter": "spsp_search.gcdfilter",
    "wheelsieve": "spsp_search.wheelsieve",
    "driver": "spsp_search.driver",
    "stats": "spsp_search.stats",
}


def __getattr__(name: str) -> ModuleType:
    """Lazy-load selected submodules.

    This allows ``import spsp_search as ss`` followed by ``ss.gcdfilter``
    without importing the pipeline eagerly. Only known submodules are exposed
    to avoid polluting the public namespace.
    """

    if name in _SUBMODULES:
        module = import_module(_SUBMODULES[name])
        if isinstance(module, ModuleType):
            globals()[name] = module
            return module
    raise AttributeError(f"module 'spsp_search' has no attribute {name!r}")


__all__ = tuple(_SUBMODULES)
