"""Published strong pseudoprimes used as verification fixtures.

``PSI`` maps ``m`` to the smallest strong pseudoprime to the first ``m``
prime bases with its factorization. ``PUBLISHED_TABLES`` holds further
pseudoprimes reported from the two large searches, verbatim, including one
row whose factors do not multiply to its ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

from spsp_search.bigmath import Natural


@dataclass(frozen=True, slots=True)
class Witness:
    label: str
    n: Natural
    factors: tuple[Natural, ...]
    bases: int | None = None


_PSI_ROWS: dict[int, tuple[Natural, tuple[Natural, ...]]] = {
    1: (2047, (23, 89)),
    2: (1373653, (829, 1657)),
    3: (25326001, (2251, 11251)),
    4: (3215031751, (151, 751, 28351)),
    5: (2152302898747, (6763, 10627, 29947)),
    6: (3474749660383, (1303, 16927, 157543)),
    7: (341550071728321, (10670053, 32010157)),
    8: (341550071728321, (10670053, 32010157)),
    9: (3825123056546413051, (149491, 747451, 34233211)),
    10: (3825123056546413051, (149491, 747451, 34233211)),
    11: (3825123056546413051, (149491, 747451, 34233211)),
    12: (318665857834031151167461, (399165290221, 798330580441)),
    13: (3317044064679887385961981, (1287836182261, 2575672364521)),
}

PSI: dict[int, Witness] = {
    m: Witness(f"psi_{m}", n, factors, m) for m, (n, factors) in _PSI_ROWS.items()
}

_TABLE_ROWS: tuple[tuple[Natural, tuple[Natural, ...]], ...] = (
    (3825123056546413051, (149491, 747451, 34233211)),
    (230245660726188031, (214831, 787711, 1360591)),
    (360681321802296925566181, (424665351661, 849330703321)),
    (164280218643672633986221, (286600958341, 573201916681)),
    (318665857834031151167461, (399165290221, 798330580441)),
    (7395010240794120709381, (60807114061, 121614228121)),
    (2995741773170734841812261, (1223875355821, 2447750711641)),
    (667636712015520329618581, (577770158461, 1155540316921)),
    (3317044064679887385961981, (1287836182261, 2575672364521)),
    (3317044064679887385961981, (1247050339261, 2494100678521)),
    (552727880697763694556181, (525703281661, 1051406563321)),
    (3404730287403079539471001, (1304747157001, 2609494314001)),
)

PUBLISHED_TABLES: tuple[Witness, ...] = tuple(
    Witness(f"table_{i}", n, factors) for i, (n, factors) in enumerate(_TABLE_ROWS, 1)
)

MISMATCHED_ROW = Witness(
    "table_10", 3317044064679887385961981, (1247050339261, 2494100678521)
)


def known_witnesses() -> tuple[Witness, ...]:
    return (*PSI.values(), *PUBLISHED_TABLES)


__all__ = ["MISMATCHED_ROW", "PSI", "PUBLISHED_TABLES", "Witness", "known_witnesses"]
