"""The worked examples as exact games.

Base games are ``table-1``, ``tables-5-6``, ``tables-9``, ``tables-12-13`` and
``tables-18-19``. The remaining entries are the expected results of applying
the corresponding contracts: ``table-2`` (six-unit losing contract on
``table-1``), ``tables-7-8`` (amounts of two on ``tables-5-6``), ``table-11``
(reward contract with p = (5, 3) on ``tables-9``) and ``tables-16-17``
(conditional punishment with r = (2, 2, 2) on ``tables-12-13``).
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .game import Game
from .io import game_from_json

BASE = ("table-1", "tables-5-6", "tables-9", "tables-12-13", "tables-18-19")
DERIVED = ("table-2", "tables-7-8", "table-11", "tables-16-17")


@lru_cache(maxsize=None)
def _corpus() -> dict[str, Game]:
    text = resources.files("losing_contracts").joinpath("data/fixtures.json").read_text()
    return {name: game_from_json(data) for name, data in json.loads(text).items()}


def load(name: str) -> Game:
    try:
        return _corpus()[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(_corpus())}") from None


def names() -> list[str]:
    return sorted(_corpus())
