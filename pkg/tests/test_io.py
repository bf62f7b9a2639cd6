import json
from fractions import Fraction

import pytest

from losing_contracts import fixtures
from losing_contracts.contracts import theorem1_amounts
from losing_contracts.errors import FormatError
from losing_contracts.io import (
    contract_from_json,
    game_from_json,
    parse_rational,
    schedule_from_json,
)


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("-7/2") == Fraction(-7, 2)
    for bad in ["4/2", "3/1", "-0/5", "0.5", 0.5, True, "1/0", " 1/2"]:
        with pytest.raises(FormatError):
            parse_rational(bad)


def test_game_round_trip():
    for name in fixtures.names():
        g = fixtures.load(name)
        text = json.dumps(g.to_json())
        assert game_from_json(json.loads(text)) == g


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"players": 2, "strategies": [2, 2]},
        {"players": 3, "strategies": [2, 2], "payoffs": [[1] * 4, [1] * 4]},
        {"players": 2, "strategies": [2, 2], "payoffs": [[1] * 3, [1] * 4]},
        {"players": 2, "strategies": [2, 2], "payoffs": [[1] * 4, [1, 1, 1, "2/4"]]},
        {"players": 2, "strategies": [1, 2], "payoffs": [[1, 1], [1, 1]]},
    ],
)
def test_game_format_errors(data):
    with pytest.raises(FormatError):
        game_from_json(data)


def test_contract_round_trip():
    c = theorem1_amounts(fixtures.load("tables-12-13"))
    back = contract_from_json(json.loads(json.dumps(c.to_json())))
    assert back == c
    with pytest.raises(FormatError):
        contract_from_json({"scheme": "bogus", "amounts": [[1]]})


def test_schedule_reader():
    s = schedule_from_json({"contributions": [[2, 1, 0]] * 3, "threshold": 3, "multiplier": "5/2"})
    assert s.multiplier == Fraction(5, 2)
    with pytest.raises(FormatError):
        schedule_from_json({"contributions": [[2, 0]]})
