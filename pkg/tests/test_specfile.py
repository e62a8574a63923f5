import json
import random
from fractions import Fraction

import pytest

from bzchambers.errors import InputError
from bzchambers.lattice import ManifoldSpec, Prime
from bzchambers.randomspec import random_spec
from bzchambers.specfile import (
    SpecParseError, SpecValidationError, dump_spec, dumps, load_spec, loads,
)
from bzchambers.specs import BUNDLED, bundled, bundled_path, hilb2

F = Fraction

HILB2 = {
    "rank": 2, "half_dim": 2, "fujiki": 3, "basis_labels": ["H", "delta"],
    "gram": [[2, 0], [0, -2]], "ample": [2, -1],
    "primes": [{"label": "delta", "coords": [0, 1]}],
}


def text(**changes):
    d = dict(HILB2, **changes)
    return json.dumps({k: v for k, v in d.items() if v is not None})


def test_bundled_hilb2_is_the_worked_example():
    s = load_spec(bundled_path("hilb2"))
    assert s == hilb2()
    assert (s.rank, s.half_dim, s.fujiki) == (2, 2, 3)
    assert s.gram == ((2, 0), (0, -2)) and s.ample == (2, -1)
    assert [p.label for p in s.primes] == ["delta"]
    assert s.annotations == (("3H-2delta", (3, -2), "nef"),)


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip_bundled(name):
    s = bundled(name)
    assert loads(dumps(s)) == s
    assert dumps(loads(dumps(s))) == dumps(s)


def test_round_trip_random_and_files(tmp_path):
    rng = random.Random(31)
    for k in range(30):
        s = random_spec(rng, max_rank=6, max_exceptional=6)
        assert loads(dumps(s)) == s
    path = tmp_path / "s.spec"
    dump_spec(s, path)
    assert load_spec(path) == s


def test_rationals_are_exact():
    s = loads(text(fujiki="3/2", ample=["2", "-1/1"]))
    assert s.fujiki == F(3, 2) and s.ample == (2, -1)
    assert '"3/2"' in dumps(s)


@pytest.mark.parametrize("bad", [1.5, "1.5", "1e3", "x", "1/0", True])
def test_inexact_or_garbage_numbers_are_parse_errors(bad):
    with pytest.raises(SpecParseError) as err:
        loads(text(fujiki=bad))
    assert err.value.path == "fujiki"


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(SpecParseError) as err:
        loads('{\n  "rank": 2,\n  "gram": [[2, 0] [0, -2]]\n}')
    assert (err.value.line, err.value.col) == (3, 19)
    assert "line 3, column 19" in str(err.value)


def test_gram_row_length_mismatch_is_a_parse_error():
    with pytest.raises(SpecParseError) as err:
        loads(text(gram=[[2, 0], [0]]))
    assert err.value.path == "gram[1]"


@pytest.mark.parametrize("changes, path", [
    ({"rank": None}, "rank"),
    ({"rank": 0}, "rank"),
    ({"colour": "red"}, "colour"),
    ({"ample": [1]}, "ample"),
    ({"basis_labels": ["H", "H"]}, "basis_labels"),
    ({"primes": [{"label": "d", "coords": [0, 1], "weight": 2}]}, "primes[0]"),
    ({"primes": [{"coords": [0, 1]}]}, "primes[0]"),
])
def test_structural_errors_name_the_key(changes, path):
    with pytest.raises(SpecParseError) as err:
        loads(text(**changes))
    assert err.value.path == path


def test_parse_errors_are_input_errors():
    assert issubclass(SpecParseError, InputError)
    with pytest.raises(SpecParseError):
        load_spec("/nonexistent/file.spec")


def test_negative_intersection_is_a_validation_error():
    gram = [[2, 0, 0], [0, -2, 0], [0, 0, -2]]
    data = {"rank": 3, "half_dim": 1, "fujiki": 1, "gram": gram, "ample": [2, 0, 0],
            "primes": [{"label": "D1", "coords": [1, 1, 0]},
                       {"label": "D2", "coords": ["1/2", 1, 0]}]}
    spec = loads(json.dumps(data), validate=False)
    assert spec.prime_gram[0][1] == -1
    with pytest.raises(SpecValidationError) as err:
        loads(json.dumps(data))
    assert "intersection" in str(err.value)


def test_wrong_signature_is_a_validation_error():
    with pytest.raises(SpecValidationError) as err:
        loads(text(gram=[[2, 0], [0, 2]], primes=[]))
    assert [k for k, _ in err.value.report.violations][0] == "signature"


def test_annotations_are_carried_but_inert():
    s = loads(text(annotations=[{"label": "N", "coords": [3, -2], "role": "nef"}]))
    bare = loads(text())
    assert s.annotations == (("N", (3, -2), "nef"),)
    assert s.gram == bare.gram and s.primes == bare.primes


def test_default_basis_labels():
    s = loads(text(basis_labels=None))
    assert s.basis_labels == ("e0", "e1")
    assert ManifoldSpec(1, 1, 1, [[2]], [1], ()).rank == 1
    assert Prime("x", (1,)).label == "x"
