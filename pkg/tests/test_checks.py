import random
from fractions import Fraction

import pytest

from bzchambers.chambers import chamber_of, closure_membership
from bzchambers.checks import (
    SUITE, check_continuity, check_inverse_sign, continuity_probe, probe_direction, run_suite,
)
from bzchambers.lattice import add
from bzchambers.randomspec import random_spec
from bzchambers.specs import BUNDLED, bundled

F = Fraction


def test_unconstrained_direction_can_give_non_monotone_errors():
    degenerate = bundled("degenerate")
    # the segment crosses a wall between k = 1 and k = 2, so the error first grows
    alpha, beta = (F(3), F(0), F(0)), (F(4), F(5), F(-5))
    errs = continuity_probe(degenerate, alpha, beta, ks=range(1, 5))
    assert errs[:2] == [2, F(5, 2)]


def test_probe_direction_fixes_the_counterexample():
    degenerate = bundled("degenerate")
    alpha = (F(3), F(0), F(0))
    beta = probe_direction(degenerate, alpha, (F(4), F(5), F(-5)))
    assert beta is not None
    assert closure_membership(degenerate, alpha, chamber_of(degenerate, add(alpha, beta)))
    errs = continuity_probe(degenerate, alpha, beta)
    assert all(b <= a for a, b in zip(errs, errs[1:]))
    assert errs[-1] * 64 == errs[0] > 0


def test_continuity_on_hilb2_wall(hilb2):
    # alpha = H sits on the wall; P is linear on each side
    errs = continuity_probe(hilb2, (F(1), F(0)), (F(0), F(1)), ks=(1, 2, 4))
    assert errs == [0, 0, 0]
    errs = continuity_probe(hilb2, (F(1), F(0)), (F(0), F(-1, 2)), ks=(1, 2, 4))
    assert errs == [F(1, 2), F(1, 4), F(1, 8)]


@pytest.mark.parametrize("name", BUNDLED)
def test_continuity_suite_on_bundled(name):
    assert check_continuity(bundled(name), random.Random(1), 15) == []


def test_continuity_suite_on_random_specs():
    rng = random.Random(17)
    for n in range(10):
        spec = random_spec(rng, max_rank=5, max_exceptional=5)
        assert check_continuity(spec, random.Random(n), 5) == []


def test_inverse_sign_check_flags_nothing_on_bundled():
    for name in BUNDLED:
        assert check_inverse_sign(bundled(name)) == []


def test_run_suite_is_deterministic_and_complete(a2):
    first = run_suite(a2, seed=4, count=8)
    assert [r.name for r in first] == [name for name, _ in SUITE]
    assert all(r.ok for r in first)
    assert run_suite(a2, seed=4, count=8) == first
    only = run_suite(a2, seed=4, count=8, only=lambda n: n == "hodge index")
    assert [r.name for r in only] == ["hodge index"]


def test_verify_hilb2_seed1_count1000():
    results = run_suite(bundled("hilb2"), seed=1, count=1000)
    assert [r.name for r in results if not r.ok] == []
