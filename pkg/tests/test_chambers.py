import random
from fractions import Fraction

import pytest

from bzchambers.chambers import (
    ENUMERATION_WARN, EnumerationLimit, boundary_perturbation, chamber_of, check_block,
    closure_membership, enumerate_blocks, face_inequalities, geometric_decomposition_check,
    movable_interior_point, nef_representative, position_in_chamber, representative_coefficients,
)
from bzchambers.checks import check_chambers, check_monotonicity
from bzchambers.errors import InputError, NotBig
from bzchambers.randomspec import random_block_spec, random_spec
from bzchambers.specs import bundled, spec_from_block_gram
from bzchambers.zariski import null_locus

F = Fraction


def test_enumerate_blocks_examples(hilb2, a2, degenerate):
    assert enumerate_blocks(hilb2) == [(), (0,)]
    assert enumerate_blocks(a2) == [(), (0,), (1,), (0, 1)]
    assert enumerate_blocks(degenerate) == [(), (0,), (1,)]
    assert enumerate_blocks(bundled("rank1")) == [()]


def test_enumerate_blocks_is_shortlex_and_closed_under_subsets():
    rng = random.Random(2)
    for _ in range(10):
        spec = random_block_spec(rng, 6, dominant=False)
        blocks = enumerate_blocks(spec)
        assert blocks == sorted(blocks, key=lambda b: (len(b), b))
        bset = set(blocks)
        for b in blocks:
            for i in range(len(b)):
                assert b[:i] + b[i + 1:] in bset


def test_enumeration_limit(a2):
    with pytest.raises(EnumerationLimit):
        enumerate_blocks(a2, max_blocks=3)
    assert len(enumerate_blocks(a2, max_blocks=4)) == 4


def test_enumeration_warns_when_large(monkeypatch, a2):
    import bzchambers.chambers as ch
    monkeypatch.setattr(ch, "ENUMERATION_WARN", 2)
    with pytest.warns(RuntimeWarning):
        ch.enumerate_blocks(a2)
    assert ENUMERATION_WARN == 2 ** 20


def test_check_block_rejects_non_blocks(degenerate):
    with pytest.raises(InputError):
        check_block(degenerate, [0, 1])


def test_movable_interior_point(hilb2):
    assert movable_interior_point(hilb2) == (2, -1)
    assert movable_interior_point(bundled("rank1")) == bundled("rank1").ample
    with pytest.raises(InputError):
        movable_interior_point(hilb2, (1, 0))


def test_nef_representative_examples(hilb2, a1a1):
    assert representative_coefficients(hilb2, [0]) == {0: 1}
    assert nef_representative(hilb2, [0]) == (2, 0)
    assert nef_representative(hilb2, []) == (2, -1)
    m = movable_interior_point(a1a1)
    lam = representative_coefficients(a1a1, [0, 1], m)
    assert lam == {i: a1a1.pairings(m)[i] / 2 for i in (0, 1)}


def test_chamber_of_examples(hilb2):
    assert chamber_of(hilb2, (1, 1)) == (0,)
    assert chamber_of(hilb2, (2, -1)) == ()
    assert chamber_of(hilb2, (1, 0)) == ()
    with pytest.raises(NotBig):
        chamber_of(hilb2, (1, -1))


def test_position_examples(hilb2):
    p = position_in_chamber(hilb2, (1, 1))
    assert (p.kind, p.block, p.null) == ("interior", (0,), (0,))
    p = position_in_chamber(hilb2, (1, 0))
    assert (p.kind, p.block, p.null) == ("boundary", (), (0,))
    assert position_in_chamber(hilb2, (2, -1)).interior


def test_closure_examples(hilb2):
    assert closure_membership(hilb2, (1, 0), [0])
    assert closure_membership(hilb2, (1, 0), [])
    assert not closure_membership(hilb2, (2, -1), [0])


def test_face_inequalities(hilb2, a1a1):
    assert face_inequalities(hilb2, [0]) == [("eq", 0)]
    assert face_inequalities(hilb2, []) == [("geq", 0)]
    assert face_inequalities(a1a1, [0]) == [("eq", 0), ("geq", 1)]


def test_geometric_check_examples(hilb2):
    g = geometric_decomposition_check(hilb2, (1, 1), [0])
    assert g.holds and g.positive == (1, 0) and g.residue == {0: 1}
    g = geometric_decomposition_check(hilb2, (1, 0), [0])
    assert g.holds and g.residue == {0: 0}
    assert not geometric_decomposition_check(hilb2, (2, -1), [0]).holds


def test_boundary_perturbation(hilb2):
    pushed, j = boundary_perturbation(hilb2, (1, 0), F(1, 2))
    assert j == 0 and chamber_of(hilb2, pushed) == (0,)
    with pytest.raises(InputError):
        boundary_perturbation(hilb2, (2, -1))


def test_representatives_have_the_block_as_null_locus():
    rng = random.Random(4)
    for _ in range(15):
        spec = random_spec(rng, max_rank=5, max_exceptional=5)
        for s in enumerate_blocks(spec):
            assert null_locus(spec, nef_representative(spec, s)) == s


@pytest.mark.parametrize("name", ["hilb2", "a2", "a1a1", "degenerate", "irrational"])
def test_chamber_suite_on_bundled(name):
    spec = bundled(name)
    assert check_chambers(spec, random.Random(0), 40) == []
    assert check_monotonicity(spec, random.Random(0), 40) == []


def test_chamber_suite_on_random_specs():
    rng = random.Random(8)
    for n in range(8):
        spec = random_spec(rng, max_rank=5, max_exceptional=5)
        assert check_chambers(spec, random.Random(n), 10) == []


def test_block_spec_builder_matches_requested_gram():
    h = [[-3, 1, 0], [1, -2, 2], [0, 2, -4]]
    spec = spec_from_block_gram(h)
    assert [list(r) for r in spec.prime_gram] == h
    with pytest.raises(InputError):
        spec_from_block_gram([[-2, -1], [-1, -2]])
