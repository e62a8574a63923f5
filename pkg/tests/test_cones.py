import random
from fractions import Fraction
from itertools import product

import pytest

from bzchambers.checks import check_cones
from bzchambers.cones import (
    IrrationalRay, Ray, Slicer, extremal_ray_witness, in_psef, in_qnef_cone, psef_cone,
    qnef_cone, ray_slopes,
)
from bzchambers.errors import InputError
from bzchambers.lattice import ManifoldSpec, Prime, qform
from bzchambers.randomspec import random_spec
from bzchambers.specs import bundled

F = Fraction


def coords(cone):
    return [(tuple(map(int, r.coords)), r.source) for r in cone.rays]


def test_hilb2_cones(hilb2):
    assert coords(psef_cone(hilb2)) == [((1, -1), "isotropic"), ((0, 1), "prime:delta")]
    assert coords(qnef_cone(hilb2)) == [((1, -1), "isotropic"), ((1, 0), "wall:delta")]
    assert ray_slopes(hilb2, qnef_cone(hilb2)) == [-1, F(1, 2)]


def test_plane_cones_are_the_positive_cone():
    plane = bundled("plane")
    assert coords(psef_cone(plane)) == coords(qnef_cone(plane)) == [
        ((1, -1), "isotropic"), ((1, 1), "isotropic")]


def test_irrational_boundary_is_bracketed():
    spec = bundled("irrational")
    low = psef_cone(spec).rays[0]
    assert isinstance(low, IrrationalRay) and low.slope_squared == F(1, 2)
    assert low.inner == (1000, -707) and low.outer == (250, -177)
    assert in_psef(spec, low.inner) and not in_psef(spec, low.outer)
    sl = Slicer.of(spec)
    assert sl.slope(low.inner) ** 2 < F(1, 2) < sl.slope(low.outer) ** 2


def test_higher_rank_cones_are_described_by_generators(a2):
    p, q = psef_cone(a2), qnef_cone(a2)
    assert p.rays == () and len(p.generators) == 2
    assert q.rays == () and len(q.inequalities) == 2


def _inside(spec, cone, v):
    """Membership read off the two boundary rays."""
    if not any(v):
        return True
    if qform(spec, v, spec.ample) <= 0:
        return False
    sl = Slicer.of(spec)
    s = sl.slope(v)
    for r in cone.rays:
        if isinstance(r, Ray):
            bad = s < r.slope if r.slope == min(ray_slopes(spec, cone)) else s > r.slope
        else:
            bad = r.side * s > 0 and s * s > r.slope_squared
        if bad:
            return False
    return True


@pytest.mark.parametrize("name", ["hilb2", "plane", "irrational"])
def test_rays_match_membership_on_a_grid(name):
    spec = bundled(name)
    grid = [v for v in product(range(-15, 16), repeat=2)]
    assert len(grid) > 900
    for cone, member in ((psef_cone(spec), in_psef), (qnef_cone(spec), in_qnef_cone)):
        for v in grid:
            v = tuple(map(F, v))
            assert member(spec, v) == _inside(spec, cone, v), (cone.name, v)


def test_extremal_witness(hilb2):
    cert = extremal_ray_witness(hilb2, 0)
    assert cert.extremal and cert.ample_pairing == 2 and cert.failures == ()
    assert all(qba > 0 and not splits for _, qba, _, splits in cert.samples)


def test_extremal_witness_rejects_non_exceptional_prime():
    spec = ManifoldSpec(2, 1, 1, [[2, 0], [0, -2]], [2, -1], (Prime("C", (1, 0)),))
    with pytest.raises(InputError):
        extremal_ray_witness(spec, 0)


def test_slicer_needs_rank_two(a2):
    with pytest.raises(InputError):
        Slicer.of(a2)


@pytest.mark.parametrize("name", ["hilb2", "a2", "a1a1", "degenerate", "irrational", "plane", "rank1"])
def test_cone_suite_on_bundled(name):
    assert check_cones(bundled(name), random.Random(0), 50) == []


def test_cone_suite_on_random_specs():
    rng = random.Random(21)
    for n in range(12):
        spec = random_spec(rng, max_rank=4, max_exceptional=3)
        assert check_cones(spec, random.Random(n), 20) == []
