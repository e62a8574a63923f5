"""Pseudo-effective and q-nef cones.

In rank 2 both cones are two-dimensional and are given by their two boundary
rays.  Rays are located by a slope ``s`` along the affine line through the
ample class ``A`` in the direction of a fixed ``w`` with ``q(A, w) = 0``: the
class ``a*A + b*w`` with ``a > 0`` has slope ``b/a``.  The closed positive
cone is ``|s| <= s*`` with ``s*^2 = q(A) / -q(w)``; when ``s*`` is irrational
the boundary ray is reported symbolically together with a rational pair of
rays just inside and just outside it.

In higher rank the positive cone is round, so the cones are described by
generators and linear inequalities plus the positive-cone condition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .chambers import enumerate_blocks, nef_representative
from .errors import InputError
from .lattice import (
    ManifoldSpec, add, are_dependent, is_zero, orthogonal_complement, primitive,
    qform, scale, sub,
)
from .zariski import is_pseudoeffective, is_qnef

PRECISION = 1000


@dataclass(frozen=True)
class Ray:
    coords: tuple        # primitive integral vector
    slope: Fraction
    source: str          # "prime:<label>", "isotropic" or "wall:<label>"


@dataclass(frozen=True)
class IrrationalRay:
    """A boundary ray of the positive cone with irrational slope.

    The ray is ``A + s w`` with ``s^2 = slope_squared`` and ``s`` of the sign
    of ``side``.  ``inner`` and ``outer`` are rational rays with slopes
    ``floor(|s| N)/N`` and that plus ``1/N``.
    """

    side: int
    slope_squared: Fraction
    inner: tuple
    outer: tuple
    source: str = "isotropic"


@dataclass(frozen=True)
class ConeDescription:
    name: str
    rays: tuple = ()               # rank 2 only
    generators: tuple = ()         # classes that generate together with the positive cone
    inequalities: tuple = ()       # linear forms l with l . x >= 0
    positive_cone: bool = True     # intersect (or add) the closed positive cone
    notes: tuple = field(default=())


@dataclass(frozen=True)
class Slicer:
    """Slope coordinates on a rank-2 spec."""

    spec: ManifoldSpec
    w: tuple
    qa: Fraction
    qw: Fraction

    @classmethod
    def of(cls, spec: ManifoldSpec):
        if spec.rank != 2:
            raise InputError("slope coordinates need a rank-2 spec")
        w = primitive(orthogonal_complement(spec, spec.ample)[0])
        return cls(spec, w, qform(spec, spec.ample, spec.ample), qform(spec, w, w))

    def slope(self, v: Sequence) -> Fraction:
        a = qform(self.spec, v, self.spec.ample) / self.qa
        if a <= 0:
            raise InputError("class is not on the ample side")
        return (qform(self.spec, v, self.w) / self.qw) / a

    def point(self, s) -> tuple:
        return add(self.spec.ample, scale(Fraction(s), self.w))

    def ray(self, s, source: str) -> Ray:
        return Ray(primitive(self.point(s)), Fraction(s), source)

    @property
    def bound_squared(self) -> Fraction:
        return self.qa / -self.qw

    def isotropic(self, side: int, precision: int = PRECISION):
        """The boundary ray of the positive cone on ``side`` (+1 or -1)."""
        s2 = self.bound_squared
        rn, rd = isqrt(s2.numerator), isqrt(s2.denominator)
        if rn * rn == s2.numerator and rd * rd == s2.denominator:
            return self.ray(side * Fraction(rn, rd), "isotropic")
        inner = Fraction(isqrt(s2.numerator * precision ** 2 // s2.denominator), precision)
        outer = inner + Fraction(1, precision)
        return IrrationalRay(side, s2, primitive(self.point(side * inner)),
                             primitive(self.point(side * outer)))


def _beyond(s: Fraction, bound2: Fraction) -> bool:
    return s * s > bound2


def in_psef(spec: ManifoldSpec, v: Sequence) -> bool:
    return is_pseudoeffective(spec, v)


def in_qnef_cone(spec: ManifoldSpec, v: Sequence) -> bool:
    """q-nef and in the closed positive cone on the ample side."""
    return (is_qnef(spec, v) and qform(spec, v, v) >= 0
            and qform(spec, v, spec.ample) >= 0)


def psef_cone(spec: ManifoldSpec, precision: int = PRECISION) -> ConeDescription:
    """Closed positive cone plus the rays of the exceptional primes.

    >>> from bzchambers.specs import hilb2
    >>> [(tuple(map(int, r.coords)), r.source) for r in psef_cone(hilb2()).rays]
    [((1, -1), 'isotropic'), ((0, 1), 'prime:delta')]
    """
    gens = tuple(spec.prime_class(i) for i in spec.exceptional_index)
    if spec.rank != 2:
        return ConeDescription("psef", generators=gens, positive_cone=True,
                               notes=("closed positive cone + sum of exceptional prime rays",))
    sl = Slicer.of(spec)
    rays = []
    for side in (-1, 1):
        best = None
        for i in spec.exceptional_index:
            s = sl.slope(spec.prime_class(i))
            if side * s > 0 and (best is None or side * s > side * best[0]):
                best = (s, i)
        if best is not None:
            rays.append(sl.ray(best[0], f"prime:{spec.primes[best[1]].label}"))
        else:
            rays.append(sl.isotropic(side, precision))
    return ConeDescription("psef", rays=tuple(rays), generators=gens, positive_cone=True)


def qnef_cone(spec: ManifoldSpec, precision: int = PRECISION) -> ConeDescription:
    """Classes pairing nonnegatively with every prime, inside the closed positive cone.

    >>> from bzchambers.specs import hilb2
    >>> [(tuple(map(int, r.coords)), r.source) for r in qnef_cone(hilb2()).rays]
    [((1, -1), 'isotropic'), ((1, 0), 'wall:delta')]
    """
    ineq = tuple(spec.duals)
    if spec.rank != 2:
        return ConeDescription("qnef", inequalities=ineq, positive_cone=True,
                               notes=("q(., D_i) >= 0 for every declared prime, inside the positive cone",))
    sl = Slicer.of(spec)
    bound2 = sl.bound_squared
    lo = hi = None      # (slope, prime index)
    for i, p in enumerate(spec.primes):
        qa = qform(spec, spec.ample, p.coords)
        qw = qform(spec, sl.w, p.coords)
        if qw == 0:
            continue
        t = -qa / qw
        if qw > 0 and (lo is None or t > lo[0]):
            lo = (t, i)
        if qw < 0 and (hi is None or t < hi[0]):
            hi = (t, i)
    rays = []
    for side, cut in ((-1, lo), (1, hi)):
        if cut is not None and not _beyond(cut[0], bound2):
            rays.append(sl.ray(cut[0], f"wall:{spec.primes[cut[1]].label}"))
        else:
            rays.append(sl.isotropic(side, precision))
    return ConeDescription("qnef", rays=tuple(rays), inequalities=ineq, positive_cone=True)


def ray_slopes(spec: ManifoldSpec, cone: ConeDescription) -> list:
    """Rational slopes of the rays (inner approximations for irrational ones)."""
    sl = Slicer.of(spec)
    out = []
    for r in cone.rays:
        out.append(r.slope if isinstance(r, Ray) else sl.slope(r.inner))
    return out


@dataclass(frozen=True)
class ExtremalCertificate:
    index: int
    extremal: bool
    ample_pairing: Fraction          # q(E, A) > 0
    samples: tuple                   # (label, q(beta, A), q(beta, E), E - t beta psef?) per sample
    failures: tuple = ()


def extremal_ray_witness(spec: ManifoldSpec, index: int, seed: int = 0, extra: int = 8) -> ExtremalCertificate:
    """Certify that an exceptional prime E spans an extremal ray of the psef cone.

    Every psef class decomposes as ``a E + beta`` with ``beta`` psef and
    ``q(beta, E) >= 0``.  For each sampled ``beta`` of that kind (other
    primes, the ample class, nef representatives of blocks containing E and
    random positive classes) the certificate checks that ``q(beta, A) > 0``,
    that ``beta`` is not a multiple of E, and that ``E - t beta`` is not
    pseudo-effective for t in a dyadic grid, so E splits only trivially.
    """
    i = spec.prime_index(index)
    if i not in spec.exceptional_index:
        raise InputError(f"{spec.primes[i].label} is not exceptional")
    e = spec.prime_class(i)
    a = spec.ample
    qea = qform(spec, e, a)
    betas = [(spec.primes[j].label, spec.prime_class(j)) for j in range(len(spec.primes)) if j != i]
    betas.append(("ample", a))
    for b in enumerate_blocks(spec):
        if i in b:
            betas.append((f"rep{list(b)}", nef_representative(spec, b)))
    rng = random.Random(seed)
    for k in range(extra):
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(spec.rank))
        t = 1
        while not (qform(spec, add(scale(t, a), v), add(scale(t, a), v)) > 0
                   and qform(spec, add(scale(t, a), v), a) > 0):
            t += 1
        cand = add(scale(t, a), v)
        if qform(spec, cand, e) >= 0:
            betas.append((f"positive{k}", cand))
    samples, failures = [], []
    grid = [Fraction(1, 2 ** k) for k in range(0, 8)] + [Fraction(2), Fraction(8)]
    for label, beta in betas:
        qba, qbe = qform(spec, beta, a), qform(spec, beta, e)
        if qbe < 0:
            continue        # not in the D^{>=0} part
        splits = any(is_pseudoeffective(spec, sub(e, scale(t, beta))) for t in grid)
        ok = qba > 0 and not is_zero(beta) and not are_dependent(beta, e) and not splits
        samples.append((label, qba, qbe, splits))
        if not ok:
            failures.append(label)
    return ExtremalCertificate(i, qea > 0 and not failures, qea, tuple(samples), tuple(failures))
