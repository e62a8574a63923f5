"""Randomized property suites shared by ``bzchambers verify`` and the tests.

Each ``check_*`` function takes a spec, a ``random.Random`` and a sample
count, and returns a list of failure messages (empty when the property
holds).  :func:`run_suite` runs them all in a fixed order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from .chambers import (
    boundary_perturbation, chamber_of, closure_membership, enumerate_blocks,
    geometric_decomposition_check, nef_representative, position_in_chamber,
)
from .cones import (
    IrrationalRay, Ray, Slicer, extremal_ray_witness, in_psef, in_qnef_cone, psef_cone,
    qnef_cone,
)
from .errors import NotDecomposable
from .lattice import (
    ManifoldSpec, add, are_dependent, gram_of, hodge_inequality, inverse_sign_property,
    orthogonal_complement, qform, restricted_gram, scale, signature,
)
from .oracles import decompose_by_enumeration
from .randomspec import (
    random_big_class, random_class, random_effective, random_interior_point,
    random_positive_class, random_psef_class, random_vector, rational,
)
from .volume import volume, volume_polynomial
from .weyl import (
    bzc_interior_point, bzc_not_in_wc_witness, determination_criteria,
    int_bzc_subset_wc, intersect_by_graph, intersect_by_subsets, wc_not_in_bzc_witness,
    wc_subset_bzc, weyl_chamber_count, weyl_membership, weyl_witness,
)
from .zariski import (
    check_decomposition, decompose_class, decompose_effective, is_big, neg_locus,
)

ORACLE_LIMIT = 12      # exceptional primes; the subset oracle is 2^k
INTERSECT_LIMIT = 12   # block size for the exhaustive intersection comparison
WALL_SAMPLE = 32       # wall points (S1 inside S2) examined per spec


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def maximality_violations(spec: ManifoldSpec, expr: dict, d) -> list:
    """Coordinates of the LP optimum that could still be increased within the polytope.

    Raising ``x_i`` by ``eps`` changes only the i-th nefness constraint by
    ``eps * q(D_i)``; the largest admissible step is computed exactly and
    the perturbed point is tested for feasibility.
    """
    a = {spec.prime_index(k): Fraction(v) for k, v in expr.items() if v}
    x = {i: a[i] - d.negative.get(i, 0) for i in a}
    g = spec.prime_gram
    idx = sorted(a)

    def feasible(y):
        return (all(0 <= y[i] <= a[i] for i in idx)
                and all(sum(y[i] * g[i][j] for i in idx) >= 0 for j in idx))

    bad = []
    for i in idx:
        room = a[i] - x[i]
        if room <= 0:
            continue
        slack = sum(x[k] * g[k][i] for k in idx)
        step = room if g[i][i] >= 0 else min(room, slack / -g[i][i])
        if step > 0:
            y = dict(x)
            y[i] += step
            if feasible(y):
                bad.append(spec.primes[i].label)
    return bad


def check_oracles(spec, rng, count):
    """Exact LP, support growth and the subset oracle agree; the LP optimum is maximal."""
    fails = []
    use_oracle = len(spec.exceptional_index) <= ORACLE_LIMIT
    for _ in range(count if spec.primes else 1):
        expr = random_effective(spec, rng)
        alpha = spec.combination(expr)
        d1 = decompose_effective(spec, expr)
        d2 = decompose_class(spec, alpha)
        d3 = decompose_by_enumeration(spec, alpha) if use_oracle else d2
        if not d1 == d2 == d3:
            fails.append(f"disagreement on {expr}: {d1} / {d2} / {d3}")
        bad = maximality_violations(spec, expr, d1)
        if bad:
            fails.append(f"LP optimum not maximal in {bad} for {expr}")
    for i in spec.exceptional_index:
        n = abs(rational(rng, 1, 5))
        d = decompose_effective(spec, {i: n})
        if any(d.positive):
            fails.append(f"{spec.primes[i].label} is not fixed: P = {_fmt(d.positive)}")
    return fails


def check_axioms(spec, rng, count):
    """Every decomposition of a pseudo-effective class satisfies the axioms."""
    fails = []
    for _ in range(count):
        alpha = random_psef_class(spec, rng)
        d = decompose_class(spec, alpha)
        bad = check_decomposition(spec, alpha, d)
        if bad:
            fails.append(f"{_fmt(alpha)}: {', '.join(bad)}")
        t = abs(rational(rng, 1, 5))
        dt = decompose_class(spec, scale(t, alpha))
        if dt.positive != scale(t, d.positive) or dt.negative != {i: t * c for i, c in d.negative.items()}:
            fails.append(f"scaling by {t} fails at {_fmt(alpha)}")
    return fails


def check_hodge(spec, rng, count):
    """Hodge-type inequality with its equality case, and the strong Hodge index."""
    fails = []
    for _ in range(count):
        d = random_positive_class(spec, rng)
        if rng.random() < 0.5:
            d = scale(-1, d) if rng.random() < 0.2 else d
        r = rng.random()
        e = scale(rational(rng), d) if r < 0.2 else random_vector(rng, spec.rank)
        holds, dependent = hodge_inequality(spec, d, e)
        equal = qform(spec, d, e) ** 2 == qform(spec, d, d) * qform(spec, e, e)
        if not holds or equal != dependent:
            fails.append(f"Hodge inequality fails for D={_fmt(d)}, E={_fmt(e)}")
        if spec.rank > 1:
            sig = signature(restricted_gram(spec, orthogonal_complement(spec, d)))
            if sig != (0, spec.rank - 1, 0):
                fails.append(f"q on D^perp has signature {sig} for D={_fmt(d)}")
    return fails


def check_inverse_sign(spec, rng=None, count=None):
    """Inverse Gram matrices of blocks are entrywise nonpositive."""
    return [f"block {b}" for b in enumerate_blocks(spec)
            if b and not inverse_sign_property(gram_of(spec, b))]


def check_weyl_counts(spec, rng=None, count=None):
    """Weyl chamber count, equivalent determination forms, intersection criteria."""
    fails = []
    blocks = enumerate_blocks(spec)
    wc = weyl_chamber_count(spec)
    if wc != len(blocks):
        fails.append(f"{wc} Weyl chambers but {len(blocks)} blocks")
    crit = determination_criteria(spec)
    if len(set(crit.values())) != 1:
        fails.append(f"determination criteria disagree: {crit}")
    determined = crit["pairwise"]
    both = all(wc_subset_bzc(spec, s) and int_bzc_subset_wc(spec, s) for s in blocks)
    if both != determined:
        fails.append("containment criteria do not match numerical determination")
    small = [b for b in blocks if len(b) <= INTERSECT_LIMIT]
    for s in small:
        for sp in small:
            if intersect_by_graph(spec, sp, s) != intersect_by_subsets(spec, sp, s):
                fails.append(f"intersection criteria disagree on S'={sp}, S={s}")
    return fails


def check_weyl_witnesses(spec, rng, count):
    """Every W_S is inhabited; sampled consistency of numerical determination."""
    fails = []
    determined = determination_criteria(spec)["pairwise"]
    for s in enumerate_blocks(spec):
        w = weyl_witness(spec, s)
        if w is None or not is_big(spec, w) or weyl_membership(spec, w).indices != s:
            fails.append(f"W_{s} witness {w} misplaced")
        for _ in range(max(1, count // 50)):
            excess = {i: abs(rational(rng, 1, 4)) for i in s}
            m = random_interior_point(spec, rng)
            p = bzc_interior_point(spec, s, excess, m)
            pos = position_in_chamber(spec, p)
            if not (pos.interior and pos.block == s):
                fails.append(f"interior point of BZ_{s} misplaced: {pos}")
            if determined:
                wm = weyl_membership(spec, p)
                if not (wm.in_chamber and wm.indices == s):
                    fails.append(f"determined spec but interior of BZ_{s} meets {wm}")
        if not determined:
            continue
        if wc_not_in_bzc_witness(spec, s) is not None or bzc_not_in_wc_witness(spec, s) is not None:
            fails.append(f"counterexample constructed for determined spec at {s}")
    if not determined:
        found = False
        for s in enumerate_blocks(spec):
            w = wc_not_in_bzc_witness(spec, s)
            if w is not None:
                found = True
                wm = weyl_membership(spec, w)
                if not (wm.in_chamber and wm.indices == s) or neg_locus(spec, w) == s:
                    fails.append(f"W_{s} witness outside BZ_{s} fails: {_fmt(w)}")
            w = bzc_not_in_wc_witness(spec, s)
            if w is not None:
                found = True
                pos = position_in_chamber(spec, w)
                wm = weyl_membership(spec, w)
                if not (pos.interior and pos.block == s) or (wm.in_chamber and wm.indices == s):
                    fails.append(f"int BZ_{s} witness outside W_{s} fails: {_fmt(w)}")
        if not found:
            fails.append("not numerically determined but no counterexample constructed")
    return fails


def check_chambers(spec, rng, count):
    """Chamber partition, representatives, boundary perturbation, closure agreement."""
    fails = []
    blocks = enumerate_blocks(spec)
    bset = set(blocks)
    for s in blocks:
        for _ in range(5):
            m = random_interior_point(spec, rng)
            p = nef_representative(spec, s, m)
            if position_in_chamber(spec, p).null != s:
                fails.append(f"representative of {s} has the wrong null locus")
        c = add(nef_representative(spec, s), spec.combination({i: 1 for i in s}))
        if chamber_of(spec, c) != s:
            fails.append(f"chamber of {s} is not inhabited by its representative")
    seen = {}
    for _ in range(count):
        alpha = random_big_class(spec, rng)
        ch = chamber_of(spec, alpha)
        if ch not in bset:
            fails.append(f"chamber {ch} of {_fmt(alpha)} is not a block")
        seen.setdefault(ch, neg_locus(spec, alpha))
        if seen[ch] != neg_locus(spec, alpha):
            fails.append("classes in one chamber with different negative loci")
        for s in rng.sample(blocks, min(3, len(blocks))):
            if closure_membership(spec, alpha, s) != geometric_decomposition_check(spec, alpha, s).holds:
                fails.append(f"closure tests disagree at {_fmt(alpha)}, {s}")
    walls = [(s1, s2) for s2 in blocks for k in range(len(s2)) for s1 in combinations(s2, k)]
    if len(walls) > WALL_SAMPLE:
        walls = rng.sample(walls, WALL_SAMPLE)
    for s1, s2 in walls:
        alpha = add(nef_representative(spec, s2), spec.combination({i: 1 for i in s1}))
        pos = position_in_chamber(spec, alpha)
        if pos.interior or pos.block != s1:
            fails.append(f"wall point {_fmt(alpha)} not on the boundary of {s1}")
            continue
        pushed, j = boundary_perturbation(spec, alpha, Fraction(1, 2))
        if not set(pos.block) < set(chamber_of(spec, pushed)):
            fails.append(f"perturbing {_fmt(alpha)} along {j} does not enlarge the chamber")
        for s in rng.sample(blocks, min(WALL_SAMPLE // 4, len(blocks))):
            if closure_membership(spec, alpha, s) != geometric_decomposition_check(spec, alpha, s).holds:
                fails.append(f"closure tests disagree at wall point {_fmt(alpha)}, {s}")
    return fails


def check_monotonicity(spec, rng, count):
    """Neg(alpha + A) inside Neg(alpha), and chambers shrink along alpha + tA."""
    fails = []
    grid = [Fraction(k, 8) for k in range(1, 9)]
    for n in range(count):
        alpha = random_big_class(spec, rng)
        if not set(neg_locus(spec, add(alpha, spec.ample))) <= set(neg_locus(spec, alpha)):
            fails.append(f"Neg grows under ample translation at {_fmt(alpha)}")
        if n % 10 == 0:
            chain = [set(chamber_of(spec, add(alpha, scale(t, spec.ample)))) for t in grid]
            if any(not b <= a for a, b in zip(chain, chain[1:])):
                fails.append(f"chambers along alpha + tA do not shrink at {_fmt(alpha)}")
    return fails


def continuity_probe(spec, alpha, beta, ks=range(1, 65)):
    """Errors ``max_i |P(alpha + beta/k)_i - P(alpha)_i|`` for k in ``ks``."""
    p0 = decompose_class(spec, alpha).positive
    out = []
    for k in ks:
        p = decompose_class(spec, add(alpha, scale(Fraction(1, k), beta))).positive
        out.append(max(abs(x - y) for x, y in zip(p, p0)))
    return out


def probe_direction(spec, alpha, beta, tries=40):
    """Scale ``beta`` by powers of 1/2 until ``alpha`` is in the closure of the chamber of ``alpha + beta``.

    Chambers are convex and only finitely many meet a neighbourhood of
    ``alpha``, so this terminates; afterwards the whole half-open segment
    ``(alpha, alpha + beta]`` lies in one chamber.  Returns None if no scale
    within ``tries`` halvings works.
    """
    for _ in range(tries):
        far = add(alpha, beta)
        if is_big(spec, far) and closure_membership(spec, alpha, chamber_of(spec, far)):
            return beta
        beta = scale(Fraction(1, 2), beta)
    return None


def random_probe_base(spec, rng):
    """A big class; half of the time one sitting on a chamber wall."""
    blocks = enumerate_blocks(spec)
    if rng.random() < 0.5 and any(blocks):
        s2 = rng.choice([b for b in blocks if b])
        s1 = [i for i in s2 if rng.random() < 0.5]
        m = random_interior_point(spec, rng)
        return add(nef_representative(spec, s2, m),
                   spec.combination({i: abs(rational(rng, 1, 3)) for i in s1}))
    return random_big_class(spec, rng)


def check_continuity(spec, rng, count):
    """P(alpha + beta/k) -> P(alpha) with non-increasing error, k = 1..64."""
    fails = []
    done = 0
    for _ in range(count * 3):
        if done >= count:
            break
        alpha = random_probe_base(spec, rng)
        beta = probe_direction(spec, alpha, random_vector(rng, spec.rank))
        if beta is None:
            continue
        done += 1
        errs = continuity_probe(spec, alpha, beta)
        if any(b > a for a, b in zip(errs, errs[1:])):
            fails.append(f"error increases along {_fmt(alpha)} + {_fmt(beta)}/k")
        if errs[-1] * 64 != errs[0]:
            fails.append(f"P does not converge linearly to P(alpha) at {_fmt(alpha)}")
    if done < count:
        fails.append(f"only {done} of {count} probes could be set up")
    return fails


def check_volume(spec, rng, count):
    """Volume vs chamber polynomials, homogeneity, positivity, wall continuity."""
    fails = []
    polys = {}

    def poly(s):
        if s not in polys:
            polys[s] = volume_polynomial(spec, s)
        return polys[s]

    deg = 2 * spec.half_dim
    for _ in range(count):
        alpha = random_big_class(spec, rng)
        v = volume(spec, alpha)
        if v != poly(chamber_of(spec, alpha)).evaluate(alpha):
            fails.append(f"volume mismatch at {_fmt(alpha)}")
        t = abs(rational(rng, 1, 5))
        if volume(spec, scale(t, alpha)) != t ** deg * v:
            fails.append(f"volume not homogeneous at {_fmt(alpha)}")
        beta = random_class(spec, rng)
        if (volume(spec, beta) > 0) != is_big(spec, beta):
            fails.append(f"volume sign and bigness disagree at {_fmt(beta)}")
    blocks = enumerate_blocks(spec)
    for s2 in blocks:
        for j in s2:
            s1 = tuple(i for i in s2 if i != j)
            alpha = add(nef_representative(spec, s2, random_interior_point(spec, rng)),
                        spec.combination({i: abs(rational(rng, 1, 3)) for i in s1}))
            vals = {poly(s1).evaluate(alpha), poly(s2).evaluate(alpha), volume(spec, alpha)}
            if len(vals) != 1:
                fails.append(f"volume jumps across the wall between {s1} and {s2}")
    return fails


def check_cones(spec, rng, count):
    """Rank-2 rays pass membership, rotating them outward fails; ample functional positive."""
    fails = []
    for _ in range(max(1, count // 10)):
        alpha = random_psef_class(spec, rng)
        if any(alpha) and qform(spec, alpha, spec.ample) <= 0:
            fails.append(f"psef class {_fmt(alpha)} pairs nonpositively with the ample class")
    for i in spec.exceptional_index:
        if not extremal_ray_witness(spec, i, seed=rng.randrange(1 << 30)).extremal:
            fails.append(f"{spec.primes[i].label} not certified extremal")
    if spec.rank != 2:
        return fails
    sl = Slicer.of(spec)
    eps = Fraction(1, 1000)
    for cone, member in ((psef_cone(spec), in_psef), (qnef_cone(spec), in_qnef_cone)):
        slopes = []
        for r in cone.rays:
            if isinstance(r, Ray):
                inside, s = r.coords, r.slope
            else:
                inside, s = r.inner, sl.slope(r.inner)
                if member(spec, r.outer):
                    fails.append(f"{cone.name}: outer approximation {r.outer} is a member")
            slopes.append(s)
            if not member(spec, inside):
                fails.append(f"{cone.name}: ray {_fmt(inside)} fails membership")
        lo, hi = sorted(slopes)
        for s, out in ((lo, lo - eps), (hi, hi + eps)):
            if member(spec, sl.point(out)):
                fails.append(f"{cone.name}: rotating ray at slope {s} outward stays inside")
        for _ in range(max(1, count // 10)):
            t = lo + (hi - lo) * Fraction(rng.randint(0, 100), 100)
            if not member(spec, sl.point(t)):
                fails.append(f"{cone.name}: slope {t} between the rays is not a member")
    return fails


@dataclass(frozen=True)
class CheckResult:
    name: str
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


SUITE: tuple = (
    ("oracle agreement", check_oracles),
    ("decomposition axioms", check_axioms),
    ("hodge index", check_hodge),
    ("inverse gram sign", check_inverse_sign),
    ("weyl/block counts", check_weyl_counts),
    ("weyl witnesses", check_weyl_witnesses),
    ("chamber structure", check_chambers),
    ("ample monotonicity", check_monotonicity),
    ("continuity", check_continuity),
    ("volume coherence", check_volume),
    ("cones", check_cones),
)


def run_suite(spec: ManifoldSpec, seed: int = 0, count: int = 100,
              only: Callable[[str], bool] | None = None) -> list:
    """Run every property check with its own seeded generator; deterministic."""
    results = []
    for k, (name, fn) in enumerate(SUITE):
        if only is not None and not only(name):
            continue
        rng = random.Random(f"{seed}:{k}")
        try:
            fails = fn(spec, rng, count)
        except NotDecomposable as exc:
            fails = [f"unexpected NotDecomposable: {exc}"]
        results.append(CheckResult(name, tuple(fails)))
    return results
