"""Simple Weyl chambers and their comparison with Boucksom-Zariski chambers.

The simple Weyl chamber ``W_S`` of a block ``S`` is the set of big classes
pairing strictly negatively with every prime of ``S`` and strictly
positively with every other exceptional prime.  Classes pairing to zero with
some exceptional prime lie on a wall and belong to no ``W_S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .chambers import (
    check_block, enumerate_blocks, movable_interior_point, representative_coefficients,
    solve_targets,
)
from .errors import BZError, InputError, SingularSystem
from .lattice import ManifoldSpec, add, is_negative_definite, gram_of
from .zariski import is_big, neg_locus, require_big

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class WeylPosition:
    kind: str        # "chamber" or "wall"
    indices: tuple   # the block S, or the primes whose walls contain alpha

    @property
    def in_chamber(self) -> bool:
        return self.kind == "chamber"


def weyl_membership(spec: ManifoldSpec, alpha: Sequence) -> WeylPosition:
    """Which ``W_S`` contains the big class ``alpha``, or which walls it is on."""
    require_big(spec, alpha)
    pair = spec.pairings(alpha)
    exc = spec.exceptional_index
    zeros = tuple(i for i in exc if pair[i] == 0)
    if zeros:
        return WeylPosition("wall", zeros)
    return WeylPosition("chamber", tuple(i for i in exc if pair[i] < 0))


def weyl_witness(spec: ManifoldSpec, subset: Iterable[int], m: Sequence | None = None,
                 targets: Sequence | None = None):
    """The class ``M + sum(x_i D_i)`` with ``q(., D_j) = targets_j < 0`` on ``subset``.

    For a block this lands in ``W_S``.  Returns None when the subset's Gram
    matrix is singular.
    """
    idx = spec.check_indices(subset)
    m = movable_interior_point(spec, m)
    if targets is None:
        targets = [Fraction(-1)] * len(idx)
    try:
        x = solve_targets(spec, idx, m, targets)
    except SingularSystem:
        return None
    return add(m, spec.combination(x))


def weyl_chamber_count(spec: ManifoldSpec, exhaustive_limit: int = 10) -> int:
    """Number of nonempty simple Weyl chambers.

    With at most ``exhaustive_limit`` exceptional primes every subset ``S``
    is tried: ``W_S`` is counted as nonempty when the witness class built
    from strictly negative targets is big and realizes exactly the sign
    pattern of ``S``.  This does not consult the block test at all, so its
    agreement with the block count is a genuine check.  Above the limit the
    count falls back to the blocks, each confirmed by its witness.
    """
    exc = spec.exceptional_index
    if len(exc) <= exhaustive_limit:
        candidates = (c for k in range(len(exc) + 1) for c in combinations(exc, k))
    else:
        candidates = iter(enumerate_blocks(spec))
    count = 0
    for s in candidates:
        w = weyl_witness(spec, s)
        if w is None or not is_big(spec, w):
            continue
        pair = spec.pairings(w)
        if all(pair[i] < 0 if i in s else pair[i] > 0 for i in exc):
            count += 1
    return count


def wc_subset_bzc(spec: ManifoldSpec, block: Iterable[int]) -> bool:
    """Decide ``W_S`` contained in ``BZ_S``.

    True iff every exceptional E outside S with ``S + {E}`` a block is
    orthogonal to all of S.
    """
    s = check_block(spec, block)
    g = spec.prime_gram
    for e in spec.exceptional_index:
        if e in s:
            continue
        if is_negative_definite(gram_of(spec, s + (e,))) and any(g[e][d] != 0 for d in s):
            return False
    return True


def int_bzc_subset_wc(spec: ManifoldSpec, block: Iterable[int]) -> bool:
    """Decide ``int(BZ_S)`` contained in ``W_S``: the primes of S are pairwise orthogonal."""
    s = check_block(spec, block)
    g = spec.prime_gram
    return all(g[i][j] == 0 for i, j in combinations(s, 2))


def determination_criteria(spec: ManifoldSpec) -> dict:
    """The four equivalent forms of numerical determination, computed separately.

    * ``pairwise``: properly intersecting exceptional primes satisfy
      ``q(D1, D2)^2 >= q(D1) q(D2)`` (the square-root condition, squared;
      both sides are positive);
    * ``two_blocks``: every two-element block is orthogonal;
    * ``extension``: for every block S and E outside S with ``S + {E}`` a
      block, E is orthogonal to S;
    * ``within_block``: the primes of every block are pairwise orthogonal.
    """
    g = spec.prime_gram
    exc = spec.exceptional_index
    pairwise = all(g[a][b] ** 2 >= g[a][a] * g[b][b]
                   for a, b in combinations(exc, 2) if g[a][b] > 0)
    two_blocks = all(g[a][b] == 0 for a, b in combinations(exc, 2)
                     if is_negative_definite(gram_of(spec, (a, b))))
    blocks = enumerate_blocks(spec)
    extension = all(wc_subset_bzc(spec, s) for s in blocks)
    within = all(int_bzc_subset_wc(spec, s) for s in blocks)
    return {"pairwise": pairwise, "two_blocks": two_blocks,
            "extension": extension, "within_block": within}


def numerically_determined(spec: ManifoldSpec) -> bool:
    """Do the chamber interiors coincide with the simple Weyl chambers?

    >>> from bzchambers.specs import bundled
    >>> numerically_determined(bundled("a2")), numerically_determined(bundled("a1a1"))
    (False, True)
    """
    crit = determination_criteria(spec)
    values = set(crit.values())
    if len(values) != 1:
        raise BZError(f"equivalent criteria disagree: {crit}")
    return values.pop()


def _graph_components(spec: ManifoldSpec, s: Sequence[int]) -> list:
    g = spec.prime_gram
    seen, comps = set(), []
    for start in s:
        if start in seen:
            continue
        comp, todo = set(), [start]
        while todo:
            v = todo.pop()
            if v in comp:
                continue
            comp.add(v)
            todo.extend(u for u in s if u not in comp and g[v][u] > 0)
        seen |= comp
        comps.append(comp)
    return comps


def intersect_by_graph(spec: ManifoldSpec, sprime: Sequence[int], s: Sequence[int]) -> bool:
    """Every connected component of the proper-intersection graph on S meets S'."""
    if not set(sprime) <= set(s):
        return False
    return all(comp & set(sprime) for comp in _graph_components(spec, s))


def intersect_by_subsets(spec: ManifoldSpec, sprime: Sequence[int], s: Sequence[int]) -> bool:
    """Every nonempty T inside S minus S' meets S minus T properly.

    Brute force over all subsets, encoded as bitmasks over the positions of S.
    """
    if not set(sprime) <= set(s):
        return False
    g = spec.prime_gram
    s = list(s)
    k = len(s)
    full = (1 << k) - 1
    adj = [sum(1 << b for b in range(k) if g[s[a]][s[b]] > 0) for a in range(k)]
    free = [a for a in range(k) if s[a] not in set(sprime)]
    if len(free) > BRUTE_FORCE_LIMIT:
        raise InputError(f"|S minus S'| = {len(free)} exceeds the brute-force limit")
    for mask in range(1, 1 << len(free)):
        t = 0
        for bit, a in enumerate(free):
            if mask >> bit & 1:
                t |= 1 << a
        rest = full & ~t
        if not any(adj[a] & rest for a in range(k) if t >> a & 1):
            return False
    return True


def chambers_intersect(spec: ManifoldSpec, sprime: Iterable[int], s: Iterable[int]) -> bool:
    """Does ``W_S'`` meet ``BZ_S``?  Both decision routes are run and must agree.

    The empty T is treated as satisfying the condition vacuously.
    """
    sp, ss = check_block(spec, sprime), check_block(spec, s)
    graph = intersect_by_graph(spec, sp, ss)
    if len(set(ss) - set(sp)) <= BRUTE_FORCE_LIMIT:
        brute = intersect_by_subsets(spec, sp, ss)
        if brute != graph:
            raise BZError(f"intersection criteria disagree on S'={sp}, S={ss}")
    return graph


def bzc_interior_point(spec: ManifoldSpec, block: Iterable[int], excess=None, m=None):
    """A class interior to the chamber of ``block``: nef representative plus ``excess_i D_i``."""
    s = check_block(spec, block)
    lam = representative_coefficients(spec, s, m)
    excess = excess or {i: Fraction(1) for i in s}
    coeffs = {i: lam[i] + excess[i] for i in s}
    return add(movable_interior_point(spec, m), spec.combination(coeffs))


def wc_not_in_bzc_witness(spec: ManifoldSpec, block: Iterable[int], m=None):
    """A class in ``W_S`` outside ``BZ_S``, or None when ``W_S`` lies inside ``BZ_S``.

    Takes E outside S with ``S + {E}`` a block meeting S properly, a point of
    the chamber of ``S + {E}`` with positive part P, and shrinks the E
    coefficient of its negative part until the class pairs positively with E
    while staying negative on S.
    """
    s = check_block(spec, block)
    g = spec.prime_gram
    for e in spec.exceptional_index:
        if e in s:
            continue
        big = tuple(sorted(s + (e,)))
        if not is_negative_definite(gram_of(spec, big)) or all(g[e][d] == 0 for d in s):
            continue
        lam = representative_coefficients(spec, big, m)
        p = add(movable_interior_point(spec, m), spec.combination(lam))
        # negative part with q(N, .) = -1 on S + {E}: all coefficients positive
        c = solve_targets(spec, big, [0] * spec.rank, [-1] * len(big))
        pull = sum(c[d] * g[d][e] for d in s)
        c[e] = min(c[e], pull / -g[e][e]) / 2
        return add(p, spec.combination(c))
    return None


def bzc_not_in_wc_witness(spec: ManifoldSpec, block: Iterable[int], m=None):
    """A class interior to ``BZ_S`` outside ``W_S``, or None if S is pairwise orthogonal.

    For D1, D2 in S meeting properly, the negative part puts a small weight
    on D1 and weight one on every other prime of S, so that the class pairs
    positively with D1.
    """
    s = check_block(spec, block)
    g = spec.prime_gram
    for d1, d2 in combinations(s, 2):
        if g[d1][d2] == 0:
            continue
        eta = g[d1][d2] / (2 * -g[d1][d1])
        excess = {i: Fraction(1) for i in s}
        excess[d1] = eta
        return bzc_interior_point(spec, s, excess, m)
    return None


def chamber_agreement(spec: ManifoldSpec, alpha: Sequence) -> bool:
    """For a big class off every wall, is its Weyl chamber its BZ chamber?"""
    pos = weyl_membership(spec, alpha)
    if not pos.in_chamber:
        raise InputError("class lies on a wall")
    return pos.indices == neg_locus(spec, alpha)
