"""Brute-force reference implementations used to cross-check the fast paths.

These are deliberately naive: they enumerate every candidate and test the
defining properties directly, sharing as little code with the production
routines as is practical.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import BZError, NotDecomposable, SingularSystem
from .lattice import ManifoldSpec, determinant, qform, solve_linear, sub
from .zariski import Decomposition


def _negdef_by_all_minors(m) -> bool:
    # every principal minor of size k has sign (-1)^k; slower than leading
    # minors but independent of the elimination order
    n = len(m)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            d = determinant([[m[i][j] for j in idx] for i in idx])
            if (-1) ** k * d <= 0:
                return False
    return True


def decompose_by_enumeration(spec: ManifoldSpec, alpha: Sequence) -> Decomposition:
    """Try every subset of exceptional primes as the negative support.

    For each subset whose Gram matrix is negative-definite, solve for the
    coefficients that make the remainder orthogonal to it and keep the
    candidate if every decomposition axiom holds.  Exactly one candidate
    survives for a pseudo-effective class.
    """
    a = spec.check_class(alpha)
    exc = spec.exceptional_index
    g = spec.prime_gram
    pair = spec.pairings(a)
    found = []
    for k in range(len(exc) + 1):
        for sub_idx in combinations(exc, k):
            gram = [[g[i][j] for j in sub_idx] for i in sub_idx]
            if not _negdef_by_all_minors(gram):
                continue
            try:
                n = solve_linear(gram, [pair[j] for j in sub_idx]) if sub_idx else ()
            except SingularSystem:
                continue
            if any(x <= 0 for x in n):
                continue
            coeffs = dict(zip(sub_idx, n))
            p = sub(a, spec.combination(coeffs))
            if any(x < 0 for x in spec.pairings(p)):
                continue
            if qform(spec, p, p) < 0 or qform(spec, p, spec.ample) < 0:
                continue
            found.append(Decomposition(p, coeffs))
    if not found:
        raise NotDecomposable("no subset of exceptional primes yields a decomposition")
    if len(found) > 1:
        raise BZError(f"{len(found)} candidate decompositions; uniqueness violated")
    return found[0]
