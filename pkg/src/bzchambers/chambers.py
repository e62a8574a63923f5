"""q-exceptional blocks and Boucksom-Zariski chambers.

A block is a set of exceptional primes whose Gram matrix is
negative-definite.  Blocks are in bijection with chambers: the chamber of a
block ``S`` collects the big classes whose negative part is supported exactly
on ``S`` and whose positive part is orthogonal to exactly ``S``.

Blocks are represented as sorted tuples of prime indices and are listed in
shortlex order (by size, then lexicographically), so the empty block comes
first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .lattice import (
    ManifoldSpec, ONE, add, block_coefficients, determinant, gram_of,
    is_negative_definite, project_orthogonal, qform, solve_linear, to_fraction,
)
from .zariski import decompose_class, is_big, null_locus, require_big

ENUMERATION_WARN = 2 ** 20


class EnumerationLimit(InputError):
    """More blocks than the caller allowed."""


def check_block(spec: ManifoldSpec, block: Iterable[int]) -> tuple:
    """Validate and normalize a block; raises InputError if it is not one."""
    idx = spec.check_indices(block)
    exc = set(spec.exceptional_index)
    bad = [spec.primes[i].label for i in idx if i not in exc]
    if bad:
        raise InputError(f"not exceptional: {', '.join(bad)}")
    if not is_negative_definite(gram_of(spec, idx)):
        labels = ", ".join(spec.primes[i].label for i in idx)
        raise InputError(f"{{{labels}}} is not a q-exceptional block")
    return idx


def enumerate_blocks(spec: ManifoldSpec, max_blocks: int | None = None) -> list:
    """Every q-exceptional block, the empty one included, in shortlex order.

    Subsets grow one index at a time, always appending an index larger than
    all current ones.  A principal submatrix of a negative-definite matrix is
    negative-definite, so a failed subset is never extended, and when a
    subset is extended its leading minors are already known to alternate:
    only the sign of the new full determinant needs checking.

    >>> from bzchambers.specs import hilb2
    >>> enumerate_blocks(hilb2())
    [(), (0,)]
    """
    exc = spec.exceptional_index
    if 2 ** len(exc) > ENUMERATION_WARN:
        warnings.warn(f"{len(exc)} exceptional primes: up to 2^{len(exc)} candidate blocks",
                      RuntimeWarning, stacklevel=2)
    g = spec.prime_gram
    found = [()]
    stack = [((), -1)]
    while stack:
        block, last = stack.pop()
        for pos in range(last + 1, len(exc)):
            cand = block + (exc[pos],)
            d = determinant([[g[i][j] for j in cand] for i in cand])
            if (-1) ** len(cand) * d > 0:
                found.append(cand)
                if max_blocks is not None and len(found) > max_blocks:
                    raise EnumerationLimit(f"more than {max_blocks} blocks")
                stack.append((cand, pos))
    found.sort(key=lambda b: (len(b), b))
    return found


def movable_interior_point(spec: ManifoldSpec, override: Sequence | None = None) -> tuple:
    """A class M with q(M, D_i) > 0 for every prime, q(M) > 0 and q(M, A) > 0.

    Defaults to the ample class, which qualifies by the validation axioms.
    """
    m = spec.check_class(spec.ample if override is None else override)
    if not (all(x > 0 for x in spec.pairings(m)) and qform(spec, m, m) > 0
            and qform(spec, m, spec.ample) > 0):
        raise InputError("class is not in the interior of the movable cone")
    return m


def nef_representative(spec: ManifoldSpec, block: Iterable[int], m: Sequence | None = None) -> tuple:
    """``M + sum(lambda_i D_i)`` orthogonal to every prime of ``block``.

    The coefficients solve ``q(M, D_j) + sum_i lambda_i q(D_i, D_j) = 0`` and
    are positive because the inverse Gram matrix of a block is nonpositive.

    >>> from bzchambers.specs import hilb2
    >>> nef_representative(hilb2(), [0])
    (Fraction(2, 1), Fraction(0, 1))
    """
    idx = check_block(spec, block)
    m = movable_interior_point(spec, m)
    return project_orthogonal(spec, m, idx)


def representative_coefficients(spec: ManifoldSpec, block: Iterable[int], m: Sequence | None = None) -> dict:
    """The ``lambda_i`` of :func:`nef_representative`, keyed by prime index."""
    idx = check_block(spec, block)
    m = movable_interior_point(spec, m)
    return {i: -x for i, x in block_coefficients(spec, m, idx).items()}


def chamber_of(spec: ManifoldSpec, alpha: Sequence) -> tuple:
    """The block whose chamber contains the big class ``alpha``."""
    require_big(spec, alpha)
    return decompose_class(spec, alpha).support


@dataclass(frozen=True)
class ChamberPosition:
    kind: str          # "interior" or "boundary"
    block: tuple       # Neg(alpha), the owning chamber
    null: tuple        # Null(P(alpha))

    @property
    def interior(self) -> bool:
        return self.kind == "interior"


def position_in_chamber(spec: ManifoldSpec, alpha: Sequence) -> ChamberPosition:
    """Interior iff Neg(alpha) = Null(P(alpha)), boundary otherwise."""
    require_big(spec, alpha)
    d = decompose_class(spec, alpha)
    null = null_locus(spec, d.positive)
    kind = "interior" if d.support == null else "boundary"
    return ChamberPosition(kind, d.support, null)


def closure_membership(spec: ManifoldSpec, alpha: Sequence, block: Iterable[int]) -> bool:
    """Is ``alpha`` in the closure of the chamber of ``block``?

    Decided by ``Neg(alpha) <= block <= Null(P(alpha))``.
    """
    idx = set(check_block(spec, block))
    pos = position_in_chamber(spec, alpha)
    return set(pos.block) <= idx <= set(pos.null)


def face_inequalities(spec: ManifoldSpec, block: Iterable[int]) -> list:
    """Defining system of the face of the q-nef cone cut out by ``block``.

    ``("eq", j)`` means q(., D_j) = 0 and ``("geq", i)`` means q(., D_i) >= 0.
    """
    idx = set(check_block(spec, block))
    return [("eq" if i in idx else "geq", i) for i in range(len(spec.primes))]


def satisfies_face(spec: ManifoldSpec, alpha: Sequence, system: list) -> bool:
    pair = spec.pairings(alpha)
    return all(pair[i] == 0 if kind == "eq" else pair[i] >= 0 for kind, i in system)


@dataclass(frozen=True)
class GeometricSplit:
    holds: bool
    positive: tuple
    residue: dict


def geometric_decomposition_check(spec: ManifoldSpec, alpha: Sequence, block: Iterable[int]) -> GeometricSplit:
    """Split ``alpha`` along ``block`` and test the closure description.

    ``alpha`` lies in the closure of the chamber iff its projection orthogonal
    to ``block`` is big and on the face of ``block``, and the residue is a
    nonnegative combination of the primes of ``block``.
    """
    idx = check_block(spec, block)
    require_big(spec, alpha)
    a = spec.check_class(alpha)
    residue = block_coefficients(spec, a, idx)
    p = project_orthogonal(spec, a, idx)
    holds = (is_big(spec, p) and satisfies_face(spec, p, face_inequalities(spec, idx))
             and all(c >= 0 for c in residue.values()))
    return GeometricSplit(holds, p, residue)


def boundary_perturbation(spec: ManifoldSpec, alpha: Sequence, eps=None) -> tuple:
    """For a boundary class, push it into a strictly larger chamber.

    Picks ``j`` in Null(P(alpha)) minus Neg(alpha) and returns
    ``(alpha + eps * D_j, j)``; the chamber of the result contains Neg(alpha)
    and ``j``.
    """
    pos = position_in_chamber(spec, alpha)
    extra = [j for j in pos.null if j not in pos.block]
    if not extra:
        raise InputError("class is interior to its chamber")
    j = extra[0]
    eps = ONE if eps is None else to_fraction(eps)
    return add(spec.check_class(alpha), tuple(eps * x for x in spec.prime_class(j))), j


def solve_targets(spec: ManifoldSpec, block: Sequence[int], m: Sequence, targets: Sequence) -> dict:
    """Coefficients x with ``q(M + sum x_i D_i, D_j) = targets_j`` for j in block."""
    block = spec.check_indices(block)
    pair = spec.pairings(m)
    rhs = [t - pair[j] for t, j in zip(targets, block)]
    return dict(zip(block, solve_linear(gram_of(spec, block), rhs)))
