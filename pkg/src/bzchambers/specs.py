"""Bundled example specs and small spec builders.

>>> s = hilb2()
>>> s.basis_labels, [p.label for p in s.primes]
(('H', 'delta'), ['delta'])
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources
from typing import Sequence

from .errors import InputError
from .lattice import ManifoldSpec, Prime, is_negative_definite, mat

BUNDLED = ("hilb2", "a2", "a1a1", "degenerate", "plane", "irrational", "rank1")


def bundled_path(name: str):
    """Filesystem path of a bundled spec (``hilb2``, ``a2``, ...)."""
    if name not in BUNDLED:
        raise InputError(f"no bundled spec named {name!r}; choose from {', '.join(BUNDLED)}")
    return resources.files("bzchambers") / "data" / f"{name}.spec"


def bundled(name: str) -> ManifoldSpec:
    from .specfile import loads
    return loads(bundled_path(name).read_text(encoding="utf-8"))


def hilb2() -> ManifoldSpec:
    """Hilbert square of a K3 of Picard rank one, in the basis (H, delta)."""
    return bundled("hilb2")


def spec_from_block_gram(h: Sequence[Sequence], half_dim: int = 1, fujiki=1,
                         labels: Sequence[str] | None = None) -> ManifoldSpec:
    """A spec whose declared primes have Gram matrix ``h``.

    Uses the lattice ``<c> + (h - c J)`` with primes ``D_i = e_0 + e_i`` and
    ample class ``e_0``, where J is the all-ones matrix; then
    ``q(D_i, D_j) = h_ij`` and ``q(e_0, D_i) = c``.  The constant c is
    doubled from 1 until ``h - c J`` is negative-definite, which happens
    exactly when ``h`` is negative-definite on the vectors with zero sum.

    >>> s = spec_from_block_gram([[-2, 3], [3, -2]])
    >>> s.prime_gram
    ((Fraction(-2, 1), Fraction(3, 1)), (Fraction(3, 1), Fraction(-2, 1)))
    """
    h = mat(h)
    k = len(h)
    if any(h[i][j] < 0 for i in range(k) for j in range(k) if i != j):
        raise InputError("off-diagonal entries must be nonnegative")
    c = Fraction(1)
    for _ in range(64):
        tail = [[h[i][j] - c for j in range(k)] for i in range(k)]
        if is_negative_definite(tail):
            break
        c *= 2
    else:
        raise InputError("block Gram matrix is not negative-definite on sum-zero vectors")
    n = k + 1
    gram = [[Fraction(0)] * n for _ in range(n)]
    gram[0][0] = c
    for i in range(k):
        for j in range(k):
            gram[i + 1][j + 1] = tail[i][j]
    labels = list(labels) if labels else [f"D{i + 1}" for i in range(k)]
    primes = []
    for i in range(k):
        v = [Fraction(0)] * n
        v[0] = v[i + 1] = Fraction(1)
        primes.append(Prime(labels[i], tuple(v)))
    ample = tuple(Fraction(int(i == 0)) for i in range(n))
    basis = ["e0"] + [f"e{i + 1}" for i in range(k)]
    return ManifoldSpec(n, half_dim, fujiki, gram, ample, tuple(primes), tuple(basis))
