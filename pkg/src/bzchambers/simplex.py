"""Exact primal simplex over the rationals, Bland's rule for anti-cycling.

Only the shape needed by the decomposition LP is supported::

    maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0

so the slack basis is feasible from the start and no phase one is needed.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import BZError, InputError


class Unbounded(BZError):
    pass


def maximize(c: Sequence, a: Sequence[Sequence], b: Sequence) -> tuple[tuple, Fraction]:
    """Return ``(x, value)`` of an optimal vertex.

    >>> x, v = maximize([1, 1], [[1, 0], [0, 1], [2, -1]], [1, 1, 0])
    >>> x, v
    ((Fraction(1, 2), Fraction(1, 1)), Fraction(3, 2))
    """
    m, n = len(a), len(c)
    b = [Fraction(x) for x in b]
    if any(x < 0 for x in b):
        raise InputError("right-hand side must be nonnegative")
    if any(len(row) != n for row in a):
        raise InputError("constraint rows must match the objective length")

    # tableau rows: [coefficients of n structural + m slack vars | rhs]
    rows = [[Fraction(x) for x in a[i]] + [Fraction(int(i == k)) for k in range(m)] + [b[i]]
            for i in range(m)]
    # reduced costs: z_j - c_j, optimal when all >= 0
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))

    while True:
        enter = next((j for j in range(n + m) if obj[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise Unbounded("objective is unbounded")
        piv = rows[leave][enter]
        rows[leave] = [x / piv for x in rows[leave]]
        for i in range(m):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[leave])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, rows[leave])]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = rows[i][-1]
    return tuple(x), obj[-1]
