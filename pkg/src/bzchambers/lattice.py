"""Exact quadratic-form primitives on the Neron-Severi lattice.

Everything here works over :class:`fractions.Fraction`.  Vectors are tuples of
Fractions in the declared basis, matrices are tuples of row tuples.  No
floating point is used anywhere: all the questions asked later (is a class
nef, is a Gram matrix negative-definite, which side of a wall is a class on)
are sign conditions, and exact arithmetic keeps them decidable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import InputError, SingularSystem

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
RATIONAL_TEXT = re.compile(r"^[+-]?\d+(/\d+)?$")
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact Fraction.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-2/7"``.  Floats
    are refused unless they are integral, since a binary float is almost never
    the number the user meant.

    >>> to_fraction("3/6")
    Fraction(1, 2)
    >>> to_fraction(-4)
    Fraction(-4, 1)
    """
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x.is_integer():
            return Fraction(int(x))
        raise InputError(f"refusing inexact float {x!r}; write it as 'p/q'")
    if isinstance(x, str):
        if not RATIONAL_TEXT.match(x.strip()):
            raise InputError(f"not a rational number: {x!r}; write integers or 'p/q'")
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational number: {x!r}") from exc
    raise InputError(f"not a rational number: {x!r}")


def vec(xs: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(t, u: Sequence) -> Vector:
    return tuple(t * a for a in u)


def dot(u: Sequence, v: Sequence) -> Fraction:
    """Exact dot product, reduced once at the end instead of after every step.

    >>> dot([Fraction(1, 2), 3], [Fraction(2, 3), Fraction(-1, 6)])
    Fraction(-1, 6)
    """
    num, den = 0, 1
    for x, y in zip(u, v):
        if x and y:
            d = x.denominator * y.denominator
            if d == den:
                num += x.numerator * y.numerator
            else:
                num = num * d + x.numerator * y.numerator * den
                den *= d
    return Fraction(num, den)


def lincomb(coeffs: Iterable, vectors: Sequence[Sequence], dim: int) -> Vector:
    out = [ZERO] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k in range(dim):
                out[k] += c * v[k]
    return tuple(out)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def are_dependent(u: Sequence, v: Sequence) -> bool:
    """True iff ``u`` and ``v`` are linearly dependent (all 2x2 minors vanish)."""
    n = len(u)
    return all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def primitive(u: Sequence) -> Vector:
    """Scale a nonzero rational vector to a primitive integral vector, same ray.

    >>> primitive([Fraction(1, 2), Fraction(-1, 3)])
    (Fraction(3, 1), Fraction(-2, 1))
    """
    den = lcm(*(Fraction(a).denominator for a in u))
    ints = [int(Fraction(a) * den) for a in u]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        raise InputError("the zero vector spans no ray")
    return tuple(Fraction(a // g) for a in ints)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def _square(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    if any(len(r) != n for r in m):
        raise InputError("matrix is not square")
    return [[to_fraction(x) for x in r] for r in m]


def _integer_rows(a: list) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators; returns (rows, scales)."""
    rows, scales = [], []
    for r in a:
        c = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([x.numerator * (c // x.denominator) for x in r])
        scales.append(c)
    return rows, scales


def _bareiss_step(a: list, k: int, prev: int, cols: int):
    for i in range(k + 1, len(a)):
        aik = a[i][k]
        row, pivot_row, akk = a[i], a[k], a[k][k]
        for j in range(k + 1, cols):
            row[j] = (row[j] * akk - aik * pivot_row[j]) // prev
        row[k] = 0


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination with row pivoting.

    Rows are first scaled to integers, so every intermediate division is exact.

    >>> determinant([[Fraction(1, 2), 1], [1, 4]])
    Fraction(1, 1)
    """
    a, scales = _integer_rows(_square(m))
    n = len(a)
    if not n:
        return ONE
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        _bareiss_step(a, k, prev, n)
        prev = a[k][k]
    denom = 1
    for c in scales:
        denom *= c
    return Fraction(sign * a[n - 1][n - 1], denom)


def leading_minors(m: Sequence[Sequence]) -> list[Fraction]:
    """All leading principal minors ``det(m[:k, :k])`` for k = 1..n.

    Bareiss elimination without pivoting leaves the k-th leading minor on the
    diagonal; once a zero pivot appears the remaining minors are computed
    directly.

    >>> leading_minors([[-2, 1], [1, -2]])
    [Fraction(-2, 1), Fraction(3, 1)]
    """
    sq = _square(m)
    a, scales = _integer_rows(sq)
    n = len(a)
    minors: list[Fraction] = []
    prev = 1
    denom = 1
    for k in range(n):
        denom *= scales[k]
        if a[k][k] == 0:
            minors.append(ZERO)
            minors.extend(determinant([row[:j] for row in sq[:j]]) for j in range(k + 2, n + 1))
            return minors
        minors.append(Fraction(a[k][k], denom))
        _bareiss_step(a, k, prev, n)
        prev = a[k][k]
    return minors


def is_negative_definite(m: Sequence[Sequence]) -> bool:
    """Sylvester's criterion: ``(-1)^k * minor_k > 0`` for every leading minor.

    The empty matrix is negative-definite.

    >>> is_negative_definite([[-2, 1], [1, -2]])
    True
    >>> is_negative_definite([[-2, 2], [2, -2]])
    False
    """
    return all((-1) ** k * d > 0 for k, d in enumerate(leading_minors(m), start=1))


def signature(m: Sequence[Sequence]) -> tuple[int, int, int]:
    """Inertia ``(pos, neg, zero)`` of a symmetric matrix, by congruence reduction.

    Repeatedly split off a nonzero diagonal pivot (Schur complement); when the
    remaining diagonal vanishes but an off-diagonal entry does not, add row and
    column j to row and column i to manufacture a nonzero pivot.
    """
    a = _square(m)
    if not is_symmetric(a):
        raise InputError("signature needs a symmetric matrix")
    pos = neg = 0
    while a:
        n = len(a)
        p = next((i for i in range(n) if a[i][i] != 0), None)
        if p is None:
            hit = next(((i, j) for i in range(n) for j in range(n) if a[i][j] != 0), None)
            if hit is None:
                return pos, neg, n
            i, j = hit
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            continue
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in range(n) if i != p]
        a = [[a[i][j] - a[i][p] * a[p][j] / d for j in rest] for i in rest]
    return pos, neg, 0


def solve_linear(m: Sequence[Sequence], rhs: Sequence) -> Vector:
    """Unique solution of ``m x = rhs``; raises SingularSystem if ``m`` is singular.

    Fraction-free forward elimination on the integer-scaled augmented
    matrix, then back substitution.

    >>> solve_linear([[-2, 1], [1, -2]], [-3, -3])
    (Fraction(3, 1), Fraction(3, 1))
    """
    sq = _square(m)
    n = len(sq)
    if len(rhs) != n:
        raise InputError(f"right-hand side has length {len(rhs)}, expected {n}")
    a, _ = _integer_rows([row + [to_fraction(b)] for row, b in zip(sq, rhs)])
    prev = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            raise SingularSystem("singular system")
        a[k], a[piv] = a[piv], a[k]
        _bareiss_step(a, k, prev, n + 1)
        prev = a[k][k]
    x = [ZERO] * n
    for k in range(n - 1, -1, -1):
        acc = Fraction(a[k][n])
        for j in range(k + 1, n):
            if a[k][j]:
                acc -= a[k][j] * x[j]
        x[k] = acc / a[k][k]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    cols = [solve_linear(m, [ONE if i == j else ZERO for i in range(n)]) for j in range(n)]
    return transpose(cols)


def inverse_sign_property(m: Sequence[Sequence]) -> bool:
    """True iff every entry of ``m^-1`` is <= 0.

    Preconditions: ``m`` negative-definite with nonnegative off-diagonal
    entries.  Under them the answer is always True; the function exists as a
    probe of that fact.
    """
    a = _square(m)
    n = len(a)
    if any(a[i][j] < 0 for i in range(n) for j in range(n) if i != j):
        raise InputError("off-diagonal entries must be nonnegative")
    if not is_negative_definite(a):
        raise InputError("matrix must be negative-definite")
    return all(x <= 0 for row in inverse(a) for x in row)


@dataclass(frozen=True)
class Prime:
    """A declared prime divisor: a label and its class in the basis."""

    label: str
    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", vec(self.coords))


@dataclass(frozen=True)
class ManifoldSpec:
    """Neron-Severi data of a projective IHS manifold of dimension ``2 * half_dim``.

    Construction checks only shapes.  The geometric axioms (signature,
    positivity of the ample class, nonnegative pairing of distinct primes) are
    checked by :func:`bzchambers.zariski.validate_spec`, which reports all
    violations instead of stopping at the first one.
    """

    rank: int
    half_dim: int
    fujiki: Fraction
    gram: Matrix
    ample: Vector
    primes: tuple = ()
    basis_labels: tuple = ()
    annotations: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InputError(f"rank must be a positive integer, got {self.rank!r}")
        if not isinstance(self.half_dim, int) or self.half_dim < 1:
            raise InputError(f"half_dim must be a positive integer, got {self.half_dim!r}")
        object.__setattr__(self, "fujiki", to_fraction(self.fujiki))
        gram = mat(self.gram)
        if len(gram) != self.rank or any(len(r) != self.rank for r in gram):
            raise InputError(f"gram must be {self.rank}x{self.rank}")
        object.__setattr__(self, "gram", gram)
        ample = vec(self.ample)
        if len(ample) != self.rank:
            raise InputError(f"ample class has length {len(ample)}, expected {self.rank}")
        object.__setattr__(self, "ample", ample)
        primes = tuple(p if isinstance(p, Prime) else Prime(*p) for p in self.primes)
        for p in primes:
            if len(p.coords) != self.rank:
                raise InputError(f"prime {p.label!r} has length {len(p.coords)}, expected {self.rank}")
        labels = [p.label for p in primes]
        if len(set(labels)) != len(labels):
            raise InputError("prime labels must be distinct")
        object.__setattr__(self, "primes", primes)
        basis = tuple(self.basis_labels) or tuple(f"e{i}" for i in range(self.rank))
        if len(basis) != self.rank:
            raise InputError(f"expected {self.rank} basis labels, got {len(basis)}")
        object.__setattr__(self, "basis_labels", basis)
        object.__setattr__(self, "annotations", tuple(self.annotations))

    @cached_property
    def duals(self) -> tuple:
        """``gram @ D_i`` for each prime, so that ``q(a, D_i) = a . duals[i]``."""
        return tuple(matvec(self.gram, p.coords) for p in self.primes)

    @cached_property
    def prime_gram(self) -> Matrix:
        return tuple(tuple(dot(p.coords, d) for d in self.duals)
                     for p in self.primes)

    @cached_property
    def exceptional_index(self) -> tuple:
        """Indices of declared primes with negative square."""
        return tuple(i for i in range(len(self.primes)) if self.prime_gram[i][i] < 0)

    def prime_index(self, label) -> int:
        if isinstance(label, int):
            self.check_indices([label])
            return label
        for i, p in enumerate(self.primes):
            if p.label == label:
                return i
        raise InputError(f"unknown prime {label!r}")

    def check_indices(self, indices: Iterable[int]) -> tuple:
        out = tuple(sorted(set(indices)))
        for i in out:
            if not isinstance(i, int) or not 0 <= i < len(self.primes):
                raise InputError(f"prime index {i!r} out of range")
        return out

    def check_class(self, alpha: Sequence) -> Vector:
        a = vec(alpha)
        if len(a) != self.rank:
            raise InputError(f"class has length {len(a)}, expected {self.rank}")
        return a

    def pairings(self, alpha: Sequence) -> Vector:
        """``(q(alpha, D_i))_i`` over all declared primes."""
        a = self.check_class(alpha)
        return tuple(dot(a, d) for d in self.duals)

    def prime_class(self, i: int) -> Vector:
        return self.primes[i].coords

    def combination(self, coeffs: Mapping[int, Fraction]) -> Vector:
        """The class ``sum c_i D_i`` of a coefficient map over prime indices."""
        idx = sorted(coeffs)
        return lincomb([coeffs[i] for i in idx], [self.primes[i].coords for i in idx], self.rank)


def qform(spec: ManifoldSpec, u: Sequence, v: Sequence) -> Fraction:
    """``u^T gram v``, the Beauville-Bogomolov-Fujiki pairing of two classes."""
    a = spec.check_class(u)
    b = spec.check_class(v)
    return dot(a, [dot(row, b) for row in spec.gram])


def qsquare(spec: ManifoldSpec, u: Sequence) -> Fraction:
    return qform(spec, u, u)


def gram_of(spec: ManifoldSpec, indices: Iterable[int]) -> Matrix:
    """Gram matrix of the declared primes ``indices`` (sorted order)."""
    idx = spec.check_indices(indices)
    g = spec.prime_gram
    return tuple(tuple(g[i][j] for j in idx) for i in idx)


def block_coefficients(spec: ManifoldSpec, alpha: Sequence, block: Iterable[int]) -> dict:
    """Coefficients ``n`` with ``q(alpha - sum n_i D_i, D_j) = 0`` for all j in ``block``."""
    idx = spec.check_indices(block)
    if not idx:
        return {}
    pair = spec.pairings(alpha)
    n = solve_linear(gram_of(spec, idx), [pair[j] for j in idx])
    return dict(zip(idx, n))


def project_orthogonal(spec: ManifoldSpec, alpha: Sequence, block: Iterable[int]) -> Vector:
    """Project ``alpha`` onto the q-orthogonal of ``span(block)`` along ``span(block)``.

    Raises SingularSystem when the restricted Gram matrix is degenerate.
    """
    a = spec.check_class(alpha)
    n = block_coefficients(spec, a, block)
    return sub(a, spec.combination(n))


def hodge_inequality(spec: ManifoldSpec, d: Sequence, e: Sequence) -> tuple[bool, bool]:
    """Check ``q(d, e)^2 >= q(d) q(e)`` for ``q(d) > 0``.

    Returns ``(holds, equality)``, where ``equality`` is decided independently
    as linear dependence of ``d`` and ``e``.
    """
    qd = qsquare(spec, d)
    if qd <= 0:
        raise InputError("hodge_inequality needs q(d) > 0")
    lhs = qform(spec, d, e) ** 2
    holds = lhs >= qd * qsquare(spec, e)
    return holds, are_dependent(vec(d), vec(e))


def orthogonal_complement(spec: ManifoldSpec, d: Sequence) -> tuple:
    """A basis of ``d^perp = {x : q(x, d) = 0}`` for nonzero ``d``."""
    c = matvec(spec.gram, spec.check_class(d))
    p = next((i for i, x in enumerate(c) if x != 0), None)
    if p is None:
        raise InputError("the zero class has no orthogonal hyperplane")
    basis = []
    for i in range(spec.rank):
        if i == p:
            continue
        v = [ZERO] * spec.rank
        v[i] = ONE
        v[p] = -c[i] / c[p]
        basis.append(tuple(v))
    return tuple(basis)


def restricted_gram(spec: ManifoldSpec, basis: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(qform(spec, u, v) for v in basis) for u in basis)


def format_number(x) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_class(coords: Sequence, labels: Sequence[str]) -> str:
    """Write a class as a combination of basis labels.

    >>> format_class([3, -2], ["H", "delta"])
    '3H - 2delta'
    >>> format_class([Fraction(1, 2), 0], ["H", "delta"])
    '(1/2)H'
    """
    parts = []
    for c, lab in zip(vec(coords), labels):
        if c == 0:
            continue
        mag = abs(c)
        if mag == 1:
            body = lab
        elif mag.denominator == 1:
            body = f"{mag.numerator}{lab}"
        else:
            body = f"({format_number(mag)}){lab}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"
