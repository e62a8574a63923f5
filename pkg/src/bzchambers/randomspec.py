"""Random specs and random classes for the property suites.

Specs are built in a diagonal basis ``diag(a0, -a1, ..., -a_{r-1})`` with
ample class ``e0``.  A prime is ``(c, v)`` with ``c >= 1`` and a small
integral ``v``; candidates are kept when they pair nonnegatively with every
prime already chosen.  Finally a random unimodular change of basis hides the
diagonal structure.  Every spec produced passes validation by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .lattice import (
    ManifoldSpec, Prime, ZERO, add, identity, inverse, matmul, matvec, qform, scale,
    transpose,
)
from .specs import spec_from_block_gram


def rational(rng: random.Random, lo: int = -4, hi: int = 4, dens=(1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def unimodular(rng: random.Random, n: int, steps: int | None = None) -> tuple:
    """Product of random elementary integer matrices (determinant +-1)."""
    m = [list(r) for r in identity(n)]
    if n < 2:
        return tuple(tuple(r) for r in m)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2)
        k = rng.choice((-1, 1))
        for row in m:
            row[j] += k * row[i]
    return tuple(tuple(Fraction(x) for x in r) for r in m)


def random_spec(rng: random.Random, max_rank: int = 6, max_exceptional: int = 6,
                min_rank: int = 1, nonexceptional: bool = True, scramble: bool = True) -> ManifoldSpec:
    """A random valid spec with rank <= max_rank and <= max_exceptional exceptional primes."""
    rank = rng.randint(min_rank, max_rank)
    a0 = rng.choice((1, 1, 2, 4))
    diag = [a0] + [rng.choice((1, 1, 2, 3)) for _ in range(rank - 1)]

    def q(u, v):
        return diag[0] * u[0] * v[0] - sum(d * a * b for d, a, b in zip(diag[1:], u[1:], v[1:]))

    primes: list = []
    want = 0
    if rank > 1 and max_exceptional > 0 and rng.random() < 0.9:
        want = rng.randint(1, max_exceptional)
    attempts = 0
    n_exc = 0
    while n_exc < want and attempts < 1000:
        attempts += 1
        c = rng.choice((1, 1, 1, 2))
        v = (c,) + tuple(rng.randint(-2, 2) for _ in range(rank - 1))
        if q(v, v) >= 0 or v in primes:
            continue
        if all(q(v, p) >= 0 for p in primes):
            primes.append(v)
            n_exc += 1
    if nonexceptional and rank > 1 and rng.random() < 0.3:
        for _ in range(50):
            c = rng.choice((1, 2, 3))
            v = (c,) + tuple(rng.randint(-1, 1) for _ in range(rank - 1))
            if q(v, v) >= 0 and v not in primes and all(q(v, p) >= 0 for p in primes):
                primes.append(v)
                break
    rng.shuffle(primes)

    gram = tuple(tuple(Fraction(diag[i] if i == 0 else -diag[i]) if i == j else ZERO
                       for j in range(rank)) for i in range(rank))
    ample = tuple(Fraction(int(i == 0)) for i in range(rank))
    coords = [tuple(Fraction(x) for x in p) for p in primes]
    if scramble:
        b = unimodular(rng, rank)
        binv = inverse(b)
        gram = matmul(matmul(transpose(b), gram), b)
        ample = matvec(binv, ample)
        coords = [matvec(binv, x) for x in coords]
    labels = [f"D{i + 1}" for i in range(len(coords))]
    return ManifoldSpec(rank, rng.choice((1, 1, 2, 3)), rng.choice((1, 3, Fraction(1, 2))),
                        gram, ample, tuple(Prime(l, c) for l, c in zip(labels, coords)))


def random_block_gram(rng: random.Random, k: int, dominant: bool = True) -> tuple:
    """A k x k candidate Gram matrix for exceptional primes.

    With ``dominant`` the diagonal beats the row sums, so every subset is a
    block and only the graph of proper intersections varies.
    """
    h = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            if rng.random() < 0.3:
                h[i][j] = h[j][i] = Fraction(rng.choice((1, 1, 2, 3) if not dominant else (1, 1, 2)))
    for i in range(k):
        if dominant:
            h[i][i] = -(sum(h[i]) + rng.choice((1, 2)))
        else:
            h[i][i] = Fraction(-rng.choice((1, 2, 2, 3)))
    return tuple(tuple(r) for r in h)


def random_block_spec(rng: random.Random, k: int, dominant: bool = True) -> ManifoldSpec:
    for _ in range(100):
        try:
            return spec_from_block_gram(random_block_gram(rng, k, dominant))
        except InputError:
            continue
    raise InputError("could not build a block spec")


def random_vector(rng: random.Random, n: int, lo: int = -4, hi: int = 4) -> tuple:
    return tuple(rational(rng, lo, hi) for _ in range(n))


def random_positive_class(spec: ManifoldSpec, rng: random.Random) -> tuple:
    """A class with q > 0 on the ample side, sometimes close to the boundary."""
    a = spec.ample
    for _ in range(1000):
        v = random_vector(rng, spec.rank)
        t = Fraction(1, 4)
        while True:
            c = add(scale(t, a), v)
            if qform(spec, c, c) > 0 and qform(spec, c, a) > 0:
                break
            t *= 2
        t = t * rng.choice((1, 1, 1, 2, 3))
        c = add(scale(t, a), v)
        if qform(spec, c, c) > 0:
            return c
    return a  # pragma: no cover


def random_effective(spec: ManifoldSpec, rng: random.Random, density: float = 0.6) -> dict:
    expr = {}
    for i in range(len(spec.primes)):
        if rng.random() < density:
            expr[i] = abs(rational(rng, 0, 4))
    return expr


def random_big_class(spec: ManifoldSpec, rng: random.Random) -> tuple:
    """Positive class plus a nonnegative combination of primes; always big."""
    c = random_positive_class(spec, rng)
    expr = random_effective(spec, rng)
    return add(c, spec.combination(expr))


def random_psef_class(spec: ManifoldSpec, rng: random.Random) -> tuple:
    """Big classes mostly, plus effective combinations of primes and nef boundary classes."""
    r = rng.random()
    if r < 0.6 or not spec.primes:
        return random_big_class(spec, rng)
    if r < 0.85:
        return spec.combination(random_effective(spec, rng))
    from .chambers import enumerate_blocks, nef_representative
    blocks = enumerate_blocks(spec)
    s = rng.choice(blocks)
    p = scale(abs(rational(rng, 1, 3)), nef_representative(spec, s))
    return add(p, spec.combination({i: abs(rational(rng, 0, 3)) for i in s}))


def random_interior_point(spec: ManifoldSpec, rng: random.Random) -> tuple:
    """A class pairing strictly positively with every prime and in the positive cone."""
    a = spec.ample
    for _ in range(1000):
        v = random_vector(rng, spec.rank, -2, 2)
        t = Fraction(1)
        for _ in range(40):
            m = add(scale(t, a), v)
            if (qform(spec, m, m) > 0 and qform(spec, m, a) > 0
                    and all(x > 0 for x in spec.pairings(m))):
                return m
            t *= 2
    return a  # pragma: no cover


def random_class(spec: ManifoldSpec, rng: random.Random) -> Sequence:
    """Anything at all: big, boundary or outside the psef cone."""
    r = rng.random()
    if r < 0.4:
        return random_vector(rng, spec.rank)
    if r < 0.7:
        return random_big_class(spec, rng)
    return random_psef_class(spec, rng)
