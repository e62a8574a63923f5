"""Volume of classes and the volume polynomial of a chamber.

On big classes ``vol(alpha) = c * q(P(alpha))^n`` where ``c`` is the Fujiki
constant, ``2n`` the dimension and ``P`` the positive part; elsewhere the
volume is zero.  On the chamber of a block S the positive part is the linear
projection of ``alpha`` onto ``S^perp`` along ``span(S)``, so the volume is a
single homogeneous polynomial of degree 2n there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .chambers import check_block
from .lattice import (
    ManifoldSpec, ZERO, identity, inverse, matmul, qform, to_fraction, transpose,
)
from .zariski import decompose_class, is_big


def volume(spec: ManifoldSpec, alpha: Sequence) -> Fraction:
    """``c * q(P)^n`` for big classes, 0 otherwise.

    >>> from bzchambers.specs import hilb2
    >>> volume(hilb2(), [1, 1]), volume(hilb2(), [2, -1]), volume(hilb2(), [1, -1])
    (Fraction(12, 1), Fraction(108, 1), Fraction(0, 1))
    """
    if not is_big(spec, alpha):
        return ZERO
    p = decompose_class(spec, alpha).positive
    return spec.fujiki * qform(spec, p, p) ** spec.half_dim


@dataclass(frozen=True)
class VolumePolynomial:
    """A polynomial stored as ``{exponent tuple: coefficient}``, zero terms dropped."""

    nvars: int
    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {tuple(e): to_fraction(c) for e, c in self.terms.items() if c != 0}
        for e in clean:
            if len(e) != self.nvars:
                raise ValueError(f"exponent {e} has the wrong length")
        object.__setattr__(self, "terms", dict(sorted(clean.items(), reverse=True)))

    @classmethod
    def constant(cls, nvars: int, c=1):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int):
        return cls(nvars, {tuple(int(k == i) for k in range(nvars)): 1})

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return VolumePolynomial(self.nvars, out)

    def __mul__(self, other):
        if not isinstance(other, VolumePolynomial):
            return VolumePolynomial(self.nvars, {e: c * to_fraction(other) for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return VolumePolynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = VolumePolynomial.constant(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, x: Sequence) -> Fraction:
        x = [to_fraction(v) for v in x]
        total = ZERO
        for e, c in self.terms.items():
            t = c
            for xi, k in zip(x, e):
                if k:
                    t *= xi ** k
            total += t
        return total

    def substitute(self, forms: Sequence[Sequence], nvars: int | None = None):
        """Replace variable i by the linear form ``sum_j forms[i][j] y_j``."""
        nvars = len(forms[0]) if nvars is None else nvars
        lin = [VolumePolynomial(nvars, {tuple(int(k == j) for k in range(nvars)): c
                                        for j, c in enumerate(f)}) for f in forms]
        out = VolumePolynomial(nvars, {})
        for e, c in self.terms.items():
            term = VolumePolynomial.constant(nvars, c)
            for form, k in zip(lin, e):
                term = term * form ** k
            out = out + term
        return out

    def format(self, labels: Iterable[str] | None = None, prefix: str = "x_") -> str:
        """Human-readable form, terms in descending lexicographic exponent order.

        >>> VolumePolynomial(2, {(4, 0): 12, (2, 2): -24, (0, 4): 12}).format(["H", "d"])
        '12*x_H^4 - 24*x_H^2*x_d^2 + 12*x_d^4'
        """
        labels = list(labels) if labels is not None else [str(i) for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            mono = "*".join(f"{prefix}{labels[i]}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            mag = abs(c)
            coef = str(mag)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{coef}*{mono}"
            else:
                body = coef
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __str__(self):
        return self.format()


def projection_matrix(spec: ManifoldSpec, block: Iterable[int]) -> tuple:
    """Matrix of ``x -> x - sum n_i(x) D_i`` with ``q(., D_j) = 0`` on the block."""
    idx = check_block(spec, block)
    if not idx:
        return identity(spec.rank)
    d = transpose([spec.prime_class(i) for i in idx])        # rank x k
    g = [[spec.prime_gram[i][j] for j in idx] for i in idx]
    # n(x) = G^-1 D^T gram x
    coef = matmul(matmul(inverse(g), transpose(d)), spec.gram)
    corr = matmul(d, coef)
    ident = identity(spec.rank)
    return tuple(tuple(ident[i][j] - corr[i][j] for j in range(spec.rank)) for i in range(spec.rank))


def volume_polynomial(spec: ManifoldSpec, block: Iterable[int]) -> VolumePolynomial:
    """``c * q(Pi x, Pi x)^n`` expanded in the basis coordinates.

    >>> from bzchambers.specs import hilb2
    >>> volume_polynomial(hilb2(), [0]).format(["H", "delta"])
    '12*x_H^4'
    """
    pi = projection_matrix(spec, block)
    quad = matmul(matmul(transpose(pi), spec.gram), pi)
    r = spec.rank
    terms: dict = {}
    for i in range(r):
        for j in range(r):
            if quad[i][j]:
                e = [0] * r
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = terms.get(tuple(e), ZERO) + quad[i][j]
    return VolumePolynomial(r, terms) ** spec.half_dim * spec.fujiki
