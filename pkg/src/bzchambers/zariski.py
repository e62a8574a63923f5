"""Boucksom-Zariski decompositions, null and negative loci, bigness tests.

Two independent routes compute the decomposition:

* :func:`decompose_effective` takes an effective expression ``sum a_i D_i``
  and maximizes ``sum x_i`` over the polytope of q-nef subdivisors with an
  exact simplex; the optimum is the positive part.
* :func:`decompose_class` takes a bare class and grows the negative support
  from the primes it meets negatively until the orthogonal projection is
  q-nef.

All statements are relative to the finite list of declared primes.  A spec
file must declare every q-exceptional prime relevant to the region studied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import simplex
from .errors import InputError, NotBig, NotDecomposable
from .lattice import (
    ManifoldSpec, ZERO, gram_of, is_negative_definite,
    is_symmetric, qform, signature, solve_linear, sub, to_fraction, vec,
)


@dataclass(frozen=True)
class Decomposition:
    """``alpha = positive + sum(negative[i] * D_i)``; ``support`` is the sorted key set."""

    positive: tuple
    negative: dict = field(default_factory=dict)

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.negative))

    def negative_class(self, spec: ManifoldSpec) -> tuple:
        return spec.combination(self.negative)

    def reconstruct(self, spec: ManifoldSpec) -> tuple:
        return tuple(p + n for p, n in zip(self.positive, self.negative_class(spec)))


def _pruned(coeffs: Mapping[int, Fraction]) -> dict:
    return {i: c for i, c in sorted(coeffs.items()) if c != 0}


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, message: str):
        self.violations.append((kind, message))

    def __str__(self):
        if self.ok:
            return "OK"
        return "\n".join(f"{kind}: {msg}" for kind, msg in self.violations)


def validate_spec(spec: ManifoldSpec) -> ValidationReport:
    """Check the lattice axioms and collect every violation."""
    report = ValidationReport()
    if spec.fujiki <= 0:
        report.add("fujiki", f"Fujiki constant must be positive, got {spec.fujiki}")
    if not is_symmetric(spec.gram):
        report.add("symmetry", "gram matrix is not symmetric")
    else:
        sig = signature(spec.gram)
        if sig != (1, spec.rank - 1, 0):
            report.add("signature", f"gram has signature {sig}, expected (1, {spec.rank - 1}, 0)")
    if qform(spec, spec.ample, spec.ample) <= 0:
        report.add("ample", "q(ample, ample) must be positive")
    for i, p in enumerate(spec.primes):
        if qform(spec, spec.ample, p.coords) <= 0:
            report.add("ample", f"q(ample, {p.label}) must be positive")
    g = spec.prime_gram
    n = len(spec.primes)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = spec.primes[i], spec.primes[j]
            if g[i][j] < 0:
                report.add("intersection",
                           f"intersection-product axiom violated: q({a.label}, {b.label}) = {g[i][j]} < 0")
            if a.coords == b.coords:
                report.add("distinct", f"primes {a.label} and {b.label} have the same class")
    return report


def _parse_expression(spec: ManifoldSpec, expr: Mapping) -> dict:
    out = {}
    for key, c in expr.items():
        i = spec.prime_index(key)
        c = to_fraction(c)
        if c < 0:
            raise InputError(f"coefficient of {spec.primes[i].label} is negative")
        if c:
            out[i] = out.get(i, ZERO) + c
    return out


def decompose_effective(spec: ManifoldSpec, expr: Mapping) -> Decomposition:
    """Decompose ``sum a_i D_i`` by maximizing ``sum x_i`` over q-nef subdivisors.

    The feasible set is ``0 <= x_i <= a_i`` and ``sum_i x_i q(D_i, D_j) >= 0``
    for every component ``D_j``; q-nefness against primes outside the support
    is automatic because distinct primes pair nonnegatively.
    """
    a = _parse_expression(spec, expr)
    idx = sorted(a)
    if not idx:
        return Decomposition(tuple(ZERO for _ in range(spec.rank)), {})
    k = len(idx)
    g = spec.prime_gram
    rows, rhs = [], []
    for r, i in enumerate(idx):
        rows.append([Fraction(int(r == s)) for s in range(k)])
        rhs.append(a[i])
    for j in idx:
        rows.append([-g[i][j] for i in idx])
        rhs.append(ZERO)
    x, _ = simplex.maximize([1] * k, rows, rhs)
    positive = spec.combination(dict(zip(idx, x)))
    negative = _pruned({i: a[i] - xi for i, xi in zip(idx, x)})
    return Decomposition(positive, negative)


def decompose_class(spec: ManifoldSpec, alpha: Sequence) -> Decomposition:
    """Decompose a class by support growth.

    Start with the exceptional primes meeting ``alpha`` negatively; at each
    step solve for the negative part that makes ``alpha - N`` orthogonal to
    the current support, then add any exceptional prime the new positive part
    meets negatively.  Raises NotDecomposable when the support stops being
    negative-definite, a coefficient comes out nonpositive, or the final
    positive part leaves the closed positive cone on the ample side.
    """
    a = spec.check_class(alpha)
    exc = spec.exceptional_index
    pair = spec.pairings(a)
    support = sorted(i for i in exc if pair[i] < 0)
    coeffs: dict = {}
    positive = a
    while support:
        gram = gram_of(spec, support)
        if not is_negative_definite(gram):
            labels = ", ".join(spec.primes[i].label for i in support)
            raise NotDecomposable(f"support {{{labels}}} is not negative-definite")
        n = solve_linear(gram, [pair[j] for j in support])
        coeffs = dict(zip(support, n))
        positive = sub(a, spec.combination(coeffs))
        ppair = spec.pairings(positive)
        grow = [i for i in exc if i not in coeffs and ppair[i] < 0]
        if not grow:
            break
        support = sorted(set(support) | set(grow))
    bad = [spec.primes[i].label for i, c in coeffs.items() if c <= 0]
    if bad:
        raise NotDecomposable(f"negative part has nonpositive coefficients on {', '.join(bad)}")
    bad = [p.label for p, x in zip(spec.primes, spec.pairings(positive)) if x < 0]
    if bad:
        raise NotDecomposable(f"positive part meets {', '.join(bad)} negatively")
    if qform(spec, positive, positive) < 0 or qform(spec, positive, spec.ample) < 0:
        raise NotDecomposable("positive part lies outside the closed positive cone "
                              "(class is not pseudo-effective for the declared primes)")
    return Decomposition(positive, _pruned(coeffs))


def is_qnef(spec: ManifoldSpec, alpha: Sequence) -> bool:
    return all(x >= 0 for x in spec.pairings(alpha))


def is_big(spec: ManifoldSpec, alpha: Sequence) -> bool:
    try:
        d = decompose_class(spec, alpha)
    except NotDecomposable:
        return False
    p = d.positive
    return qform(spec, p, p) > 0 and qform(spec, p, spec.ample) > 0


def is_pseudoeffective(spec: ManifoldSpec, alpha: Sequence) -> bool:
    try:
        d = decompose_class(spec, alpha)
    except NotDecomposable:
        return False
    p = d.positive
    return qform(spec, p, p) >= 0 and qform(spec, p, spec.ample) >= 0


def require_big(spec: ManifoldSpec, alpha: Sequence):
    if not is_big(spec, alpha):
        raise NotBig(f"class {tuple(str(x) for x in vec(alpha))} is not big")


def null_locus(spec: ManifoldSpec, alpha: Sequence) -> tuple:
    """Exceptional primes orthogonal to the big class ``alpha``."""
    require_big(spec, alpha)
    pair = spec.pairings(alpha)
    return tuple(i for i in spec.exceptional_index if pair[i] == 0)


def neg_locus(spec: ManifoldSpec, alpha: Sequence) -> tuple:
    """Support of the negative part of ``alpha``."""
    return decompose_class(spec, alpha).support


def check_decomposition(spec: ManifoldSpec, alpha: Sequence, d: Decomposition) -> list:
    """Return the list of decomposition axioms that ``d`` violates (empty if none)."""
    failures = []
    ppair = spec.pairings(d.positive)
    if any(x < 0 for x in ppair):
        failures.append("positive part is not q-nef")
    if any(ppair[j] != 0 for j in d.negative):
        failures.append("positive part is not orthogonal to the support")
    if not is_negative_definite(gram_of(spec, d.support)):
        failures.append("support Gram matrix is not negative-definite")
    if any(c <= 0 for c in d.negative.values()):
        failures.append("negative part has nonpositive coefficients")
    if d.reconstruct(spec) != vec(alpha):
        failures.append("P + N does not reconstruct the class")
    return failures

