from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bzchambers.errors import InputError, SingularSystem
from bzchambers.lattice import (
    ManifoldSpec, determinant, dot, format_class, format_number, gram_of,
    hodge_inequality, inverse, inverse_sign_property, is_negative_definite, leading_minors,
    orthogonal_complement, primitive, project_orthogonal, qform, restricted_gram, signature,
    solve_linear, to_fraction,
)
from bzchambers.simplex import Unbounded, maximize
from bzchambers.specs import spec_from_block_gram

F = Fraction
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def sym_matrix(n):
    return st.lists(rationals, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda xs: _fill(n, xs))


def _fill(n, xs):
    m = [[F(0)] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


# --- coercion and formatting -------------------------------------------------

def test_to_fraction_accepts_exact_forms():
    assert to_fraction("3/6") == F(1, 2)
    assert to_fraction(" -2 ") == F(-2)
    assert to_fraction(4.0) == F(4)


@pytest.mark.parametrize("bad", [0.5, "1.5", "1e3", "x", "1/0", True, None])
def test_to_fraction_refuses_inexact_or_garbage(bad):
    with pytest.raises(InputError):
        to_fraction(bad)


def test_format_helpers():
    assert format_number(F(-3, 4)) == "-3/4"
    assert format_class([3, -2], ["H", "delta"]) == "3H - 2delta"
    assert format_class([0, 0], ["H", "delta"]) == "0"
    assert format_class([-1, F(1, 2)], ["H", "delta"]) == "-H + (1/2)delta"


def test_primitive():
    assert primitive([F(2), F(-4)]) == (1, -2)
    assert primitive([F(1, 2), F(1, 3)]) == (3, 2)


# --- qform ----------------------------------------------------------------------

def test_qform_hilb2_examples(hilb2):
    assert qform(hilb2, (1, 0), (1, 0)) == 2
    assert qform(hilb2, (1, 0), (0, 1)) == 0
    assert qform(hilb2, (0, 0), (5, F(-7, 3))) == 0
    assert qform(hilb2, (3, -2), (0, 1)) == 4


def test_qform_rejects_wrong_length(hilb2):
    with pytest.raises(InputError):
        qform(hilb2, (1, 0, 0), (1, 0))


@settings(max_examples=200)
@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3), rationals)
def test_qform_bilinear_symmetric(u, v, w, t):
    spec = spec_from_block_gram([[-2, 1], [1, -2]])
    uv = [a + b for a, b in zip(u, v)]
    assert qform(spec, uv, w) == qform(spec, u, w) + qform(spec, v, w)
    assert qform(spec, [t * a for a in u], w) == t * qform(spec, u, w)
    assert qform(spec, u, w) == qform(spec, w, u)


@given(st.lists(rationals, min_size=4, max_size=4), st.lists(rationals, min_size=4, max_size=4))
def test_dot_matches_naive_sum(u, v):
    assert dot(u, v) == sum((a * b for a, b in zip(u, v)), F(0))


def test_gram_of(hilb2, a2):
    assert gram_of(hilb2, [0]) == ((-2,),)
    assert gram_of(hilb2, []) == ()
    assert gram_of(a2, [1, 0]) == ((-2, 1), (1, -2))


# --- definiteness, signature, linear algebra ----------------------------------

def test_negative_definite_examples():
    assert is_negative_definite([[-2]])
    assert is_negative_definite([[-2, 1], [1, -2]])
    assert not is_negative_definite([[-2, 2], [2, -2]])
    assert leading_minors([[-2, 1], [1, -2]]) == [-2, 3]


def test_signature_examples():
    assert signature([[2, 0], [0, -2]]) == (1, 1, 0)
    assert signature([[-2, 1], [1, -2]]) == (0, 2, 0)
    assert signature([[0]]) == (0, 0, 1)
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)


@settings(max_examples=400)
@given(st.integers(1, 6).flatmap(sym_matrix))
def test_negative_definite_agrees_with_signature(m):
    assert is_negative_definite(m) == (signature(m) == (0, len(m), 0))


@settings(max_examples=200)
@given(st.integers(1, 5).flatmap(sym_matrix))
def test_determinant_sign_matches_signature(m):
    pos, neg, zero = signature(m)
    d = determinant(m)
    if zero:
        assert d == 0
    else:
        assert d != 0 and (d < 0) == (neg % 2 == 1)


def test_solve_linear_examples():
    assert solve_linear([[-2]], [-2]) == (1,)
    assert solve_linear([[-2, 1], [1, -2]], [-3, -3]) == (3, 3)
    assert solve_linear([[1, 0], [0, 1]], [F(1, 2), 7]) == (F(1, 2), 7)
    with pytest.raises(SingularSystem):
        solve_linear([[1, 2], [2, 4]], [1, 1])


def test_inverse_and_sign_property():
    assert inverse([[-2, 1], [1, -2]]) == ((F(-2, 3), F(-1, 3)), (F(-1, 3), F(-2, 3)))
    assert inverse_sign_property([[-2]])
    assert inverse_sign_property([[-2, 1], [1, -2]])
    assert inverse_sign_property([[-2, 0], [0, -3]])


# --- spec-level helpers ---------------------------------------------------------

def test_project_orthogonal_examples(hilb2, a2):
    assert project_orthogonal(hilb2, (1, 1), [0]) == (1, 0)
    assert project_orthogonal(hilb2, (3, F(1, 2)), []) == (3, F(1, 2))
    # alpha with q(alpha, D1) = q(alpha, D2) = -1
    alpha = (F(-1), 0, 0)
    assert a2.pairings(alpha) == (-1, -1)
    p = project_orthogonal(a2, alpha, [0, 1])
    assert a2.pairings(p) == (0, 0)


@settings(max_examples=100)
@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_project_orthogonal_idempotent_and_linear(u, v):
    spec = spec_from_block_gram([[-2, 1], [1, -2]])
    for s in ([0], [1], [0, 1]):
        pu = project_orthogonal(spec, u, s)
        assert project_orthogonal(spec, pu, s) == pu
        uv = [a + b for a, b in zip(u, v)]
        assert project_orthogonal(spec, uv, s) == tuple(
            a + b for a, b in zip(pu, project_orthogonal(spec, v, s)))


def test_hodge_examples(hilb2):
    assert hodge_inequality(hilb2, (1, 0), (0, 1)) == (True, False)
    assert hodge_inequality(hilb2, (1, 0), (2, 0)) == (True, True)
    assert hodge_inequality(hilb2, (1, 0), (1, 1)) == (True, False)


def test_orthogonal_complement_is_negative_definite(hilb2):
    basis = orthogonal_complement(hilb2, (2, -1))
    assert len(basis) == 1
    assert signature(restricted_gram(hilb2, basis)) == (0, 1, 0)


def test_manifold_spec_rejects_bad_shapes():
    with pytest.raises(InputError):
        ManifoldSpec(2, 1, 1, [[2, 0]], [1, 0], ())
    with pytest.raises(InputError):
        ManifoldSpec(2, 1, 1, [[2, 0], [0, -2]], [1, 0, 0], ())


# --- simplex ----------------------------------------------------------------------

def test_simplex_small_lp():
    x, v = maximize([1, 1], [[1, 0], [0, 1], [2, -1]], [1, 1, 0])
    assert (x, v) == ((F(1, 2), F(1)), F(3, 2))


def test_simplex_degenerate_and_unbounded():
    x, v = maximize([1, 1], [[1, 0], [0, 1], [1, -1], [-1, 1]], [1, 1, 0, 0])
    assert v == 2 and x == (1, 1)
    # the decomposition LP for D1 + D2 with Gram [[-2,1],[1,-2]]: only x = 0 is q-nef
    x, v = maximize([1, 1], [[1, 0], [0, 1], [2, -1], [-1, 2]], [1, 1, 0, 0])
    assert (x, v) == ((0, 0), 0)
    with pytest.raises(Unbounded):
        maximize([1], [[-1]], [0])
