import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persext.exactfield import (
    ExactMatrix,
    FieldSpec,
    image_basis,
    kernel_basis,
    quotient_dim,
    rank,
    solve,
)

GF2, Q, BIG = FieldSpec(2), FieldSpec(None), FieldSpec(32003)


def M(rows, F=Q, cols=None):
    return ExactMatrix.from_rows(rows, F, cols)


def test_field_parse_and_reject_composite():
    assert FieldSpec.parse("p:32003") == FieldSpec()
    assert FieldSpec.parse("q").is_rational
    with pytest.raises(ValueError):
        FieldSpec.parse("p:4")
    with pytest.raises(ValueError):
        FieldSpec.parse("r")


def test_canonical_entries():
    assert M([[-1, 5]], FieldSpec(3)).data == ((2, 2),)
    assert M([["2/4"]], Q).data == ((Fraction(1, 2),),)
    # 1/2 in GF(5) is 3
    assert M([["1/2"]], FieldSpec(5)).data == ((3,),)


def test_rank_examples(F):
    assert rank(ExactMatrix.identity(2, F)) == 2
    assert rank(ExactMatrix.zeros(0, 3, F)) == 0
    assert rank(ExactMatrix.zeros(3, 0, F)) == 0
    assert rank(M([[1, 2], [2, 4]], F)) == 1


def test_kernel_examples(F):
    assert kernel_basis(ExactMatrix.identity(3, F)).cols == 0
    assert kernel_basis(ExactMatrix.zeros(2, 3, F)).cols == 3


def test_kernel_gf2_against_enumeration():
    A = M([[1, 1]], GF2)
    K = kernel_basis(A)
    brute = [v for v in itertools.product(range(2), repeat=2) if (v[0] + v[1]) % 2 == 0 and any(v)]
    assert K.cols == 1
    assert K.column(0) in brute


def test_solve_examples(F):
    b = (F(3), F(1))
    assert solve(ExactMatrix.identity(2, F), b) == b
    assert solve(ExactMatrix.zeros(2, 2, F), (1, 0)) is None
    with pytest.raises(ValueError):
        solve(ExactMatrix.identity(2, F), (1,))


def test_solve_gf2_against_enumeration():
    x = solve(M([[1, 1]], GF2), (1,))
    assert x in [(1, 0), (0, 1)]


def test_quotient_dim_examples():
    assert quotient_dim(4, []) == 4
    assert quotient_dim(2, [(1, 0), (0, 1)]) == 0
    assert quotient_dim(3, [(1, 1, 0)]) == 2
    with pytest.raises(ValueError):
        quotient_dim(3, [(1, 1)])


def test_image_basis_is_canonical():
    A = M([[2, 4], [1, 2]])
    B = M([[1, 2], [Fraction(1, 2), 1]])
    assert image_basis(A) == image_basis(B)
    assert image_basis(A).cols == 1


def random_matrix(rng, F, r, c, lo=-5, hi=5):
    return ExactMatrix.from_rows([[rng.randint(lo, hi) for _ in range(c)] for _ in range(r)], F, c)


matrices = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 2**32))


@pytest.mark.parametrize("field", [BIG, GF2, Q], ids=["p32003", "p2", "q"])
@settings(max_examples=200, deadline=None)
@given(shape=matrices)
def test_rank_nullity_and_transpose(field, shape):
    r, c, seed = shape
    A = random_matrix(random.Random(seed), field, r, c)
    K = kernel_basis(A)
    assert rank(A) + K.cols == c
    assert (A @ K).is_zero()
    assert rank(A) == rank(A.T)


@pytest.mark.parametrize("field", [BIG, GF2, Q], ids=["p32003", "p2", "q"])
@settings(max_examples=100, deadline=None)
@given(shape=matrices)
def test_solve_consistency(field, shape):
    r, c, seed = shape
    rng = random.Random(seed)
    A = random_matrix(rng, field, r, c, -2, 2)
    b = [field(rng.randint(-2, 2)) for _ in range(r)]
    x = solve(A, b)
    if x is None:
        aug = A.hstack(ExactMatrix.from_columns([b], field, r))
        assert rank(aug) > rank(A)
    else:
        assert (A @ ExactMatrix.from_columns([x], field, c)).column(0) == tuple(b)


def test_prime_and_rational_rank_agree():
    rng = random.Random(20240501)
    for _ in range(100):
        rows = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(6)]
        assert rank(M(rows, BIG)) == rank(M(rows, Q))


def test_matrix_algebra_shapes():
    A = M([[1, 2, 3]])
    with pytest.raises(ValueError):
        A @ A
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1]], Q) + ExactMatrix.from_rows([[1]], GF2)
    assert (A.T @ A).shape == (3, 3)
    assert A.hstack(A).shape == (1, 6)
    assert A.vstack(A).shape == (2, 3)
