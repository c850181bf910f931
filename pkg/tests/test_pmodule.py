import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persext.exactfield import ExactMatrix, FieldSpec
from persext.pmodule import (
    ModuleError,
    PModule,
    diagonal,
    direct_sum,
    hom_basis,
    hom_dim,
    hook,
    identity_morphism,
    image_dims,
    interval_full,
    is_isomorphism,
    kernel,
    projective,
    random_module,
    simple,
    top_dims,
    trivial_ones,
    validate,
    zero_module,
    zero_morphism,
    gauge_matrix,
)
from persext.exactfield import rank
from persext.poset import chain, grid
from persext.resolution import scalar_morphism

SQ = grid(1)
Q = FieldSpec(None)


def dims_of(M):
    return {v: d for v, d in M.dims.items() if d}


def test_hook_is_valid(F):
    assert validate(hook(SQ, F)) == []


def test_broken_square_reports_violation():
    one = ExactMatrix.identity(1, Q)
    maps = {((0, 0), (1, 0)): one, ((0, 0), (0, 1)): one, ((0, 1), (1, 1)): one, ((1, 0), (1, 1)): one.scale(2)}
    M = PModule(SQ, Q, {v: 1 for v in SQ}, maps)
    bad = validate(M)
    assert len(bad) == 1
    assert bad[0]["pair"] == ((0, 0), (1, 1))
    assert bad[0]["reference"] == [[2]] and bad[0]["composite"] == [[1]]


def test_shape_violation():
    M = PModule(SQ, Q, {(0, 0): 1, (1, 0): 1}, {((0, 0), (1, 0)): ExactMatrix.identity(2, Q)})
    assert [v["kind"] for v in validate(M)] == ["shape"]


def test_chain_modules_always_valid(F):
    rng = random.Random(5)
    P = chain(4)
    for _ in range(10):
        dims = {v: rng.randint(0, 3) for v in P}
        maps = {(p, q): ExactMatrix.from_rows([[rng.randint(-3, 3) for _ in range(dims[p])] for _ in range(dims[q])], F, dims[p])
                for p, q in P.covers}
        assert validate(PModule(P, F, dims, maps)) == []


@pytest.mark.parametrize("n", range(4))
def test_builtins_valid_on_grids(n, F):
    G = grid(n)
    mods = [interval_full(G, F), trivial_ones(G, F), diagonal(G, F)]
    mods += [simple(G, v, F) for v in G] + [projective(G, v, F) for v in G]
    if n == 1:
        mods.append(hook(G, F))
    for M in mods:
        assert validate(M) == []


def test_constructor_dims():
    assert dims_of(simple(SQ, (0, 0))) == {(0, 0): 1}
    assert projective(SQ, (0, 0)).dim_vector() == (1, 1, 1, 1)
    assert all(A == ExactMatrix.identity(1, FieldSpec()) for A in projective(SQ, (0, 0)).maps.values())
    assert interval_full(SQ).dim_vector() == (1, 1, 1, 1)
    assert all(A.is_zero() for A in trivial_ones(SQ).maps.values())
    assert dims_of(diagonal(grid(2))) == {(0, 0): 1, (1, 1): 1, (2, 2): 1}
    assert dims_of(direct_sum(simple(SQ, (0, 0)), simple(SQ, (1, 0)))) == {(0, 0): 1, (1, 0): 1}
    with pytest.raises(ModuleError):
        hook(grid(2))
    with pytest.raises(ModuleError):
        diagonal(chain(3))
    with pytest.raises(ModuleError):
        simple(SQ, (5, 5))


def test_projective_at_sink_is_simple():
    for n in (1, 2, 3):
        G = grid(n)
        top = (n, n)
        assert projective(G, top).dim_vector() == simple(G, top).dim_vector()
    assert projective(chain(3), 2).dim_vector() == simple(chain(3), 2).dim_vector()


def test_direct_sum_with_zero_and_validity(F):
    M = hook(SQ, F)
    assert direct_sum(M, zero_module(SQ, F)).dims == M.dims
    assert validate(direct_sum(interval_full(SQ, F), hook(SQ, F))) == []
    with pytest.raises(ModuleError):
        direct_sum(simple(SQ, (0, 0), F), simple(grid(2), (0, 0), F))


def brute_hom_count_gf2(M, N):
    """Number of natural transformations over GF(2) by exhaustive search (1x1 blocks only)."""
    P = M.poset
    verts = [v for v in P if M.dims[v] and N.dims[v]]
    count = 0
    for vals in itertools.product(range(2), repeat=len(verts)):
        d = {v: 0 for v in P}
        d.update(zip(verts, vals))
        ok = all(
            (N.map(p, q)[0, 0] * d[p] if N.dims[p] and N.dims[q] and M.dims[p] else 0) % 2
            == (d[q] * M.map(p, q)[0, 0] if M.dims[p] and M.dims[q] and N.dims[q] else 0) % 2
            for p, q in P.covers)
        count += ok
    return count


def test_hom_examples_against_brute_force(F):
    k, t = interval_full(SQ, F), trivial_ones(SQ, F)
    assert len(hom_basis(k, k)) == 1
    assert len(hom_basis(t, t)) == 4
    assert len(hom_basis(simple(SQ, (1, 0), F), simple(SQ, (0, 0), F))) == 0
    G2 = FieldSpec(2)
    assert brute_hom_count_gf2(interval_full(SQ, G2), interval_full(SQ, G2)) == 2 ** 1
    assert brute_hom_count_gf2(trivial_ones(SQ, G2), trivial_ones(SQ, G2)) == 2 ** 4
    assert brute_hom_count_gf2(hook(SQ, G2), hook(SQ, G2)) == 2 ** len(hom_basis(hook(SQ, F), hook(SQ, F)))


def test_kernel_examples(F):
    M = interval_full(SQ, F)
    K, inc = kernel(identity_morphism(M))
    assert K.is_zero()
    K, inc = kernel(zero_morphism(M, trivial_ones(SQ, F)))
    assert K.dims == M.dims and is_isomorphism(inc)
    pi = scalar_morphism(SQ, F, [(1, 0), (0, 1)], [(0, 0)], ExactMatrix.from_rows([[1, 1]], F))
    assert pi.is_natural()
    K, inc = kernel(pi)
    assert dims_of(K) == {(1, 1): 1}
    assert K.dims == projective(SQ, (1, 1), F).dims
    # the kernel sits on the anti-diagonal
    col = inc[(1, 1)].column(0)
    assert col[0] == F(1) and col[1] == F(-1)


def test_kernel_rejects_unnatural():
    one = ExactMatrix.identity(1, Q)
    M = interval_full(SQ, Q)
    f = identity_morphism(M)
    bad = type(f)(M, M, {**f.components, (1, 1): one.scale(3)})
    with pytest.raises(ModuleError):
        kernel(bad)


def test_top_dims_examples(F):
    for v in SQ:
        assert {w: d for w, d in top_dims(projective(SQ, v, F)).items() if d} == {v: 1}
    assert {w: d for w, d in top_dims(interval_full(SQ, F)).items() if d} == {(0, 0): 1}
    assert top_dims(trivial_ones(SQ, F)) == {v: 1 for v in SQ}


seeds = st.integers(0, 2**32)


@settings(max_examples=25, deadline=None)
@given(seed=seeds, n=st.sampled_from([1, 2]))
def test_random_modules_valid(seed, n):
    M = random_module(grid(n), FieldSpec(), random.Random(seed))
    assert validate(M) == []


@settings(max_examples=25, deadline=None)
@given(seed=seeds, n=st.sampled_from([1, 2]))
def test_hom_basis_natural_and_rank_nullity(seed, n):
    rng = random.Random(seed)
    G = grid(n)
    M, N = random_module(G, FieldSpec(), rng), random_module(G, FieldSpec(), rng)
    basis = hom_basis(M, N)
    assert all(f.is_natural() for f in basis)
    A = gauge_matrix(M, N)
    assert len(basis) == A.cols - rank(A) == hom_dim(M, N)


@pytest.mark.parametrize("n", [1, 2])
def test_yoneda(n):
    rng = random.Random(100 + n)
    G = grid(n)
    for _ in range(50):
        N = random_module(G, FieldSpec(), rng)
        for v in G:
            assert hom_dim(projective(G, v), N) == N.dims[v]


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_kernel_of_random_morphism(seed):
    rng = random.Random(seed)
    G = grid(1)
    M, N = random_module(G, FieldSpec(), rng), random_module(G, FieldSpec(), rng)
    basis = hom_basis(M, N)
    if not basis:
        return
    f = basis[rng.randrange(len(basis))]
    K, inc = kernel(f)
    assert validate(K) == []
    assert inc.is_natural()
    assert f.compose(inc).is_zero()
    r = image_dims(f)
    assert all(K.dims[v] + r[v] == M.dims[v] for v in G)


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_hom_additive(seed):
    rng = random.Random(seed)
    G = grid(1)
    A, B, C = (random_module(G, FieldSpec(), rng) for _ in range(3))
    assert hom_dim(direct_sum(A, B), C) == hom_dim(A, C) + hom_dim(B, C)
