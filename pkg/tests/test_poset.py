import itertools
import random
from math import comb

import pytest

from persext.exactfield import FieldSpec
from persext.poset import (
    PathCapExceeded,
    PosetError,
    chain,
    from_covers,
    grid,
    hasse_paths,
    mobius,
    mobius_matrix,
    nerve_cohomology_dims,
    order_complex,
    random_poset,
    zeta_matrix,
)

SQ = grid(1)


def test_singleton():
    P = from_covers(["a"], [])
    assert P.leq("a", "a")
    assert len(P) == 1


def test_square_from_covers():
    P = from_covers(["00", "10", "01", "11"], [("00", "10"), ("00", "01"), ("10", "11"), ("01", "11")])
    assert P.leq("00", "11")
    assert not P.leq("10", "01")


@pytest.mark.parametrize("covers, fragment", [
    ([("a", "b"), ("b", "a")], "cycle"),
    ([("a", "b"), ("b", "c"), ("a", "c")], "transitivity"),
    ([("a", "z")], "unknown"),
])
def test_from_covers_rejects(covers, fragment):
    with pytest.raises(PosetError, match=fragment):
        from_covers(["a", "b", "c"], covers)


def test_duplicate_id():
    with pytest.raises(PosetError, match="duplicate"):
        from_covers(["a", "a"], [])


@pytest.mark.parametrize("n", range(6))
def test_grid_counts(n):
    G = grid(n)
    assert len(G) == (n + 1) ** 2
    assert len(G.covers) == 2 * n * (n + 1)


def test_grid_small_cases():
    assert grid(0).elements == ((0, 0),)
    assert SQ.elements == ((0, 0), (1, 0), (0, 1), (1, 1))
    assert len(SQ.covers) == 4
    assert len(grid(2)) == 9 and len(grid(2).covers) == 12


def test_hasse_paths_square():
    paths = hasse_paths(SQ, (0, 0), (1, 1))
    assert paths == [(((0, 0), (1, 0)), ((1, 0), (1, 1))), (((0, 0), (0, 1)), ((0, 1), (1, 1)))]
    assert len(hasse_paths(SQ, (0, 0), (1, 0))) == 1
    assert hasse_paths(SQ, (1, 1), (1, 1)) == [()]
    with pytest.raises(PosetError):
        hasse_paths(SQ, (1, 0), (0, 1))


def brute_lattice_paths(a, b):
    dx, dy = b[0] - a[0], b[1] - a[1]
    return len(set(itertools.permutations("x" * dx + "y" * dy)))


@pytest.mark.parametrize("n", [2, 3])
def test_hasse_paths_grid_against_enumeration(n):
    G = grid(n)
    for p in G.elements:
        for q in G.elements:
            if G.leq(p, q):
                assert len(hasse_paths(G, p, q)) == brute_lattice_paths(p, q)
    assert len(hasse_paths(grid(2), (0, 0), (2, 2))) == 6


def test_path_cap():
    with pytest.raises(PathCapExceeded):
        hasse_paths(grid(5), (0, 0), (5, 5), cap=100)
    assert len(hasse_paths(grid(5), (0, 0), (5, 5))) == comb(10, 5)


def test_mobius_values():
    assert mobius(SQ, (0, 0), (0, 0)) == 1
    assert mobius(SQ, (0, 0), (1, 0)) == -1
    assert mobius(SQ, (0, 0), (1, 1)) == 1
    with pytest.raises(PosetError):
        mobius(SQ, (1, 1), (0, 0))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@pytest.mark.parametrize("P", [grid(1), grid(2), grid(3), chain(4)]
                         + [random_poset(random.Random(s), 6, connected=False) for s in range(5)])
def test_zeta_times_mobius_is_identity(P):
    n = len(P)
    assert matmul(zeta_matrix(P), mobius_matrix(P)) == [[int(i == j) for j in range(n)] for i in range(n)]


def brute_f_vector(P):
    counts = {}
    for r in range(1, len(P) + 1):
        for sub in itertools.combinations(P.elements, r):
            if all(P.leq(a, b) or P.leq(b, a) for a, b in itertools.combinations(sub, 2)):
                counts[r - 1] = counts.get(r - 1, 0) + 1
    return tuple(counts[d] for d in sorted(counts))


def test_order_complex_examples():
    assert order_complex(SQ).f_vector == (4, 5, 2) == brute_f_vector(SQ)
    assert order_complex(grid(0)).f_vector == (1,)
    assert order_complex(chain(2)).f_vector == (2, 1)
    f = order_complex(SQ).f_vector
    assert sum((-1) ** i * x for i, x in enumerate(f)) == 1


@pytest.mark.parametrize("P", [grid(2), chain(4), random_poset(random.Random(3), 6)])
def test_order_complex_closed_under_faces(P):
    C = order_complex(P)
    assert C.f_vector == brute_f_vector(P)
    listed = {s for level in C.simplices for s in level}
    assert set(C.simplices[0]) == {(v,) for v in P.elements}
    for s in listed:
        for r in range(1, len(s)):
            for face in itertools.combinations(s, r):
                assert face in listed


def test_nerve_cohomology_examples(F):
    assert nerve_cohomology_dims(order_complex(SQ), F, 2) == [1, 0, 0]
    assert nerve_cohomology_dims(order_complex(grid(0)), F, 1) == [1, 0]
    anti = from_covers(["a", "b"], [])
    assert nerve_cohomology_dims(order_complex(anti), F, 1) == [2, 0]


def test_nerve_circle_and_sphere(F):
    circle = from_covers(list("abcd"), [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    assert nerve_cohomology_dims(order_complex(circle), F, 2) == [1, 1, 0]
    sphere = from_covers(list("abcdef"), [(x, y) for x in "ab" for y in "cd"] + [(x, y) for x in "cd" for y in "ef"])
    assert nerve_cohomology_dims(order_complex(sphere), F, 3) == [1, 0, 1, 0]


@pytest.mark.parametrize("n", range(4))
def test_grids_are_contractible(n):
    assert nerve_cohomology_dims(order_complex(grid(n)), FieldSpec(), 3) == [1, 0, 0, 0]
