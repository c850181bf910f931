"""Batch computations: the reference examples on the square and grids, and the seeded oracle corpus."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .exactfield import FieldSpec
from .ext import ext1_deformation_complex, ext_dims, ext_dims_from_resolution, mitchell_check
from .pmodule import (
    diagonal,
    direct_sum,
    hom_dim,
    hook,
    interval_full,
    projective,
    random_module,
    simple,
    trivial_ones,
)
from .poset import grid, vertex_label
from .resolution import global_dimension, minimal_resolution, projective_dimension


@dataclass
class CheckResult:
    name: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}: expected {self.expected}, computed {self.computed}"


def _steps(R):
    return [list(vs) for vs in R.steps]


def reference_suite(F: FieldSpec = FieldSpec()) -> list:
    """The seven explicit computations on the square and on small grids."""
    sq = grid(1)
    S = lambda v, P=sq: simple(P, v, F)
    out = []

    M = interval_full(sq, F)
    out.append(CheckResult(
        "interval module on the square is rigid (Ext^0..2, deformation-complex Ext^1)",
        ([1, 0, 0], 0), (ext_dims(M, M, 2), ext1_deformation_complex(M, M))))

    M = trivial_ones(sq, F)
    out.append(CheckResult(
        "trivial module on the square has Ext^1 = k^4 (resolution, deformation complex)",
        (4, 4), (ext_dims(M, M, 1)[1], ext1_deformation_complex(M, M))))

    a, b = (0, 0), (1, 0)
    M = direct_sum(S(a), S(b))
    summands = {f"{vertex_label(i)}->{vertex_label(j)}": ext_dims(S(i), S(j), 1) for i in (a, b) for j in (a, b)}
    out.append(CheckResult(
        "S(0,0)+S(1,0): dim Ext^1 = 1; summands [Hom, Ext^1]",
        (1, {"(0,0)->(0,0)": [1, 0], "(0,0)->(1,0)": [0, 1], "(1,0)->(0,0)": [0, 0], "(1,0)->(1,0)": [1, 0]}),
        (ext_dims(M, M, 1)[1], summands)))

    M = hook(sq, F)
    R = minimal_resolution(M)
    out.append(CheckResult(
        "hook module: pd 1, Ext^1 = Ext^2 = 0, resolution P(0,0) <- P(0,1)",
        (1, [0, 0], [[(0, 0)], [(0, 1)]]),
        (projective_dimension(M), ext_dims(M, M, 2)[1:], _steps(R))))

    R = minimal_resolution(S((0, 0)))
    out.append(CheckResult(
        "S(0,0) resolution P(0,0) <- P(1,0)+P(0,1) <- P(1,1); global dimension of the square = 2",
        ([[(0, 0)], [(1, 0), (0, 1)], [(1, 1)]], 2),
        (_steps(R), global_dimension(sq, F))))

    s0, s1 = (0, 0), (1, 1)
    M = direct_sum(S(s0), S(s1))
    out.append(CheckResult(
        "S(0,0)+S(1,1): Ext^2 = k; pd S(1,1) = 0, Ext^2(S(0,0),S(0,0)) = 0, Ext^2(S(0,0),S(1,1)) = 1",
        (1, 0, 0, 1),
        (ext_dims(M, M, 2)[2], projective_dimension(S(s1)), ext_dims(S(s0), S(s0), 2)[2], ext_dims(S(s0), S(s1), 2)[2])))

    expected, computed = [], []
    for n in (1, 2, 3):
        G = grid(n)
        D = diagonal(G, F)
        shapes = [_steps(minimal_resolution(simple(G, (j, j), F))) for j in range(n)]
        expected.append((n, [[[(j, j)], [(j + 1, j), (j, j + 1)], [(j + 1, j + 1)]] for j in range(n)]))
        computed.append((ext_dims(D, D, 2)[2], shapes))
    out.append(CheckResult("diagonal module on grid(n), n=1,2,3: dim Ext^2 = n; resolutions of S(j,j)", expected, computed))
    return out


def mitchell_suite(F: FieldSpec = FieldSpec()) -> list:
    return [CheckResult(f"constant module on grid({n}) vs order-complex cohomology", (True, [1, 0, 0]),
                        (c.agree, c.nerve)) for n in (1, 2) for c in [mitchell_check(grid(n), F, 2)]]


@dataclass
class OracleTally:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status}  {self.name}: {self.checked - len(self.failures)}/{self.checked}"


def random_pairs(seed: int, F: FieldSpec, counts=((1, 100), (2, 30)), max_dim: int = 3):
    """Deterministic corpus of ``(grid size, M, N)`` triples."""
    rng = random.Random(seed)
    out = []
    for n, count in counts:
        G = grid(n)
        for _ in range(count):
            out.append((n, random_module(G, F, rng, max_dim), random_module(G, F, rng, max_dim)))
    return out


def oracle_check(seed: int = 0, F: FieldSpec = FieldSpec(), counts=((1, 100), (2, 30)), additivity: int = 20) -> list:
    """Cross-checks between the resolution route and the independent computations.

    Returns one :class:`OracleTally` per property.
    """
    names = ["Ext^1 resolution == deformation complex", "Ext^0 == dim Hom", "Ext^i(P_v, N) = 0 for i >= 1",
             "Ext^i additive over direct sums (i <= 2)", "Ext^i = 0 above the global dimension"]
    tallies = {k: OracleTally(k) for k in names}
    corpus = random_pairs(seed, F, counts)
    per_grid = {}
    for idx, (n, M, N) in enumerate(corpus):
        G = M.poset
        gd = global_dimension(G, F)
        R = minimal_resolution(M)
        dims = ext_dims_from_resolution(R, N, gd + 2)
        key = (n, idx)

        t = tallies[names[0]]
        t.checked += 1
        if dims[1] != ext1_deformation_complex(M, N):
            t.failures.append(key)

        t = tallies[names[1]]
        t.checked += 1
        if dims[0] != hom_dim(M, N):
            t.failures.append(key)

        t = tallies[names[4]]
        t.checked += 1
        if any(dims[gd + 1:]):
            t.failures.append(key)

        t = tallies[names[2]]
        for v in G.elements:
            t.checked += 1
            if any(ext_dims(projective(G, v, F), N, gd + 1)[1:]):
                t.failures.append((key, v))

        seen = per_grid.setdefault(n, 0)
        if seen < additivity and idx + 1 < len(corpus) and corpus[idx + 1][0] == n:
            per_grid[n] = seen + 1
            A = corpus[idx + 1][1]
            t = tallies[names[3]]
            t.checked += 1
            lhs = ext_dims(direct_sum(M, A), N, 2)
            rhs = [x + y for x, y in zip(dims[:3], ext_dims(A, N, 2))]
            if lhs != rhs:
                t.failures.append(key)
    return [tallies[k] for k in names]
