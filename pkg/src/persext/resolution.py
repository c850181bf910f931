"""Minimal projective resolutions over the incidence algebra of a finite poset.

A sum of indecomposable projectives ``P_{v_1} + ... + P_{v_m}`` is recorded by its
vertex list. A morphism between two such sums is a scalar matrix ``C`` with
``C[l, k]`` the coefficient of ``e_{v_l, v_k}``: generator ``k`` of the source is
sent to ``sum_l C[l, k] e_{v_l, v_k}``, and ``C[l, k]`` can only be nonzero when
``v_l <= v_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .exactfield import ExactMatrix, FieldSpec
from .pmodule import (
    ModuleError,
    ModuleMorphism,
    PModule,
    ensure_valid,
    kernel,
    simple,
    top_basis,
)
from .poset import Poset, vertex_label


class ResolutionError(RuntimeError):
    pass


def projective_sum(P: Poset, field: FieldSpec, vertices) -> PModule:
    """Realize ``P_{v_1} + ... + P_{v_m}`` as a module.

    At ``w`` the basis is the generators ``k`` with ``v_k <= w`` in list order.
    """
    vertices = list(vertices)
    gens = {w: [k for k, v in enumerate(vertices) if P.leq(v, w)] for w in P.elements}
    dims = {w: len(g) for w, g in gens.items()}
    maps = {}
    for p, q in P.covers:
        pos = {k: i for i, k in enumerate(gens[q])}
        rows = [[0] * dims[p] for _ in range(dims[q])]
        for j, k in enumerate(gens[p]):
            rows[pos[k]][j] = 1
        maps[(p, q)] = ExactMatrix.from_rows(rows, field, dims[p]) if rows else ExactMatrix.zeros(0, dims[p], field)
    return PModule(P, field, dims, maps)


def _generator_position(P: Poset, vertices, k) -> int:
    v = vertices[k]
    return sum(1 for l in range(k) if P.leq(vertices[l], v))


def scalar_morphism(P: Poset, field: FieldSpec, src_vertices, tgt_vertices, C: ExactMatrix,
                    source: Optional[PModule] = None, target: Optional[PModule] = None) -> ModuleMorphism:
    """Module morphism between projective sums given by a scalar incidence matrix."""
    source = source or projective_sum(P, field, src_vertices)
    target = target or projective_sum(P, field, tgt_vertices)
    comps = {}
    for w in P.elements:
        sg = [k for k, v in enumerate(src_vertices) if P.leq(v, w)]
        tg = [l for l, v in enumerate(tgt_vertices) if P.leq(v, w)]
        rows = [[C[l, k] for k in sg] for l in tg]
        comps[w] = ExactMatrix.from_rows(rows, field, len(sg)) if rows else ExactMatrix.zeros(0, len(sg), field)
    return ModuleMorphism(source, target, comps)


def projective_cover(M: PModule):
    """Projective cover of ``M``.

    Returns ``(cover, epi, vertices)``: ``cover`` is the sum of ``P_v`` over the
    vertex list, one copy per top dimension at ``v``; the generator at ``v`` is sent
    to a standard basis vector of ``M_v`` chosen outside the radical.
    """
    P, f = M.poset, M.field
    tops = top_basis(M)
    vertices, lifts = [], []
    for v in P.elements:
        for i in tops[v]:
            vertices.append(v)
            lifts.append(i)
    cover = projective_sum(P, f, vertices)
    comps = {}
    for w in P.elements:
        cols = []
        for k, v in enumerate(vertices):
            if P.leq(v, w):
                cols.append(M.structure_map(v, w).column(lifts[k]))
        comps[w] = ExactMatrix.from_columns(cols, f, M.dims[w]) if cols else ExactMatrix.zeros(M.dims[w], 0, f)
    return cover, ModuleMorphism(cover, M, comps), tuple(vertices)


@dataclass(frozen=True, eq=False)
class ProjectiveResolution:
    """``... -> P^1 -> P^0 -> M``; ``differentials[i-1]`` is the scalar matrix of ``P^i -> P^{i-1}``."""

    module: PModule
    steps: tuple
    differentials: tuple
    augmentation: Optional[ModuleMorphism]
    terminated: bool

    @property
    def length(self) -> int:
        return len(self.steps) - 1 if self.steps else 0

    def realize(self, i: int) -> PModule:
        M = self.module
        vs = self.steps[i] if i < len(self.steps) else ()
        return projective_sum(M.poset, M.field, vs)

    def differential(self, i: int) -> ModuleMorphism:
        """``d_i : P^i -> P^{i-1}`` as a module morphism, ``i >= 1``."""
        M = self.module
        return scalar_morphism(M.poset, M.field, self.steps[i], self.steps[i - 1], self.differentials[i - 1])

    def report(self) -> str:
        lines = []
        for i, vs in enumerate(self.steps):
            terms = " + ".join(f"P_{vertex_label(v)}" for v in vs) or "0"
            lines.append(f"P^{i} = {terms}")
            if i >= 1:
                C = self.differentials[i - 1]
                for k, v in enumerate(vs):
                    parts = []
                    for l, u in enumerate(self.steps[i - 1]):
                        c = C[l, k]
                        if c:
                            parts.append(_term(c, u, v, self.module.field))
                    lines.append(f"  d{i}: gen {k} of P_{vertex_label(v)} -> " + (" ".join(parts).lstrip("+ ") or "0"))
        if not self.terminated:
            lines.append("(did not terminate)")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "steps": [[vertex_label(v) for v in vs] for vs in self.steps],
            "differentials": [C.to_lists() for C in self.differentials],
            "length": self.length,
            "terminated": self.terminated,
        }


def _term(c, u, v, field: FieldSpec) -> str:
    e = f"e_{{{vertex_label(u)},{vertex_label(v)}}}"
    val = c
    if field.p is not None and c > field.p // 2:
        val = c - field.p
    if val == 1:
        return f"+ {e}"
    if val == -1:
        return f"- {e}"
    sign = "-" if val < 0 else "+"
    return f"{sign} {abs(val)}*{e}"


def minimal_resolution(M: PModule, max_len: Optional[int] = None) -> ProjectiveResolution:
    """Minimal projective resolution by iterated projective covers of kernels.

    Stops when a kernel vanishes (``terminated=True``) or after ``max_len``
    differentials (``terminated=False``). ``max_len`` defaults to the longest
    chain length of the poset plus one.
    """
    ensure_valid(M)
    P, f = M.poset, M.field
    if max_len is None:
        max_len = P.longest_chain_length() + 1
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    if M.is_zero():
        return ProjectiveResolution(M, (), (), None, True)
    cover, epi, vertices = projective_cover(M)
    steps, diffs = [vertices], []
    K, inc = kernel(epi)
    while not K.is_zero():
        if len(diffs) >= max_len:
            return ProjectiveResolution(M, tuple(steps), tuple(diffs), epi, False)
        cover2, epi2, vs2 = projective_cover(K)
        d = inc.compose(epi2)
        prev = steps[-1]
        C = [[0] * len(vs2) for _ in prev]
        for k, v in enumerate(vs2):
            col = d[v].column(_generator_position(P, vs2, k))
            idx = [l for l, u in enumerate(prev) if P.leq(u, v)]
            for pos, l in enumerate(idx):
                C[l][k] = col[pos]
        diffs.append(ExactMatrix.from_rows(C, f, len(vs2)))
        steps.append(vs2)
        K, inc = kernel(epi2)
    return ProjectiveResolution(M, tuple(steps), tuple(diffs), epi, True)


def projective_dimension(M: PModule) -> int:
    if M.is_zero():
        raise ModuleError("projective dimension of the zero module is undefined")
    R = minimal_resolution(M)
    if not R.terminated:
        raise ResolutionError("minimal resolution did not terminate within the chain-length bound")
    return R.length


@lru_cache(maxsize=64)
def global_dimension(P: Poset, field: FieldSpec = FieldSpec()) -> int:
    """Maximum projective dimension of a simple module."""
    if len(P) == 0:
        raise ValueError("global dimension of the empty poset")
    return max(projective_dimension(simple(P, v, field)) for v in P.elements)


def is_minimal(R: ProjectiveResolution) -> bool:
    """No differential entry joins two generators at the same vertex."""
    for i, C in enumerate(R.differentials, start=1):
        for k, v in enumerate(R.steps[i]):
            for l, u in enumerate(R.steps[i - 1]):
                if u == v and C[l, k]:
                    return False
    return True
