"""Ext groups of persistence modules, two independent cross-checks, and rigidity labels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactfield import ExactMatrix, FieldSpec, rank
from .pmodule import ModuleError, PModule, _check_pair, ensure_valid, gauge_matrix, interval_full, simple
from .poset import (
    Poset,
    hasse_paths,
    mobius,
    nerve_cohomology_dims,
    order_complex,
)
from .resolution import ProjectiveResolution, global_dimension, minimal_resolution

RIGID = "rigid"
SMOOTH = "smooth_unobstructed"
OBSTRUCTED = "potentially_obstructed"


def hom_complex(R: ProjectiveResolution, N: PModule) -> list:
    """Coboundaries of ``Hom(P^., N)`` with ``Hom(P_v, N) = N_v``.

    Entry ``i`` is the matrix ``Hom(P^i, N) -> Hom(P^{i+1}, N)``.
    """
    f = N.field
    out = []
    for i, C in enumerate(R.differentials):
        src, tgt = R.steps[i], R.steps[i + 1]
        col_off, n = [], 0
        for v in src:
            col_off.append(n)
            n += N.dims[v]
        rows = []
        for k, w in enumerate(tgt):
            block = [[f.zero] * n for _ in range(N.dims[w])]
            for l, u in enumerate(src):
                c = C[l, k]
                if not c or not N.dims[u]:
                    continue
                S = N.structure_map(u, w)
                for a in range(N.dims[w]):
                    for b in range(N.dims[u]):
                        if S[a, b]:
                            block[a][col_off[l] + b] = f.reduce(block[a][col_off[l] + b] + c * S[a, b])
            rows.extend(block)
        out.append(ExactMatrix.from_rows(rows, f, n) if rows else ExactMatrix.zeros(0, n, f))
    return out


def ext_dims_from_resolution(R: ProjectiveResolution, N: PModule, max_i: int) -> list:
    cochain = [sum(N.dims[v] for v in vs) for vs in R.steps]
    ranks = [rank(D) for D in hom_complex(R, N)]
    dims = []
    for i in range(max_i + 1):
        c = cochain[i] if i < len(cochain) else 0
        out_rank = ranks[i] if i < len(ranks) else 0
        in_rank = ranks[i - 1] if 0 < i <= len(ranks) else 0
        dims.append(c - out_rank - in_rank)
    return dims


def ext_dims(M: PModule, N: PModule, max_i: int) -> list:
    """``[dim Ext^0(M, N), ..., dim Ext^max_i(M, N)]`` via the minimal resolution of ``M``."""
    _check_pair(M, N)
    if max_i < 0:
        raise ValueError("max_i must be >= 0")
    R = minimal_resolution(M)
    if not R.terminated:
        raise ModuleError("resolution did not terminate")
    ensure_valid(N)
    return ext_dims_from_resolution(R, N, max_i)


# -- first-order deformation complex --------------------------------------


def deformation_relations(P: Poset) -> list:
    """Pairs of parallel Hasse paths whose equality generates the commutativity ideal.

    Unit squares on grids; otherwise every path against the first path between
    the same endpoints.
    """
    rels = []
    if P.grid_size is not None:
        n = P.grid_size
        for y in range(n):
            for x in range(n):
                a, b, c, d = (x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)
                rels.append(((a, d), ((a, b), (b, d)), ((a, c), (c, d))))
        return rels
    for p in P.elements:
        for q in P.elements:
            if P.lt(p, q):
                paths = hasse_paths(P, p, q)
                for other in paths[1:]:
                    rels.append(((p, q), paths[0], other))
    return rels


def _linearized_path(M: PModule, N: PModule, path, cover_off: dict, sign: int, acc: list):
    """Add ``sign * d/dt`` of the path composite (as a function of the cover perturbations) into ``acc``.

    ``acc`` is a list of rows (one per entry of ``Hom(M_start, N_end)``, row-major).
    """
    start, end = path[0][0], path[-1][1]
    for pos, (a, b) in enumerate(path):
        # N along the covers after pos, M along the covers before pos
        after = path[pos + 1:]
        before = path[:pos]
        L = N.along(after) if after else ExactMatrix.identity(N.dims[end], N.field)
        Rm = M.along(before) if before else ExactMatrix.identity(M.dims[start], M.field)
        # entry (i, j) of L @ E @ Rm = sum_{r,s} L[i, r] E[r, s] Rm[s, j]; E is dims_N(b) x dims_M(a)
        off, ec = cover_off[(a, b)], M.dims[a]
        for i in range(N.dims[end]):
            for j in range(M.dims[start]):
                row = acc[i * M.dims[start] + j]
                for r in range(N.dims[b]):
                    lr = L[i, r]
                    if not lr:
                        continue
                    for s in range(M.dims[a]):
                        rs = Rm[s, j]
                        if rs:
                            row[off + r * ec + s] += sign * lr * rs


def deformation_complex(M: PModule, N: PModule):
    """``(d0, d1)`` of ``+_v Hom(M_v, N_v) -> +_covers Hom(M_p, N_q) -> +_relations Hom(M_s, N_t)``."""
    _check_pair(M, N)
    P, f = M.poset, M.field
    d0 = gauge_matrix(M, N)
    cover_off, n = {}, 0
    for p, q in P.covers:
        cover_off[(p, q)] = n
        n += N.dims[q] * M.dims[p]
    rows = []
    for (s, t), ref, other in deformation_relations(P):
        acc = [[0] * n for _ in range(N.dims[t] * M.dims[s])]
        _linearized_path(M, N, ref, cover_off, 1, acc)
        _linearized_path(M, N, other, cover_off, -1, acc)
        rows.extend(acc)
    d1 = ExactMatrix.from_rows(rows, f, n) if rows else ExactMatrix.zeros(0, n, f)
    return d0, d1


def ext1_deformation_complex(M: PModule, N: PModule) -> int:
    """``dim ker d1 - dim im d0`` of the linearized deformation complex."""
    d0, d1 = deformation_complex(M, N)
    return d1.cols - rank(d1) - rank(d0)


# -- oracles ---------------------------------------------------------------


@dataclass
class MitchellCheck:
    ext: list
    nerve: list

    @property
    def agree(self) -> bool:
        return self.ext == self.nerve


def mitchell_check(P: Poset, field: FieldSpec = FieldSpec(), max_i: int = 2) -> MitchellCheck:
    """Self-Ext of the constant module against the cohomology of the order complex."""
    if len(P) == 0:
        raise ValueError("empty poset")
    k = interval_full(P, field)
    return MitchellCheck(ext_dims(k, k, max_i), nerve_cohomology_dims(order_complex(P), field, max_i))


@dataclass
class EulerMobiusRow:
    p: object
    q: object
    ext: list
    euler: int
    mobius: int

    @property
    def agree(self) -> bool:
        return self.euler == self.mobius


def euler_mobius_check(P: Poset, field: FieldSpec = FieldSpec()) -> list:
    """Alternating sum of ``dim Ext^i(S_p, S_q)`` against ``mu(p, q)`` for all ``p <= q``."""
    if len(P) == 0:
        raise ValueError("empty poset")
    top = global_dimension(P, field)
    simples = {v: simple(P, v, field) for v in P.elements}
    resolutions = {v: minimal_resolution(simples[v]) for v in P.elements}
    rows = []
    for p in P.elements:
        for q in P.elements:
            if not P.leq(p, q):
                continue
            dims = ext_dims_from_resolution(resolutions[p], simples[q], top)
            euler = sum((-1) ** i * d for i, d in enumerate(dims))
            rows.append(EulerMobiusRow(p, q, dims, euler, mobius(P, p, q)))
    return rows


# -- reports -----------------------------------------------------------------


def classify(tangent_dim: int, obstruction_dim: int) -> str:
    if obstruction_dim > 0:
        return OBSTRUCTED
    if tangent_dim == 0:
        return RIGID
    return SMOOTH


@dataclass
class ExtReport:
    source: str
    target: str
    field: str
    dims: list
    classification: Optional[str] = None
    tangent_dim: Optional[int] = None
    obstruction_dim: Optional[int] = None

    @property
    def degrees(self) -> list:
        return list(enumerate(self.dims))

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "field": self.field,
            "dims": list(self.dims),
            "classification": self.classification,
            "tangent_dim": self.tangent_dim,
            "obstruction_dim": self.obstruction_dim,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExtReport":
        return cls(d["source"], d["target"], d["field"], list(d["dims"]), d.get("classification"),
                   d.get("tangent_dim"), d.get("obstruction_dim"))

    def text(self) -> str:
        lines = [f"Ext^*({self.source}, {self.target}) over {self.field}"]
        lines += [f"  dim Ext^{i} = {d}" for i, d in enumerate(self.dims)]
        if self.classification is not None:
            lines.append(f"  tangent dim (Ext^1) = {self.tangent_dim}")
            lines.append(f"  obstruction dim (Ext^2) = {self.obstruction_dim}")
            lines.append(f"  classification: {self.classification}")
        return "\n".join(lines)


def ext_report(M: PModule, N: PModule, max_i: int, source: str = "M", target: str = "N") -> ExtReport:
    return ExtReport(source, target, str(M.field), ext_dims(M, N, max_i))


def rigidity_report(M: PModule, name: str = "M") -> ExtReport:
    """Self-Ext up to the global dimension (at least 2) and the resulting label."""
    if M.is_zero():
        raise ModuleError("rigidity report of the zero module is undefined")
    top = max(2, global_dimension(M.poset, M.field))
    dims = ext_dims(M, M, top)
    t, o = dims[1], dims[2]
    return ExtReport(name, name, str(M.field), dims, classify(t, o), t, o)
