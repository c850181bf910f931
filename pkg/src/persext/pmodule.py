"""Persistence modules over a finite poset, stored as one matrix per cover.

A module assigns ``dims[v]`` to every vertex and a ``dims[q] x dims[p]`` matrix
to every cover ``(p, q)``. Composites along longer relations are derived on
demand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .exactfield import (
    ExactMatrix,
    FieldSpec,
    complement_indices,
    kernel_basis,
    rank,
    solve_matrix,
)
from .poset import Poset, PosetError, hasse_paths, vertex_label


class ModuleError(ValueError):
    pass


class InvalidModuleError(ModuleError):
    """A module violating its shape or commutativity invariants."""


@dataclass(frozen=True, eq=False)
class PModule:
    poset: Poset
    field: FieldSpec
    dims: dict
    maps: dict
    _composites: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        dims = {v: int(self.dims.get(v, 0)) for v in self.poset.elements}
        unknown = set(self.dims) - set(dims)
        if unknown:
            raise ModuleError(f"unknown vertices {sorted(map(vertex_label, unknown))}")
        maps = dict(self.maps)
        for c in self.poset.covers:
            if c not in maps:
                maps[c] = ExactMatrix.zeros(dims[c[1]], dims[c[0]], self.field)
        extra = set(maps) - set(self.poset.covers)
        if extra:
            raise ModuleError(f"maps given on non-covers {sorted(extra)}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)

    def dim(self, v) -> int:
        return self.dims[v]

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.poset.elements)

    def map(self, p, q) -> ExactMatrix:
        return self.maps[(p, q)]

    def along(self, path) -> ExactMatrix:
        """Composite of the structure maps along a Hasse path (tuple of covers)."""
        if not path:
            raise ModuleError("empty path has no well-defined endpoint here")
        out = self.maps[path[0]]
        for c in path[1:]:
            out = self.maps[c] @ out
        return out

    def structure_map(self, p, q) -> ExactMatrix:
        """``M(p -> q)`` for ``p <= q``, composed along a canonical path."""
        key = (p, q)
        if key in self._composites:
            return self._composites[key]
        P = self.poset
        if not P.leq(p, q):
            raise PosetError(f"{vertex_label(p)} is not <= {vertex_label(q)}")
        if p == q:
            out = ExactMatrix.identity(self.dims[p], self.field)
        else:
            r = next(r for r in P.predecessors(q) if P.leq(p, r))
            out = self.maps[(r, q)] @ self.structure_map(p, r)
        self._composites[key] = out
        return out

    def label(self) -> str:
        return "M[" + ",".join(str(d) for d in self.dim_vector()) + "]"


def zero_module(P: Poset, field: FieldSpec) -> PModule:
    return PModule(P, field, {}, {})


def validate(M: PModule) -> list:
    """Shape and commutativity violations of ``M``; empty iff ``M`` is a valid module.

    Each commutativity violation compares a path composite against the first
    (reference) path between the same endpoints.
    """
    P = M.poset
    out = []
    for (p, q), A in M.maps.items():
        if A.field != M.field:
            out.append({"kind": "field", "cover": (p, q), "message": f"map over {A.field}, module over {M.field}"})
        if A.shape != (M.dims[q], M.dims[p]):
            out.append({
                "kind": "shape",
                "cover": (p, q),
                "message": f"map {vertex_label(p)}->{vertex_label(q)} has shape {A.shape}, expected {(M.dims[q], M.dims[p])}",
            })
    if out:
        return out
    for p in P.elements:
        for q in P.elements:
            if not P.lt(p, q):
                continue
            paths = hasse_paths(P, p, q)
            if len(paths) < 2:
                continue
            ref = M.along(paths[0])
            for other in paths[1:]:
                comp = M.along(other)
                if comp != ref:
                    out.append({
                        "kind": "commutativity",
                        "pair": (p, q),
                        "reference_path": paths[0],
                        "path": other,
                        "reference": ref.to_lists(),
                        "composite": comp.to_lists(),
                        "message": f"paths {vertex_label(p)}->{vertex_label(q)} disagree: {ref.to_lists()} vs {comp.to_lists()}",
                    })
    return out


def ensure_valid(M: PModule) -> PModule:
    bad = validate(M)
    if bad:
        raise InvalidModuleError(bad[0]["message"])
    return M


# -- constructors ---------------------------------------------------------


def _one_dim(P: Poset, field: FieldSpec, support, identity: bool) -> PModule:
    support = set(support)
    dims = {v: 1 if v in support else 0 for v in P.elements}
    maps = {}
    for p, q in P.covers:
        val = 1 if identity and p in support and q in support else 0
        maps[(p, q)] = ExactMatrix.from_rows([[val]] * dims[q], field, dims[p]) if dims[p] and dims[q] else ExactMatrix.zeros(dims[q], dims[p], field)
    return PModule(P, field, dims, maps)


def _require(P: Poset, v):
    if v not in P:
        raise ModuleError(f"unknown vertex {vertex_label(v)}")


def simple(P: Poset, v, field: FieldSpec = FieldSpec()) -> PModule:
    _require(P, v)
    return _one_dim(P, field, [v], identity=False)


def projective(P: Poset, v, field: FieldSpec = FieldSpec()) -> PModule:
    """Indecomposable projective at ``v``: k on the up-set of ``v``, identities inside it."""
    _require(P, v)
    return _one_dim(P, field, P.up_set(v), identity=True)


def interval_full(P: Poset, field: FieldSpec = FieldSpec()) -> PModule:
    """Constant module: k everywhere, every structure map the identity."""
    return _one_dim(P, field, P.elements, identity=True)


def trivial_ones(P: Poset, field: FieldSpec = FieldSpec()) -> PModule:
    """k everywhere with all structure maps zero."""
    return _one_dim(P, field, P.elements, identity=False)


def hook(P: Poset, field: FieldSpec = FieldSpec()) -> PModule:
    """On the square: k at (0,0) and (1,0) joined by the identity, zero elsewhere."""
    if P.grid_size != 1:
        raise ModuleError("hook module is defined on the square poset grid(1) only")
    return _one_dim(P, field, [(0, 0), (1, 0)], identity=True)


def diagonal(P: Poset, field: FieldSpec = FieldSpec()) -> PModule:
    """Sum of the simples at the diagonal vertices (j, j) of a grid."""
    if P.grid_size is None:
        raise ModuleError("diagonal module needs a grid poset")
    return _one_dim(P, field, [(j, j) for j in range(P.grid_size + 1)], identity=False)


def _block_diag(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    f = A.field
    top = A.hstack(ExactMatrix.zeros(A.rows, B.cols, f))
    bottom = ExactMatrix.zeros(B.rows, A.cols, f).hstack(B)
    return top.vstack(bottom)


def direct_sum(M: PModule, N: PModule) -> PModule:
    if M.poset != N.poset:
        raise ModuleError("direct sum of modules over different posets")
    if M.field != N.field:
        raise ModuleError(f"direct sum over different fields {M.field} and {N.field}")
    dims = {v: M.dims[v] + N.dims[v] for v in M.poset.elements}
    maps = {c: _block_diag(M.maps[c], N.maps[c]) for c in M.poset.covers}
    return PModule(M.poset, M.field, dims, maps)


def direct_sum_all(modules) -> PModule:
    modules = list(modules)
    out = modules[0]
    for m in modules[1:]:
        out = direct_sum(out, m)
    return out


# -- morphisms ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    source: PModule
    target: PModule
    components: dict

    def __post_init__(self):
        S, T = self.source, self.target
        if S.poset != T.poset or S.field != T.field:
            raise ModuleError("morphism between modules over different posets or fields")
        comps = dict(self.components)
        for v in S.poset.elements:
            if v not in comps:
                comps[v] = ExactMatrix.zeros(T.dims[v], S.dims[v], S.field)
            elif comps[v].shape != (T.dims[v], S.dims[v]):
                raise ModuleError(f"component at {vertex_label(v)} has shape {comps[v].shape}, expected {(T.dims[v], S.dims[v])}")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, v) -> ExactMatrix:
        return self.components[v]

    def naturality_violations(self) -> list:
        S, T = self.source, self.target
        out = []
        for p, q in S.poset.covers:
            if T.map(p, q) @ self[p] != self[q] @ S.map(p, q):
                out.append((p, q))
        return out

    def is_natural(self) -> bool:
        return not self.naturality_violations()

    def compose(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """``self o other``."""
        return ModuleMorphism(other.source, self.target, {v: self[v] @ other[v] for v in self.source.poset.elements})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())


def identity_morphism(M: PModule) -> ModuleMorphism:
    return ModuleMorphism(M, M, {v: ExactMatrix.identity(M.dims[v], M.field) for v in M.poset.elements})


def zero_morphism(M: PModule, N: PModule) -> ModuleMorphism:
    return ModuleMorphism(M, N, {})


def _check_pair(M: PModule, N: PModule):
    if M.poset != N.poset:
        raise ModuleError("modules live over different posets")
    if M.field != N.field:
        raise ModuleError(f"modules live over different fields {M.field} and {N.field}")


def gauge_matrix(M: PModule, N: PModule) -> ExactMatrix:
    """Matrix of ``delta -> (delta_q M_pq - N_pq delta_p)_{covers}``.

    Source coordinates: ``delta_v`` flattened row-major, vertices in canonical order.
    Target coordinates: one ``dims_N(q) x dims_M(p)`` block per cover.
    """
    _check_pair(M, N)
    P, f = M.poset, M.field
    offsets, n = {}, 0
    for v in P.elements:
        offsets[v] = n
        n += N.dims[v] * M.dims[v]
    rows = []
    for p, q in P.covers:
        A, B = M.map(p, q), N.map(p, q)
        mp, mq, np_, nq = M.dims[p], M.dims[q], N.dims[p], N.dims[q]
        for i in range(nq):
            for j in range(mp):
                row = [0] * n
                # (delta_q A)[i, j] = sum_k delta_q[i, k] A[k, j]
                for k in range(mq):
                    if A[k, j]:
                        row[offsets[q] + i * mq + k] += A[k, j]
                # (B delta_p)[i, j] = sum_k B[i, k] delta_p[k, j]
                for k in range(np_):
                    if B[i, k]:
                        row[offsets[p] + k * mp + j] -= B[i, k]
                rows.append(row)
    return ExactMatrix.from_rows(rows, f, n) if rows else ExactMatrix.zeros(0, n, f)


def _unflatten(M: PModule, N: PModule, vec) -> dict:
    comps, k = {}, 0
    for v in M.poset.elements:
        r, c = N.dims[v], M.dims[v]
        comps[v] = ExactMatrix(r, c, M.field, tuple(tuple(vec[k + i * c + j] for j in range(c)) for i in range(r)))
        k += r * c
    return comps


def hom_basis(M: PModule, N: PModule) -> list:
    """Basis of the natural transformations ``M -> N`` (solutions of the naturality system)."""
    K = kernel_basis(gauge_matrix(M, N))
    return [ModuleMorphism(M, N, _unflatten(M, N, K.column(j))) for j in range(K.cols)]


def hom_dim(M: PModule, N: PModule) -> int:
    G = gauge_matrix(M, N)
    return G.cols - rank(G)


def kernel(f: ModuleMorphism):
    """Kernel submodule of ``f`` and its inclusion into ``f.source``."""
    if not f.is_natural():
        raise ModuleError(f"morphism is not natural at covers {f.naturality_violations()}")
    S = f.source
    P, fld = S.poset, S.field
    bases = {v: kernel_basis(f[v]) for v in P.elements}
    dims = {v: bases[v].cols for v in P.elements}
    maps = {}
    for p, q in P.covers:
        image = S.map(p, q) @ bases[p]
        X = solve_matrix(bases[q], image) if image.cols else ExactMatrix.zeros(dims[q], 0, fld)
        if X is None:
            raise ModuleError("kernel not closed under structure maps; morphism is not natural")
        maps[(p, q)] = X
    K = PModule(P, fld, dims, maps)
    return K, ModuleMorphism(K, S, bases)


def top_basis(M: PModule) -> dict:
    """Per vertex, indices of standard basis vectors spanning a complement of the radical."""
    P = M.poset
    out = {}
    for v in P.elements:
        incoming = [M.map(p, v) for p in P.predecessors(v)]
        if incoming and M.dims[v]:
            R = incoming[0].hstack(*incoming[1:])
            out[v] = complement_indices(R)
        else:
            out[v] = list(range(M.dims[v]))
    return out


def top_dims(M: PModule) -> dict:
    """``dim M_v`` modulo the images of all incoming cover maps, per vertex."""
    return {v: len(ix) for v, ix in top_basis(M).items()}


def image_dims(f: ModuleMorphism) -> dict:
    return {v: rank(f[v]) for v in f.source.poset.elements}


def is_isomorphism(f: ModuleMorphism) -> bool:
    return all(c.rows == c.cols and rank(c) == c.rows for c in f.components.values())


# -- random modules -------------------------------------------------------


def random_module(P: Poset, field: FieldSpec, rng, max_dim: int = 3, value_range: int = 3) -> PModule:
    """Random valid module with ``dims <= max_dim`` per vertex.

    Incoming maps at each vertex (in a linear extension) are drawn uniformly from
    the solution space of the commutativity constraints they must satisfy given
    the maps already fixed below; a draw that lands on zero in a nonzero space
    is redrawn a few times.
    """
    dims = {v: rng.randint(0, max_dim) for v in P.elements}
    maps = {}
    composites = {}

    def comp(u, w):
        if u == w:
            return ExactMatrix.identity(dims[u], field)
        return composites[(u, w)]

    for q in P.linear_extension():
        preds = P.predecessors(q)
        if not preds:
            continue
        # unknowns: entries of the incoming maps A_p (dims[q] x dims[p]), row-major
        offs, n = {}, 0
        for p in preds:
            offs[p] = n
            n += dims[q] * dims[p]
        rows = []
        below = [u for u in P.elements if P.lt(u, q)]
        for u in below:
            via = [p for p in preds if P.leq(u, p)]
            for a, b in zip(via, via[1:]):
                # A_a M(u->a) - A_b M(u->b) = 0
                Ca, Cb = comp(u, a), comp(u, b)
                for i in range(dims[q]):
                    for j in range(dims[u]):
                        row = [0] * n
                        for k in range(dims[a]):
                            if Ca[k, j]:
                                row[offs[a] + i * dims[a] + k] += Ca[k, j]
                        for k in range(dims[b]):
                            if Cb[k, j]:
                                row[offs[b] + i * dims[b] + k] -= Cb[k, j]
                        rows.append(row)
        if n == 0:
            sol = []
        else:
            K = kernel_basis(ExactMatrix.from_rows(rows, field, n)) if rows else ExactMatrix.identity(n, field)
            sol = [field.zero] * n
            for _ in range(4):
                coeffs = [field(rng.randint(-value_range, value_range)) for _ in range(K.cols)]
                sol = [field.reduce(sum((c * K[i, j] for j, c in enumerate(coeffs)), field.zero)) for i in range(n)]
                if K.cols == 0 or any(sol):
                    break
        for p in preds:
            r, c = dims[q], dims[p]
            o = offs[p]
            maps[(p, q)] = ExactMatrix(r, c, field, tuple(tuple(sol[o + i * c + j] for j in range(c)) for i in range(r)))
        for u in P.elements:
            if P.lt(u, q):
                p = next(p for p in preds if P.leq(u, p))
                composites[(u, q)] = maps[(p, q)] @ comp(u, p)
    return PModule(P, field, dims, maps)
