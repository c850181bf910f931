"""Finite posets given by their covering relations.

A :class:`Poset` stores its elements in a fixed canonical order. Every basis,
matrix and report downstream is indexed in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Optional, Sequence

from .exactfield import ExactMatrix, FieldSpec, rank

PATH_CAP = 10_000


class PosetError(ValueError):
    pass


class PathCapExceeded(RuntimeError):
    pass


def vertex_label(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


@dataclass(frozen=True, eq=False)
class Poset:
    elements: tuple
    covers: tuple
    grid_size: Optional[int] = None
    _index: dict = field(init=False, repr=False)
    _up: dict = field(init=False, repr=False)
    _down: dict = field(init=False, repr=False)
    _leq: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.elements)}
        up = {v: [] for v in self.elements}
        down = {v: [] for v in self.elements}
        for p, q in self.covers:
            up[p].append(q)
            down[q].append(p)
        for d in (up, down):
            for v in d:
                d[v] = tuple(sorted(d[v], key=index.__getitem__))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_up", up)
        object.__setattr__(self, "_down", down)
        leq = set()
        for p in self.elements:
            stack, seen = [p], {p}
            while stack:
                v = stack.pop()
                for w in up[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            leq.update((p, q) for q in seen)
        object.__setattr__(self, "_leq", frozenset(leq))

    # identity is structural so posets can key caches
    def __eq__(self, other):
        return isinstance(other, Poset) and self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        return hash((self.elements, self.covers))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, v):
        return v in self._index

    def index(self, v) -> int:
        return self._index[v]

    def leq(self, p, q) -> bool:
        return (p, q) in self._leq

    def lt(self, p, q) -> bool:
        return p != q and (p, q) in self._leq

    def successors(self, v) -> tuple:
        """Elements covering ``v``, in canonical order."""
        return self._up[v]

    def predecessors(self, v) -> tuple:
        """Elements covered by ``v``, in canonical order."""
        return self._down[v]

    def interval(self, p, q) -> list:
        return [r for r in self.elements if self.leq(p, r) and self.leq(r, q)]

    def up_set(self, v) -> list:
        return [w for w in self.elements if self.leq(v, w)]

    def linear_extension(self) -> list:
        """Topological order of the elements, ties broken canonically."""
        indeg = {v: len(self._down[v]) for v in self.elements}
        out, ready = [], [v for v in self.elements if indeg[v] == 0]
        while ready:
            ready.sort(key=self.index)
            v = ready.pop(0)
            out.append(v)
            for w in self._up[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return out

    def longest_chain_length(self) -> int:
        """Number of covers in a longest chain."""
        height = {}
        for v in self.linear_extension():
            height[v] = max((height[p] + 1 for p in self._down[v]), default=0)
        return max(height.values(), default=0)

    def label(self, v) -> str:
        return vertex_label(v)

    def find(self, label: str):
        """Element whose label matches ``label`` (whitespace and parentheses ignored)."""
        norm = lambda s: s.replace(" ", "").strip("()")
        key = norm(label)
        for v in self.elements:
            if norm(vertex_label(v)) == key:
                return v
        raise PosetError(f"unknown vertex {label!r}")

    def to_dict(self) -> dict:
        return {
            "elements": [vertex_label(v) for v in self.elements],
            "covers": [[vertex_label(p), vertex_label(q)] for p, q in self.covers],
        }


def from_covers(elements: Sequence[Hashable], covers: Iterable[Sequence[Hashable]]) -> Poset:
    """Validated poset from elements and covering pairs ``(p, q)`` meaning p is covered by q.

    Elements are put in sorted order. Raises :class:`PosetError` on duplicate ids,
    unknown ids, cycles, or covers implied by transitivity.
    """
    elements = list(elements)
    seen = set()
    for v in elements:
        if v in seen:
            raise PosetError(f"duplicate id {v!r}")
        seen.add(v)
    covers = [tuple(c) for c in covers]
    for c in covers:
        if len(c) != 2:
            raise PosetError(f"malformed cover {c!r}")
        p, q = c
        for x in c:
            if x not in seen:
                raise PosetError(f"cover {c!r} references unknown id {x!r}")
        if p == q:
            raise PosetError(f"cycle detected at cover {c!r}")
    if len(set(covers)) != len(covers):
        dup = next(c for c in covers if covers.count(c) > 1)
        raise PosetError(f"duplicate cover {dup!r}")
    elements = sorted(elements)
    order = {v: i for i, v in enumerate(elements)}
    covers = sorted(covers, key=lambda c: (order[c[0]], order[c[1]]))
    return _checked(Poset(tuple(elements), tuple(covers)))


def _checked(P: Poset) -> Poset:
    for p, q in P.covers:
        if P.leq(q, p):
            raise PosetError(f"cycle detected through cover {(p, q)!r}")
    for p, q in P.covers:
        # any other route p -> q makes this cover redundant
        for r in P.successors(p):
            if r != q and P.leq(r, q):
                raise PosetError(f"cover {(p, q)!r} is implied by transitivity (via {r!r})")
    return P


def grid(n: int) -> Poset:
    """The (n+1) x (n+1) grid ``{0..n}^2`` with the product order.

    Vertices are ``(x, y)`` tuples ordered row by row: ``(0,0), (1,0), ..., (n,0), (0,1), ...``.
    """
    if n < 0:
        raise PosetError("grid size must be nonnegative")
    elements = tuple((x, y) for y in range(n + 1) for x in range(n + 1))
    covers = []
    for v in elements:
        x, y = v
        if x < n:
            covers.append((v, (x + 1, y)))
        if y < n:
            covers.append((v, (x, y + 1)))
    return Poset(elements, tuple(covers), grid_size=n)


def chain(k: int) -> Poset:
    """Totally ordered poset ``0 < 1 < ... < k-1``."""
    return from_covers(list(range(k)), [(i, i + 1) for i in range(k - 1)])


def hasse_paths(P: Poset, p, q, cap: int = PATH_CAP) -> list:
    """All directed paths from ``p`` to ``q`` in the Hasse diagram.

    A path is a tuple of covers ``((p, a), (a, b), ..., (z, q))``; ``p == q`` gives
    the single empty path.
    """
    if not P.leq(p, q):
        raise PosetError(f"{vertex_label(p)} is not <= {vertex_label(q)}")
    out = []

    def walk(v, acc):
        if v == q:
            out.append(tuple(acc))
            if len(out) > cap:
                raise PathCapExceeded(f"more than {cap} paths from {vertex_label(p)} to {vertex_label(q)}")
            return
        for w in P.successors(v):
            if P.leq(w, q):
                acc.append((v, w))
                walk(w, acc)
                acc.pop()

    walk(p, [])
    return out


def mobius(P: Poset, p, q) -> int:
    if not P.leq(p, q):
        raise PosetError(f"{vertex_label(p)} is not <= {vertex_label(q)}")
    return _mobius_table(P)[(p, q)]


@lru_cache(maxsize=64)
def _mobius_table(P: Poset) -> dict:
    table = {}
    order = P.linear_extension()
    for p in P.elements:
        above = [r for r in order if P.leq(p, r)]
        for q in above:
            if q == p:
                table[(p, q)] = 1
            else:
                table[(p, q)] = -sum(table[(p, r)] for r in above if r != q and P.leq(r, q))
    return table


@dataclass(frozen=True)
class OrderComplex:
    """Strict chains of a poset grouped by dimension (``simplices[d]`` has d+1 elements each)."""

    simplices: tuple

    @property
    def f_vector(self) -> tuple:
        return tuple(len(s) for s in self.simplices)


def order_complex(P: Poset) -> OrderComplex:
    levels = []
    current = [(v,) for v in P.elements]
    while current:
        levels.append(tuple(current))
        nxt = []
        for ch in current:
            for w in P.elements:
                if P.lt(ch[-1], w):
                    nxt.append(ch + (w,))
        current = nxt
    return OrderComplex(tuple(levels))


def coboundary(C: OrderComplex, d: int, field: FieldSpec) -> ExactMatrix:
    """Matrix of delta^d : C^d -> C^{d+1}; rows are (d+1)-simplices, columns d-simplices."""
    src = C.simplices[d] if d < len(C.simplices) else ()
    tgt = C.simplices[d + 1] if d + 1 < len(C.simplices) else ()
    pos = {s: i for i, s in enumerate(src)}
    rows = []
    for t in tgt:
        row = [0] * len(src)
        for i in range(len(t)):
            row[pos[t[:i] + t[i + 1:]]] += (-1) ** i
        rows.append(row)
    if not rows:
        return ExactMatrix.zeros(0, len(src), field)
    return ExactMatrix.from_rows(rows, field, len(src))


def nerve_cohomology_dims(C: OrderComplex, field: FieldSpec, max_degree: int) -> list:
    """Dimensions of H^0..H^max_degree of the order complex over ``field``."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    ranks = [rank(coboundary(C, d, field)) for d in range(max_degree + 1)]
    dims = []
    for d in range(max_degree + 1):
        cd = len(C.simplices[d]) if d < len(C.simplices) else 0
        dims.append(cd - ranks[d] - (ranks[d - 1] if d > 0 else 0))
    return dims


def zeta_matrix(P: Poset) -> list:
    return [[1 if P.leq(p, q) else 0 for q in P.elements] for p in P.elements]


def mobius_matrix(P: Poset) -> list:
    return [[mobius(P, p, q) if P.leq(p, q) else 0 for q in P.elements] for p in P.elements]


def random_poset(rng, n: int, edge_prob: float = 0.4, connected: bool = True) -> Poset:
    """Random poset on ``0..n-1`` from a random DAG, transitively reduced."""
    while True:
        edges = [(i, j) for i, j in combinations(range(n), 2) if rng.random() < edge_prob]
        full = Poset(tuple(range(n)), tuple(edges))
        covers = [(p, q) for p, q in edges if not any(r != q and full.leq(r, q) for r in full.successors(p))]
        P = from_covers(list(range(n)), covers)
        if not connected or _is_connected(P):
            return P


def _is_connected(P: Poset) -> bool:
    if not P.elements:
        return True
    adj = {v: set(P.successors(v)) | set(P.predecessors(v)) for v in P.elements}
    seen, stack = {P.elements[0]}, [P.elements[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(P.elements)
