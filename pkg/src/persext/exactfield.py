"""Exact linear algebra over a prime field GF(p) or the rationals.

Matrices are small and dense, so everything is plain Python: ``int`` residues
for GF(p), :class:`fractions.Fraction` for Q. All bases handed back to callers
are in canonical reduced row echelon form so that results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(p) (``p`` set) or the rationals (``p is None``)."""

    p: Optional[int] = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"p:<prime>"`` or ``"q"``."""
        t = text.strip().lower()
        if t in ("q", "qq", "rational", "rationals"):
            return cls(None)
        if t.startswith("p:"):
            try:
                p = int(t[2:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field spec {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    def __str__(self):
        return "q" if self.p is None else f"p:{self.p}"

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce an int, Fraction or string like ``"-3/4"`` into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a):
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def reduce(self, a):
        return a if self.p is None else a % self.p

    def to_json(self, a):
        """Serializable form of a field element (int, or ``"n/d"`` string)."""
        if self.p is None:
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over a :class:`FieldSpec`; ``data`` is a tuple of row tuples."""

    rows: int
    cols: int
    field: FieldSpec
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldSpec, cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = tuple(tuple(field(x) for x in r) for r in rows)
        return cls(len(rows), cols, field, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: FieldSpec, rows: int):
        cols = len(columns)
        data = tuple(tuple(field(columns[j][i]) for j in range(cols)) for i in range(rows))
        return cls(rows, cols, field, data)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec):
        z = field.zero
        return cls(rows, cols, field, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, field: FieldSpec):
        z, o = field.zero, field.one
        return cls(n, n, field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- basic algebra ----------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows, self.field, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def _check(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        red = self.field.reduce
        z = self.field.zero
        ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
        data = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in ocols:
                s = z
                for k, a in nz:
                    b = c[k]
                    if b:
                        s += a * b
                row.append(red(s))
            data.append(tuple(row))
        return ExactMatrix(self.rows, other.cols, self.field, tuple(data))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        red = self.field.reduce
        data = tuple(tuple(red(a + b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data))
        return ExactMatrix(self.rows, self.cols, self.field, data)

    def __neg__(self) -> "ExactMatrix":
        red = self.field.reduce
        return ExactMatrix(self.rows, self.cols, self.field, tuple(tuple(red(-a) for a in r) for r in self.data))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = self.field(c)
        red = self.field.reduce
        return ExactMatrix(self.rows, self.cols, self.field, tuple(tuple(red(c * a) for a in r) for r in self.data))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def hstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.rows != self.rows:
                raise ValueError("hstack row mismatch")
        data = tuple(sum((m.data[i] for m in mats), ()) for i in range(self.rows))
        return ExactMatrix(self.rows, sum(m.cols for m in mats), self.field, data)

    def vstack(self, *others: "ExactMatrix") -> "ExactMatrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.cols != self.cols:
                raise ValueError("vstack column mismatch")
        data = sum((m.data for m in mats), ())
        return ExactMatrix(sum(m.rows for m in mats), self.cols, self.field, data)

    def to_lists(self):
        f = self.field
        return [[f.to_json(a) for a in r] for r in self.data]

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field}: {self.to_lists()})"

    # -- elimination ------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns ``(R, pivot_columns)``."""
        rows, pivots = _rref_rows([list(r) for r in self.data], self.cols, self.field)
        return ExactMatrix(self.rows, self.cols, self.field, tuple(tuple(r) for r in rows)), pivots

    def rank(self) -> int:
        return rank(self)


def _rref_rows(rows: list, ncols: int, field: FieldSpec):
    """In-place Gauss-Jordan elimination on a list of row lists."""
    red, inv = field.reduce, field.inv
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        a = pr[c]
        if a != 1:
            ia = inv(a)
            pr = rows[r] = [red(x * ia) for x in pr]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    rows[i] = [red(x - f * y) if y else x for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(A: ExactMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    _, pivots = _rref_rows([list(r) for r in A.data], A.cols, A.field)
    return len(pivots)


def _canonical_columns(vectors: list, dim: int, field: FieldSpec) -> ExactMatrix:
    """Columns spanning the same space as ``vectors``, in canonical RREF."""
    rows, pivots = _rref_rows([list(v) for v in vectors], dim, field)
    rows = rows[: len(pivots)]
    return ExactMatrix.from_columns(rows, field, dim) if rows else ExactMatrix.zeros(dim, 0, field)


def kernel_basis(A: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of ``{x : A x = 0}`` (canonical echelon form)."""
    f = A.field
    n = A.cols
    if A.rows == 0:
        return ExactMatrix.identity(n, f)
    rows, pivots = _rref_rows([list(r) for r in A.data], n, f)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    vecs = []
    for fc in free:
        v = [f.zero] * n
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.reduce(-rows[i][fc])
        vecs.append(v)
    return _canonical_columns(vecs, n, f)


def image_basis(A: ExactMatrix) -> ExactMatrix:
    """Columns form a basis of the column space of ``A`` (canonical echelon form)."""
    return _canonical_columns(A.columns(), A.rows, A.field)


def solve(A: ExactMatrix, b: Sequence) -> Optional[tuple]:
    """Some ``x`` with ``A x = b``, or ``None`` when the system is inconsistent."""
    f = A.field
    if len(b) != A.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {A.rows}")
    n = A.cols
    aug = [list(r) + [f(x)] for r, x in zip(A.data, b)]
    rows, pivots = _rref_rows(aug, n + 1, f)
    if pivots and pivots[-1] == n:
        return None
    x = [f.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][n]
    return tuple(x)


def solve_matrix(A: ExactMatrix, B: ExactMatrix) -> Optional[ExactMatrix]:
    """Some ``X`` with ``A X = B`` column by column, or ``None``."""
    cols = []
    for j in range(B.cols):
        x = solve(A, B.column(j))
        if x is None:
            return None
        cols.append(x)
    return ExactMatrix.from_columns(cols, A.field, A.cols)


def quotient_dim(ambient_dim: int, subspace_basis: Iterable[Sequence], field: FieldSpec = FieldSpec()) -> int:
    """``ambient_dim - rank(span(subspace_basis))``."""
    vecs = [list(v) for v in subspace_basis]
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError(f"basis vector of length {len(v)} in a space of dimension {ambient_dim}")
    if not vecs:
        return ambient_dim
    return ambient_dim - rank(ExactMatrix.from_rows(vecs, field, ambient_dim))


def complement_indices(A: ExactMatrix) -> list:
    """Standard basis indices whose vectors complete the column space of ``A`` to the whole space."""
    if A.cols == 0:
        return list(range(A.rows))
    _, pivots = _rref_rows([list(c) for c in A.columns()], A.rows, A.field)
    pivset = set(pivots)
    return [i for i in range(A.rows) if i not in pivset]
