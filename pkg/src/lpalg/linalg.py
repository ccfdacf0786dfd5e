"""Exact scalars and linear algebra over Q or GF(p).

Coefficients are plain Python numbers: over Q they are ``int`` or
``Fraction`` (integral fractions collapse back to ``int``), over GF(p) they
are ``int`` in ``[0, p)``.  A :class:`Field` only knows how to bring a raw
number into canonical form and how to divide.

Matrices keep their rows sparse (``{column: value}``); elimination touches
only nonzero entries, so results are the same as dense Gauss-Jordan.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence


class Field:
    name = "?"

    def __call__(self, c):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        return self.div(1, a)

    def signed(self, c) -> int | Fraction:
        """A representative suitable for printing."""
        return c

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<field {self.name}>"


class Rationals(Field):
    name = "q"

    def __call__(self, c):
        if type(c) is int:
            return c
        if isinstance(c, Fraction):
            return c.numerator if c.denominator == 1 else c
        if isinstance(c, bool):
            return int(c)
        return self(Fraction(c))

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return self(Fraction(a) / Fraction(b))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"gf:{p}"

    def __call__(self, c):
        if type(c) is int:
            return c % self.p
        c = Fraction(c)
        den = c.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return c.numerator * pow(den, -1, self.p) % self.p

    def div(self, a, b):
        b %= self.p
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, -1, self.p) % self.p

    def signed(self, c):
        return c - self.p if c > self.p // 2 else c


QQ = Rationals()


def field_from_spec(spec: str) -> Field:
    """Parse ``q`` or ``gf:<p>``."""
    spec = spec.strip().lower()
    if spec in ("q", "qq", "rationals"):
        return QQ
    if spec.startswith("gf:"):
        try:
            p = int(spec[3:])
        except ValueError:
            raise ValueError(f"bad prime in field spec {spec!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field {spec!r} (expected q or gf:<p>)")


class Matrix:
    """An ``nrows x ncols`` matrix over ``field`` with sparse rows."""

    def __init__(self, nrows: int, ncols: int, rows: Sequence[dict] | None = None,
                 field: Field = QQ):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count does not match")
        self.rows = []
        for r in rows:
            clean = {}
            for j, v in r.items():
                if not 0 <= j < ncols:
                    raise ValueError(f"column {j} out of range")
                v = field(v)
                if v != 0:
                    clean[j] = v
            self.rows.append(clean)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], field: Field = QQ, ncols: int | None = None):
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: v for j, v in enumerate(r) if v != 0})
        return cls(len(entries), ncols, rows, field)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict], field: Field = QQ):
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                rows[i][j] = v
        return cls(nrows, len(columns), rows, field)

    @classmethod
    def identity(cls, n: int, field: Field = QQ):
        return cls(n, n, [{i: 1} for i in range(n)], field)

    def to_dense(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {self.field.name})"

    def apply(self, x: Sequence) -> list:
        """Matrix times a dense column vector."""
        if len(x) != self.ncols:
            raise ValueError("dimension mismatch")
        F = self.field
        return [F(sum(v * x[j] for j, v in r.items())) for r in self.rows]

    def apply_sparse(self, x: dict) -> dict:
        F = self.field
        out = {}
        for i, r in enumerate(self.rows):
            s = sum(v * x[j] for j, v in r.items() if j in x)
            s = F(s)
            if s != 0:
                out[i] = s
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        F = self.field
        rows = []
        for r in self.rows:
            acc: dict = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + v * w
            rows.append({j: F(v) for j, v in acc.items() if F(v) != 0})
        return Matrix(self.nrows, other.ncols, rows, F)

    def is_zero(self) -> bool:
        return not any(self.rows)


def _eliminate(rows: Iterable[dict], field: Field, limit: int | None = None,
               residual: list | None = None) -> list[tuple[int, dict]]:
    """Reduced echelon rows ``(pivot, row)`` sorted by pivot column.

    Pivots are only taken in columns below ``limit``; rows that vanish there
    but not elsewhere are appended to ``residual``.
    """
    F = field
    pivots: dict[int, tuple[int, dict]] = {}
    order: list[int] = []
    for raw in rows:
        row = dict(raw)
        heap = [(pivots[c][0], c) for c in row if c in pivots]
        heapq.heapify(heap)
        while heap:
            _, c = heapq.heappop(heap)
            f = row.get(c)
            if f is None:
                continue
            t, prow = pivots[c]
            for j, v in prow.items():
                nv = F(row.get(j, 0) - f * v)
                if nv == 0:
                    row.pop(j, None)
                else:
                    if j not in row and j in pivots:
                        heapq.heappush(heap, (pivots[j][0], j))
                    row[j] = nv
        if not row:
            continue
        p = min(row)
        if limit is not None and p >= limit:
            if residual is not None:
                residual.append(row)
            continue
        inv = F.inv(row[p])
        if inv != 1:
            row = {j: F(v * inv) for j, v in row.items()}
        pivots[p] = (len(order), row)
        order.append(p)
    # back substitution, latest pivot first
    for p in reversed(order):
        _, row = pivots[p]
        for c in [c for c in row if c != p and c in pivots]:
            f = row.get(c)
            if f is None:
                continue
            for j, v in pivots[c][1].items():
                nv = F(row.get(j, 0) - f * v)
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return sorted((p, pivots[p][1]) for p in order)


def rref(m: Matrix) -> tuple[Matrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    echelon = _eliminate(m.rows, m.field)
    rows = [r for _, r in echelon]
    rows += [{} for _ in range(m.nrows - len(rows))]
    return Matrix(m.nrows, m.ncols, rows, m.field), len(echelon), [p for p, _ in echelon]


def rank(m: Matrix) -> int:
    return len(_eliminate(m.rows, m.field))


def kernel_basis(m: Matrix) -> list[list]:
    """A basis of the null space, one dense column per free variable."""
    echelon = _eliminate(m.rows, m.field)
    pivot_cols = {p for p, _ in echelon}
    F = m.field
    basis = []
    for free in range(m.ncols):
        if free in pivot_cols:
            continue
        v = [0] * m.ncols
        v[free] = 1
        for p, row in echelon:
            c = row.get(free)
            if c is not None:
                v[p] = F(-c)
        basis.append(v)
    return basis


def solve(m: Matrix, b: Sequence) -> list | None:
    """One exact solution of ``m x = b``, or None when inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    sols = solve_many(m, [{i: v for i, v in enumerate(b) if v != 0}])
    x = sols[0]
    if x is None:
        return None
    return [x.get(j, 0) for j in range(m.ncols)]


def solve_many(m: Matrix, rhs: Sequence[dict]) -> list[dict | None]:
    """Solve ``m x = b`` for several sparse right-hand sides at once.

    Returns sparse solutions (free variables set to 0) or None for each
    inconsistent system.
    """
    F = m.field
    n = m.ncols
    aug = [dict(r) for r in m.rows]
    for k, b in enumerate(rhs):
        for i, v in b.items():
            if not 0 <= i < m.nrows:
                raise ValueError("right-hand side index out of range")
            v = F(v)
            if v != 0:
                aug[i][n + k] = v
    residual: list[dict] = []
    echelon = _eliminate(aug, F, limit=n, residual=residual)
    bad = {c - n for row in residual for c in row}
    out: list[dict | None] = []
    for k in range(len(rhs)):
        if k in bad:
            out.append(None)
            continue
        x = {}
        for p, row in echelon:
            if p < n and (n + k) in row:
                x[p] = row[n + k]
        out.append(x)
    return out
