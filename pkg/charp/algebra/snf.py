"""Matrices over A = F_p[t] and their Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ..exceptions import ContextMismatchError, PreconditionError
from ..utils import logger
from .field import UniPoly, uni_gcd
from .multipoly import MultiPoly


@dataclass(frozen=True)
class PolyMatrix:
    """A dense rows x cols matrix of UniPoly entries, stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[UniPoly, ...], ...]
    p: int

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise PreconditionError(f"entries do not form a {self.rows}x{self.cols} matrix")
        for row in self.entries:
            for entry in row:
                if entry.p != self.p:
                    raise ContextMismatchError(f"entry over F_{entry.p} in a matrix over F_{self.p}")

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> PolyMatrix:
        z = UniPoly.zero(p)
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)), p)

    @classmethod
    def identity(cls, n: int, p: int) -> PolyMatrix:
        return cls.diagonal([UniPoly.one(p)] * n, p)

    @classmethod
    def diagonal(cls, diag: Sequence[UniPoly], p: int, rows: int | None = None, cols: int | None = None) -> PolyMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        z = UniPoly.zero(p)
        entries = tuple(
            tuple(diag[i] if i == j and i < len(diag) else z for j in range(cols))
            for i in range(rows)
        )
        return cls(rows, cols, entries, p)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[UniPoly | int]], p: int) -> PolyMatrix:
        entries = tuple(
            tuple(e if isinstance(e, UniPoly) else UniPoly.constant(e, p) for e in row)
            for row in rows
        )
        return cls(len(entries), len(entries[0]) if entries else 0, entries, p)

    def __getitem__(self, index: tuple[int, int]) -> UniPoly:
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise PreconditionError(f"cannot multiply {self.shape} by {other.shape}")
        z = UniPoly.zero(self.p)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.rows, other.cols, tuple(out), self.p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
        return PolyMatrix(
            len(rows),
            len(cols),
            tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            self.p,
        )

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> UniPoly:
        return self.submatrix(rows, cols).determinant()

    def determinant(self) -> UniPoly:
        """Fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise PreconditionError("determinant of a non-square matrix")
        n = self.rows
        p = self.p
        if n == 0:
            return UniPoly.one(p)
        a = [list(row) for row in self.entries]
        sign = 1
        prev = UniPoly.one(p)
        for k in range(n - 1):
            if not a[k][k]:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return UniPoly.zero(p)
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        det = a[n - 1][n - 1]
        return det if sign == 1 else -det

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


@dataclass(frozen=True)
class ElementaryDivisors:
    """Invariant factors d_1 | d_2 | ... | d_r (monic, nonzero) plus a free rank.

    ``left``/``right`` hold U, V with U*M*V = diag(divisors) when requested.
    """

    divisors: tuple[UniPoly, ...]
    free_rank: int
    p: int
    left: PolyMatrix | None = None
    right: PolyMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.divisors)

    @property
    def torsion(self) -> tuple[UniPoly, ...]:
        return tuple(d for d in self.divisors if not d.is_unit())

    def largest(self) -> UniPoly:
        """The torsion annihilator; 1 when the module is torsion-free."""
        if not self.divisors:
            return UniPoly.one(self.p)
        return self.divisors[-1]

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def is_chain(self) -> bool:
        return all(a.divides(b) for a, b in zip(self.divisors, self.divisors[1:]))

    @classmethod
    def direct_sum(cls, parts: Sequence[ElementaryDivisors], p: int, extra_free: int = 0) -> ElementaryDivisors:
        """Invariant factors of the direct sum of the cokernels described by ``parts``."""
        rank = sum(part.rank for part in parts)
        free = extra_free + sum(part.free_rank for part in parts)
        torsion = [d for part in parts for d in part.torsion]
        if torsion:
            merged = smith_normal_form(PolyMatrix.diagonal(torsion, p)).torsion
        else:
            merged = ()
        units = (UniPoly.one(p),) * (rank - len(merged))
        return cls(units + tuple(merged), free, p)

    def __str__(self) -> str:
        shown = ", ".join(str(d) for d in self.divisors) or "-"
        return f"divisors [{shown}], free rank {self.free_rank}"


def _min_degree_position(a, rows: range, cols: range) -> tuple[int, int] | None:
    best = None
    best_deg = None
    for i in rows:
        row = a[i]
        for j in cols:
            entry = row[j]
            if entry and (best_deg is None or entry.degree < best_deg):
                best, best_deg = (i, j), entry.degree
                if best_deg == 0:
                    return best
    return best


def smith_normal_form(matrix: PolyMatrix, with_transforms: bool = False) -> ElementaryDivisors:
    """Invariant factors of ``matrix`` over the Euclidean domain F_p[t].

    Pivots are minimal-degree entries (ties by row, then column).  A nonzero
    remainder while clearing becomes the next pivot, so the pivot degree
    strictly drops until the pivot divides its row and column.
    """
    p = matrix.p
    m, n = matrix.shape
    logger.debug(f"smith normal form of a {m}x{n} matrix over F_{p}[t]")
    a = [list(row) for row in matrix.entries]
    one, zero = UniPoly.one(p), UniPoly.zero(p)
    u = [[one if i == j else zero for j in range(m)] for i in range(m)] if with_transforms else None
    v = [[one if i == j else zero for j in range(n)] for i in range(n)] if with_transforms else None

    def swap_rows(i: int, k: int) -> None:
        a[i], a[k] = a[k], a[i]
        if u is not None:
            u[i], u[k] = u[k], u[i]

    def swap_cols(j: int, k: int) -> None:
        for row in a:
            row[j], row[k] = row[k], row[j]
        if v is not None:
            for row in v:
                row[j], row[k] = row[k], row[j]

    def add_row(target: int, source: int, factor: UniPoly) -> None:
        """row[target] += factor * row[source]"""
        for j in range(n):
            if a[source][j]:
                a[target][j] = a[target][j] + factor * a[source][j]
        if u is not None:
            for j in range(m):
                if u[source][j]:
                    u[target][j] = u[target][j] + factor * u[source][j]

    def add_col(target: int, source: int, factor: UniPoly) -> None:
        for i in range(m):
            if a[i][source]:
                a[i][target] = a[i][target] + factor * a[i][source]
        if v is not None:
            for i in range(n):
                if v[i][source]:
                    v[i][target] = v[i][target] + factor * v[i][source]

    divisors: list[UniPoly] = []
    t = 0
    while t < min(m, n):
        pos = _min_degree_position(a, range(t, m), range(t, n))
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    quo, rem = divmod(a[i][t], a[t][t])
                    add_row(i, t, -quo)
                    if rem:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    quo, rem = divmod(a[t][j], a[t][t])
                    add_col(j, t, -quo)
                    if rem:
                        clean = False
            if not clean:
                pos = _min_degree_position(a, range(t, m), range(t, t + 1))
                col_pos = _min_degree_position(a, range(t, t + 1), range(t, n))
                if col_pos is not None and (pos is None or a[col_pos[0]][col_pos[1]].degree < a[pos[0]][pos[1]].degree):
                    swap_cols(t, col_pos[1])
                else:
                    swap_rows(t, pos[0])
                continue
            offender = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] and not a[t][t].divides(a[i][j])),
                None,
            )
            if offender is None:
                break
            add_row(t, offender, one)
        pivot = a[t][t]
        inv = pow(pivot.lead, -1, p)
        if inv != 1:
            scale = UniPoly.constant(inv, p)
            a[t][t] = pivot * scale
            if u is not None:
                u[t] = [e * scale for e in u[t]]
        divisors.append(a[t][t])
        t += 1

    left = PolyMatrix(m, m, tuple(tuple(r) for r in u), p) if u is not None else None
    right = PolyMatrix(n, n, tuple(tuple(r) for r in v), p) if v is not None else None
    return ElementaryDivisors(tuple(divisors), m - len(divisors), p, left, right)


def determinantal_divisors(matrix: PolyMatrix) -> list[UniPoly]:
    """Monic gcd of all k x k minors for k = 1 .. min(rows, cols)."""
    p = matrix.p
    out = []
    for k in range(1, min(matrix.shape) + 1):
        g = UniPoly.zero(p)
        for rows in combinations(range(matrix.rows), k):
            for cols in combinations(range(matrix.cols), k):
                g = uni_gcd(g, matrix.minor(rows, cols))
                if g.is_one():
                    break
            if g.is_one():
                break
        out.append(g)
    return out


def _module_vars(F: MultiPoly) -> tuple[str, str]:
    names = F.ring.module_variables
    if len(names) != 2:
        raise PreconditionError(f"expected exactly two module variables, got {names}")
    return names[0], names[1]


def mult_matrix(F: MultiPoly, q: int) -> PolyMatrix:
    """Matrix of multiplication by F on A[x,y]/(x^q, y^q) in the basis x^i y^j.

    Basis vector x^i y^j has index i*q + j.
    """
    xv, yv = _module_vars(F)
    p = F.p
    coeffs = F.coefficient_map([xv, yv])
    z = UniPoly.zero(p)
    size = q * q
    entries = [[z] * size for _ in range(size)]
    for i in range(q):
        for j in range(q):
            col = i * q + j
            for (a, b), c in coeffs.items():
                if i + a < q and j + b < q:
                    row = (i + a) * q + (j + b)
                    entries[row][col] = entries[row][col] + c
    return PolyMatrix(size, size, tuple(tuple(r) for r in entries), p)


def graded_mult_blocks(F: MultiPoly, q: int) -> tuple[list[PolyMatrix], int]:
    """Blocks of multiplication by an (x, y)-homogeneous F between graded pieces.

    Returns the nonempty blocks B_k : (degree k) -> (degree k + d) and the
    total dimension of the target degrees that receive no block.
    """
    xv, yv = _module_vars(F)
    p = F.p
    coeffs = F.coefficient_map([xv, yv])
    degrees = {a + b for a, b in coeffs}
    if len(degrees) != 1:
        raise PreconditionError(f"{F} is not homogeneous in {xv}, {yv}")
    d = degrees.pop()
    top = 2 * q - 2

    def basis(k: int) -> list[tuple[int, int]]:
        return [(i, k - i) for i in range(max(0, k - q + 1), min(k, q - 1) + 1)]

    z = UniPoly.zero(p)
    blocks = []
    covered = set()
    for k in range(0, top - d + 1):
        src, dst = basis(k), basis(k + d)
        if not src or not dst:
            continue
        covered.add(k + d)
        index = {mono: r for r, mono in enumerate(dst)}
        entries = [[z] * len(src) for _ in dst]
        for col, (i, j) in enumerate(src):
            for (a, b), c in coeffs.items():
                row = index.get((i + a, j + b))
                if row is not None:
                    entries[row][col] = entries[row][col] + c
        blocks.append(PolyMatrix(len(dst), len(src), tuple(tuple(r) for r in entries), p))
    uncovered = sum(len(basis(k)) for k in range(top + 1) if k not in covered)
    return blocks, uncovered
