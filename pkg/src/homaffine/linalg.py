"""Exact linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, which keeps every value reduced with a
positive denominator. Matrices and subspaces are immutable; vectors are plain
tuples of fractions.

Subspaces are always stored by the reduced row-echelon form of a basis, so two
subspaces are equal exactly when their representations are equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Polynomial = tuple[Fraction, ...]  # coefficients, constant term first

_RATIONAL_RE = re.compile(r"(-?\d+)(?:/(\d+))?")


def parse_rational(value: object) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a JSON integer. Decimals and floats are rejected."""
    if isinstance(value, bool):
        raise ValueError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise ValueError(f"expected a rational string 'p/q', got {value!r}")
    m = _RATIONAL_RE.fullmatch(value.strip())
    if m is None:
        raise ValueError(f"malformed rational {value!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {value!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(u: Vector, v: Vector) -> Vector:
    _check_same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    _check_same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    _check_same_length(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


def linear_combination(coeffs: Sequence[Fraction], vectors: Sequence[Vector], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors, strict=True):
        if c == 0:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] += c * a
    return tuple(out)


def _check_same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        entries = tuple(Fraction(e) for e in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries given for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        return cls.from_rows(columns, cols=rows).T if columns else cls.zeros(rows, 0)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Vector:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[Vector]:
        return [self.row(i) for i in range(self.rows)]

    def to_columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)
        ))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def _same_shape(self, other: Matrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> Matrix:
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            out = [Fraction(0)] * (self.rows * other.cols)
            for i in range(self.rows):
                base = i * other.cols
                for k in range(self.cols):
                    a = self.entries[i * self.cols + k]
                    if not a:
                        continue
                    orow = k * other.cols
                    for j in range(other.cols):
                        b = other.entries[orow + j]
                        if b:
                            out[base + j] += a * b
            return Matrix(self.rows, other.cols, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"cannot apply {self.rows}x{self.cols} matrix to length {len(v)}")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def power(self, k: int) -> Matrix:
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self.to_rows())
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def rref(m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Return ``(reduced row-echelon form, rank, pivot columns)``."""
    a = [list(r) for r in m.to_rows()]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix.from_rows(a, cols=m.cols), r, tuple(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[1]


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """Solve ``a @ x = b``; free variables are set to zero. ``None`` if inconsistent."""
    b = as_vector(b)
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    aug = Matrix.from_rows([tuple(r) + (bi,) for r, bi in zip(a.to_rows(), b)], cols=a.cols + 1)
    red, _, pivots = rref(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for i, c in enumerate(pivots):
        x[c] = red[i, a.cols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n given by the RREF of a basis (rows, no zero rows).

    Build instances with :meth:`span`; the constructor trusts its input.
    """

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        rows = [as_vector(v) for v in vectors]
        if not rows:
            return cls.zero(ambient_dim)
        red, r, _ = rref(Matrix.from_rows(rows, cols=ambient_dim))
        return cls(ambient_dim, Matrix.from_rows(red.to_rows()[:r], cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def vectors(self) -> tuple[Vector, ...]:
        return tuple(self.basis.to_rows())

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, e in enumerate(r) if e) for r in self.vectors)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of ``v`` in the stored basis, or ``None`` if ``v`` is outside."""
        v = as_vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        coords = tuple(v[p] for p in self.pivots)
        if linear_combination(coords, self.vectors, self.ambient_dim) != v:
            return None
        return coords

    def __contains__(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(v in self for v in other.vectors)

    def __add__(self, other: Subspace) -> Subspace:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(self.vectors + other.vectors, self.ambient_dim)


def image(a: Matrix) -> Subspace:
    """Column space of ``a``."""
    return Subspace.span(a.to_columns(), a.rows)


def kernel(a: Matrix) -> Subspace:
    """Null space of ``a``."""
    red, r, pivots = rref(a)
    free = [c for c in range(a.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * a.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(v)
    return Subspace.span(basis, a.cols)


def left_kernel(a: Matrix) -> Subspace:
    """Row vectors ``w`` with ``w @ a = 0``."""
    return kernel(a.T)


def is_nilpotent(a: Matrix) -> bool:
    if not a.is_square:
        raise ValueError("nilpotency of a non-square matrix")
    p = a
    for _ in range(max(a.rows - 1, 0)):
        if p.is_zero():
            return True
        p = p @ a
    return p.is_zero()


def exp_nilpotent(a: Matrix) -> Matrix:
    """Exact exponential of a nilpotent matrix (finite sum of ``a^i / i!``)."""
    if not a.is_square:
        raise ValueError("exponential of a non-square matrix")
    result = Matrix.identity(a.rows)
    term = result
    for i in range(1, a.rows + 1):
        term = (term @ a).scale(Fraction(1, i))
        if term.is_zero():
            return result
        result = result + term
    raise ValueError("matrix is not nilpotent")


# -- polynomials --------------------------------------------------------------

def poly_trim(p: Sequence) -> Polynomial:
    p = list(as_vector(p))
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_degree(p: Sequence) -> int:
    """Degree, with ``-1`` for the zero polynomial."""
    return len(poly_trim(p)) - 1


def poly_derivative(p: Sequence) -> Polynomial:
    p = poly_trim(p)
    return poly_trim(i * c for i, c in enumerate(p) if i > 0)


def poly_divmod(a: Sequence, b: Sequence) -> tuple[Polynomial, Polynomial]:
    a, b = list(poly_trim(a)), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = list(poly_trim(a))
    return poly_trim(q), tuple(a)


def poly_gcd(a: Sequence, b: Sequence) -> Polynomial:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return tuple(c / a[-1] for c in a) if a else ()


def poly_eval_matrix(p: Sequence, a: Matrix) -> Matrix:
    result = Matrix.zeros(a.rows, a.cols)
    for c in reversed(poly_trim(p)):
        result = result @ a + Matrix.identity(a.rows).scale(c)
    return result


def format_polynomial(p: Sequence, var: str = "t") -> str:
    p = poly_trim(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        mag = abs(c)
        coeff = str(mag) if (mag != 1 or i == 0) else ""
        body = f"{coeff}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def minimal_polynomial(a: Matrix) -> Polynomial:
    """Monic polynomial of least degree annihilating ``a``."""
    if not a.is_square:
        raise ValueError("minimal polynomial of a non-square matrix")
    n = a.rows
    flat: list[Vector] = []
    p = Matrix.identity(n)
    for k in range(n + 1):
        target = p.entries
        coeffs = solve(Matrix.from_columns(flat, n * n), target)
        if coeffs is not None:
            return tuple(-c for c in coeffs) + (Fraction(1),)
        flat.append(target)
        p = p @ a
    raise AssertionError("Cayley-Hamilton bound exceeded")  # pragma: no cover


def is_squarefree(p: Sequence) -> bool:
    p = poly_trim(p)
    if not p:
        raise ValueError("squarefree test of the zero polynomial")
    return poly_degree(poly_gcd(p, poly_derivative(p))) == 0
