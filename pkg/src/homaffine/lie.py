"""Lie algebras over Q given by structure constants, and the Levi data checks.

Elements are coordinate vectors (tuples of fractions) in the basis of the
algebra. A :class:`LeviData` pairs a reductive subalgebra ``l`` with a
nilpotent ideal ``n`` such that ``g = l + n`` is direct. It is supplied by the
caller and checked by :func:`validate_levi`; nothing here computes a Levi
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import (
    Matrix,
    Subspace,
    Vector,
    as_vector,
    format_polynomial,
    is_nilpotent,
    is_squarefree,
    is_zero_vector,
    kernel,
    linear_combination,
    minimal_polynomial,
    rank,
    solve,
    unit_vector,
)

SparseVector = tuple[tuple[int, Fraction], ...]


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to the sparse coordinates
    ``[(k, c), ...]`` of ``[e_i, e_j]``. Omitted pairs bracket to zero.
    Construction checks the shape of the data only; the Jacobi identity is
    checked by :func:`validate_algebra`.
    """

    __slots__ = ("dim", "basis_names", "brackets", "_table")

    def __init__(
        self,
        basis_names: Sequence[str],
        brackets: Mapping[tuple[int, int], Iterable[tuple[int, object]]],
    ) -> None:
        names = tuple(basis_names)
        if len(set(names)) != len(names):
            raise ValueError("basis names must be distinct")
        dim = len(names)
        table: list[list[SparseVector]] = [[() for _ in range(dim)] for _ in range(dim)]
        stored: dict[tuple[int, int], SparseVector] = {}
        for (i, j), terms in sorted(brackets.items()):
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i},{j}) must satisfy 0 <= i < j < {dim}")
            acc: dict[int, Fraction] = {}
            for k, c in terms:
                if not 0 <= k < dim:
                    raise ValueError(f"bracket ({i},{j}) refers to basis index {k} out of range")
                acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
            sparse = tuple((k, c) for k, c in sorted(acc.items()) if c != 0)
            if not sparse:
                continue
            stored[(i, j)] = sparse
            table[i][j] = sparse
            table[j][i] = tuple((k, -c) for k, c in sparse)
        self.dim = dim
        self.basis_names = names
        self.brackets = stored
        self._table = table

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def element(self, coords: Iterable) -> Vector:
        x = as_vector(coords)
        if len(x) != self.dim:
            raise ValueError(f"element has {len(x)} coordinates, algebra has dimension {self.dim}")
        return x

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_names == other.basis_names and self.brackets == other.brackets

    def __hash__(self) -> int:
        return hash((self.basis_names, tuple(sorted(self.brackets.items()))))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


def format_element(g: LieAlgebra, x: Sequence) -> str:
    """Render ``x`` as a combination of basis names, e.g. ``e - 1/2 z``."""
    parts = []
    for name, c in zip(g.basis_names, x):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{mag} {name}"
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def bracket(g: LieAlgebra, x: Sequence, y: Sequence) -> Vector:
    x, y = g.element(x), g.element(y)
    out = [Fraction(0)] * g.dim
    for i, a in enumerate(x):
        if not a:
            continue
        row = g._table[i]
        for j, b in enumerate(y):
            if not b or not row[j]:
                continue
            ab = a * b
            for k, c in row[j]:
                out[k] += ab * c
    return tuple(out)


def ad_matrix(g: LieAlgebra, x: Sequence) -> Matrix:
    """Matrix of ``ad x``; column ``j`` holds ``[x, e_j]``."""
    return Matrix.from_columns([bracket(g, x, g.basis_vector(j)) for j in range(g.dim)], g.dim)


@dataclass(frozen=True)
class ValidationReport:
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    @property
    def first(self) -> str | None:
        return self.failures[0] if self.failures else None


def jacobiator(g: LieAlgebra, x: Sequence, y: Sequence, z: Sequence) -> Vector:
    terms = (
        bracket(g, x, bracket(g, y, z)),
        bracket(g, y, bracket(g, z, x)),
        bracket(g, z, bracket(g, x, y)),
    )
    return tuple(sum(t, Fraction(0)) for t in zip(*terms))


def validate_algebra(g: LieAlgebra) -> ValidationReport:
    """Check the Jacobi identity on every basis triple ``i < j < k``.

    The Jacobiator is alternating once antisymmetry holds, so these triples
    cover all of them.
    """
    failures = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for k in range(j + 1, g.dim):
                e = g.basis_vector
                if not is_zero_vector(jacobiator(g, e(i), e(j), e(k))):
                    n = g.basis_names
                    failures.append(f"jacobi: fails on ({n[i]}, {n[j]}, {n[k]})")
    return ValidationReport(tuple(failures))


def bracket_span(g: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """``[a, b]``: span of brackets of basis vectors."""
    return Subspace.span(
        (bracket(g, u, v) for u in a.vectors for v in b.vectors), g.dim
    )


def is_subalgebra(g: LieAlgebra, s: Subspace) -> bool:
    return s.contains_subspace(bracket_span(g, s, s))


def derived_subalgebra(g: LieAlgebra, s: Subspace) -> Subspace:
    d = bracket_span(g, s, s)
    if not s.contains_subspace(d):
        raise ValueError("subspace is not closed under the bracket")
    return d


def lower_central_series(g: LieAlgebra, n: Subspace) -> tuple[Subspace, ...]:
    """``n, [n, n], [n, [n, n]], ...`` until it stabilises."""
    series = [n]
    while series[-1].dim:
        nxt = bracket_span(g, n, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return tuple(series)


def nilpotency_class(g: LieAlgebra, n: Subspace) -> int | None:
    """Number of nonzero terms of the lower central series; ``None`` if not nilpotent."""
    series = lower_central_series(g, n)
    if series[-1].dim:
        return None
    return len(series) - 1


@dataclass(frozen=True)
class FlagLevel:
    """One step ``n^(k) -> n^(k+1)`` of the derived series.

    ``quotient_basis`` lists the RREF basis vectors of ``sub`` whose pivot is
    not a pivot of ``next_sub``; their classes form a basis of the quotient.
    """

    index: int
    sub: Subspace
    next_sub: Subspace
    quotient_basis: tuple[Vector, ...]
    _frame: Matrix = field(repr=False, compare=False)

    @property
    def quotient_dim(self) -> int:
        return len(self.quotient_basis)

    def split(self, v: Sequence) -> tuple[Vector, Vector]:
        """Write ``v`` in ``sub`` as ``lift(coords) + rest`` with ``rest`` in ``next_sub``."""
        sol = solve(self._frame, v)
        if sol is None:
            raise ValueError(f"vector is not in level {self.index} of the derived series")
        q = self.quotient_dim
        rest = linear_combination(sol[q:], self.next_sub.vectors, self.sub.ambient_dim)
        return sol[:q], rest

    def lift(self, coords: Sequence) -> Vector:
        return linear_combination(as_vector(coords), self.quotient_basis, self.sub.ambient_dim)


def _flag_level(index: int, sub: Subspace, next_sub: Subspace) -> FlagLevel:
    inner = set(next_sub.pivots)
    reps = tuple(v for v, p in zip(sub.vectors, sub.pivots) if p not in inner)
    frame = Matrix.from_columns(reps + next_sub.vectors, sub.ambient_dim)
    return FlagLevel(index, sub, next_sub, reps, frame)


def derived_series(g: LieAlgebra, n: Subspace) -> tuple[FlagLevel, ...]:
    """Levels ``n^(0) = n, n^(1) = [n, n], ...`` ending with the zero level.

    The final entry has ``sub = {0}`` and an empty quotient basis.
    """
    levels = []
    sub = n
    while sub.dim:
        nxt = derived_subalgebra(g, sub)
        if nxt == sub:
            raise ValueError("derived series does not reach {0}: the subalgebra is not solvable")
        levels.append(_flag_level(len(levels), sub, nxt))
        sub = nxt
    levels.append(_flag_level(len(levels), sub, sub))
    return tuple(levels)


def restricted_ad(g: LieAlgebra, s: Subspace, x: Sequence) -> Matrix:
    """Matrix of ``ad x`` on an ``ad x``-stable subspace ``s``, in the basis of ``s``."""
    cols = []
    for b in s.vectors:
        c = s.coordinates(bracket(g, x, b))
        if c is None:
            raise ValueError("subspace is not stable under ad x")
        cols.append(c)
    return Matrix.from_columns(cols, s.dim)


def killing_form(g: LieAlgebra, s: Subspace | None = None) -> Matrix:
    """Gram matrix of the Killing form.

    With ``s`` given, this is the Killing form of the subalgebra ``s`` itself
    (traces taken on ``s``), in the basis of ``s``.
    """
    if s is None:
        s = Subspace.full(g.dim)
    ads = [restricted_ad(g, s, b) for b in s.vectors]
    return Matrix.from_rows(
        [[(a @ b).trace() for b in ads] for a in ads], cols=s.dim
    )


def center(g: LieAlgebra, s: Subspace) -> Subspace:
    """Centre of the subalgebra ``s``."""
    if not s.dim:
        return s
    # column i: the brackets [s_i, s_j] for all j, stacked
    cols = [
        tuple(c for b in s.vectors for c in bracket(g, a, b)) for a in s.vectors
    ]
    ker = kernel(Matrix.from_columns(cols, s.dim * g.dim))
    return Subspace.span(
        (linear_combination(k, s.vectors, g.dim) for k in ker.vectors), g.dim
    )


@dataclass(frozen=True)
class LeviData:
    levi: Subspace
    nilradical: Subspace

    @classmethod
    def from_indices(cls, dim: int, levi: Iterable[int], nilradical: Iterable[int]) -> LeviData:
        return cls(
            Subspace.span((unit_vector(dim, i) for i in levi), dim),
            Subspace.span((unit_vector(dim, i) for i in nilradical), dim),
        )


@dataclass(frozen=True)
class LeviParts:
    """The pieces ``l = z(l) + [l, l]`` used by the checks and by element tests."""

    center: Subspace
    derived: Subspace
    _frame: Matrix = field(repr=False, compare=False)

    def central_component(self, x_l: Sequence) -> Vector:
        sol = solve(self._frame, x_l)
        if sol is None:
            raise ValueError("element is not in the Levi subalgebra")
        return linear_combination(sol[:self.center.dim], self.center.vectors, len(x_l))


def levi_parts(g: LieAlgebra, ld: LeviData) -> LeviParts:
    z = center(g, ld.levi)
    d = bracket_span(g, ld.levi, ld.levi)
    return LeviParts(z, d, Matrix.from_columns(z.vectors + d.vectors, g.dim))


def validate_levi(g: LieAlgebra, ld: LeviData) -> ValidationReport:
    """Check that ``ld`` is a Levi decomposition ``g = l + n``; stop at the first failure.

    ``l`` must be reductive in the sense of the algebraic group it stands for:
    ``l = z(l) + [l, l]`` directly, ``[l, l]`` semisimple (nondegenerate Killing
    form), and ``z(l)`` acting semisimply on ``g``. Checking a basis of ``z(l)``
    suffices since the operators ``ad z`` commute.
    """
    l, n = ld.levi, ld.nilradical
    if l.ambient_dim != g.dim or n.ambient_dim != g.dim:
        return ValidationReport(("levi: subspaces live in the wrong ambient dimension",))
    if (l + n).dim != l.dim + n.dim:
        return ValidationReport(("levi: levi and nilradical spans intersect nontrivially",))
    if l.dim + n.dim != g.dim:
        return ValidationReport(("levi: levi and nilradical do not span g",))
    if not is_subalgebra(g, l):
        return ValidationReport(("levi: not a subalgebra",))
    if not n.contains_subspace(bracket_span(g, Subspace.full(g.dim), n)):
        return ValidationReport(("nilradical: not an ideal",))
    if nilpotency_class(g, n) is None:
        return ValidationReport(("nilradical: not nilpotent",))
    parts = levi_parts(g, ld)
    if (parts.center + parts.derived).dim != l.dim or parts.center.dim + parts.derived.dim != l.dim:
        return ValidationReport(("levi: not reductive (l is not z(l) + [l,l])",))
    if parts.derived.dim and rank(killing_form(g, parts.derived)) != parts.derived.dim:
        return ValidationReport(("levi: Killing form of [l,l] is degenerate",))
    for z in parts.center.vectors:
        p = minimal_polynomial(ad_matrix(g, z))
        if not is_squarefree(p):
            return ValidationReport((
                f"levi: center acts non-semisimply (minimal polynomial {format_polynomial(p)})",
            ))
    return ValidationReport()


def decompose(ld: LeviData, x: Sequence) -> tuple[Vector, Vector]:
    """Split ``x = x_l + x_n`` along ``g = l + n``."""
    x = as_vector(x)
    l, n = ld.levi, ld.nilradical
    sol = solve(Matrix.from_columns(l.vectors + n.vectors, len(x)), x)
    if sol is None:
        raise ValueError("levi and nilradical do not span the ambient space")
    x_l = linear_combination(sol[:l.dim], l.vectors, len(x))
    x_n = linear_combination(sol[l.dim:], n.vectors, len(x))
    return x_l, x_n


def is_nilpotent_element(g: LieAlgebra, ld: LeviData, x: Sequence) -> bool:
    """``x`` generates a unipotent one-parameter subgroup.

    Requires ``ad x`` nilpotent and no component of ``x`` in the centre of ``l``;
    a central element of ``l`` spans a torus even when its adjoint action is zero.
    """
    x = g.element(x)
    if not is_nilpotent(ad_matrix(g, x)):
        return False
    x_l, _ = decompose(ld, x)
    return is_zero_vector(levi_parts(g, ld).central_component(x_l))


def induced_action(g: LieAlgebra, level: FlagLevel, x_l: Sequence) -> Matrix:
    """Matrix of ``ad x_l`` on ``n^(k) / n^(k+1)`` in the level's quotient basis."""
    cols = [level.split(bracket(g, x_l, r))[0] for r in level.quotient_basis]
    return Matrix.from_columns(cols, level.quotient_dim)


def project(level: FlagLevel, x_n: Sequence) -> Vector:
    """Coordinates of ``x_n`` modulo ``n^(k+1)``."""
    return level.split(x_n)[0]
