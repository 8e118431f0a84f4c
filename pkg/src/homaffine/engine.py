"""Decide whether ``G/H`` is affine for ``H = exp(t x)``, ``x`` nilpotent.

The procedure walks down the derived series ``n = n^(0) > n^(1) > ... > 0`` of
the nilradical. At level ``k`` the element is ``x = x_l + x_n`` with ``x_n`` in
``n^(k)``; ``A`` is the action of ``ad x_l`` on ``V_k = n^(k)/n^(k+1)`` and
``v`` the class of ``x_n`` there.

* ``v`` in ``Im A``: solve ``A y = v``, lift ``y`` into ``n^(k)`` and replace
  ``x`` by ``exp(ad y) x``. Its nilradical part now lies in ``n^(k+1)``.
* otherwise: a functional ``phi`` with ``phi A = 0`` and ``phi(v) = 1`` cuts
  out a hyperplane of ``V_k`` containing ``Im A`` and complementary to ``v``.
  The preimage of that hyperplane gives a section, and the quotient is affine.

If every level conjugates, ``x`` ends up in ``l``, so ``H`` sits inside a
reductive subgroup and the quotient is not affine.

Testing ``v`` against ``Im(ad x_l)`` instead of ``Im(exp(ad x_l) - 1)`` is
exact: for nilpotent ``N``, ``exp(N) - 1 = N U`` with ``U`` invertible and
commuting with ``N``, so both images coincide. This also holds for the group
component of ``exp(x)`` in ``V_k``, which differs from ``v`` by such a ``U``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .certify import Certificate, EmbeddingCert, SectionCert
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    dot,
    exp_nilpotent,
    image,
    is_zero_vector,
    left_kernel,
    solve,
)
from .lie import (
    FlagLevel,
    LeviData,
    LieAlgebra,
    ad_matrix,
    decompose,
    derived_series,
    induced_action,
    is_nilpotent_element,
    project,
    validate_algebra,
    validate_levi,
)


class InvalidInstanceError(ValueError):
    """The inputs do not satisfy the hypotheses of the decision procedure."""


class InvariantError(RuntimeError):
    """An internal invariant of the procedure was breached."""


class Kind(str, enum.Enum):
    AFFINE = "AFFINE"
    NOT_AFFINE = "NOT_AFFINE"


class Branch(str, enum.Enum):
    CONJUGATE = "CONJUGATE"
    SECTION = "SECTION"


@dataclass(frozen=True)
class LevelRecord:
    index: int
    action: Matrix
    image: Subspace
    vbar: Vector
    branch: Branch
    ybar: Vector | None = None
    y: Vector | None = None
    phi: Vector | None = None

    @property
    def quotient_dim(self) -> int:
        return len(self.vbar)


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    certificate: Certificate
    trace: tuple[LevelRecord, ...]
    final: Vector  # element after all conjugations performed

    @property
    def affine(self) -> bool:
        return self.kind is Kind.AFFINE


def conjugate_by_exp(g: LieAlgebra, y: Sequence, x: Sequence) -> Vector:
    """``exp(ad y) x``."""
    try:
        e = exp_nilpotent(ad_matrix(g, y))
    except ValueError:
        raise ValueError("conjugating element is not ad-nilpotent") from None
    return e @ g.element(x)


def build_section_functional(a: Matrix, vbar: Sequence) -> Vector:
    """``phi`` with ``phi a = 0`` and ``phi . vbar = 1``.

    Taken as the first vector of the canonical left-kernel basis of ``a`` that
    pairs nonzero with ``vbar``, rescaled.
    """
    vbar = tuple(vbar)
    if solve(a, vbar) is not None:
        raise ValueError("vector lies in the image; no separating functional exists")
    for w in left_kernel(a).vectors:
        s = dot(w, vbar)
        if s:
            return tuple(c / s for c in w)
    raise InvariantError("left kernel fails to separate a vector outside the image")


def step_level(
    g: LieAlgebra, ld: LeviData, level: FlagLevel, x: Sequence
) -> tuple[LevelRecord, Vector]:
    x_l, x_n = decompose(ld, x)
    if x_n not in level.sub:
        raise InvariantError(f"nilradical part is not in n^({level.index})")
    a = induced_action(g, level, x_l)
    vbar = project(level, x_n)
    im = image(a)
    ybar = solve(a, vbar)
    if ybar is None:
        phi = build_section_functional(a, vbar)
        return LevelRecord(level.index, a, im, vbar, Branch.SECTION, phi=phi), tuple(x)
    y = level.lift(ybar)
    x_new = conjugate_by_exp(g, y, x)
    x_l_new, x_n_new = decompose(ld, x_new)
    if x_l_new != x_l:
        raise InvariantError(f"Levi component changed at level {level.index}")
    if x_n_new not in level.next_sub:
        raise InvariantError(f"conjugation at level {level.index} did not descend")
    return LevelRecord(level.index, a, im, vbar, Branch.CONJUGATE, ybar=ybar, y=y), x_new


def check_instance(g: LieAlgebra, ld: LeviData, x: Sequence) -> Vector:
    x = tuple(x)
    if len(x) != g.dim:
        raise InvalidInstanceError(
            f"element has {len(x)} coordinates, algebra has dimension {g.dim}"
        )
    report = validate_algebra(g)
    if not report:
        raise InvalidInstanceError(report.first)
    report = validate_levi(g, ld)
    if not report:
        raise InvalidInstanceError(report.first)
    if is_zero_vector(x):
        raise InvalidInstanceError("element is zero: H must be one-dimensional")
    if not is_nilpotent_element(g, ld, x):
        raise InvalidInstanceError("element is not nilpotent: H must be unipotent")
    return g.element(x)


def decide(g: LieAlgebra, ld: LeviData, x: Sequence) -> Verdict:
    """Decide affinity of ``G/H`` and return the verdict with its certificate and trace."""
    x = check_instance(g, ld, x)
    levels = derived_series(g, ld.nilradical)[:-1]
    trace: list[LevelRecord] = []
    conjugators: list[Vector] = []
    for level in levels:
        record, x = step_level(g, ld, level, x)
        trace.append(record)
        if record.branch is Branch.SECTION:
            cert = SectionCert(level.index, tuple(conjugators), record.phi)
            return Verdict(Kind.AFFINE, cert, tuple(trace), x)
        conjugators.append(record.y)
    if x not in ld.levi:
        raise InvariantError("derived series exhausted but the element is not in l")
    return Verdict(Kind.NOT_AFFINE, EmbeddingCert(tuple(conjugators), x), tuple(trace), x)
