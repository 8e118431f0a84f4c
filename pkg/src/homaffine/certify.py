"""Certificates for both verdicts, their verifiers, and a brute-force oracle.

The verifiers trust nothing but ``(g, ld, x)`` and the certificate. They use
only :mod:`homaffine.linalg` and :mod:`homaffine.lie`, never the decision
engine, and recompute every conjugation from scratch.

Certificates are canonical: each conjugator ``y_k`` must be the lift of the
solution of ``A_k y = v_k`` with free variables zero, and the section
functional must be the normalised first left-kernel basis vector that pairs
nonzero with ``v_k``. A valid certificate is therefore unique, so any edited
field is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    Matrix,
    Vector,
    as_vector,
    dot,
    exp_nilpotent,
    is_nilpotent,
    is_zero_vector,
    kernel,
    left_kernel,
    linear_combination,
    rref,
    solve,
    vec_add,
)
from .lie import (
    FlagLevel,
    LeviData,
    LieAlgebra,
    ad_matrix,
    bracket,
    bracket_span,
    decompose,
    derived_series,
    induced_action,
    is_nilpotent_element,
    lower_central_series,
    project,
    validate_algebra,
    validate_levi,
)


@dataclass(frozen=True)
class EmbeddingCert:
    """``exp(ad y_m) ... exp(ad y_1) x = final``, with ``final`` in ``l``."""

    conjugators: tuple[Vector, ...]
    final: Vector


@dataclass(frozen=True)
class SectionCert:
    """After the conjugators for levels ``0 .. level-1``, ``phi`` separates
    ``v_level`` from the image of ``A_level``."""

    level: int
    conjugators: tuple[Vector, ...]
    phi: Vector


Certificate = EmbeddingCert | SectionCert


@dataclass(frozen=True)
class Check:
    ok: bool
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(msg: str) -> Check:
    return Check(False, msg)


def _check_inputs(g: LieAlgebra, ld: LeviData, x: Sequence) -> str | None:
    if len(x) != g.dim:
        return f"element has {len(x)} coordinates, algebra has dimension {g.dim}"
    report = validate_algebra(g)
    if not report:
        return f"invalid algebra: {report.first}"
    report = validate_levi(g, ld)
    if not report:
        return f"invalid Levi data: {report.first}"
    if is_zero_vector(x):
        return "element is zero"
    if not is_nilpotent_element(g, ld, x):
        return "element is not nilpotent"
    return None


def _replay(
    g: LieAlgebra, ld: LeviData, levels: Sequence[FlagLevel], x: Vector, conjugators: Sequence[Vector]
) -> tuple[Vector | None, str]:
    """Apply the conjugators level by level, checking depth and canonical form."""
    x_l0, _ = decompose(ld, x)
    for k, y in enumerate(conjugators):
        level = levels[k]
        if len(y) != g.dim:
            return None, f"conjugator {k} has {len(y)} coordinates, expected {g.dim}"
        x_l, x_n = decompose(ld, x)
        if x_l != x_l0:
            return None, f"Levi component changed before level {k}"
        try:
            vbar = project(level, x_n)
        except ValueError:
            return None, f"element not in level {k} of the derived series"
        try:
            ybar, rest = level.split(y)
        except ValueError:
            return None, f"conjugator {k} does not lie in n^({k})"
        if not is_zero_vector(rest):
            return None, f"conjugator {k} has a component in n^({k + 1})"
        a = induced_action(g, level, x_l)
        if a @ ybar != vbar:
            return None, f"conjugator {k} does not solve the level-{k} system"
        _, _, pivots = rref(a)
        if any(c != 0 for j, c in enumerate(ybar) if j not in pivots):
            return None, f"conjugator {k} is not the canonical solution (free variables nonzero)"
        ad = ad_matrix(g, y)
        if not is_nilpotent(ad):
            return None, f"conjugator {k} is not ad-nilpotent"
        x = exp_nilpotent(ad) @ x
        _, x_n = decompose(ld, x)
        if x_n not in level.next_sub:
            return None, f"after conjugator {k} the nilradical part is not in n^({k + 1})"
    return x, ""


def verify_embedding(g: LieAlgebra, ld: LeviData, x: Sequence, cert: EmbeddingCert) -> Check:
    """Check that ``cert`` conjugates ``x`` into the Levi subalgebra."""
    x = as_vector(x)
    problem = _check_inputs(g, ld, x)
    if problem:
        return _fail(problem)
    levels = derived_series(g, ld.nilradical)[:-1]
    if len(cert.conjugators) != len(levels):
        return _fail(f"expected {len(levels)} conjugators, got {len(cert.conjugators)}")
    final, why = _replay(g, ld, levels, x, cert.conjugators)
    if final is None:
        return _fail(why)
    if as_vector(cert.final) != final:
        return _fail("recomputed final element differs from the certificate")
    if final not in ld.levi:
        return _fail("final element has a nilradical component")
    if is_zero_vector(final):
        return _fail("final element is zero")
    if not is_nilpotent_element(g, ld, final):
        return _fail("final element is not nilpotent")
    return Check(True, f"embedding verified through {len(levels)} level(s)")


def canonical_functional(a: Matrix, vbar: Vector) -> Vector | None:
    """Normalised first left-kernel basis vector of ``a`` pairing nonzero with ``vbar``."""
    for w in left_kernel(a).vectors:
        s = dot(w, vbar)
        if s != 0:
            return tuple(c / s for c in w)
    return None


def verify_section(g: LieAlgebra, ld: LeviData, x: Sequence, cert: SectionCert) -> Check:
    """Check that ``cert.phi`` kills ``Im A_k`` and is 1 on ``v_k`` after conjugation."""
    x = as_vector(x)
    problem = _check_inputs(g, ld, x)
    if problem:
        return _fail(problem)
    levels = derived_series(g, ld.nilradical)[:-1]
    k = cert.level
    if not 0 <= k < len(levels):
        return _fail(f"level {k} out of range: the derived series has {len(levels)} level(s)")
    if len(cert.conjugators) != k:
        return _fail(f"section at level {k} needs {k} conjugators, got {len(cert.conjugators)}")
    x, why = _replay(g, ld, levels, x, cert.conjugators)
    if x is None:
        return _fail(why)
    level = levels[k]
    x_l, x_n = decompose(ld, x)
    try:
        vbar = project(level, x_n)
    except ValueError:
        return _fail(f"element not in level {k} of the derived series")
    a = induced_action(g, level, x_l)
    phi = as_vector(cert.phi)
    if len(phi) != level.quotient_dim:
        return _fail(f"phi has length {len(phi)}, quotient at level {k} has dimension {level.quotient_dim}")
    if not (Matrix.from_rows([phi], cols=len(phi)) @ a).is_zero():
        return _fail("phi does not vanish on the image of the action")
    if dot(phi, vbar) == 0:
        return _fail("phi vanishes on the projected element")
    if dot(phi, vbar) != 1:
        return _fail("phi is not normalised to 1 on the projected element")
    if phi != canonical_functional(a, vbar):
        return _fail("phi is not the canonical section functional")
    return Check(True, f"section verified at level {k}")


def verify(g: LieAlgebra, ld: LeviData, x: Sequence, cert: Certificate) -> Check:
    if isinstance(cert, EmbeddingCert):
        return verify_embedding(g, ld, x, cert)
    return verify_section(g, ld, x, cert)


# -- class <= 2 oracle --------------------------------------------------------

ORACLE_MAX_DIM = 8


def _exp_ad_class2(g: LieAlgebra, y: Vector, x: Vector) -> Vector:
    """``exp(ad y) x`` for ``y`` in a class-2 nilradical, by its closed cubic-free form.

    With ``x = x_l + x_n``, only ``x + [y, x] + 1/2 [y, [y, x_l]]`` survives.
    """
    yx = bracket(g, y, x)
    yyx = bracket(g, y, yx)
    return tuple(a + b + c / 2 for a, b, c in zip(x, yx, yyx))


def oracle_decide_class2(g: LieAlgebra, ld: LeviData, x: Sequence) -> str:
    """Decide by elimination whether some ``exp(ad y)``, ``y`` in ``n``, moves ``x`` into ``l``.

    Writes ``y = y1 + y2`` with ``y1`` in a complement ``W`` of ``[n, n]`` and
    ``y2`` in ``[n, n]``. Modulo ``[n, n]`` the condition is linear in ``y1``.
    On the resulting affine family of ``y1`` the ``[n, n]``-component of
    ``exp(ad y) x`` is affine in the family parameters and in ``y2`` (class 2
    kills every quadratic cross term), so a second linear system settles it.
    Unlike the engine, this searches the whole solution family rather than
    one canonical point.

    Returns ``"NOT_AFFINE"`` if such ``y`` exists and ``"AFFINE"`` otherwise.
    """
    x = g.element(x)
    n = ld.nilradical
    if g.dim > ORACLE_MAX_DIM:
        raise ValueError(f"oracle budget exceeded: dim {g.dim} > {ORACLE_MAX_DIM}")
    lcs = lower_central_series(g, n)
    if lcs[-1].dim or len(lcs) - 1 > 2:
        raise ValueError("oracle requires a nilradical of nilpotency class <= 2")
    d = g.dim
    x_l, x_n = decompose(ld, x)
    nn = bracket_span(g, n, n)

    # complement of [n, n] in n: basis vectors of n with pivots outside [n, n]
    inner = set(nn.pivots)
    w_basis = [v for v, p in zip(n.vectors, n.pivots) if p not in inner]
    frame = Matrix.from_columns(w_basis + list(nn.vectors), d)

    def split(v: Vector) -> tuple[Vector, Vector]:
        sol = solve(frame, v)
        if sol is None:
            raise ValueError("vector outside the nilradical")
        return sol[:len(w_basis)], sol[len(w_basis):]

    def residual(y: Vector) -> Vector:
        """Nilradical part of exp(ad y) x; it must vanish."""
        return decompose(ld, _exp_ad_class2(g, y, x))[1]

    # Stage 1: W-coordinates of residual are affine in y1 (y2 does not enter).
    w = len(w_basis)
    base_w = split(residual(tuple([Fraction(0)] * d)))[0]
    cols1 = []
    for i in range(w):
        r = split(residual(w_basis[i]))[0]
        cols1.append(tuple(a - b for a, b in zip(r, base_w)))
    m1 = Matrix.from_columns(cols1, w)
    s0 = solve(m1, tuple(-c for c in base_w))
    if s0 is None:
        return "AFFINE"
    family = kernel(m1).vectors
    y_star = linear_combination(s0, w_basis, d)

    # Stage 2: unknowns (t, y2); the [n, n]-coordinates of residual are affine in them.
    directions = [linear_combination(f, w_basis, d) for f in family] + list(nn.vectors)

    def inner_coords(y: Vector) -> Vector:
        wpart, zpart = split(residual(y))
        if not is_zero_vector(wpart):
            raise AssertionError("stage-one condition lost along the solution family")
        return zpart

    base_z = inner_coords(y_star)
    cols2 = [
        tuple(a - b for a, b in zip(inner_coords(vec_add(y_star, u)), base_z))
        for u in directions
    ]
    # guard the affine claim at a second point
    probe = vec_add(y_star, linear_combination([Fraction(1)] * len(directions), directions, d)) \
        if directions else y_star
    predicted = tuple(b + sum((c[i] for c in cols2), Fraction(0)) for i, b in enumerate(base_z))
    if inner_coords(probe) != predicted:
        raise AssertionError("class-2 residual is not affine along the solution family")

    m2 = Matrix.from_columns(cols2, len(base_z))
    sol = solve(m2, tuple(-c for c in base_z))
    if sol is None:
        return "AFFINE"
    y = vec_add(y_star, linear_combination(sol, directions, d))
    if not is_zero_vector(residual(y)):
        raise AssertionError("oracle solution does not conjugate x into l")
    return "NOT_AFFINE"
