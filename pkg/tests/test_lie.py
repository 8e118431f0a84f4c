import random
from fractions import Fraction as F

import pytest

from homaffine.linalg import Matrix, Subspace, is_nilpotent, minimal_polynomial
from homaffine.lie import (
    LeviData,
    LieAlgebra,
    ad_matrix,
    bracket,
    decompose,
    derived_series,
    derived_subalgebra,
    induced_action,
    is_nilpotent_element,
    jacobiator,
    killing_form,
    project,
    validate_algebra,
    validate_levi,
)

from builders import (
    ALL_FAMILIES,
    elem,
    family,
    from_named,
    heisenberg,
    levi_by_names,
    rand_in,
    rand_nilpotent_algebra,
    rand_vector,
    sl2,
    sl2_v1,
)


def test_bracket_examples():
    g = sl2()
    assert bracket(g, elem(g, e=1), elem(g, f=1)) == elem(g, h=1)
    assert bracket(g, elem(g, e=1), elem(g, e=1)) == elem(g)
    assert bracket(g, elem(g, h=1), elem(g, e=3, f=1)) == elem(g, e=6, f=-2)
    with pytest.raises(ValueError):
        bracket(g, (1, 0), (0, 1, 0))


def test_ad_matrix_examples():
    g = sl2()
    assert ad_matrix(g, elem(g, h=1)) == Matrix.from_rows([[2, 0, 0], [0, 0, 0], [0, 0, -2]])
    assert ad_matrix(g, elem(g, e=1)) @ elem(g, f=1) == elem(g, h=1)
    assert ad_matrix(g, elem(g)).is_zero()


def test_validate_algebra_examples():
    assert validate_algebra(sl2()).ok
    corrupted = from_named(
        ["e", "h", "f"], {("e", "f"): {"h": 1}, ("h", "e"): {"f": 2}, ("h", "f"): {"f": -2}}
    )
    report = validate_algebra(corrupted)
    assert not report.ok and "jacobi" in report.first
    assert validate_algebra(LieAlgebra(["a", "b", "c"], {})).ok


def test_constructor_rejects_bad_keys():
    with pytest.raises(ValueError):
        LieAlgebra(["a", "b"], {(1, 0): [(0, 1)]})
    with pytest.raises(ValueError):
        LieAlgebra(["a", "b"], {(0, 1): [(5, 1)]})
    with pytest.raises(ValueError):
        LieAlgebra(["a", "a"], {})


def test_derived_subalgebra_examples():
    h = heisenberg()
    full = Subspace.full(3)
    assert derived_subalgebra(h, full) == Subspace.span([elem(h, z=1)], 3)
    ab = LieAlgebra(["a", "b"], {})
    assert derived_subalgebra(ab, Subspace.full(2)) == Subspace.zero(2)
    assert derived_subalgebra(sl2(), Subspace.full(3)) == Subspace.full(3)
    with pytest.raises(ValueError):
        derived_subalgebra(sl2(), Subspace.span([elem(sl2(), e=1), elem(sl2(), f=1)], 3))


def test_derived_series_examples():
    h = heisenberg()
    assert [lv.sub.dim for lv in derived_series(h, Subspace.full(3))] == [3, 1, 0]
    ab = LieAlgebra(["a", "b"], {})
    assert [lv.sub.dim for lv in derived_series(ab, Subspace.full(2))] == [2, 0]
    levels = derived_series(ab, Subspace.zero(2))
    assert len(levels) == 1 and levels[0].quotient_dim == 0
    with pytest.raises(ValueError):
        derived_series(sl2(), Subspace.full(3))


def _trace_product(a, b):
    n = len(a)
    return sum(a[i][k] * b[k][i] for i in range(n) for k in range(n))


def test_killing_form_sl2_against_hand_traces():
    ad_e = [[0, -2, 0], [0, 0, 1], [0, 0, 0]]
    ad_h = [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    ad_f = [[0, 0, 0], [-1, 0, 0], [0, 2, 0]]
    ads = [ad_e, ad_h, ad_f]
    oracle = [[_trace_product(a, b) for b in ads] for a in ads]
    assert oracle == [[0, 0, 4], [0, 8, 0], [4, 0, 0]]
    assert killing_form(sl2()) == Matrix.from_rows(oracle)


def test_killing_form_vanishes_on_nilpotent():
    assert killing_form(LieAlgebra(["a", "b"], {})).is_zero()
    assert killing_form(heisenberg()).is_zero()
    rng = random.Random(7)
    for _ in range(10):
        assert killing_form(rand_nilpotent_algebra(rng)).is_zero()


def test_validate_levi_sl2_v1_conditionwise():
    g = sl2_v1()
    ld = levi_by_names(g, ["e", "h", "f"], ["u0", "u1"])
    assert validate_levi(g, ld).ok
    # the same conditions by hand
    l, n = ld.levi, ld.nilradical
    assert (l + n).dim == 5
    assert all(bracket(g, a, b) in l for a in l.vectors for b in l.vectors)
    assert all(bracket(g, a, b) in n for a in Subspace.full(5).vectors for b in n.vectors)
    assert all(not any(bracket(g, a, b)) for a in n.vectors for b in n.vectors)
    assert killing_form(g, l) == Matrix.from_rows([[0, 0, 4], [0, 8, 0], [4, 0, 0]])


def test_validate_levi_failures():
    g = from_named(["t", "a", "b"], {("t", "a"): {"b": 1}})
    ld = levi_by_names(g, ["t"], ["a", "b"])
    report = validate_levi(g, ld)
    assert report.first.startswith("levi: center acts non-semisimply")
    assert minimal_polynomial(ad_matrix(g, elem(g, t=1))) == (0, 0, 1)

    h = heisenberg()
    assert validate_levi(h, levi_by_names(h, [], ["p", "q", "z"])).ok
    assert validate_levi(h, levi_by_names(h, [], ["p", "z"])).first == "levi: levi and nilradical do not span g"
    assert validate_levi(h, levi_by_names(h, ["z"], ["p", "q"])).first == "nilradical: not an ideal"
    assert validate_levi(h, levi_by_names(h, ["p", "q"], ["z"])).first == "levi: not a subalgebra"
    assert validate_levi(h, levi_by_names(h, ["p", "z"], ["z", "q"])).first.startswith("levi: levi and nilradical spans")

    s = sl2()
    assert validate_levi(s, levi_by_names(s, [], ["e", "h", "f"])).first == "nilradical: not nilpotent"

    # Borel of sl2 as Levi part: not reductive
    b = from_named(["h", "e", "u"], {("h", "e"): {"e": 2}})
    assert not validate_levi(b, levi_by_names(b, ["h", "e"], ["u"])).ok


def test_validate_levi_degenerate_killing():
    # l = span(h, e) with [h, e] = 2e: z(l) = 0, [l, l] = <e> so l != z + [l, l]
    b = from_named(["h", "e"], {("h", "e"): {"e": 2}})
    assert validate_levi(b, levi_by_names(b, ["h", "e"], [])).first.startswith("levi: not reductive")
    # l = z(l) + [l, l] with an abelian overlap
    g = from_named(["p", "q", "z", "w"], {("p", "q"): {"z": 1}})
    assert validate_levi(g, levi_by_names(g, ["p", "q", "z", "w"], [])).first.startswith("levi: not reductive")
    # perfect but not semisimple: sl2 acting on V1, everything declared Levi
    g = sl2_v1()
    report = validate_levi(g, levi_by_names(g, ["e", "h", "f", "u0", "u1"], []))
    assert report.first == "levi: Killing form of [l,l] is degenerate"


def test_is_nilpotent_element_examples():
    g = sl2()
    ld = levi_by_names(g, ["e", "h", "f"], [])
    assert is_nilpotent_element(g, ld, elem(g, e=1))
    assert not is_nilpotent_element(g, ld, elem(g, h=1))
    h = heisenberg()
    assert is_nilpotent_element(h, levi_by_names(h, [], ["p", "q", "z"]), elem(h, p=1))
    # central torus element with zero adjoint action is not unipotent
    ab = LieAlgebra(["t"], {})
    assert not is_nilpotent_element(ab, LeviData.from_indices(1, [0], []), (1,))
    assert is_nilpotent_element(ab, LeviData.from_indices(1, [], [0]), (1,))


def test_decompose_examples():
    g = sl2_v1()
    ld = levi_by_names(g, ["e", "h", "f"], ["u0", "u1"])
    assert decompose(ld, elem(g, e=1, u1=1)) == (elem(g, e=1), elem(g, u1=1))
    assert decompose(ld, elem(g, h=2)) == (elem(g, h=2), elem(g))
    assert decompose(ld, elem(g, u0=3)) == (elem(g), elem(g, u0=3))


def test_induced_action_and_project_examples():
    g = sl2_v1()
    ld = levi_by_names(g, ["e", "h", "f"], ["u0", "u1"])
    level = derived_series(g, ld.nilradical)[0]
    assert level.quotient_basis == (elem(g, u0=1), elem(g, u1=1))
    # e u1 = u0, e u0 = 0
    assert induced_action(g, level, elem(g, e=1)) == Matrix.from_rows([[0, 1], [0, 0]])
    assert induced_action(g, level, elem(g)).is_zero()
    ab = LieAlgebra(["a"], {})
    lv = derived_series(ab, Subspace.full(1))[0]
    assert induced_action(ab, lv, (0,)) == Matrix.zeros(1, 1)

    h = heisenberg()
    lv0 = derived_series(h, Subspace.full(3))[0]
    assert project(lv0, elem(h, z=1)) == (0, 0)
    assert project(lv0, elem(h, p=1)) == (1, 0)
    assert project(lv0, elem(h, p=1, z=1)) == (1, 0)
    lv1 = derived_series(h, Subspace.full(3))[1]
    with pytest.raises(ValueError):
        project(lv1, elem(h, p=1))


# -- properties over the families ---------------------------------------------

@pytest.mark.parametrize("fam", ALL_FAMILIES)
def test_family_is_valid(fam):
    g, ld = family(fam)
    assert validate_algebra(g).ok
    assert validate_levi(g, ld).ok


@pytest.mark.parametrize("fam", ALL_FAMILIES)
def test_jacobi_and_ad_homomorphism_random(fam):
    g, ld = family(fam)
    rng = random.Random(fam)
    for _ in range(200 if g.dim <= 6 else 40):
        x, y, z = (rand_vector(rng, g.dim) for _ in range(3))
        assert not any(jacobiator(g, x, y, z))
    for _ in range(20):
        x, y = rand_vector(rng, g.dim), rand_vector(rng, g.dim)
        ax, ay = ad_matrix(g, x), ad_matrix(g, y)
        assert ad_matrix(g, bracket(g, x, y)) == ax @ ay - ay @ ax


@pytest.mark.parametrize("fam", ALL_FAMILIES)
def test_decompose_roundtrip_and_series(fam):
    g, ld = family(fam)
    rng = random.Random(fam + "d")
    for _ in range(10):
        x = rand_vector(rng, g.dim)
        x_l, x_n = decompose(ld, x)
        assert tuple(a + b for a, b in zip(x_l, x_n)) == x
        assert decompose(ld, x_l) == (x_l, tuple(F(0) for _ in x))
    levels = derived_series(g, ld.nilradical)
    dims = [lv.sub.dim for lv in levels]
    assert len(levels) <= ld.nilradical.dim + 1
    assert all(a > b for a, b in zip(dims, dims[1:])) and dims[-1] == 0


@pytest.mark.parametrize("fam", ALL_FAMILIES)
def test_induced_action_nilpotent_for_nilpotent_levi_elements(fam):
    from builders import rand_levi_nilpotent

    g, ld = family(fam)
    rng = random.Random(fam + "i")
    for _ in range(5):
        x_l = rand_levi_nilpotent(rng, g, ld)
        if any(x_l):
            assert is_nilpotent_element(g, ld, x_l)
        for level in derived_series(g, ld.nilradical)[:-1]:
            assert is_nilpotent(induced_action(g, level, x_l))


def test_random_nilpotent_algebras_validate():
    rng = random.Random(3)
    for _ in range(20):
        g = rand_nilpotent_algebra(rng)
        assert g.dim <= 6
        assert validate_algebra(g).ok
        n = Subspace.full(g.dim)
        assert validate_levi(g, LeviData(Subspace.zero(g.dim), n)).ok
        y = rand_in(rng, n)
        assert is_nilpotent(ad_matrix(g, y))
