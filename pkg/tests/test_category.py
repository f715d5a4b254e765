"""Category and functor checks on the standard fixtures."""

from tannaka.category import check_category, check_functor, nat_space
from tannaka.fixtures import (
    biproduct_category,
    c2_graded_lines,
    comatrix_functor,
    one_object_category,
)
from tannaka.linalg import Matrix
from tannaka.modules import BAlgebra, BModule
from tannaka.rings import GF
from tannaka.category import LinearCategory, LinearFunctor


def test_one_object_category_passes():
    assert check_category(one_object_category(GF(5))).ok


def test_broken_identity_reported():
    ring = GF(5)
    cat = one_object_category(ring)
    cat.ids["*"] = Matrix.row_vector(ring, [0])
    rep = check_category(cat)
    assert not rep.ok
    assert any("unit" in f.check for f in rep.failures)


def test_c2_graded_category_passes():
    fx = c2_graded_lines(GF(3))
    assert check_category(fx.category).ok
    assert check_functor(fx.functor).ok


def test_functor_killing_generator_fails():
    ring = GF(3)
    fx = c2_graded_lines(ring)
    w = fx.functor
    w.mor[("+", "+")] = (Matrix.zeros(ring, 1, 1),)
    rep = check_functor(w)
    assert not rep.ok


def test_empty_category_passes_vacuously():
    ring = GF(2)
    alg = BAlgebra.trivial(ring)
    cat = LinearCategory(ring, (), {}, {}, {})
    w = LinearFunctor(cat, alg, {}, {})
    assert check_category(cat).ok
    assert check_functor(w).ok


def test_biproduct_category_passes():
    cat, w = biproduct_category(GF(2))
    assert check_category(cat).ok
    assert check_functor(w).ok


def test_nat_space_c2_identity():
    # one scalar per object: rank 2 over F_2
    fx = c2_graded_lines(GF(2))
    space = nat_space(fx.functor, fx.functor)
    assert space.rank() == 2
    ident = {A: Matrix.identity(GF(2), 1) for A in fx.category.objects}
    assert space.contains(ident)


def test_nat_space_one_object_rank4():
    w = comatrix_functor(GF(5), 2)
    space = nat_space(w, w)
    assert space.rank() == 4


def test_nat_space_to_zero():
    ring = GF(3)
    fx = c2_graded_lines(ring)
    alg = fx.alg
    zero_obj = {A: BModule.free(alg, 0) for A in fx.category.objects}
    zero_mor = {}
    for (A, B), mats in fx.functor.mor.items():
        zero_mor[(A, B)] = tuple(Matrix.zeros(ring, 0, 0) for _ in mats)
    Fz = LinearFunctor(fx.category, alg, zero_obj, zero_mor)
    space = nat_space(fx.functor, Fz)
    assert space.rank() == 0
