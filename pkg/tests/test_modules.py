from __future__ import annotations

import pytest

from coverforge.core.errors import ContextError, ShapeError
from coverforge.core.modules import (
    FreeModuleElement,
    lift,
    module_groebner,
    module_normal_form,
    syzygy_matrix,
    syzygy_module,
)
from coverforge.core.polyring import PolyMatrix, Ring


@pytest.fixture
def plane() -> Ring:
    return Ring(("z1", "z2"))


def test_koszul_syzygy(xy):
    x, y = xy.gens()
    syz = syzygy_module([x, y])
    assert len(syz) == 1
    assert syz[0].dot([x, y]).is_zero
    assert all(c.degree() == 1 for c in syz[0])


def test_square_of_maximal_ideal_has_two_linear_syzygies(plane):
    z1, z2 = plane.gens()
    q = [z1 ** 2, z1 * z2, z2 ** 2]
    syz = syzygy_module(q)
    assert len(syz) == 2
    for s in syz:
        assert s.dot(q).is_zero
        assert s.is_homogeneous()
        assert s.degree() == 1
    m = syzygy_matrix(q, syz)
    assert m.shape == (3, 2)
    assert (PolyMatrix(plane, 1, 3, q) * m).is_zero()


def test_zero_generator_gives_unit_syzygy(xy):
    x = xy.gen("x")
    syz = syzygy_module([x, xy.zero])
    assert FreeModuleElement.unit(xy, 2, 1) in syz


def test_syzygies_of_vectors(xy):
    x, y = xy.gens()
    a = FreeModuleElement.of([x, y])
    b = FreeModuleElement.of([y, x])
    syz = syzygy_module([a, b, a.scale(x)])
    for s in syz:
        assert s.combine([a, b, a.scale(x)]).is_zero
    assert any(not s[2].is_zero for s in syz)


def test_module_normal_form_membership(xy):
    x, y = xy.gens()
    v = FreeModuleElement.of([x, y])
    basis = module_groebner([v])
    assert module_normal_form(v.scale(x + 1), basis).is_zero
    assert not module_normal_form(FreeModuleElement.of([x, xy.zero]), basis).is_zero


def test_lift_returns_cofactors(xy):
    x, y = xy.gens()
    f = x * y + y ** 2 + x
    cofactors = lift(f, [x, y])
    assert cofactors is not None
    assert cofactors[0] * x + cofactors[1] * y == f
    assert lift(xy.one, [x, y]) is None


def test_element_shape_checks(xy):
    a = FreeModuleElement.of([xy.gen("x")])
    b = FreeModuleElement.of([xy.gen("x"), xy.gen("y")])
    with pytest.raises(ShapeError):
        a + b
    with pytest.raises(ShapeError):
        FreeModuleElement.of([])
    other = Ring(("u",))
    with pytest.raises(ContextError):
        FreeModuleElement.of([xy.gen("x"), other.gen("u")])
