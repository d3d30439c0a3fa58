from __future__ import annotations

import pytest

from coverforge.core.errors import DegreeError, UnsupportedError
from coverforge.core.groebner import Ideal
from coverforge.core.output import betti_frame
from coverforge.core.polyring import Ring
from coverforge.core.resolution import betti_numbers, free_resolution, gorenstein_betti


def test_koszul_complex(xyz):
    res = free_resolution(Ideal(xyz, list(xyz.gens())))
    assert res.betti == [1, 3, 3, 1]
    assert res.twists == [[0], [1, 1, 1], [2, 2, 2], [3]]
    assert res.is_complex()
    assert res.is_minimal()
    assert not res.truncated


def test_square_of_maximal_ideal_in_two_variables():
    ring = Ring(("z0", "z1", "z2"))
    z0, z1, z2 = ring.gens()
    assert betti_numbers([z1 ** 2, z1 * z2, z2 ** 2]) == [1, 3, 2]


def test_redundant_generators_are_pruned(xy):
    x, y = xy.gens()
    res = free_resolution(Ideal(xy, [x ** 2, x * y, x ** 2 + x * y, y ** 3]))
    assert res.betti[1] == 3
    assert res.is_minimal()
    assert sum((-1) ** i * b for i, b in enumerate(res.betti)) == 0


def test_complete_intersection_of_two_quadrics(xyz):
    res = free_resolution([xyz.parse("x^2 - y*z"), xyz.parse("y^2 - x*z")])
    assert res.betti == gorenstein_betti(4) == [1, 2, 1]
    assert res.graded_betti() == {(0, 0): 1, (1, 2): 2, (2, 4): 1}


def test_truncation_is_reported(xyz):
    res = free_resolution(Ideal(xyz, list(xyz.gens())), max_steps=1)
    assert res.truncated
    assert res.betti == [1, 3]


def test_preconditions(xy):
    with pytest.raises(UnsupportedError):
        free_resolution([xy.parse("x + 1")])
    with pytest.raises(DegreeError):
        free_resolution([xy.gen("x")], max_steps=0)
    with pytest.raises(UnsupportedError):
        free_resolution([])


def test_zero_ideal_resolves_to_the_ring(xy):
    res = free_resolution(Ideal(xy))
    assert res.betti == [1]


@pytest.mark.parametrize(
    "d, expected",
    [(4, [1, 2, 1]), (5, [1, 5, 5, 1]), (6, [1, 9, 16, 9, 1])],
)
def test_gorenstein_betti(d, expected):
    assert gorenstein_betti(d) == expected


def test_gorenstein_betti_needs_degree_four():
    with pytest.raises(DegreeError):
        gorenstein_betti(3)


def test_betti_frame_totals(xyz):
    res = free_resolution(Ideal(xyz, list(xyz.gens())))
    frame = betti_frame(res)
    assert frame.loc["total"].tolist() == [1, 3, 3, 1]
    assert list(frame.index) == ["0", "total"]


@pytest.mark.slow
def test_spinor_variety_resolution():
    from coverforge.catalog.spinor import ogr_generators

    res = free_resolution(list(ogr_generators().values()))
    assert res.betti == [1, 10, 16, 16, 10, 1]
