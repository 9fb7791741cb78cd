from fractions import Fraction

import pytest

from stablesnc.geometry import (
    Boundary,
    BoundaryComponent,
    Component,
    Divisor,
    DivisorPart,
    Triple,
)
from stablesnc.ideals import Ideal
from stablesnc.obstruction import (
    boundary_var_indices,
    j_cleaning,
    obstruction_ideal,
    restricted_divisor,
    vJ_components,
)
from stablesnc.poly import PolyRing


@pytest.fixture
def jex():
    ring = PolyRing(["x1", "x2", "y", "z", "w"])
    comps = (
        Component("X1", Ideal(ring, ["x1"])),
        Component("X2", Ideal(ring, ["x2"])),
    )
    parts = (
        DivisorPart(Ideal(ring, ["x1", "y"]), Fraction(1), "X1"),
        DivisorPart(Ideal(ring, ["x2", "x1 + y*z*w"]), Fraction(1), "X2"),
    )
    return Triple(ring, comps, Divisor(parts), Boundary(()))


def test_restricted_divisor(jex):
    ring = jex.ring
    comps = jex.components
    parts = jex.divisor.parts
    assert restricted_divisor(comps, parts, 0) == Ideal(ring, ["x1", "y"])
    # a component hosting nothing restricts to the empty divisor
    assert restricted_divisor(comps, parts[:1], 1).is_unit()
    two = parts + (DivisorPart(Ideal(ring, ["x1", "z"]), Fraction(2), "X1"),)
    assert restricted_divisor(comps, two, 0) == Ideal(ring, ["x1", "y"]).intersect(
        Ideal(ring, ["x1", "z"])
    )


def test_obstruction_ideal_frozen(jex):
    ring = jex.ring
    J = obstruction_ideal(jex.components, jex.divisor.parts)
    assert J == Ideal(ring, ["x1", "x2", "z*w"])
    # one component never obstructs
    assert obstruction_ideal(jex.components[:1], jex.divisor.parts[:1]).is_unit()


def test_obstruction_ideal_matching_parts():
    # equal hyperplane sections glue: J is trivial
    ring = PolyRing(["x", "y", "z"])
    comps = (
        Component("X1", Ideal(ring, ["x"])),
        Component("X2", Ideal(ring, ["y"])),
    )
    parts = (
        DivisorPart(Ideal(ring, ["x", "z"]), Fraction(1), "X1"),
        DivisorPart(Ideal(ring, ["y", "z"]), Fraction(1), "X2"),
    )
    assert obstruction_ideal(comps, parts).is_unit()


def test_vj_trivial_and_center(jex):
    ring = jex.ring
    assert vJ_components(Ideal(ring, ["1"])).status == "trivial"
    rep = vJ_components(Ideal(ring, ["x1", "x2", "z*w"]))
    assert rep.status == "center"
    assert rep.center == ("x1", "x2", "z", "w")
    assert rep.step == "obstruction-blowup"
    # boundary variables are left out of the center
    rep = vJ_components(Ideal(ring, ["x1", "x2", "z*w"]), (3,))
    assert rep.center == ("x1", "x2", "w")
    assert rep.step == "obstruction-blowup"


def test_vj_cleaning_routes(jex):
    ring = jex.ring
    # residual monomial entirely on boundary variables: peel the oldest
    rep = vJ_components(Ideal(ring, ["x1", "x2", "z*w"]), (3, 4))
    assert rep.status == "center"
    assert rep.center == ("x1", "x2", "z")
    assert rep.step == "boundary-cleaning"
    rep = vJ_components(Ideal(ring, ["x1", "x2", "z*w"]), (4, 3))
    assert rep.center == ("x1", "x2", "w")
    assert rep.step == "boundary-cleaning"
    # all-linear ideal touching a boundary variable cleans as well
    rep = vJ_components(Ideal(ring, ["x1", "x2", "z"]), (3, 4))
    assert rep.center == ("x1", "x2", "z")
    assert rep.step == "boundary-cleaning"


def test_vj_blocked_shapes(jex):
    ring = jex.ring
    rep = vJ_components(Ideal(ring, ["x1 + y^2"]))
    assert rep.status == "blocked"
    assert "non-monomial" in rep.reasons[0]
    rep = vJ_components(Ideal(ring, ["x1", "y*z", "y*w"]))
    assert rep.status == "blocked"
    assert "several residual monomials" in rep.reasons[0]
    rep = vJ_components(Ideal(ring, ["x1"]))
    assert rep.status == "blocked"
    assert "codimension < 2" in rep.reasons[0]


def test_boundary_var_indices(jex):
    ring = jex.ring
    boundary = Boundary(
        (
            BoundaryComponent("E1", Ideal(ring, ["w"])),
            BoundaryComponent("E2", Ideal(ring, ["z"])),
        )
    )
    t = Triple(ring, jex.components, jex.divisor, boundary)
    assert boundary_var_indices(t) == (4, 3)
    bad = Boundary((BoundaryComponent("E1", Ideal(ring, ["z + w"])),))
    with pytest.raises(ValueError, match="coordinate hyperplane"):
        boundary_var_indices(Triple(ring, jex.components, jex.divisor, bad))


def test_j_cleaning_worked_chain(jex):
    ring = jex.ring
    root, ok = j_cleaning(jex)
    assert ok

    # first center: the obstruction monomial z*w joins the linear part
    assert root.center == ("x1", "x2", "z", "w")
    assert root.step == "obstruction-blowup"

    # every leaf ends with a trivial obstruction ideal
    for leaf in root.leaves():
        t = leaf.triple
        assert obstruction_ideal(t.components, t.divisor.parts).is_unit()

    by_path = {}

    def walk(node):
        by_path[node.path] = node
        for child in node.children:
            walk(child)

    walk(root)

    # the z-chart stays obstructed: w survives in the residual
    zn = by_path["z"]
    assert zn.center == ("x1", "x2", "w")
    assert zn.step == "obstruction-blowup"
    assert [p.ideal for p in zn.triple.divisor.parts] == [
        Ideal(ring, ["x1", "y"]),
        Ideal(ring, ["x2", "x1 + y*z*w"]),
    ]

    # after the second blow-up only boundary variables obstruct
    zw = by_path["z/w"]
    assert zw.center == ("x1", "x2", "z")
    assert zw.step == "boundary-cleaning"
    assert [p.ideal for p in zw.triple.divisor.parts] == [
        Ideal(ring, ["x1", "y"]),
        Ideal(ring, ["x2", "x1 + y*z"]),
    ]
    assert [b.name for b in zw.triple.boundary.comps] == ["E1", "E2"]

    # the final chart carries matching hyperplane sections
    zwz = by_path["z/w/z"]
    assert [p.ideal for p in zwz.triple.divisor.parts] == [
        Ideal(ring, ["x1", "y"]),
        Ideal(ring, ["x2", "x1 + y"]),
    ]
    assert not zwz.children


def test_j_cleaning_budget(jex):
    root, ok = j_cleaning(jex, budget=1)
    assert not ok
    assert len(root.leaves()) == 4


def test_j_cleaning_needs_arrangement(jex):
    loose = Triple(jex.ring, jex.components, jex.divisor, jex.boundary, "general")
    with pytest.raises(ValueError, match="arrangement"):
        j_cleaning(loose)
