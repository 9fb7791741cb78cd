"""Colon-ideal obstruction to matching divisor parts across components.

For each ordered pair of distinct components i, j the ideal

    (D_i + X_j) : (D_j + X_i)

measures how far the divisor on component i is from being the trace of
the divisor on component j; their intersection J is trivial at a point
exactly when the parts glue to common hyperplane sections there.  On
states reached from coordinate arrangements J takes the shape linear
forms + one exceptional monomial, which hands the next blow-up center
to the resolution driver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ideals import Ideal


def restricted_divisor(components, parts, index):
    """Ideal of the divisor restricted to one component.

    Intersection of the ideals of the parts hosted there; the unit
    ideal when the component hosts no part (an empty divisor has empty
    support).
    """
    comp = components[index]
    mine = [p.ideal for p in parts if p.host == comp.name]
    if not mine:
        return Ideal(comp.ideal.ring, [comp.ideal.ring.one()])
    out = mine[0]
    for ideal in mine[1:]:
        out = out.intersect(ideal)
    return out


def obstruction_ideal(components, parts):
    """Intersection of the pairwise colon obstructions."""
    if not components:
        raise ValueError("empty component list")
    ring = components[0].ideal.ring
    if len(components) == 1:
        return Ideal(ring, [ring.one()])
    restricted = [
        restricted_divisor(components, parts, i)
        for i in range(len(components))
    ]
    J = None
    for i in range(len(components)):
        for j in range(len(components)):
            if i == j:
                continue
            num = restricted[i] + components[j].ideal
            den = restricted[j] + components[i].ideal
            term = num.quotient(den)
            J = term if J is None else J.intersect(term)
    return J


@dataclass(frozen=True)
class ObstructionReport:
    """Next action derived from the shape of the obstruction ideal."""

    status: str  # "trivial" | "center" | "blocked"
    center: tuple = ()  # variable names to blow up
    step: str = ""  # "obstruction-blowup" | "boundary-cleaning"
    reasons: tuple = ()


def vJ_components(J, boundary_vars=frozenset()):
    """Blow-up center from an obstruction ideal of supported shape.

    The supported shape is coordinate linear generators plus at most
    one extra monomial.  Monomial variables outside the boundary join
    the linear ones in the center; a residual living entirely on
    boundary variables instead contributes its oldest boundary
    variable, one per pass (cleaning).
    """
    ring = J.ring
    if J.is_unit():
        return ObstructionReport("trivial")
    linear = []
    monos = []
    bad = []
    for g in J.groebner():
        e = g.lead_exp()
        if g.is_term() and sum(e) == 1:
            linear.append(e.index(1))
        elif g.is_term():
            monos.append(e)
        else:
            bad.append(g)
    if bad:
        return ObstructionReport(
            "blocked",
            reasons=(
                "obstruction ideal has a non-monomial generator: "
                + ", ".join(str(g) for g in bad),
            ),
        )
    if len(monos) > 1:
        return ObstructionReport(
            "blocked",
            reasons=("obstruction ideal has several residual monomials",),
        )
    center = set(linear)
    step = "obstruction-blowup"
    if monos:
        mvars = [i for i, a in enumerate(monos[0]) if a > 0]
        fresh = [i for i in mvars if i not in boundary_vars]
        if fresh:
            center.update(fresh)
        else:
            # all residual variables are exceptional: peel the oldest
            center.add(min(mvars, key=lambda i: _boundary_age(boundary_vars, i)))
            step = "boundary-cleaning"
    elif any(i in boundary_vars for i in linear):
        step = "boundary-cleaning"
    if len(center) < 2:
        return ObstructionReport(
            "blocked",
            reasons=("derived center has codimension < 2",),
        )
    names = tuple(ring.names[i] for i in sorted(center))
    return ObstructionReport("center", names, step)


def _boundary_age(boundary_vars, index):
    """Position of the variable in the given boundary order."""
    order = list(boundary_vars)
    return order.index(index) if index in order else len(order)


def boundary_var_indices(triple):
    """Variable index of each boundary hypersurface, in boundary order."""
    out = []
    for b in triple.boundary.comps:
        gb = b.ideal.groebner()
        if len(gb) != 1 or not gb[0].is_term() or sum(gb[0].lead_exp()) != 1:
            raise ValueError(
                f"boundary {b.name} is not a coordinate hyperplane"
            )
        out.append(gb[0].lead_exp().index(1))
    return tuple(out)


def j_cleaning(triple, budget=40):
    """Blow up obstruction centers chartwise until J is trivial.

    Returns (tree, ok): the blow-up tree and whether every leaf ended
    with a trivial obstruction ideal within the step budget.  Leaves
    with fewer than two surviving components are trivially clean.
    """
    from .blowup import ChartNode

    if triple.mode != "arrangement":
        raise ValueError("obstruction resolution needs arrangement mode")
    root = ChartNode(triple)
    steps = 0
    while True:
        work = None
        for leaf in root.leaves():
            t = leaf.triple
            if not t.components:
                continue
            J = obstruction_ideal(t.components, t.divisor.parts)
            if J.is_unit():
                continue
            work = (leaf, J)
            break
        if work is None:
            return root, True
        if steps >= budget:
            return root, False
        leaf, J = work
        report = vJ_components(J, boundary_var_indices(leaf.triple))
        if report.status != "center":
            leaf.records = leaf.records + report.reasons
            return root, False
        leaf.expand(report.center, report.step)
        steps += 1
