"""Blow-ups of coordinate-subspace centers, chart by chart.

A center is a subset of the frame variables.  Each chart keeps the
same variable names: in the chart of pivot p the substitution sends
x_i to x_p * x_i for the other center variables, the exceptional
divisor is V(x_p), and strict transforms divide the exceptional out
to saturation.  Components consumed by the center (contained in it)
are dropped with a record; components merely invisible in one chart
are dropped silently there, as usual.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ideals import Ideal
from .geometry import (
    Boundary,
    BoundaryComponent,
    Component,
    Divisor,
    DivisorPart,
    Triple,
    Verdict,
    union_ideal,
)


@dataclass(frozen=True)
class BlowupChart:
    ring: object
    center: tuple  # sorted variable indices
    pivot: int

    @property
    def name(self):
        return f"{self.ring.names[self.pivot]}-chart"

    def images(self):
        ring = self.ring
        piv = ring.vars()[self.pivot]
        out = {}
        for i in self.center:
            if i != self.pivot:
                out[ring.names[i]] = piv * ring.vars()[i]
        return out

    def substitute(self, poly):
        return poly.substitute(self.images())

    def exceptional(self):
        return self.ring.vars()[self.pivot]


def center_indices(ring, center_vars):
    """Sorted variable indices of a center given by names or indices."""
    idx = []
    for v in center_vars:
        if isinstance(v, str):
            if v not in ring.names:
                raise ValueError(f"unknown variable {v}")
            idx.append(ring.names.index(v))
        else:
            if not 0 <= v < ring.nvars:
                raise ValueError(f"variable index {v} out of range")
            idx.append(v)
    out = tuple(sorted(set(idx)))
    if len(out) != len(idx):
        raise ValueError("center variables repeat")
    return out


def make_charts(ring, center_vars):
    """One chart per center variable, in ascending variable order."""
    center = center_indices(ring, center_vars)
    if len(center) < 2:
        raise ValueError("center must have codimension at least 2")
    return tuple(BlowupChart(ring, center, p) for p in center)


def transform_ideal(ideal, chart):
    """(total, strict) transform of the ideal in the given chart."""
    total = Ideal(ideal.ring, [chart.substitute(g) for g in ideal.gens])
    strict = total.saturate_poly(chart.exceptional())
    return total, strict


def center_ideal(ring, center_vars):
    vs = ring.vars()
    return Ideal(ring, [vs[i] for i in center_indices(ring, center_vars)])


def check_admissible(triple, center_vars):
    """Is the coordinate center an allowed blow-up center here?

    In arrangement mode the center must lie inside the variety; being
    a coordinate subspace it automatically crosses the boundary and
    the components normally.  In general mode admissibility is not
    decided.
    """
    ring = triple.ring
    try:
        C = center_ideal(ring, center_vars)
        if len(C.gens) < 2:
            return Verdict(False, reasons=("center must have codimension >= 2",))
    except ValueError as err:
        return Verdict(False, reasons=(str(err),))
    if triple.mode != "arrangement":
        return Verdict(None, reasons=("admissibility undecided in general mode",))
    union = union_ideal(triple.components)
    if not C.contains_ideal(union):
        return Verdict(False, reasons=("center not contained in the variety",))
    return Verdict(True)


def _fresh_boundary_name(existing):
    k = len(existing) + 1
    names = {b.name for b in existing}
    while f"E{k}" in names:
        k += 1
    return f"E{k}"


def transform_triple(triple, center_vars):
    """Strict transforms of the whole triple in every chart.

    Returns (records, charted) where records lists components consumed
    by the center and charted pairs each chart with the transformed
    triple: surviving components and divisor parts (coefficients kept),
    boundary strict transforms in order, and the exceptional divisor
    appended as the youngest boundary component.
    """
    ring = triple.ring
    C = center_ideal(ring, center_vars)
    records = tuple(
        f"component {c.name} consumed by the center"
        for c in triple.components
        if c.ideal.contains_ideal(C)
    )
    exc_name = _fresh_boundary_name(triple.boundary.comps)
    charted = []
    for chart in make_charts(ring, center_vars):
        comps = []
        for c in triple.components:
            _, strict = transform_ideal(c.ideal, chart)
            if not strict.is_unit():
                comps.append(Component(c.name, strict))
        comps = tuple(comps)
        parts = []
        for p in triple.divisor.parts:
            _, strict = transform_ideal(p.ideal, chart)
            if strict.is_unit():
                continue
            hosts = [c for c in comps if strict.contains_ideal(c.ideal)]
            if len(hosts) != 1:
                raise ValueError(
                    f"transformed divisor part has {len(hosts)} hosts "
                    f"in {chart.name}"
                )
            parts.append(DivisorPart(strict, p.coeff, hosts[0].name))
        bcomps = []
        for b in triple.boundary.comps:
            _, strict = transform_ideal(b.ideal, chart)
            if not strict.is_unit():
                bcomps.append(BoundaryComponent(b.name, strict))
        bcomps.append(
            BoundaryComponent(exc_name, Ideal(ring, [chart.exceptional()]))
        )
        charted.append(
            (
                chart,
                Triple(
                    ring,
                    comps,
                    Divisor(tuple(parts)),
                    Boundary(tuple(bcomps)),
                    triple.mode,
                ),
            )
        )
    return records, charted


@dataclass
class ChartNode:
    """Node of the blow-up tree built by the resolution driver."""

    triple: Triple
    chart: object = None
    path: str = ""
    records: tuple = ()
    step: str = ""
    center: tuple = ()
    children: list = field(default_factory=list)

    def leaves(self):
        if not self.children:
            return [self]
        out = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def expand(self, center_vars, step=""):
        """Blow this leaf up at the given center; returns the children."""
        if self.children:
            raise ValueError("node already expanded")
        records, charted = transform_triple(self.triple, center_vars)
        self.step = step
        self.center = tuple(center_vars)
        for chart, new_triple in charted:
            prefix = self.path + "/" if self.path else ""
            self.children.append(
                ChartNode(
                    new_triple,
                    chart,
                    prefix + self.triple.ring.names[chart.pivot],
                    records,
                )
            )
        return self.children
