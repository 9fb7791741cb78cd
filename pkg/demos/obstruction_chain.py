"""Two smooth surfaces with a higher-order tangency along an edge.

X1 = {x1 = 0} carries the divisor part {x1 = y = 0}; X2 = {x2 = 0}
carries {x2 = x1 + y*z*w = 0}.  The parts agree to first order along
the common edge but the z*w tail obstructs straightening them
simultaneously.  The obstruction ideal J names the tail exactly, and
the driver blows J's vanishing locus away in three steps along the
distinguished chart lineage, after which J is the unit ideal.
"""

from stablesnc import (
    Boundary,
    Component,
    Divisor,
    DivisorPart,
    Ideal,
    PolyRing,
    Triple,
    desing_stable_snc,
    obstruction_ideal,
    verify_run,
)

ring = PolyRing(["x1", "x2", "y", "z", "w"])
cs = (
    Component("X1", Ideal(ring, ["x1"])),
    Component("X2", Ideal(ring, ["x2"])),
)
parts = (
    DivisorPart(Ideal(ring, ["x1", "y"]), 1, 0),
    DivisorPart(Ideal(ring, ["x2", "x1 + y*z*w"]), 1, 1),
)

J = obstruction_ideal(cs, parts)
print("obstruction ideal J =", J)

cert = desing_stable_snc(Triple(ring, cs, Divisor(parts), Boundary(())))
print("driver accepted:", cert.accepted)
for ordinal, path, tag, center in cert.steps:
    where = path if path else "<root>"
    print(f"  step {ordinal}: {tag} at V{center} in chart {where}")

# follow the distinguished lineage and watch J shrink to (1)
node = cert.tree
for hop in ("z", "w", "z"):
    node = next(c for c in node.children if c.path.endswith(hop))
    t = node.triple
    print(
        f"chart {node.path}: J' =",
        obstruction_ideal(t.components, t.divisor.parts),
    )

ok, reasons = verify_run(cert)
print("independent replay of the certificate:", "ok" if ok else reasons)
