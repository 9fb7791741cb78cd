"""The three coordinate axes: detect the bad point, blow it up, verify.

Two axes through the origin are a stable simple normal crossing: they
can be straightened into coordinate subspaces meeting transversally.
All three axes cannot (the codimension of the triple intersection is
wrong), so the desingularization driver blows up the origin once and
every chart of the result passes.
"""

from stablesnc import (
    Boundary,
    Component,
    Divisor,
    Ideal,
    PolyRing,
    Triple,
    desing_stable_snc,
    stable_snc_variety,
    verify_run,
)

ring = PolyRing(["x", "y", "z"])
axes = (
    Component("A", Ideal(ring, ["x", "y"])),
    Component("B", Ideal(ring, ["y", "z"])),
    Component("C", Ideal(ring, ["x", "z"])),
)

print("two axes at the origin :", stable_snc_variety(axes[:2], (0, 0, 0)).ok)
verdict = stable_snc_variety(axes, (0, 0, 0))
print("all three at the origin:", verdict.ok)
for reason in verdict.reasons:
    print("  reason:", reason)
print("off the origin         :", stable_snc_variety(axes, (0, 0, 1)).ok)

triple = Triple(ring, axes, Divisor(()), Boundary(()))
cert = desing_stable_snc(triple)
print()
print("driver accepted:", cert.accepted)
for ordinal, path, tag, center in cert.steps:
    where = path if path else "<root>"
    print(f"  step {ordinal}: {tag} at V{center} in chart {where}")

for leaf in cert.tree.leaves():
    comps = ", ".join(c.name for c in leaf.triple.components)
    edges = ", ".join(b.name for b in leaf.triple.boundary.comps) or "none"
    print(f"  leaf {leaf.path}: components {comps}; boundary {edges}")

ok, reasons = verify_run(cert)
print("independent replay of the certificate:", "ok" if ok else reasons)
