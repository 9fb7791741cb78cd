"""Resolution driver for arrangement-mode triples.

The driver runs four passes over a growing chart tree and emits a
certificate that an independent checker can replay:

  1. remove divisor parts embedded in the singular locus or the
     boundary ("remove-embedded-divisors"),
  2. trivialize the colon obstruction chartwise ("obstruction-blowup"
     and "boundary-cleaning", via the obstruction module),
  3. blow up the smallest faces where the reduced triple still fails
     the stable verdict ("variety-pass"),
  4. blow up maximal bad strata of the weighted divisor until the
     coefficients match everywhere ("multiplicity-pass").

Centers are coordinate subspaces throughout; inputs outside that
class stop with a diagnostic instead of a wrong answer.  Every blown
up center records sampled evidence that it contained no stable point,
which is what verify_run re-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .blowup import ChartNode, check_admissible
from .geometry import (
    Divisor,
    DivisorPart,
    Triple,
    comps_through,
    contains_face,
    enumerate_faces,
    face_sample,
    face_vars,
    iota,
    local_dimension,
    stable_snc_triple,
)
from .obstruction import (
    boundary_var_indices,
    obstruction_ideal,
    vJ_components,
)


class RestrictionError(ValueError):
    """Input outside the restricted class the driver supports."""


# -- face sampling ----------------------------------------------------


def arrangement_ideals(triple):
    return (
        [c.ideal for c in triple.components]
        + [p.ideal for p in triple.divisor.parts]
        + [b.ideal for b in triple.boundary.comps]
    )


def variety_faces(triple):
    """Coordinate faces lying on the variety, with interior samples.

    Verdicts are constant on the open part of each face, so one
    deterministic sample point per face covers the whole triple.
    """
    ring = triple.ring
    avoid = arrangement_ideals(triple)
    out = []
    for face in enumerate_faces(ring):
        if not any(contains_face(c.ideal, face) for c in triple.components):
            continue
        sample = face_sample(ring, face, avoid)
        out.append((face, sample))
    return out


def face_verdicts(triple):
    """(face, sample, verdict) on every on-variety face."""
    return [
        (face, sample, stable_snc_triple(triple, sample))
        for face, sample in variety_faces(triple)
    ]


def _face_order(ring, face):
    # smallest dimension first, then the frame description
    return (ring.nvars - len(face), tuple(sorted(face)))


def reduced_triple(triple):
    """The same triple with every divisor coefficient set to one."""
    parts = tuple(
        DivisorPart(p.ideal, Fraction(1), p.host) for p in triple.divisor.parts
    )
    return Triple(
        triple.ring, triple.components, Divisor(parts), triple.boundary,
        triple.mode,
    )


# -- certificates -----------------------------------------------------


@dataclass(frozen=True)
class RunCertificate:
    tree: ChartNode
    steps: tuple  # (ordinal, path, tag, center)
    leaf_reports: tuple  # (path, ((face, sample, ok), ...))
    center_evidence: tuple  # (path, center, ((sample, ok, iso), ...))
    accepted: bool


def _fmt_point(sample):
    return "(" + ", ".join(str(a) for a in sample) + ")"


def _iso_on_variety(triple, center_idx, sample):
    """Does blowing up the center leave the variety untouched near here?

    Blowing up a smooth divisor inside a smooth variety is an
    isomorphism, so a center of codimension one in the single
    component through the point changes nothing there.  Removing a
    divisor part embedded in the boundary rides on this: the point may
    be perfectly stable, the blow-up just relabels the part as
    exceptional.
    """
    local = comps_through(triple.components, sample)
    if len(local) != 1:
        return False
    comp = local[0]
    if not contains_face(comp.ideal, center_idx):
        return False
    dim, certified = local_dimension(comp.ideal, sample)
    return bool(certified) and triple.ring.nvars - len(center_idx) == dim - 1


def _center_evidence(triple, center_vars):
    """Verdicts at the sampled faces inside the prospective center."""
    ring = triple.ring
    idx = frozenset(ring.names.index(v) for v in center_vars)
    out = []
    for face, sample in variety_faces(triple):
        if idx <= face:
            v = stable_snc_triple(triple, sample)
            out.append((sample, v.ok, _iso_on_variety(triple, idx, sample)))
    return tuple(out)


def _expand(node, center_vars, tag, steps, evidence):
    adm = check_admissible(node.triple, center_vars)
    if adm.ok is not True:
        raise RestrictionError(
            f"center {tuple(center_vars)} not admissible: "
            + "; ".join(adm.reasons)
        )
    evidence.append(
        (node.path, tuple(center_vars), _center_evidence(node.triple, center_vars))
    )
    steps.append((len(steps) + 1, node.path, tag, tuple(center_vars)))
    node.expand(center_vars, tag)


# -- step 2: embedded divisor removal ---------------------------------


def offending_parts(triple):
    """Divisor parts inside the singular locus of X or the boundary."""
    comps = triple.components
    targets = [
        comps[i].ideal + comps[j].ideal
        for i in range(len(comps))
        for j in range(i + 1, len(comps))
    ]
    targets += [b.ideal for b in triple.boundary.comps]
    return [
        p
        for p in triple.divisor.parts
        if any(p.ideal.contains_ideal(t) for t in targets)
    ]


def _removal_center(triple):
    """Smallest lattice element of the offending parts, else a part."""
    ring = triple.ring
    bad = offending_parts(triple)
    if not bad:
        return None
    try:
        faces = [face_vars(p.ideal) for p in bad]
    except ValueError:
        raise RestrictionError(
            "embedded divisor removal needs coordinate divisor parts"
        )
    lattice = set()
    for i in range(len(faces)):
        for j in range(i + 1, len(faces)):
            lattice.add(faces[i] | faces[j])
    candidates = sorted(lattice, key=lambda f: _face_order(ring, f))
    if candidates:
        return tuple(ring.names[i] for i in sorted(candidates[0]))
    first = min(faces, key=lambda f: _face_order(ring, f))
    return tuple(ring.names[i] for i in sorted(first))


def remove_embedded_divisors(root, steps, evidence, budget):
    while True:
        work = None
        for leaf in root.leaves():
            if not leaf.triple.components:
                continue
            center = _removal_center(leaf.triple)
            if center:
                work = (leaf, center)
                break
        if work is None:
            return True
        if len(steps) >= budget:
            return False
        _expand(work[0], work[1], "remove-embedded-divisors", steps, evidence)


# -- step 3: obstruction cleaning and face separation ------------------


def _step3(root, steps, evidence, budget):
    while True:
        work = None
        for leaf in root.leaves():
            t = leaf.triple
            if not t.components:
                continue
            J = obstruction_ideal(t.components, t.divisor.parts)
            if not J.is_unit():
                report = vJ_components(J, boundary_var_indices(t))
                if report.status != "center":
                    raise RestrictionError(
                        "obstruction ideal out of reach: "
                        + "; ".join(report.reasons)
                    )
                work = (leaf, report.center, report.step)
                break
            red = reduced_triple(t)
            bad = []
            for face, sample, v in face_verdicts(red):
                if v.ok is None:
                    raise RestrictionError(
                        f"undecided verdict at {_fmt_point(sample)}: "
                        + "; ".join(v.reasons)
                    )
                if v.ok is False:
                    bad.append(face)
            if bad:
                face = min(bad, key=lambda f: _face_order(t.ring, f))
                if len(face) < 2:
                    raise RestrictionError(
                        "stable verdict fails along a hypersurface face"
                    )
                center = tuple(t.ring.names[i] for i in sorted(face))
                work = (leaf, center, "variety-pass")
                break
        if work is None:
            return True
        if len(steps) >= budget:
            return False
        _expand(work[0], work[1], work[2], steps, evidence)


# -- step 4: multiplicities -------------------------------------------


def _step4(root, steps, evidence, budget):
    while True:
        work = None
        for leaf in root.leaves():
            t = leaf.triple
            if not t.components:
                continue
            bad = []
            for face, sample, v in face_verdicts(t):
                if v.ok is None:
                    raise RestrictionError(
                        f"undecided verdict at {_fmt_point(sample)}: "
                        + "; ".join(v.reasons)
                    )
                if v.ok is False:
                    bad.append((face, sample))
            if not bad:
                continue
            keyed = [
                (iota(t.components, t.divisor, sample), face)
                for face, sample in bad
            ]
            maximal = [
                (k, face)
                for k, face in keyed
                if not any(
                    o != k and o[0] >= k[0] and o[1] >= k[1]
                    for o, _ in keyed
                )
            ]
            maximal.sort(
                key=lambda kf: (
                    -kf[0][0],
                    -kf[0][1],
                    _face_order(t.ring, kf[1]),
                )
            )
            face = maximal[0][1]
            if len(face) < 2:
                raise RestrictionError(
                    "multiplicity failure along a hypersurface face"
                )
            center = tuple(t.ring.names[i] for i in sorted(face))
            work = (leaf, center, "multiplicity-pass")
            break
        if work is None:
            return True
        if len(steps) >= budget:
            return False
        _expand(work[0], work[1], work[2], steps, evidence)


# -- the driver -------------------------------------------------------


def desing_stable_snc(triple, budget=60):
    """Resolve until every chart leaf is stable-snc; emit a certificate."""
    if triple.mode != "arrangement":
        raise RestrictionError("the driver needs arrangement mode")
    root = ChartNode(triple)
    steps = []
    evidence = []
    done = remove_embedded_divisors(root, steps, evidence, budget)
    done = done and _step3(root, steps, evidence, budget)
    done = done and _step4(root, steps, evidence, budget)
    leaf_reports = []
    clean = True
    for leaf in root.leaves():
        report = tuple(
            (face, sample, v.ok) for face, sample, v in face_verdicts(leaf.triple)
        )
        leaf_reports.append((leaf.path, report))
        clean = clean and all(ok is True for _, _, ok in report)
    witnesses = all(
        all(ok is False or iso for _, ok, iso in ev) for _, _, ev in evidence
    )
    return RunCertificate(
        root,
        tuple(steps),
        tuple(leaf_reports),
        tuple(evidence),
        bool(done and clean and witnesses),
    )


def verify_run(cert):
    """Re-check a certificate independently of how it was produced.

    Every leaf must be stable-snc at all its sampled faces, and every
    expanded center must have contained no stable point at blow-up
    time, except where the blow-up is an isomorphism on the variety
    itself (a center that is a divisor inside the one local
    component).  Returns (accepted, reasons).
    """
    reasons = []

    def walk(node):
        if not node.children:
            for face, sample, v in face_verdicts(node.triple):
                if v.ok is not True:
                    reasons.append(
                        f"leaf {node.path or '<root>'}: not stable at "
                        f"{_fmt_point(sample)}: " + "; ".join(v.reasons)
                    )
            return
        ring = node.triple.ring
        idx = frozenset(ring.names.index(v) for v in node.center)
        for face, sample in variety_faces(node.triple):
            if idx <= face:
                v = stable_snc_triple(node.triple, sample)
                if v.ok is not False and not _iso_on_variety(
                    node.triple, idx, sample
                ):
                    reasons.append(
                        f"center {node.center} at {node.path or '<root>'} "
                        f"contains the point {_fmt_point(sample)} where "
                        f"the verdict is {v.ok}"
                    )
        for child in node.children:
            walk(child)

    walk(cert.tree)
    return (not reasons, tuple(reasons))
