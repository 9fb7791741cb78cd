"""Local geometry of component unions with divisors and boundary.

The central predicates decide, at a rational point, whether a union of
components is a stable simple normal crossings configuration: every
component smooth, the scheme intersection smooth, and the codimension
bookkeeping tight in the minimal embedding.  Pairs add a divisor whose
parts must match up across components (checked through Hilbert-Samuel
comparison against a transverse reference model plus a colon-ideal
obstruction), and triples fold an ordered boundary into the divisor.

Verdicts are three-valued: True, False, or None for undecided (an
uncertified Hilbert-Samuel tail).  Every False or None carries reasons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .ideals import Ideal, linear_part_space, point_jacobian
from .hilbert import hs_compare, hs_function, hs_omega_q


# -- data model ------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """Irreducible component of the variety, addressed by name."""

    name: str
    ideal: Ideal


@dataclass(frozen=True)
class DivisorPart:
    """One irreducible divisor part with its multiplicity and host."""

    ideal: Ideal
    coeff: Fraction
    host: str


@dataclass(frozen=True)
class Divisor:
    parts: tuple

    def through(self, point):
        return tuple(p for p in self.parts if vanishes_at(p.ideal, point))


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    ideal: Ideal


@dataclass(frozen=True)
class Boundary:
    """Ordered boundary hypersurfaces (older components first)."""

    comps: tuple


@dataclass(frozen=True)
class Triple:
    ring: object
    components: tuple
    divisor: Divisor
    boundary: Boundary
    mode: str = "arrangement"


def build_components(ring, named_ideals, mode="arrangement"):
    """Validated component tuple: no component inside another."""
    comps = tuple(Component(n, i) for n, i in named_ideals)
    for a in comps:
        if a.ideal.is_unit() or a.ideal.is_zero():
            raise ValueError(f"component {a.name} is trivial")
        for b in comps:
            if a is b:
                continue
            if a.ideal.contains_ideal(b.ideal):
                raise ValueError(
                    f"component {a.name} lies inside component {b.name}"
                )
    if mode == "arrangement":
        for c in comps:
            if not _is_coordinate_subspace(c.ideal):
                raise ValueError(
                    f"component {c.name} is not a coordinate subspace; "
                    "use general mode"
                )
    return comps


def _is_coordinate_subspace(ideal):
    return all(
        g.is_term() and sum(g.lead_exp()) == 1 for g in ideal.groebner()
    )


def resolve_host(components, ideal):
    """The unique component containing the part, by ideal membership."""
    hosts = [c for c in components if ideal.contains_ideal(c.ideal)]
    if not hosts:
        raise ValueError("divisor part not contained in any component")
    if len(hosts) > 1:
        names = ", ".join(c.name for c in hosts)
        raise ValueError(
            f"divisor part lies in several components ({names}); "
            "parts inside the singular locus are not allowed"
        )
    return hosts[0].name


def build_divisor(components, weighted_ideals):
    """Divisor from (ideal, coeff) pairs: hosts resolved, equals merged."""
    merged = []
    for ideal, coeff in weighted_ideals:
        coeff = Fraction(coeff)
        if coeff <= 0:
            raise ValueError("divisor coefficients must be positive")
        for i, (other, c0) in enumerate(merged):
            if other == ideal:
                merged[i] = (other, c0 + coeff)
                break
        else:
            merged.append((ideal, coeff))
    parts = tuple(
        DivisorPart(ideal, coeff, resolve_host(components, ideal))
        for ideal, coeff in merged
    )
    return Divisor(parts)


def vanishes_at(ideal, point):
    return all(g.evaluate(point) == 0 for g in ideal.gens)


def comps_through(components, point):
    return tuple(c for c in components if vanishes_at(c.ideal, point))


def kappa(components, point):
    return len(comps_through(components, point))


# -- smoothness and embedding dimension ------------------------------


@dataclass(frozen=True)
class SmoothReport:
    smooth: object  # True | False | None
    dimension: int
    certified: bool
    rank: int


_SMOOTH_CACHE = {}
_UNION_CACHE = {}
_EMBED_CACHE = {}
_TRANSLATE_CACHE = {}
_DIM_CACHE = {}


def _norm_point(ring, point):
    if point is None:
        return (Fraction(0),) * ring.nvars
    point = tuple(Fraction(a) for a in point)
    if len(point) != ring.nvars:
        raise ValueError("point has wrong length")
    return point


def translated(ideal, point):
    key = (ideal, point)
    hit = _TRANSLATE_CACHE.get(key)
    if hit is None:
        hit = ideal.translate(point) if any(point) else ideal
        _TRANSLATE_CACHE[key] = hit
    return hit


def _lci_probe(ideal, point):
    """(smooth, codim) by the local complete intersection test.

    Generators with independent differentials at the point cut out a
    manifold M through it; the scheme is smooth there iff every other
    generator lies in their local ideal, i.e. iff each colon
    (picked : g) has a generator that does not vanish at the point.
    Both outcomes are certain.
    """
    ring = ideal.ring
    n = ring.nvars
    echelon = []
    picked = []
    rest = []
    for g in ideal.gens:
        if g.is_zero():
            continue
        vec = [g.derivative(i).evaluate(point) for i in range(n)]
        for pivot, row in echelon:
            if vec[pivot] != 0:
                f = vec[pivot] / row[pivot]
                vec = [a - f * b for a, b in zip(vec, row)]
        live = [i for i, a in enumerate(vec) if a != 0]
        if live:
            echelon.append((live[0], vec))
            picked.append(g)
        else:
            rest.append(g)
    if not rest:
        return True, len(picked)
    if not picked:
        # a nonzero generator with zero differential: the germ is a
        # proper subscheme of a smooth one of the same tangent space
        return False, 0
    M = Ideal(ring, picked)
    for g in rest:
        colon = M.quotient(Ideal(ring, [g]))
        if all(h.evaluate(point) == 0 for h in colon.gens):
            return False, len(picked)
    return True, len(picked)


def local_dimension(ideal, point):
    """(dimension, certified) of the scheme at the point.

    The dimension is the degree of the local Hilbert-Samuel
    polynomial.  Smooth schemes short-circuit through the complete
    intersection test; when the Hilbert-Samuel tail of a singular one
    cannot be certified, the Krull dimension of the initial ideal is
    returned as an uncertified upper bound.
    """
    point = _norm_point(ideal.ring, point)
    key = (ideal, point)
    hit = _DIM_CACHE.get(key)
    if hit is not None:
        return hit
    n = ideal.ring.nvars
    shifted = translated(ideal, point)
    gb = shifted.groebner()
    result = None
    if len(gb) == 1 and gb[0].is_constant():
        result = (-1, True)
    elif all(g.degree() <= 1 for g in gb):
        origin = (Fraction(0),) * n
        if any(g.evaluate(origin) != 0 for g in gb):
            # consistent affine subspace missing the point
            result = (-1, True)
        else:
            result = (n - len(gb), True)
    elif all(g.is_term() for g in gb):
        result = (hs_function(shifted, cutoff=0).degree(), True)
    if result is None:
        smooth, codim = _lci_probe(ideal, point)
        if smooth:
            result = (n - codim, True)
        else:
            dmax = shifted.dim_initial()
            H = hs_function(shifted, cutoff=max(6, dmax + 4))
            result = (H.degree(), True) if H.exact else (dmax, False)
    _DIM_CACHE[key] = result
    return result


def smooth_at(ideal, point):
    """Smoothness of the scheme V(ideal) at the point.

    Decided by the complete intersection probe, so the verdict is
    always certain; the dimension is the local one (tangent space
    dimension when smooth).
    """
    point = _norm_point(ideal.ring, point)
    key = (ideal, point)
    hit = _SMOOTH_CACHE.get(key)
    if hit is not None:
        return hit
    if not vanishes_at(ideal, point):
        report = SmoothReport(False, -1, True, 0)
        _SMOOTH_CACHE[key] = report
        return report
    smooth, codim = _lci_probe(ideal, point)
    if smooth:
        report = SmoothReport(True, ideal.ring.nvars - codim, True, codim)
    else:
        dim, certified = local_dimension(ideal, point)
        report = SmoothReport(False, dim, certified, codim)
    _SMOOTH_CACHE[key] = report
    return report


def union_ideal(components):
    """Ideal of the union: intersection of the component ideals."""
    key = tuple(c.ideal for c in components)
    hit = _UNION_CACHE.get(key)
    if hit is None:
        if not components:
            raise ValueError("empty component list")
        hit = components[0].ideal
        for c in components[1:]:
            hit = hit.intersect(c.ideal)
        _UNION_CACHE[key] = hit
    return hit


def embedding_dim(components, point):
    """Minimal embedding dimension of the union germ at the point.

    nvars minus the number of independent linear parts of the ideal of
    the union of the components passing through the point.
    """
    local = comps_through(components, point)
    if not local:
        raise ValueError("point not on the variety")
    point = _norm_point(local[0].ideal.ring, point)
    key = (tuple(c.ideal for c in local), point)
    hit = _EMBED_CACHE.get(key)
    if hit is None:
        ring = local[0].ideal.ring
        translated = union_ideal(local).translate(point)
        hit = ring.nvars - len(linear_part_space(translated))
        _EMBED_CACHE[key] = hit
    return hit


# -- the stable simple normal crossings predicates --------------------


@dataclass(frozen=True)
class Verdict:
    ok: object  # True | False | None
    kappa: int = 0
    e: int = 0
    codims: tuple = ()
    reasons: tuple = ()

    def __bool__(self):
        return self.ok is True


def stable_snc_variety(components, point):
    """Are the components a stable snc configuration at the point?

    Checks that every component through the point and their scheme
    sum are smooth there, and that codim(sum) = sum of component
    codimensions - (m - 1) * (nvars - embedding dim).  This is
    invariant under the ambient embedding, so it is evaluated in the
    given coordinates.
    """
    if not components:
        raise ValueError("empty component list")
    ring = components[0].ideal.ring
    point = _norm_point(ring, point)
    local = comps_through(components, point)
    if not local:
        return Verdict(True, 0, 0, (), ("point not on the variety",))
    n = ring.nvars
    reasons = []
    undecided = False
    codims = []
    for c in local:
        rep = smooth_at(c.ideal, point)
        if rep.smooth is None:
            undecided = True
            reasons.append(f"smoothness of {c.name} undecided")
        elif rep.smooth is False:
            return Verdict(
                False, len(local), 0, (), (f"component {c.name} is singular here",)
            )
        codims.append(n - rep.dimension)
    if undecided:
        return Verdict(None, len(local), 0, tuple(codims), tuple(reasons))
    total = Ideal(ring, [g for c in local for g in c.ideal.gens])
    srep = smooth_at(total, point)
    if srep.smooth is None:
        return Verdict(
            None, len(local), 0, tuple(codims),
            ("smoothness of the scheme intersection undecided",),
        )
    if srep.smooth is False:
        return Verdict(
            False, len(local), 0, tuple(codims),
            ("scheme intersection of the components is singular here",),
        )
    e = embedding_dim(local, point)
    m = len(local)
    lhs = n - srep.dimension
    rhs = sum(codims) - (m - 1) * (n - e)
    if lhs != rhs:
        return Verdict(
            False, m, e, tuple(codims),
            (f"codimension bookkeeping fails: {lhs} != {rhs}",),
        )
    return Verdict(True, m, e, tuple(codims))


def _pair_base(comp, parts, point):
    """snc check for divisor parts on a single smooth component."""
    ring = comp.ideal.ring
    n = ring.nvars
    rep = smooth_at(comp.ideal, point)
    if rep.smooth is None:
        return None, (f"smoothness of {comp.name} undecided",)
    if rep.smooth is False:
        return False, (f"component {comp.name} is singular here",)
    d = rep.dimension
    for p in parts:
        prep = smooth_at(p.ideal, point)
        if prep.smooth is None:
            return None, ("smoothness of a divisor part undecided",)
        if prep.smooth is False:
            return False, ("a divisor part is singular here",)
        if prep.dimension != d - 1:
            return False, (
                f"divisor part has dimension {prep.dimension}, "
                f"expected {d - 1}",
            )
    stack = list(comp.ideal.gens)
    for p in parts:
        stack.extend(p.ideal.gens)
    _, rank = point_jacobian(stack, point)
    want = (n - d) + len(parts)
    if rank != want:
        return False, (
            f"divisor parts do not cross normally on {comp.name} "
            f"(conormal rank {rank}, expected {want})",
        )
    return True, ()


def tilde_classes(components, parts, point):
    """Partition of the divisor parts into matching classes at a point.

    Two parts match when their ideals agree, or when they live on
    different hosts and the intersection has exactly the expected
    transverse codimension (host codim + host codim + 1) in the
    minimal embedding; the relation is closed transitively.
    """
    local = comps_through(components, point)
    e = embedding_dim(local, point)
    by_name = {c.name: c for c in local}
    host_codim = {}
    for p in parts:
        if p.host not in host_codim:
            dim, certified = local_dimension(by_name[p.host].ideal, point)
            if not certified:
                raise ValueError("host dimension uncertified")
            host_codim[p.host] = e - dim
    parent = list(range(len(parts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    for i, a in enumerate(parts):
        for j in range(i + 1, len(parts)):
            b = parts[j]
            if a.ideal == b.ideal:
                union(i, j)
                continue
            if a.host == b.host:
                continue
            meet = a.ideal + b.ideal
            dim, certified = local_dimension(meet, point)
            if not certified:
                raise ValueError("intersection dimension uncertified")
            if e - dim == host_codim[a.host] + host_codim[b.host] + 1:
                union(i, j)
    groups = {}
    for i in range(len(parts)):
        groups.setdefault(find(i), []).append(parts[i])
    return [tuple(g) for g in groups.values()]


def iota(components, divisor, point):
    """(number of components, number of matching part classes) at a point."""
    local = comps_through(components, point)
    parts = [p for p in divisor.parts if vanishes_at(p.ideal, point)]
    if not local:
        return (0, 0)
    if not parts:
        return (len(local), 0)
    classes = tilde_classes(components, parts, point)
    return (len(local), len(classes))


def stratum_key(components, parts, point):
    """((e, sorted codims), q) of the divisor stratum at the point.

    The relevant components are the last one plus every component
    hosting a part through the point; e is the embedding dimension of
    their union; the codimensions are taken inside that minimal
    embedding and sorted decreasingly; q is the least number of parts
    hosted on any relevant component.
    """
    if not vanishes_at(components[-1].ideal, point):
        raise ValueError("point not on the last component")
    parts = [p for p in parts if vanishes_at(p.ideal, point)]
    hosts = {}
    for p in parts:
        hosts.setdefault(p.host, []).append(p)
    relevant = [
        c
        for c in components
        if c is components[-1] or (c.name in hosts and vanishes_at(c.ideal, point))
    ]
    e = embedding_dim(relevant, point)
    codims = []
    q = None
    for c in relevant:
        dim, certified = local_dimension(c.ideal, point)
        if not certified:
            raise ValueError("component dimension uncertified")
        codims.append(e - dim)
        hosted = len(hosts.get(c.name, ()))
        q = hosted if q is None else min(q, hosted)
    codims.sort(reverse=True)
    return (e, tuple(codims)), q


def _supp_hs(parts, point):
    """Hilbert-Samuel function of the union of the parts at the point."""
    supp = parts[0].ideal
    for p in parts[1:]:
        supp = supp.intersect(p.ideal)
    shifted = translated(supp, _norm_point(supp.ring, point))
    dmax = shifted.dim_initial()
    return hs_function(shifted, cutoff=max(6, dmax + 4))


_PAIR_CACHE = {}


def stable_snc_pair(components, divisor, point):
    """Stable snc verdict for the pair (components, divisor) at a point.

    Beyond the variety conditions this checks, stage by stage in the
    component order, that the divisor parts hosted so far look like
    traces of common hyperplanes: equal multiplicities inside each
    matching class, the Hilbert-Samuel function of their support equal
    to the transverse reference model of the stratum, and the colon
    obstruction ideal trivial at the point.
    """
    if not components:
        raise ValueError("empty component list")
    ring = components[0].ideal.ring
    point = _norm_point(ring, point)
    key = (tuple(components), tuple(divisor.parts), point)
    hit = _PAIR_CACHE.get(key)
    if hit is None:
        hit = _pair_verdict(components, divisor, point)
        _PAIR_CACHE[key] = hit
    return hit


def _pair_verdict(components, divisor, point):
    from .obstruction import obstruction_ideal

    ring = components[0].ideal.ring
    local = comps_through(components, point)
    if not local:
        return Verdict(True, 0, 0, (), ("point not on the variety",))
    parts = [p for p in divisor.parts if vanishes_at(p.ideal, point)]
    variety = stable_snc_variety(components, point)
    if variety.ok is not True:
        return variety
    if not parts:
        return variety
    try:
        classes = tilde_classes(components, parts, point)
    except ValueError as err:
        return Verdict(None, variety.kappa, variety.e, variety.codims, (str(err),))
    for cls in classes:
        coeffs = {p.coeff for p in cls}
        if len(coeffs) > 1:
            return Verdict(
                False, variety.kappa, variety.e, variety.codims,
                ("matching divisor parts carry different multiplicities",),
            )
    base_ok, base_reasons = _pair_base(
        local[0], [p for p in parts if p.host == local[0].name], point
    )
    if base_ok is not True:
        return Verdict(
            base_ok, variety.kappa, variety.e, variety.codims, base_reasons
        )
    for k in range(2, len(local) + 1):
        sub = local[:k]
        names = {c.name for c in sub}
        dk = [p for p in parts if p.host in names]
        if not dk:
            continue
        try:
            omega, q = stratum_key(sub, dk, point)
        except ValueError as err:
            return Verdict(
                None, variety.kappa, variety.e, variety.codims, (str(err),)
            )
        if q == 0:
            return Verdict(
                False, variety.kappa, variety.e, variety.codims,
                (f"stage {k}: some component hosts no divisor part here",),
            )
        e, codims = omega
        if sum(codims) + q > e:
            return Verdict(
                False, variety.kappa, variety.e, variety.codims,
                (f"stage {k}: no transverse model fits in dimension {e}",),
            )
        model = hs_omega_q(omega, q)
        supp = _supp_hs(dk, point)
        cmp = hs_compare(supp, model)
        if cmp == "unknown":
            return Verdict(
                None, variety.kappa, variety.e, variety.codims,
                (f"stage {k}: support Hilbert-Samuel tail uncertified",),
            )
        if cmp != "equal":
            return Verdict(
                False, variety.kappa, variety.e, variety.codims,
                (
                    f"stage {k}: support Hilbert-Samuel differs from the "
                    f"transverse model ({cmp})",
                ),
            )
        J = obstruction_ideal(sub, dk)
        if not any(g.evaluate(point) != 0 for g in J.gens):
            return Verdict(
                False, variety.kappa, variety.e, variety.codims,
                (f"stage {k}: obstruction ideal vanishes here",),
            )
    return Verdict(True, variety.kappa, variety.e, variety.codims)


def fold_boundary(components, divisor, boundary, point=None):
    """Divisor together with the boundary traces on the components.

    Every boundary hypersurface cuts each component it meets (but does
    not contain) in a multiplicity-one part; traces equal to existing
    parts merge by adding coefficients.  Returns (parts, problems):
    problems are boundary components that contain a variety component.
    """
    merged = {p.ideal: p for p in divisor.parts}
    problems = []
    for b in boundary.comps:
        for c in components:
            if point is not None and not (
                vanishes_at(c.ideal, point) and vanishes_at(b.ideal, point)
            ):
                continue
            if c.ideal.contains_ideal(b.ideal):
                problems.append(
                    f"boundary {b.name} contains component {c.name}"
                )
                continue
            trace = c.ideal + b.ideal
            if trace.is_unit():
                continue
            if trace in merged:
                old = merged[trace]
                merged[trace] = DivisorPart(trace, old.coeff + 1, old.host)
            else:
                merged[trace] = DivisorPart(trace, Fraction(1), c.name)
    return tuple(merged.values()), tuple(problems)


def stable_snc_triple(triple, point):
    """Stable snc verdict for (components, divisor, boundary) at a point."""
    point = _norm_point(triple.ring, point)
    folded, problems = fold_boundary(
        triple.components, triple.divisor, triple.boundary, point
    )
    if problems:
        return Verdict(False, kappa(triple.components, point), 0, (), problems)
    return stable_snc_pair(triple.components, Divisor(folded), point)


def special_invariant(c, s):
    """Flattened special invariant word for codims c and shifts s.

    Leads with (len(c), s[0]), then r = sum(c) + sum(s) - max(c) pairs:
    the remaining shifts as (1, s_i), padded with (1, 0), and a closing
    infinity.
    """
    c = tuple(c)
    s = tuple(s)
    if not c or not s:
        raise ValueError("need at least one codimension and one shift")
    if any(x < 0 for x in c) or any(x < 0 for x in s):
        raise ValueError("entries must be non-negative")
    r = sum(c) + sum(s) - max(c)
    tail = list(s[1:])
    if len(tail) > r:
        raise ValueError("too many shifts for the codimension profile")
    word = [len(c), s[0]]
    for i in range(r):
        word.extend([1, tail[i] if i < len(tail) else 0])
    word.append(float("inf"))
    return tuple(word)


# -- faces and sampling (coordinate arrangements) ----------------------


def face_vars(ideal):
    """Variable indices of a coordinate-subspace ideal."""
    out = []
    for g in ideal.groebner():
        e = g.lead_exp()
        if not g.is_term() or sum(e) != 1:
            raise ValueError("not a coordinate subspace")
        out.append(e.index(1))
    return frozenset(out)


def restricted_to_face(poly, zeros):
    """The polynomial with the face variables set to zero."""
    return poly.ring.from_terms(
        (e, c) for e, c in poly.items() if all(e[i] == 0 for i in zeros)
    )


def contains_face(ideal, zeros):
    """Does V(ideal) contain the coordinate face {x_i = 0, i in zeros}?"""
    return all(restricted_to_face(g, zeros).is_zero() for g in ideal.gens)


def face_sample(ring, zeros, avoid):
    """Deterministic rational point inside the open face.

    Coordinates in `zeros` are 0; the remaining ones take the smallest
    positive integers (in lexicographic escalation) such that the point
    lies on none of the `avoid` ideals.  Ideals containing the whole
    face are skipped, since no sample could avoid them.
    """
    n = ring.nvars
    free = [i for i in range(n) if i not in zeros]
    live = [I for I in avoid if not contains_face(I, zeros)]
    if not free:
        point = tuple(Fraction(0) for _ in range(n))
        return point
    for bound in range(2, 2 * (len(live) + 2) + max(2, n)):
        for combo in itertools.product(range(1, bound), repeat=len(free)):
            if max(combo) != bound - 1 and bound > 2:
                continue
            point = [Fraction(0)] * n
            for i, v in zip(free, combo):
                point[i] = Fraction(v)
            point = tuple(point)
            if all(not vanishes_at(I, point) for I in live):
                return point
    raise RuntimeError("no sample point found")


def enumerate_faces(ring, within=frozenset()):
    """All coordinate faces (as frozensets of zeroed variables).

    `within` lists variables that must be zero on every face.
    """
    rest = [i for i in range(ring.nvars) if i not in within]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            yield frozenset(within) | frozenset(extra)


def omega_q_le(a, b):
    """Partial order on ((e, c), q) stratum keys."""
    (oa, qa), (ob, qb) = a, b
    if oa != ob:
        return oa < ob
    return hs_compare(hs_omega_q(oa, qa), hs_omega_q(ob, qb)) in {
        "less",
        "equal",
    }


@dataclass(frozen=True)
class Stratum:
    omega: tuple
    q: int
    face: frozenset
    sample: tuple


def maximal_strata(components, divisor, mode="arrangement"):
    """Maximal ((e, c), q) stratum keys on the last component.

    Enumerates coordinate faces inside the last component, takes a
    deterministic sample in each open face lying in the divisor
    support, and keeps the keys maximal for the (omega, then reference
    Hilbert-Samuel) partial order.
    """
    if mode != "arrangement":
        raise ValueError("stratum enumeration needs arrangement mode")
    ring = components[0].ideal.ring
    last = components[-1]
    avoid = [c.ideal for c in components] + [p.ideal for p in divisor.parts]
    seen = {}
    for face in enumerate_faces(ring, face_vars(last.ideal)):
        sample = face_sample(ring, face, avoid)
        parts = [p for p in divisor.parts if vanishes_at(p.ideal, sample)]
        if not parts:
            continue
        key = stratum_key(components, parts, sample)
        if key[1] == 0:
            continue
        if key not in seen:
            seen[key] = Stratum(key[0], key[1], face, sample)
    out = []
    for key, stratum in seen.items():
        if any(other != key and omega_q_le(key, other) for other in seen):
            continue
        out.append(stratum)
    out.sort(key=lambda s: (s.omega, s.q, sorted(s.face)))
    return out
