"""Ideal arithmetic: Groebner bases, membership, intersection, colon.

Everything runs over Q with the graded order from poly.key_B, except
elimination steps, which use a block order with the auxiliary variable
dominant.  Reduced Groebner bases are cached per Ideal and are the
canonical form used for equality testing.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import (
    Poly,
    PolyRing,
    exp_div,
    exp_divides,
    exp_lcm,
    exp_mul,
    key_B,
)

_ZERO = Fraction(0)


def reduce_poly(f, basis, key=key_B, maxdeg=None):
    """Full normal form of f modulo `basis` (list of nonzero polys).

    With maxdeg set, every intermediate result is truncated to total
    degree <= maxdeg, i.e. the computation happens modulo all monomials
    of degree > maxdeg.
    """
    ring = f.ring
    leads = [(g.lead_exp(key), g.lead_coeff(key), g) for g in basis]
    work = {
        e: c for e, c in f.items() if maxdeg is None or sum(e) <= maxdeg
    }
    remainder = {}
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        hit = None
        for le, lc, g in leads:
            if exp_divides(le, e):
                hit = (le, lc, g)
                break
        if hit is None:
            remainder[e] = c
            continue
        le, lc, g = hit
        shift = exp_div(e, le)
        factor = c / lc
        for e2, c2 in g.items():
            if e2 == le:
                continue
            ne = exp_mul(e2, shift)
            if maxdeg is not None and sum(ne) > maxdeg:
                continue
            nc = work.get(ne, _ZERO) - c2 * factor
            if nc:
                work[ne] = nc
            else:
                work.pop(ne, None)
    return Poly(ring, remainder)


def spoly(f, g, key=key_B):
    lf, lg = f.lead_exp(key), g.lead_exp(key)
    l = exp_lcm(lf, lg)
    mf = f.ring.monomial(exp_div(l, lf), 1 / f.lead_coeff(key))
    mg = g.ring.monomial(exp_div(l, lg), 1 / g.lead_coeff(key))
    return f * mf - g * mg


def buchberger(gens, key=key_B, prefix_is_gb=0):
    """Groebner basis of the ideal generated by `gens`.

    prefix_is_gb marks the first k generators as a known Groebner
    basis, so their mutual S-pairs are skipped.
    """
    basis = [g.monic(key) for g in gens if not g.is_zero()]
    if not basis:
        return []
    pending = {
        (i, j)
        for j in range(len(basis))
        for i in range(j)
        if j >= prefix_is_gb
    }
    lead = [g.lead_exp(key) for g in basis]

    def lcm_key(pair):
        return key(exp_lcm(lead[pair[0]], lead[pair[1]]))

    while pending:
        i, j = min(pending, key=lcm_key)
        pending.discard((i, j))
        li, lj = lead[i], lead[j]
        # coprime leading monomials: S-poly reduces to zero
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        # two monomials: S-poly is identically zero
        if basis[i].is_term() and basis[j].is_term():
            continue
        l = exp_lcm(li, lj)
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if not exp_divides(lead[k], l):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        r = reduce_poly(spoly(basis[i], basis[j], key), basis, key)
        if r.is_zero():
            continue
        r = r.monic(key)
        basis.append(r)
        lead.append(r.lead_exp(key))
        new = len(basis) - 1
        for k in range(new):
            pending.add((k, new))
    return basis


def interreduce(basis, key=key_B):
    """Reduced Groebner basis: minimal, monic, fully auto-reduced.

    Input must already be a Groebner basis.  Output is sorted by
    leading exponent, which makes it a canonical form for the ideal.
    """
    basis = [g for g in basis if not g.is_zero()]
    # drop generators whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(basis):
        lg = g.lead_exp(key)
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lh = h.lead_exp(key)
            if exp_divides(lh, lg) and (lh != lg or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = reduce_poly(g, others, key) if others else g
        out.append(r.monic(key))
    out.sort(key=lambda g: key(g.lead_exp(key)))
    return out


def exact_div(f, g, key=key_B):
    """Quotient f/g when g divides f exactly; None otherwise."""
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    lg, cg = g.lead_exp(key), g.lead_coeff(key)
    q = ring.zero()
    while not f.is_zero():
        lf = f.lead_exp(key)
        if not exp_divides(lg, lf):
            return None
        t = ring.monomial(exp_div(lf, lg), f.lead_coeff(key) / cg)
        q = q + t
        f = f - t * g
    return q


def rref(rows):
    """Reduced row echelon form over Q.

    Returns (nonzero reduced rows, pivot column indices); pivot columns
    are scanned left to right, so the result is deterministic.
    """
    work = [list(map(Fraction, r)) for r in rows]
    out = []
    pivots = []
    if not work:
        return out, pivots
    width = len(work[0])
    for col in range(width):
        pivot = None
        for idx, r in enumerate(work):
            if r[col]:
                pivot = idx
                break
        if pivot is None:
            continue
        row = work.pop(pivot)
        inv = 1 / row[col]
        row = [v * inv for v in row]
        for r in work + out:
            if r[col]:
                factor = r[col]
                for c in range(width):
                    r[c] -= factor * row[c]
        out.append(row)
        pivots.append(col)
    return out, pivots


def point_jacobian(gens, point):
    """Jacobian matrix of `gens` evaluated at `point`, and its rank."""
    matrix = []
    for g in gens:
        matrix.append(
            [g.derivative(i).evaluate(point) for i in range(g.ring.nvars)]
        )
    reduced, pivots = rref(matrix)
    return matrix, len(pivots)


def monomial_dim(lead_exps, nvars):
    """Krull dimension of a monomial ideal from its generator exponents.

    The dimension is the largest size of a variable subset S such that
    no generator is supported entirely inside S.  -1 for the unit
    ideal.
    """
    if any(not any(e) for e in lead_exps):
        return -1
    if not lead_exps:
        return nvars
    supports = [frozenset(i for i, k in enumerate(e) if k) for e in lead_exps]
    best = 0
    # depth-first over variables, keeping sets that avoid every support
    def grow(start, chosen):
        nonlocal best
        best = max(best, len(chosen))
        for v in range(start, nvars):
            cand = chosen | {v}
            if len(cand) + (nvars - v - 1) <= best:
                continue
            if all(not s <= cand for s in supports):
                grow(v + 1, cand)

    grow(0, frozenset())
    return best


class Ideal:
    """Finitely generated ideal of a PolyRing, with a cached reduced GB."""

    __slots__ = ("ring", "gens", "_gb", "_gb_leads")

    def __init__(self, ring, gens=()):
        self.ring = ring
        clean = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g.is_zero():
                clean.append(g)
        self.gens = tuple(clean)
        self._gb = None
        self._gb_leads = None

    def groebner(self):
        if self._gb is None:
            self._gb = tuple(interreduce(buchberger(list(self.gens))))
            self._gb_leads = tuple(g.lead_exp() for g in self._gb)
        return self._gb

    def initial_exps(self):
        self.groebner()
        return self._gb_leads

    def normal_form(self, f):
        return reduce_poly(f, list(self.groebner()))

    def contains(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_monomial(self):
        return all(g.is_term() for g in self.groebner())

    def dim_initial(self):
        """Krull dimension of the initial (leading-term) ideal."""
        return monomial_dim(self.initial_exps(), self.ring.nvars)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.gens) or "0"
        return f"Ideal({inner})"

    # -- constructions -------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other):
        self._check(other)
        return Ideal(
            self.ring, [f * g for f in self.gens for g in other.gens]
        )

    def intersect(self, other):
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring)
        aux, t, lift, drop = _aux_ring(self.ring)
        gens = [t * lift(f) for f in self.gens]
        gens += [(aux.one() - t) * lift(g) for g in other.gens]
        return Ideal(self.ring, _eliminate_first(gens, aux, drop))

    def quotient(self, other):
        """Colon ideal (self : other)."""
        self._check(other)
        if other.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        result = None
        for g in other.gens:
            part = self._colon_single(g)
            result = part if result is None else result.intersect(part)
        return result

    def _colon_single(self, g):
        meet = self.intersect(Ideal(self.ring, [g]))
        quots = []
        for f in meet.groebner():
            q = exact_div(f, g)
            if q is None:
                raise ArithmeticError("colon division failed")
            quots.append(q)
        return Ideal(self.ring, quots)

    def saturate(self, other):
        """Stable colon (self : other^infinity).

        Returns (ideal, number of colon steps taken).
        """
        self._check(other)
        current = self
        steps = 0
        while True:
            nxt = current.quotient(other)
            steps += 1
            if nxt == current:
                return current, steps
            current = nxt

    def saturate_poly(self, f):
        """(self : f^infinity) for a single polynomial, via elimination."""
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        aux, t, lift, drop = _aux_ring(self.ring)
        gens = [lift(g) for g in self.gens]
        gens.append(aux.one() - t * lift(f))
        return Ideal(self.ring, _eliminate_first(gens, aux, drop))

    def translate(self, point):
        return Ideal(self.ring, [g.translate(point) for g in self.gens])

    def _check(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            raise ValueError("expected an ideal of the same ring")


def translate_to_origin(ideal, point):
    """Recenter so that `point` becomes the origin."""
    return ideal.translate(point)


def _aux_ring(ring):
    """Ring with one dominant elimination variable prepended."""
    name = "_t"
    while name in ring.index:
        name += "_"
    aux = PolyRing((name,) + ring.names)
    t = aux.var(name)

    def lift(f):
        return Poly(aux, {(0,) + e: c for e, c in f.items()})

    def drop(f):
        return Poly(ring, {e[1:]: c for e, c in f.items()})

    return aux, t, lift, drop


def _elim_key(e):
    return (e[0], *key_B(e[1:]))


def _eliminate_first(gens, aux, drop):
    gb = interreduce(buchberger(gens, key=_elim_key), key=_elim_key)
    out = []
    for g in gb:
        if all(e[0] == 0 for e in g.support()):
            out.append(drop(g))
    return out


def linear_part_space(ideal):
    """Basis of the span of degree-1 parts of the ideal, in echelon form.

    Only defined for ideals all of whose generators vanish at the
    origin; any polynomial combination then has degree-1 part equal to
    a constant combination of the generators' degree-1 parts, so the
    generators alone determine the space.
    """
    ring = ideal.ring
    origin = (0,) * ring.nvars
    rows = []
    for g in ideal.gens:
        if g.coeff(origin):
            raise ValueError("ideal does not vanish at the origin")
        rows.append([g.coeff(_unit(ring.nvars, i)) for i in range(ring.nvars)])
    reduced, pivots = rref(rows)
    forms = []
    for row in reduced:
        forms.append(
            ring.from_terms(
                (_unit(ring.nvars, i), c) for i, c in enumerate(row) if c
            )
        )
    return tuple(forms)


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))
