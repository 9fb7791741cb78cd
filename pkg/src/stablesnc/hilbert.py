"""Local Hilbert-Samuel functions, exactly.

H_I(k) at a point a is dim_Q of Q[x]/(I_a + m^{k+1}) where I_a is the
ideal recentered at a and m is the maximal ideal of the origin.  Two
independent routes are implemented:

* hs_function: leading-term counting via a degree-truncated Buchberger
  run per k (with a closed-form fast path for monomial ideals), plus a
  certified polynomial tail when one can be established;
* hs_value_oracle: straight linear algebra, the rank of the space of
  truncated generator multiples.  No Groebner theory involved, which
  is why it serves as the cross-check oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ideals import Ideal, monomial_dim, reduce_poly
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


def comb_count(m, n):
    """Number of monomials of total degree <= m in n variables."""
    return math.comb(m + n, n) if m >= 0 else 0


def degree_exponents(n, d):
    """All exponent tuples in n variables of total degree exactly d."""
    if n == 1:
        yield (d,)
        return
    for i in range(d + 1):
        for rest in degree_exponents(n - 1, d - i):
            yield (i,) + rest


def minimalize_exps(exps):
    """Minimal generators of the monomial ideal spanned by `exps`."""
    out = []
    for e in sorted(set(exps), key=key_B):
        if not any(exp_divides(f, e) for f in out):
            out.append(e)
    return tuple(out)


@dataclass(frozen=True)
class Diagram:
    """Minimal monomial generators of a monomial ideal."""

    nvars: int
    exps: tuple

    def contains(self, e):
        return any(exp_divides(f, e) for f in self.exps)


def diagram_of(ideal):
    if not ideal.is_monomial():
        raise ValueError("not a monomial ideal")
    return Diagram(
        ideal.ring.nvars, tuple(g.lead_exp() for g in ideal.groebner())
    )


_AGG_CACHE = {}


def _inclusion_exclusion(diagram):
    """Signed lcm aggregation: {lcm exponent: coefficient}.

    The number of monomials of degree <= k outside the ideal is
    sum(c * comb_count(k - |e|, n)) over the entries.  Subsets of
    generators with equal lcm collapse into one entry, which keeps the
    dictionary small even for many generators.
    """
    if diagram in _AGG_CACHE:
        return _AGG_CACHE[diagram]
    acc = {(0,) * diagram.nvars: 1}
    for e in diagram.exps:
        new = dict(acc)
        for f, c in acc.items():
            l = exp_lcm(f, e)
            nc = new.get(l, 0) - c
            if nc:
                new[l] = nc
            else:
                new.pop(l, None)
        acc = new
    _AGG_CACHE[diagram] = acc
    return acc


def diagram_count(diagram, k):
    """Monomials of degree <= k not in the monomial ideal."""
    agg = _inclusion_exclusion(diagram)
    n = diagram.nvars
    return sum(c * comb_count(k - sum(e), n) for e, c in agg.items())


def _binom_poly(d, n):
    """comb_count(k - d, n) as a polynomial in k: prod(k - d + i)/n!."""
    coeffs = [Fraction(1)]
    for i in range(1, n + 1):
        shift = Fraction(i - d)
        # multiply by (k + shift)
        new = [_ZERO] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            new[j] += c * shift
            new[j + 1] += c
        coeffs = new
    fact = Fraction(1, math.factorial(n))
    return [c * fact for c in coeffs]


def poly_eval(coeffs, k):
    total = _ZERO
    for c in reversed(coeffs):
        total = total * k + c
    return total


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _diagram_poly(diagram):
    """Exact eventual polynomial of k -> diagram_count(diagram, k).

    Returns (coefficients, certified stabilization degree): the count
    agrees with the polynomial for every k >= that degree, because each
    binomial term prod(k - d + i) is either the true count (k >= d) or
    zero together with the true count (d - n <= k < d).
    """
    agg = _inclusion_exclusion(diagram)
    n = diagram.nvars
    coeffs = [_ZERO] * (n + 1)
    stab = 0
    for e, c in agg.items():
        d = sum(e)
        stab = max(stab, d - n)
        for j, v in enumerate(_binom_poly(d, n)):
            coeffs[j] += c * v
    return _trim(coeffs), stab


@dataclass(frozen=True)
class HSFunction:
    """Hilbert-Samuel values H(0..cutoff), with an optional exact tail.

    When `exact` is set, `poly` gives the polynomial that the function
    equals for all k >= stabilization, so value(k) is defined for every
    k.  Otherwise only the table is trusted.
    """

    values: tuple
    cutoff: int
    poly: tuple | None
    stabilization: int | None
    exact: bool

    def value(self, k):
        if k < 0:
            raise ValueError("negative k")
        if k < len(self.values):
            return self.values[k]
        if self.exact:
            # tables of exact functions always reach the stabilization
            # degree, so the polynomial applies here
            v = poly_eval(self.poly, k)
            return int(v)
        raise ValueError(f"k={k} beyond cutoff {self.cutoff} of inexact table")

    def degree(self):
        """Degree of the eventual polynomial; the local dimension."""
        if not self.exact:
            raise ValueError("Hilbert-Samuel tail not certified")
        return len(self.poly) - 1 if self.poly else -1

    def __str__(self):
        tail = "exact" if self.exact else "table only"
        return f"HS{list(self.values)} ({tail})"


def _low_part(h):
    """Terms of degree strictly below the top degree of h."""
    return h - h.homogeneous_part(sum(h.lead_exp()))


def truncated_gb(gb, bound):
    """Basis whose leads generate in((gb) + m^bound) up to degree < bound.

    `gb` must be a reduced Groebner basis.  All arithmetic is truncated
    to degree <= bound - 1, so the monomial block m^bound stays
    implicit.  Mutual S-pairs of the surviving gb elements are skipped
    (they reduce to zero already in the untruncated ring); S-pairs
    against the m^bound block are covered by the border candidates
    x^beta * h for |beta| = bound - deg(lt h), which are nonzero only
    when h is not homogeneous.
    """
    k = bound - 1
    ring = gb[0].ring if gb else None
    basis = []
    worklist = []
    for g in gb:
        if sum(g.lead_exp()) <= k:
            basis.append(g)
        else:
            t = g.truncate(k)
            if not t.is_zero():
                worklist.append(t)
    nlow = len(basis)
    lead = [g.lead_exp() for g in basis]
    pending = set()

    def enqueue_borders(h):
        if h.is_term():
            return
        low = _low_part(h)
        if low.is_zero():
            return
        low = low * (1 / h.lead_coeff())
        need = k + 1 - sum(h.lead_exp())
        for beta in degree_exponents(ring.nvars, need):
            cand = (low * ring.monomial(beta)).truncate(k)
            if not cand.is_zero():
                worklist.append(cand)

    for h in basis:
        enqueue_borders(h)

    def lcm_key(pair):
        return key_B(exp_lcm(lead[pair[0]], lead[pair[1]]))

    def absorb(f):
        r = reduce_poly(f, basis, maxdeg=k)
        if r.is_zero():
            return
        r = r.monic()
        new = len(basis)
        basis.append(r)
        lead.append(r.lead_exp())
        for i in range(new):
            pending.add((i, new))
        enqueue_borders(r)

    while worklist or pending:
        if worklist:
            absorb(worklist.pop())
            continue
        i, j = min(pending, key=lcm_key)
        pending.discard((i, j))
        li, lj = lead[i], lead[j]
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if basis[i].is_term() and basis[j].is_term():
            continue
        l = exp_lcm(li, lj)
        skip = False
        for t in range(len(basis)):
            if t == i or t == j:
                continue
            if not exp_divides(lead[t], l):
                continue
            a = (min(i, t), max(i, t))
            b = (min(j, t), max(j, t))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue
        mi = ring.monomial(exp_div(l, li), 1 / basis[i].lead_coeff())
        mj = ring.monomial(exp_div(l, lj), 1 / basis[j].lead_coeff())
        s = (basis[i] * mi - basis[j] * mj).truncate(k)
        absorb(s)
    return basis


def _interpolate(xs, ys):
    """Coefficients of the unique polynomial through the given points."""
    coeffs = [_ZERO] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if i == j:
                continue
            # multiply num by (x - xj)
            new = [_ZERO] * (len(num) + 1)
            for t, c in enumerate(num):
                new[t] -= c * xj
                new[t + 1] += c
            num = new
            den *= xi - xj
        scale = Fraction(yi) / den
        for t, c in enumerate(num):
            coeffs[t] += scale * c
    return _trim(coeffs)


_HS_CACHE = {}


def hs_function(ideal, point=None, cutoff=None):
    """Table (and, when certified, polynomial tail) of H_I at `point`.

    The default cutoff is 2 * (sum of generator degrees) + nvars.  For
    non-monomial ideals the tail is certified by fitting a polynomial
    of degree at most dim(in I_a) to the trailing values and checking
    it on the last two; for monomial ideals it is exact by counting.
    """
    ring = ideal.ring
    if point is not None and any(Fraction(a) for a in point):
        ideal = ideal.translate(point)
    if cutoff is None:
        total = sum(max(g.degree(), 1) for g in ideal.gens)
        cutoff = 2 * max(total, 1) + ring.nvars
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    gb = ideal.groebner()
    key = (ring, gb, cutoff)
    hit = _HS_CACHE.get(key)
    if hit is not None:
        return hit
    if len(gb) == 1 and gb[0].is_constant():
        # point not on the zero set: the local quotient vanishes
        result = HSFunction((0,) * (cutoff + 1), cutoff, (), 0, True)
    elif all(g.is_term() for g in gb):
        diagram = Diagram(ring.nvars, tuple(g.lead_exp() for g in gb))
        coeffs, stab = _diagram_poly(diagram)
        values = tuple(
            diagram_count(diagram, k) for k in range(max(cutoff, stab) + 1)
        )
        while stab > 0 and values[stab - 1] == poly_eval(coeffs, stab - 1):
            stab -= 1
        result = HSFunction(values, cutoff, coeffs, stab, True)
    else:
        values = tuple(
            comb_count(k, ring.nvars) - _sparse_rank(_truncated_rows(gb, k))
            for k in range(cutoff + 1)
        )
        dmax = monomial_dim([g.lead_exp() for g in gb], ring.nvars)
        result = None
        if dmax >= 0 and cutoff >= dmax + 3:
            xs = list(range(cutoff - 2 - dmax, cutoff - 1))
            ys = [values[x] for x in xs]
            coeffs = _interpolate(xs, ys)
            if all(
                poly_eval(coeffs, k) == values[k]
                for k in range(cutoff - 2 - dmax, cutoff + 1)
            ):
                stab = cutoff - 2 - dmax
                while stab > 0 and poly_eval(coeffs, stab - 1) == values[stab - 1]:
                    stab -= 1
                result = HSFunction(values, cutoff, coeffs, stab, True)
        if result is None:
            result = HSFunction(values, cutoff, None, None, False)
    _HS_CACHE[key] = result
    return result


def _truncated_rows(gens, k):
    """Truncations of x^beta * g spanning the image of (gens) mod m^(k+1).

    Any f = sum h_i g_i truncates to a combination of trunc(x^beta
    g_i); multiples with |beta| > k - ord(g) truncate to zero, so the
    listed rows span the whole image.
    """
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        ring = g.ring
        o = g.order()
        for b in range(0, k - o + 1):
            for beta in degree_exponents(ring.nvars, b):
                row = (g * ring.monomial(beta)).truncate(k)
                if not row.is_zero():
                    rows.append(dict(row.items()))
    return rows


def hs_value_oracle(ideal, point, k):
    """H_I(k) by rank counting straight from the given generators."""
    ring = ideal.ring
    if point is not None and any(Fraction(a) for a in point):
        ideal = ideal.translate(point)
    return comb_count(k, ring.nvars) - _sparse_rank(
        _truncated_rows(ideal.gens, k)
    )


def _sparse_rank(rows):
    echelon = {}
    for row in rows:
        row = dict(row)
        while row:
            p = min(row, key=key_B)
            piv = echelon.get(p)
            if piv is None:
                inv = 1 / row[p]
                echelon[p] = {e: c * inv for e, c in row.items()}
                break
            factor = row[p]
            for e, c in piv.items():
                nc = row.get(e, _ZERO) - factor * c
                if nc:
                    row[e] = nc
                else:
                    row.pop(e, None)
    return len(echelon)


def hs_omega_q(omega, q, cutoff=8):
    """Reference Hilbert-Samuel function of the transverse model.

    omega = (e, (c_1, ..., c_m)): in e variables, take one block of c_i
    fresh coordinates per part plus a single product y_1...y_q, and
    intersect the ideals (block_i, y_1...y_q).  Requires q >= 1 and
    sum(c) + q <= e.
    """
    e, c = omega
    c = tuple(c)
    if q < 1:
        raise ValueError("q must be >= 1")
    if sum(c) + q > e:
        raise ValueError("model needs sum(c) + q <= e variables")
    if any(ci < 0 for ci in c) or not c:
        raise ValueError("bad codimension tuple")
    # exponent layout: blocks of c_i, then q product variables, then fill
    factors = []
    offset = 0
    y_exp = [0] * e
    for i in range(sum(c), sum(c) + q):
        y_exp[i] = 1
    y_exp = tuple(y_exp)
    for ci in c:
        gens = []
        for j in range(offset, offset + ci):
            unit = [0] * e
            unit[j] = 1
            gens.append(tuple(unit))
        gens.append(y_exp)
        factors.append(gens)
        offset += ci
    inter = [(0,) * e]
    for gens in factors:
        inter = [exp_lcm(a, b) for a in inter for b in gens]
        inter = list(minimalize_exps(inter))
    diagram = Diagram(e, minimalize_exps(inter))
    coeffs, stab = _diagram_poly(diagram)
    values = tuple(
        diagram_count(diagram, k) for k in range(max(cutoff, stab) + 1)
    )
    while stab > 0 and values[stab - 1] == poly_eval(coeffs, stab - 1):
        stab -= 1
    return HSFunction(values, cutoff, coeffs, stab, True)


def _cauchy_bound(coeffs):
    lead = coeffs[-1]
    top = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else _ZERO
    return 1 + math.ceil(top / abs(lead))


def hs_compare(f, g):
    """Pointwise comparison of two Hilbert-Samuel functions.

    Returns one of "equal", "less", "greater", "incomparable",
    "unknown".  less means f(k) <= g(k) everywhere with some strict k.
    Without certified tails only a finite window is available, so the
    verdict can be "unknown"; two uncertified tables must share the
    same cutoff to be comparable at all.
    """
    if f.exact and g.exact:
        diff = [
            (f.poly[i] if i < len(f.poly) else _ZERO)
            - (g.poly[i] if i < len(g.poly) else _ZERO)
            for i in range(max(len(f.poly), len(g.poly)))
        ]
        diff = _trim(diff)
        horizon = max(f.stabilization, g.stabilization)
        if diff:
            horizon = max(horizon, _cauchy_bound(diff))
        below = above = False
        for k in range(horizon + 1):
            fv, gv = f.value(k), g.value(k)
            if fv < gv:
                below = True
            elif fv > gv:
                above = True
        if diff:
            if diff[-1] < 0:
                below = True
            else:
                above = True
        if below and above:
            return "incomparable"
        if below:
            return "less"
        if above:
            return "greater"
        return "equal"
    if not f.exact and not g.exact and f.cutoff != g.cutoff:
        raise ValueError("cannot compare uncertified tables of different cutoffs")
    window = min(h.cutoff for h in (f, g) if not h.exact)
    below = above = False
    for k in range(window + 1):
        fv, gv = f.value(k), g.value(k)
        if fv < gv:
            below = True
        elif fv > gv:
            above = True
    if below and above:
        return "incomparable"
    return "unknown"
