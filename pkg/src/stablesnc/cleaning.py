"""Cleaning of a monomial marked ideal by combinatorial blow-ups.

The state is a list of divisors with rational multiplicities and a
threshold d.  A subset of divisors qualifies when its joint locus is
nonempty and its multiplicities sum to at least d; blowing up the
intersection of a minimal qualifying subset either drops one
multiplicity by d (a single divisor) or separates the subset, leaving
a new exceptional divisor that carries the excess.  The exceptional
lives over the old joint locus only, so it meets another divisor just
where that divisor met the whole separated subset.  Cleaning repeats
until nothing qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from heapq import heappop, heappush
from itertools import combinations
from math import ceil, comb, gcd


@dataclass(frozen=True)
class MonomialMarkedIdeal:
    divisors: tuple  # names
    mu: tuple  # multiplicities, Fractions >= 0
    d: Fraction  # threshold, > 0
    kills: tuple = ()  # index subsets separated so far, oldest first
    born: tuple = None  # per divisor: index into kills, or None if original

    def __post_init__(self):
        mu = tuple(Fraction(m) for m in self.mu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "d", Fraction(self.d))
        object.__setattr__(
            self, "kills", tuple(frozenset(k) for k in self.kills)
        )
        if self.born is None:
            object.__setattr__(self, "born", (None,) * len(self.divisors))
        if len(self.divisors) != len(mu):
            raise ValueError("one multiplicity per divisor")
        if len(set(self.divisors)) != len(self.divisors):
            raise ValueError("divisor names repeat")
        if self.d <= 0:
            raise ValueError("threshold must be positive")
        if any(m < 0 for m in mu):
            raise ValueError("multiplicities must be nonnegative")
        if len(self.born) != len(self.divisors):
            raise ValueError("one birth record per divisor")
        for b in self.born:
            if b is not None and not 0 <= b < len(self.kills):
                raise ValueError("birth record points at no separation")
        for k in self.kills:
            if len(k) < 2:
                raise ValueError("separation names at least two divisors")
            for i in k:
                if not 0 <= i < len(self.divisors):
                    raise ValueError("separation names no such divisor")


def _mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _AliveOracle:
    """Joint-locus queries over a growing separation history.

    Divisor sets are bitmasks; a set is alive when its joint locus is
    nonempty.  The youngest member exists only over the locus its
    parents shared just before its birth, minus the parents' own joint
    locus, so aliveness peels young divisors down to a killed-subset
    lookup among the originals.  Kill lookup either enumerates subsets
    of the queried set or scans the history window, whichever is
    smaller.
    """

    def __init__(self, kills, born):
        self.kills = [_mask(k) for k in kills]
        self.born = list(born)
        self.index = {k: i for i, k in enumerate(self.kills)}
        self.sizes = sorted({k.bit_count() for k in self.kills})
        self.memo = {}

    def push_kill(self, mask):
        self.index[mask] = len(self.kills)
        self.kills.append(mask)
        n = mask.bit_count()
        if n not in self.sizes:
            self.sizes = sorted({*self.sizes, n})

    def push_divisor(self, kill_idx):
        self.born.append(kill_idx)

    def _killed_inside(self, m, lo, hi):
        if lo >= hi:
            return False
        n = m.bit_count()
        subsets = sum(comb(n, s) for s in self.sizes if s <= n)
        if subsets > hi - lo:
            kills = self.kills
            for i in range(lo, hi):
                k = kills[i]
                if k & m == k:
                    return True
            return False
        bits = [1 << i for i in _bits(m)]
        index = self.index
        for size in self.sizes:
            if size > n:
                break
            for combo in combinations(bits, size):
                idx = index.get(sum(combo))
                if idx is not None and lo <= idx < hi:
                    return True
        return False

    def alive(self, m, t):
        memo = self.memo
        born = self.born
        trail = []
        out = True
        while True:
            if m & (m - 1) == 0:
                break
            key = (m, t)
            hit = memo.get(key)
            if hit is not None:
                out = hit
                break
            trail.append(key)
            j = -1
            bj = -1
            for i in _bits(m):
                b = born[i]
                if b is not None and b > bj:
                    bj = b
                    j = i
            if j < 0:
                out = not self._killed_inside(m, 0, t)
                break
            if self._killed_inside(m, bj + 1, t):
                out = False
                break
            parents = self.kills[bj]
            rest = m & ~(1 << j)
            if rest & parents == parents:
                out = False
                break
            # every step of the peel preserves aliveness, so the whole
            # trail shares the final answer
            m = rest | parents
            t = bj
        for key in trail:
            memo[key] = out
        return out


def _alive(subset, mmi):
    return _AliveOracle(mmi.kills, mmi.born).alive(
        _mask(subset), len(mmi.kills)
    )


def _replayed_adjacency(n, oracle):
    """Pairwise meeting pattern of all divisors after the kill history.

    Original divisors all meet pairwise.  Replaying the kills in order,
    killing a pair unlinks it, and a fresh divisor gets linked to its
    parents' strict transforms plus whatever was adjacent to every
    parent and still shared a point with the separated locus.
    """
    born = oracle.born
    rows = [0] * n
    originals = 0
    for i in range(n):
        if born[i] is None:
            originals |= 1 << i
    for i in _bits(originals):
        rows[i] = originals & ~(1 << i)
    born_at = {}
    for i in range(n):
        if born[i] is not None:
            born_at.setdefault(born[i], []).append(i)
    for k, kmask in enumerate(oracle.kills):
        if kmask.bit_count() == 2:
            low = kmask & -kmask
            a = low.bit_length() - 1
            b = (kmask ^ low).bit_length() - 1
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
        for w in born_at.get(k, ()):
            parents = list(_bits(kmask))
            pool = rows[parents[0]]
            for p in parents[1:]:
                pool &= rows[p]
            pool |= kmask
            pool &= ~(1 << w)
            wbit = 1 << w
            wrow = 0
            for x in _bits(pool):
                if oracle.alive((1 << x) | wbit, k + 1):
                    wrow |= 1 << x
                    rows[x] |= wbit
            rows[w] = wrow
    return rows


def _minimal_qualifying(mu, d, pool, oracle, t, row, base=(), base_sum=None):
    """Minimal alive subsets drawn from the `pool` bitmask (on top of
    the fixed `base` prefix) whose multiplicities sum to at least d, as
    sorted index tuples.

    Aliveness is downward closed, so a set is minimal exactly when
    dropping its smallest multiplicity leaves a sum below the
    threshold.  The search walks candidates in index order, narrowing
    the pool to the adjacency row of each chosen divisor (which settles
    pair aliveness by itself), asks the oracle only about triples and
    larger, and prunes branches whose pool mass cannot reach the
    threshold.  Sums are compared in integers on the common
    denominator grid.
    """
    g = d.denominator
    for i in _bits(pool):
        g = g * mu[i].denominator // gcd(g, mu[i].denominator)
    for i in base:
        g = g * mu[i].denominator // gcd(g, mu[i].denominator)
    wt = [0] * len(mu)
    for i in _bits(pool):
        wt[i] = int(mu[i] * g)
    for i in base:
        wt[i] = int(mu[i] * g)
    dthr = int(d * g)
    total0 = (
        sum(wt[i] for i in base) if base_sum is None else int(base_sum * g)
    )
    mn0 = min((wt[i] for i in base), default=dthr)
    out = []

    def mass(mask):
        tot = 0
        for i in _bits(mask):
            tot += wt[i]
        return tot

    def walk(chosen, cmask, total, mn, pool):
        rem = mass(pool)
        m = pool
        while m:
            if total + rem < dthr:
                return
            low = m & -m
            x = low.bit_length() - 1
            m ^= low
            rem -= wt[x]
            if len(chosen) >= 2 and not oracle.alive(cmask | low, t):
                continue
            s = total + wt[x]
            if s >= dthr:
                if s - min(mn, wt[x]) < dthr:
                    out.append(tuple(sorted(chosen + (x,))))
            else:
                walk(
                    chosen + (x,), cmask | low, s, min(mn, wt[x]), m & row(x)
                )

    walk(base, _mask(base), total0, mn0, pool)
    out.sort(key=lambda u: (len(u), u))
    return out


def mmi_cosupport(mmi):
    """Minimal qualifying subsets, ordered by size then position.

    A subset qualifies when it is alive (nonempty joint locus) and its
    multiplicities sum to at least the threshold; minimal means no
    proper subset qualifies.
    """
    oracle = _AliveOracle(mmi.kills, mmi.born)
    t = len(mmi.kills)
    singles = [(i,) for i in range(len(mmi.divisors)) if mmi.mu[i] >= mmi.d]
    pool = 0
    for i in range(len(mmi.divisors)):
        if 0 < mmi.mu[i] < mmi.d:
            pool |= 1 << i
    rows = _replayed_adjacency(len(mmi.divisors), oracle)
    rest = _minimal_qualifying(
        mmi.mu, mmi.d, pool, oracle, t, rows.__getitem__
    )
    return singles + rest


def _fresh_divisor_name(existing):
    k = len(existing) + 1
    taken = set(existing)
    while f"E{k}" in taken:
        k += 1
    return f"E{k}"


def cleaning_bound(mmi):
    """Step budget: generous but finite.

    Every point of a fresh exceptional sees a multiplicity sum strictly
    below the sum at the point it sits over (minimality of the
    separated subset gives excess + any proper part < the whole), so
    local sums fall through the value grid of the inputs and the
    separation tower over any single stratum is shallow.  The budget
    charges one sweep of the original subsets for every tuple of grid
    levels, one level per original divisor; it is loose, never a tight
    count.
    """
    total = sum(mmi.mu, Fraction(0))
    if total < mmi.d:
        return 1
    levels = ceil(total / mmi.d)
    grid = mmi.d.denominator
    for m in mmi.mu:
        grid = grid * m.denominator // gcd(grid, m.denominator)
    depth = ceil(total * grid / mmi.d)
    return (levels + depth ** len(mmi.mu)) * 2 ** len(mmi.mu)


def clean_monomial_marked(mmi):
    """Clean until no subset qualifies; returns (final state, steps).

    Each step takes the first minimal qualifying subset.  A singleton
    loses one threshold's worth of multiplicity in place.  A larger
    subset is separated: it joins the kills and the excess
    multiplicity, if any, lands on a fresh exceptional divisor born
    over the separated locus.

    The step order matches taking mmi_cosupport(...)[0] repeatedly, but
    the worklist is maintained incrementally: all reductions happen
    while some multiplicity still reaches the threshold, and after that
    multiplicities never change, so separating S only removes S from
    the cosupport and adds minimal sets through the fresh divisor.
    """
    bound = max(cleaning_bound(mmi), 1)
    names = list(mmi.divisors)
    mu = list(mmi.mu)
    d = mmi.d
    oracle = _AliveOracle(mmi.kills, mmi.born)
    steps = []

    def spend(step):
        if len(steps) >= bound:
            raise RuntimeError("cleaning step budget exceeded")
        steps.append(step)

    for i in range(len(mu)):
        while mu[i] >= d:
            spend(("reduce", names[i], d))
            mu[i] -= d

    # pairwise adjacency as bitmasks; killing a pair unlinks it, a
    # larger kill leaves every pair intact
    adj = _replayed_adjacency(len(mu), oracle)

    def adj_row(i):
        return adj[i]

    all_pool = 0
    for i in range(len(mu)):
        if mu[i] > 0:
            all_pool |= 1 << i
    work = []
    for t in _minimal_qualifying(
        mu, d, all_pool, oracle, len(oracle.kills), adj_row
    ):
        heappush(work, (len(t), t))

    while work:
        _, s = heappop(work)
        excess = sum(mu[i] for i in s) - d
        fresh = _fresh_divisor_name(names) if excess > 0 else None
        spend(("separate", tuple(names[i] for i in s), fresh, excess))
        smask = _mask(s)
        oracle.push_kill(smask)
        if len(s) == 2:
            a, b = s
            adj[a] &= ~(1 << b)
            adj[b] &= ~(1 << a)
        if fresh is None:
            continue
        w = len(names)
        names.append(fresh)
        mu.append(excess)
        oracle.push_divisor(len(oracle.kills) - 1)
        # candidates: the parents themselves (each strict transform
        # meets the fresh exceptional) and anything adjacent to all of
        # them; anything else already misses some parent pairwise
        pool = adj[s[0]]
        for i in s[1:]:
            pool &= adj[i]
        pool |= smask
        now = len(oracle.kills)
        wbit = 1 << w
        wrow = 0
        for x in _bits(pool):
            if oracle.alive((1 << x) | wbit, now):
                wrow |= 1 << x
                adj[x] |= wbit
        adj.append(wrow)
        if len(oracle.memo) > 2_000_000:
            oracle.memo.clear()
        for t in _minimal_qualifying(
            mu, d, wrow, oracle, now, adj_row, base=(w,), base_sum=excess
        ):
            heappush(work, (len(t), t))

    final = MonomialMarkedIdeal(
        tuple(names),
        tuple(mu),
        d,
        tuple(frozenset(_bits(k)) for k in oracle.kills),
        tuple(oracle.born),
    )
    return final, tuple(steps)


def mu_exponents(poly):
    """Multiplicity of each variable in a monomial, by name."""
    if not poly.is_term():
        raise ValueError("not a monomial")
    exp = poly.lead_exp()
    return {
        poly.ring.names[i]: Fraction(a) for i, a in enumerate(exp) if a > 0
    }
