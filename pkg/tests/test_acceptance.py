"""The acceptance gate: one test per criterion, exact assertions only.

Each test prints an ACCEPT-NN PASS/FAIL line (echoed after the run by
the conftest summary hook).  Random corpora use fixed seeds; the
"all instances" suites state their finite grids inline.
"""

import functools
import io
import json
import random
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

from stablesnc.blowup import make_charts, transform_ideal, transform_triple
from stablesnc.cleaning import (
    MonomialMarkedIdeal,
    clean_monomial_marked,
    cleaning_bound,
    mmi_cosupport,
)
from stablesnc.cli import run_command
from stablesnc.geometry import (
    Boundary,
    BoundaryComponent,
    Component,
    Divisor,
    DivisorPart,
    Triple,
    build_divisor,
    special_invariant,
    stable_snc_pair,
    stable_snc_triple,
    stable_snc_variety,
    stratum_key,
)
from stablesnc.hilbert import (
    Diagram,
    diagram_count,
    hs_function,
    hs_value_oracle,
    minimalize_exps,
)
from stablesnc.ideals import Ideal
from stablesnc.obstruction import obstruction_ideal
from stablesnc.pipeline import desing_stable_snc, verify_run
from stablesnc.poly import PolyRing

DATA = Path(__file__).parent / "data"
LINES = []


def criterion(n):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            try:
                fn()
            except BaseException:
                LINES.append(f"ACCEPT-{n:02d} FAIL")
                print(f"ACCEPT-{n:02d} FAIL")
                raise
            LINES.append(f"ACCEPT-{n:02d} PASS")
            print(f"ACCEPT-{n:02d} PASS")

        return wrapper

    return deco


def comps(ring, *gens_lists):
    return tuple(
        Component(f"X{i + 1}", Ideal(ring, list(g)))
        for i, g in enumerate(gens_lists)
    )


def cli(*argv):
    buf = io.BytesIO()
    code = run_command([str(a) for a in argv], stdout=buf)
    return code, json.loads(buf.getvalue()) if buf.getvalue() else None


@criterion(1)
def test_accept_01_three_axes():
    ring = PolyRing(["x", "y", "z"])
    axes = comps(ring, ["x", "y"], ["y", "z"], ["x", "z"])
    assert stable_snc_variety(axes, (0, 0, 0)).ok is False
    two = comps(ring, ["x", "y"], ["y", "z"])
    assert stable_snc_variety(two, (0, 0, 0)).ok is True
    # and through the command line, as full local reports
    code, report = cli("check", DATA / "threeaxes.snc", "--point", "origin")
    assert code == 1
    assert report["results"][0]["stable_snc"]["variety"] is False
    code, report = cli("check", DATA / "twoaxes.snc", "--point", "origin")
    assert code == 0
    assert report["results"][0]["stable_snc"]["variety"] is True


@criterion(2)
def test_accept_02_twisted_planes():
    ring = PolyRing(["x", "y", "z", "t", "u"])
    pair = comps(ring, ["x", "y"], ["x + u*z", "y + u*t"])
    assert stable_snc_variety(pair, (0, 0, 0, 0, 0)).ok is False
    assert stable_snc_variety(pair, (0, 0, 0, 0, 1)).ok is True


@criterion(3)
def test_accept_03_weighted_divisor():
    ring = PolyRing(["x", "y", "z"])
    planes = comps(ring, ["x"], ["y"])
    origin = (0, 0, 0)
    for a1, a2 in [(1, 1), (1, 2), (Fraction(3, 2), Fraction(3, 2))]:
        D = build_divisor(
            planes,
            [(Ideal(ring, ["x", "z"]), a1), (Ideal(ring, ["y", "z"]), a2)],
        )
        assert stable_snc_pair(planes, D, origin).ok is (a1 == a2)


@criterion(4)
def test_accept_04_intersection_identity():
    ring = PolyRing(["x", "y", "z", "w"])
    A = Ideal(ring, ["x", "y"])
    B = Ideal(ring, ["x + w^2", "y + w*z"])
    got = A.intersect(B)
    frozen = Ideal(
        ring,
        ["x^2 + x*w^2", "x*y + y*w^2", "y^2 + y*w*z", "y*w - x*z"],
    )
    # mutual membership, generator by generator
    assert all(frozen.contains(g) for g in got.gens)
    assert all(got.contains(g) for g in frozen.gens)

    X = A.intersect(Ideal(ring, ["w", "z"]))
    hX = hs_function(X, cutoff=12)
    hY = hs_function(got, cutoff=12)
    assert [hX.value(k) for k in range(13)] == [
        hY.value(k) for k in range(13)
    ]


@criterion(5)
def test_accept_05_special_invariant():
    inf = float("inf")
    assert special_invariant((1, 1, 1), (0,)) == (3, 0, 1, 0, 1, 0, inf)


@criterion(6)
def test_accept_06_stratum():
    ring = PolyRing(["x1", "x2", "x3", "x4", "y1", "y2"])
    cs = comps(ring, ["x1", "x2"], ["x4"], ["x3"])
    D = build_divisor(
        cs,
        [
            (Ideal(ring, ["x1", "x2", "y1"]), 1),
            (Ideal(ring, ["x3", "y1"]), 1),
            (Ideal(ring, ["x3", "y2"]), 1),
        ],
    )
    assert stratum_key(cs, D.parts, (0,) * 6) == ((6, (2, 1)), 1)


@criterion(7)
def test_accept_07_obstruction_chain():
    ring = PolyRing(["x1", "x2", "y", "z", "w"])
    cs = comps(ring, ["x1"], ["x2"])
    D = build_divisor(
        cs,
        [
            (Ideal(ring, ["x1", "y"]), 1),
            (Ideal(ring, ["x2", "x1 + y*z*w"]), 1),
        ],
    )
    assert obstruction_ideal(cs, D.parts) == Ideal(ring, ["x1", "x2", "z*w"])

    triple = Triple(ring, cs, D, Boundary(()))
    cert = desing_stable_snc(triple)
    assert cert.accepted
    ok, reasons = verify_run(cert)
    assert ok, reasons

    # the distinguished chart lineage: three blow-ups, then J = (1)
    lineage = {s[1]: s[2:] for s in cert.steps}
    assert lineage[""] == ("obstruction-blowup", ("x1", "x2", "z", "w"))
    assert lineage["z"] == ("obstruction-blowup", ("x1", "x2", "w"))
    assert lineage["z/w"] == ("boundary-cleaning", ("x1", "x2", "z"))

    by_path = {}

    def walk(node):
        by_path[node.path] = node
        for c in node.children:
            walk(c)

    walk(cert.tree)
    Jpp = obstruction_ideal(
        by_path["z/w"].triple.components, by_path["z/w"].triple.divisor.parts
    )
    assert Jpp == Ideal(by_path["z/w"].triple.ring, ["x1", "x2", "z"])
    final = by_path["z/w/z"].triple
    assert obstruction_ideal(final.components, final.divisor.parts).is_unit()
    assert stable_snc_triple(final, (0, 0, 0, 0, 0)).ok is True

    # the command line reproduces it
    code, report = cli("desing", DATA / "jexample.snc")
    assert code == 0
    steps = {
        s["path"]: (s["tag"], s["center"])
        for s in report["certificate"]["steps"]
    }
    assert steps["<root>"] == ("obstruction-blowup", ["x1", "x2", "z", "w"])
    assert steps["z-chart"] == ("obstruction-blowup", ["x1", "x2", "w"])
    assert steps["z-chart/w-chart"] == (
        "boundary-cleaning",
        ["x1", "x2", "z"],
    )
    assert report["certificate"]["accepted"] is True
    assert report["certificate"]["verified"] is True


@criterion(8)
def test_accept_08_counterexample_regression():
    ring = PolyRing(["w", "x", "y", "z"])
    gens = [["z", "x"], ["z", "y"], ["z + x*w", "x + y"]]
    cs = comps(ring, *gens)
    triple = Triple(ring, cs, Divisor(()), Boundary(()), mode="general")
    _, charted = transform_triple(triple, ("w", "x", "y", "z"))
    chart, back = charted[0]
    assert chart.name == "w-chart"
    for comp, original in zip(back.components, gens):
        assert comp.ideal == Ideal(ring, original)
    assert [b.name for b in back.boundary.comps] == ["E1"]
    assert back.boundary.comps[0].ideal == Ideal(ring, ["w"])
    assert stable_snc_triple(back, (0, 0, 0, 0)).ok is False


def random_poly(rng, ring, maxdeg):
    n = ring.nvars
    terms = {}
    for _ in range(rng.randint(1, 4)):
        while True:
            e = tuple(rng.randint(0, maxdeg) for _ in range(n))
            if sum(e) <= maxdeg:
                break
        terms[e] = Fraction(rng.choice([-2, -1, 1, 2]))
    return ring.from_terms(terms.items())


def random_corpus():
    """200 random ideals, n <= 3, generator degree <= 3, fixed seed."""
    rng = random.Random(90125)
    rings = {n: PolyRing(["x", "y", "z"][:n]) for n in (1, 2, 3)}
    corpus = []
    while len(corpus) < 200:
        ring = rings[rng.randint(1, 3)]
        gens = [random_poly(rng, ring, 3) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            corpus.append(Ideal(ring, gens))
    return corpus


@criterion(9)
def test_accept_09_hilbert_suite():
    for ideal in random_corpus():
        origin = (0,) * ideal.ring.nvars
        h = hs_function(ideal, cutoff=6)
        for k in range(7):
            assert h.value(k) == hs_value_oracle(ideal, origin, k), ideal

    # every monomial ideal with <= 3 generators of degree <= 4, n <= 3
    for n in (1, 2, 3):
        exps = [
            e
            for e in product(range(5), repeat=n)
            if 1 <= sum(e) <= 4
        ]
        pool = [
            minimalize_exps(list(choice))
            for size in (1, 2, 3)
            for choice in combinations(exps, size)
        ]
        for gens in {tuple(sorted(g)) for g in pool}:
            diagram = Diagram(n, tuple(gens))
            for k in range(7):
                brute = sum(
                    1
                    for e in product(range(k + 1), repeat=n)
                    if sum(e) <= k and not diagram.contains(e)
                )
                assert diagram_count(diagram, k) == brute, gens


@criterion(10)
def test_accept_10_ideal_algebra_suite():
    corpus = random_corpus()
    by_ring = {}
    for ideal in corpus:
        by_ring.setdefault(ideal.ring, []).append(ideal)
    pairs = 0
    for ideals in by_ring.values():
        for a, b in zip(ideals, ideals[1:]):
            colon = a.quotient(b)
            assert a.contains_ideal(colon * b)
            meet = a.intersect(b)
            assert a.contains_ideal(meet) and b.contains_ideal(meet)
            sat, _ = a.saturate(b)
            assert sat.saturate(b)[0] == sat
            pairs += 1
    assert pairs >= 190


@criterion(11)
def test_accept_11_transform_suite():
    rng = random.Random(5150)
    names = ["x", "y", "z", "t", "u"]
    done = 0
    while done < 100:
        n = rng.randint(4, 5)
        ring = PolyRing(names[:n])
        g = random_poly(rng, ring, 3)
        if g.is_zero() or g.is_constant():
            continue
        spare = list(ring.names)
        rng.shuffle(spare)
        host_var, edge_var = spare[0], spare[1]
        size = rng.randint(2, n - 2)
        center = tuple(sorted(spare[2:2 + size]))
        principal = Ideal(ring, [g])
        for chart in make_charts(ring, center):
            total, strict = transform_ideal(principal, chart)
            tg = chart.substitute(g)
            order = min(e[chart.pivot] for e in tg.support())
            exc = chart.exceptional()
            rebuilt = Ideal(ring, [h * exc**order for h in strict.gens])
            assert rebuilt == total

        triple = Triple(
            ring,
            comps(ring, [host_var]),
            Divisor(()),
            Boundary(
                (BoundaryComponent("E1", Ideal(ring, [edge_var])),)
            ),
        )
        _, charted = transform_triple(triple, center)
        for chart, back in charted:
            assert len(back.boundary.comps) == 2
            assert back.boundary.comps[0].name == "E1"
            last = back.boundary.comps[-1]
            assert last.name == "E2"
            assert last.ideal == Ideal(ring, [chart.exceptional()])
        done += 1


@criterion(12)
def test_accept_12_cleaning_suite():
    # grid: mu in {p/q <= 2 : q <= 6}, exhaustive for <= 2 divisors,
    # 200 seeded samples each for 3 and 4 divisors, d in {1, 2}
    values = sorted(
        {Fraction(p, q) for q in range(1, 7) for p in range(0, 2 * q + 1)}
    )
    names = ("E1", "E2", "E3", "E4")

    def check(mu, d):
        mmi = MonomialMarkedIdeal(names[: len(mu)], mu, d)
        final, steps = clean_monomial_marked(mmi)
        assert not mmi_cosupport(final)
        assert len(steps) <= cleaning_bound(mmi)

    for d in (1, 2):
        for mu in values:
            check((mu,), d)
        for mu in product(values, repeat=2):
            check(mu, d)
    rng = random.Random(2112)
    for m in (3, 4):
        for _ in range(200):
            mu = tuple(rng.choice(values) for _ in range(m))
            check(mu, rng.choice((1, 2)))


def transversality_oracle(subsets, n):
    """Set arithmetic on frame axes: the codimension formula."""
    union = set().union(*subsets)
    meet = set(subsets[0]).intersection(*subsets[1:])
    m = len(subsets)
    return len(union) == sum(len(s) for s in subsets) - (m - 1) * len(meet)


@criterion(13)
def test_accept_13_variety_oracle_equivalence():
    for n in range(1, 6):
        ring = PolyRing([f"x{i}" for i in range(1, n + 1)])
        subsets = [
            s
            for size in range(1, n + 1)
            for s in combinations(range(n), size)
        ]
        origin = (0,) * n
        for m in (1, 2, 3):
            for choice in combinations(subsets, m):
                sets = [set(s) for s in choice]
                if any(
                    a <= b
                    for a, b in product(sets, repeat=2)
                    if a is not b
                ):
                    continue  # nested components are rejected as input
                cs = comps(
                    ring, *[[ring.names[i] for i in sorted(s)] for s in sets]
                )
                verdict = stable_snc_variety(cs, origin)
                assert verdict.ok is transversality_oracle(sets, n), choice


@criterion(14)
def test_accept_14_component_order_functoriality():
    rng = random.Random(424242)
    ring = PolyRing(["x", "y", "z", "w"])
    produced = 0
    while produced < 20:
        m = rng.randint(2, 3)
        sets = []
        for _ in range(m):
            size = rng.randint(1, 3)
            sets.append(frozenset(rng.sample(range(4), size)))
        if len(set(sets)) != m:
            continue
        if any(a <= b for a, b in product(sets, repeat=2) if a is not b):
            continue
        gens_lists = [[ring.names[i] for i in sorted(s)] for s in sets]
        base = comps(ring, *gens_lists)
        order = list(range(m))
        rng.shuffle(order)
        if order == list(range(m)):
            order.reverse()
        shuffled = tuple(base[i] for i in order)
        certs = []
        for cs in (base, shuffled):
            triple = Triple(ring, cs, Divisor(()), Boundary(()))
            cert = desing_stable_snc(triple)
            assert cert.accepted
            certs.append(cert)
        assert certs[0].steps == certs[1].steps
        assert certs[0].leaf_reports == certs[1].leaf_reports
        produced += 1
