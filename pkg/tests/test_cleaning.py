from fractions import Fraction

import pytest

from stablesnc.cleaning import (
    MonomialMarkedIdeal,
    clean_monomial_marked,
    cleaning_bound,
    mmi_cosupport,
    mu_exponents,
)
from stablesnc.poly import PolyRing


def mmi(mu, d, names=None, kills=()):
    names = names or tuple(f"E{i + 1}" for i in range(len(mu)))
    return MonomialMarkedIdeal(tuple(names), tuple(mu), d, kills)


def test_validation():
    with pytest.raises(ValueError, match="one multiplicity per divisor"):
        MonomialMarkedIdeal(("E1",), (1, 2), 1)
    with pytest.raises(ValueError, match="names repeat"):
        MonomialMarkedIdeal(("E1", "E1"), (1, 2), 1)
    with pytest.raises(ValueError, match="positive"):
        mmi([1], 0)
    with pytest.raises(ValueError, match="nonnegative"):
        mmi([-1], 1)


def test_cosupport_order_and_minimality():
    m = mmi([2, 1, 1], 2)
    # the singleton swallows every superset
    assert mmi_cosupport(m) == [(0,), (1, 2)]
    m = mmi([1, 1, 1], 2)
    assert mmi_cosupport(m) == [(0, 1), (0, 2), (1, 2)]
    # separated subsets and their supersets no longer count
    m = mmi([1, 1, 1], 2, kills=({0, 1},))
    assert mmi_cosupport(m) == [(0, 2), (1, 2)]
    m = mmi([1, 1, 1], 3, kills=({0, 1},))
    assert mmi_cosupport(m) == []


def test_clean_singleton_runs():
    final, steps = clean_monomial_marked(mmi([5], 2))
    assert final.mu == (Fraction(1),)
    assert steps == (("reduce", "E1", 2), ("reduce", "E1", 2))
    final, steps = clean_monomial_marked(mmi([2, 1], 2))
    assert final.mu == (Fraction(0), Fraction(1))
    assert len(steps) == 1


def test_clean_separation_frozen():
    final, steps = clean_monomial_marked(mmi([Fraction(3, 2), 1], 2))
    assert final.divisors == ("E1", "E2", "E3")
    assert final.mu == (Fraction(3, 2), 1, Fraction(1, 2))
    assert final.kills == (frozenset({0, 1}), frozenset({0, 2}))
    assert final.born == (None, None, 0)
    assert steps == (
        ("separate", ("E1", "E2"), "E3", Fraction(1, 2)),
        ("separate", ("E1", "E3"), None, Fraction(0)),
    )
    assert mmi_cosupport(final) == []


def test_clean_cascade_terminates():
    final, steps = clean_monomial_marked(mmi([1, 1, 1], Fraction(3, 2)))
    assert len(final.divisors) == 6
    assert final.mu[3:] == (Fraction(1, 2),) * 3
    # three excess-carrying separations, then every surviving pairing
    # of an original with an exceptional that still meets it
    assert len(steps) == 10
    assert mmi_cosupport(final) == []
    assert len(steps) <= cleaning_bound(mmi([1, 1, 1], Fraction(3, 2)))


def test_fresh_divisor_links_follow_parents():
    # E4 is born over the E1&E2 locus, E6 over the E2&E3 locus; once
    # E1&E2 is separated the pair E1&E6 has nowhere left to meet
    final, steps = clean_monomial_marked(mmi([1, 1, 1], Fraction(3, 2)))
    seps = {s[1] for s in steps if s[0] == "separate"}
    assert ("E1", "E4") in seps
    assert ("E1", "E6") not in seps
    assert ("E2", "E5") not in seps


def test_fresh_names_skip_taken():
    final, _ = clean_monomial_marked(
        mmi([Fraction(3, 2), 1], 2, names=("E1", "E3"))
    )
    assert final.divisors == ("E1", "E3", "E4")


def test_mu_exponents():
    ring = PolyRing(["x", "y", "z"])
    assert mu_exponents(ring.parse("x^2*z")) == {
        "x": Fraction(2),
        "z": Fraction(1),
    }
    with pytest.raises(ValueError, match="not a monomial"):
        mu_exponents(ring.parse("x + y"))
