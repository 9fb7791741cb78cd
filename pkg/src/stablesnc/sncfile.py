"""Line-oriented files describing a triple and named probe points.

One declaration per line; blank lines and ``#`` comments are ignored:

    ring x y z w
    mode arrangement
    component X1 = x, y
    divisor D = 3/2 * [x, y] + 1 * [z, w]
    boundary E = [z] < [w]
    point origin = 0 0 0 0

The ring line comes before anything that mentions its variables, and
``mode`` defaults to arrangement.  A divisor term is
``coeff * [generators]``; a bare bracket means coefficient 1.  Boundary
hypersurfaces are listed oldest first, separated by ``<``; in the built
triple they are named ``E1, E2, ...`` after the declared letter.
print_snc emits the canonical spelling, and parse_snc(print_snc(f))
returns an equal file.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    Boundary,
    BoundaryComponent,
    Divisor,
    Triple,
    build_components,
    build_divisor,
)
from .ideals import Ideal
from .poly import ParseError, PolyRing

_NAME = re.compile(r"[A-Za-z_]\w*\Z")


class SncError(ValueError):
    """Input problem, pinned to a 1-based line and column."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class SncFile:
    ring: PolyRing
    mode: str
    components: tuple  # (name, (poly, ...))
    divisor_name: object
    divisor_terms: tuple  # (coeff, (poly, ...))
    boundary_name: object
    boundary_terms: tuple  # ((poly, ...), ...)
    points: tuple  # (name, (Fraction, ...))

    def triple(self):
        comps = build_components(
            self.ring,
            [(n, Ideal(self.ring, gens)) for n, gens in self.components],
            self.mode,
        )
        if self.divisor_terms:
            divisor = build_divisor(
                comps,
                [(Ideal(self.ring, gens), c) for c, gens in self.divisor_terms],
            )
        else:
            divisor = Divisor(())
        hypers = tuple(
            BoundaryComponent(f"{self.boundary_name}{i + 1}", Ideal(self.ring, gens))
            for i, gens in enumerate(self.boundary_terms)
        )
        return Triple(self.ring, comps, divisor, Boundary(hypers), self.mode)

    def point_named(self, name):
        for n, coords in self.points:
            if n == name:
                return coords
        known = ", ".join(n for n, _ in self.points) or "<none>"
        raise ValueError(f"unknown point {name!r} (file declares: {known})")

    def ideal_named(self, name):
        """Resolve a name to an ideal: a component, the divisor support,
        or the boundary support."""
        for n, gens in self.components:
            if n == name:
                return Ideal(self.ring, gens)
        groups = []
        if name == self.divisor_name:
            groups = [gens for _, gens in self.divisor_terms]
        elif name == self.boundary_name:
            groups = list(self.boundary_terms)
        if groups:
            total = Ideal(self.ring, groups[0])
            for gens in groups[1:]:
                total = total.intersect(Ideal(self.ring, gens))
            return total
        known = [n for n, _ in self.components]
        known += [n for n in (self.divisor_name, self.boundary_name) if n]
        raise ValueError(
            f"unknown ideal {name!r} (file declares: {', '.join(known)})"
        )


def _poly(ring, text, lineno, col):
    # col is the 1-based column of text[0] in the source line
    try:
        return ring.parse(text)
    except ParseError as e:
        msg = str(e).rsplit(" (at offset", 1)[0]
        raise SncError(msg, lineno, col + e.pos)


def _split_outside(text, sep, base, fail):
    """Split on `sep` outside square brackets; yields (piece, column)."""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                fail("unmatched ']'", base + i)
        elif ch == sep and depth == 0:
            pieces.append((text[start:i], base + start))
            start = i + 1
    if depth:
        fail("unmatched '['", base + text.rindex("["))
    pieces.append((text[start:], base + start))
    return pieces


def _bracket(ring, piece, lineno, base, fail):
    stripped = piece.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        fail("expected a bracketed generator list", base + _skip(piece))
    lead = piece.index("[")
    inner = stripped[1:-1]
    gens = []
    for text, col in _split_outside(inner, ",", base + lead + 1, fail):
        gens.append(_poly(ring, text, lineno, col))
    return tuple(gens)


def _skip(text):
    return len(text) - len(text.lstrip())


def parse_snc(text):
    ring = None
    mode = None
    components = []
    divisor = None
    boundary = None
    points = []
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue

        def fail(msg, col=None, _ln=lineno, _line=line):
            raise SncError(msg, _ln, _skip(_line) + 1 if col is None else col)

        m = re.match(r"\s*(\w+)", line)
        if not m:
            fail("expected a keyword")
        keyword = m.group(1)

        if keyword == "ring":
            if ring is not None:
                fail("second ring declaration")
            names = []
            for tok in re.finditer(r"\S+", line[m.end():]):
                col = m.end() + tok.start() + 1
                if not _NAME.match(tok.group()):
                    fail(f"bad variable name {tok.group()!r}", col)
                if tok.group() in names:
                    fail(f"repeated variable {tok.group()!r}", col)
                names.append(tok.group())
            if not names:
                fail("ring needs at least one variable")
            ring = PolyRing(names)
            continue

        if keyword == "mode":
            if mode is not None:
                fail("second mode declaration")
            value = line[m.end():].strip()
            if value not in ("arrangement", "general"):
                fail(
                    f"mode must be arrangement or general, not {value!r}",
                    m.end() + _skip(line[m.end():]) + 1,
                )
            mode = value
            continue

        if keyword not in ("component", "divisor", "boundary", "point"):
            fail(f"unknown keyword {keyword!r}")
        if ring is None:
            fail(f"{keyword} before the ring declaration")

        decl = re.match(r"\s*\w+\s+(\w+)\s*=", line)
        if not decl:
            fail(f"expected `{keyword} NAME = ...`")
        name = decl.group(1)
        namecol = line.index(name, m.end()) + 1
        if name in seen:
            fail(f"name {name!r} already declared", namecol)
        seen.add(name)
        rest = line[decl.end():]
        base = decl.end() + 1  # column of rest[0]

        if keyword == "component":
            gens = tuple(
                _poly(ring, piece, lineno, col)
                for piece, col in _split_outside(rest, ",", base, fail)
            )
            components.append((name, gens))
        elif keyword == "divisor":
            if divisor is not None:
                fail("second divisor declaration", namecol)
            terms = []
            for piece, col in _split_outside(rest, "+", base, fail):
                coeff = Fraction(1)
                if "[" in piece:
                    lead = piece[: piece.index("[")]
                else:
                    lead = piece
                prefix = re.match(r"\s*(-?\d+(?:/\d+)?)\s*\*\s*\Z", lead)
                if prefix:
                    coeff = Fraction(prefix.group(1))
                    piece = piece[prefix.end():]
                    col += prefix.end()
                elif lead.strip():
                    fail("expected `coeff * [...]`", col + _skip(piece))
                terms.append((coeff, _bracket(ring, piece, lineno, col, fail)))
            divisor = (name, tuple(terms))
        elif keyword == "boundary":
            if boundary is not None:
                fail("second boundary declaration", namecol)
            groups = tuple(
                _bracket(ring, piece, lineno, col, fail)
                for piece, col in _split_outside(rest, "<", base, fail)
            )
            boundary = (name, groups)
        else:  # point
            coords = []
            for tok in re.finditer(r"\S+", rest):
                col = decl.end() + tok.start() + 1
                try:
                    coords.append(Fraction(tok.group()))
                except ValueError:
                    fail(f"bad coordinate {tok.group()!r}", col)
            if len(coords) != ring.nvars:
                fail(
                    f"point {name} has {len(coords)} coordinates, "
                    f"ring has {ring.nvars}",
                    namecol,
                )
            points.append((name, tuple(coords)))

    if ring is None:
        raise SncError("missing ring declaration", 1, 1)
    return SncFile(
        ring,
        mode or "arrangement",
        tuple(components),
        divisor[0] if divisor else None,
        divisor[1] if divisor else (),
        boundary[0] if boundary else None,
        boundary[1] if boundary else (),
        tuple(points),
    )


def print_snc(f):
    out = [f"ring {' '.join(f.ring.names)}", f"mode {f.mode}"]
    for name, gens in f.components:
        out.append(f"component {name} = " + ", ".join(str(g) for g in gens))
    if f.divisor_name is not None:
        terms = " + ".join(
            f"{c} * [" + ", ".join(str(g) for g in gens) + "]"
            for c, gens in f.divisor_terms
        )
        out.append(f"divisor {f.divisor_name} = {terms}")
    if f.boundary_name is not None:
        terms = " < ".join(
            "[" + ", ".join(str(g) for g in gens) + "]"
            for gens in f.boundary_terms
        )
        out.append(f"boundary {f.boundary_name} = {terms}")
    for name, coords in f.points:
        out.append(f"point {name} = " + " ".join(str(c) for c in coords))
    return "\n".join(out) + "\n"
