"""Sparse multivariate polynomials over Q.

Exponents are tuples of non-negative ints, one slot per ring variable.
Coefficients are Fractions; zero coefficients are never stored.  The
only monomial order used anywhere is the graded order given by
``key_B``: the *initial exponent* of a polynomial is the minimum of its
support under that key, the *leading exponent* (for division and
Groebner bases) is the maximum.
"""

from __future__ import annotations

import re
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def key_B(exp):
    """Sort key for the graded order: total degree first, then reverse lex.

    alpha comes before beta iff |alpha| < |beta|, or the degrees agree
    and alpha is *larger* lexicographically.  With this convention
    min(support) is the lowest-order term (e.g. y for y + x^2) and
    max(support) is the usual graded-lex leading term.
    """
    return (sum(exp), *(-e for e in exp))


def exp_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a, b):
    """True if x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def exp_div(a, b):
    """Exponent of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_deg(a):
    return sum(a)


class PolyRing:
    """Q[x_1, ..., x_n] with named, ordered variables."""

    __slots__ = ("names", "index", "_vars", "_zero", "_one")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("ring needs at least one variable")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                raise ValueError(f"bad variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}
        self._vars = None
        self._zero = None
        self._one = None

    @property
    def nvars(self):
        return len(self.names)

    def zero(self):
        if self._zero is None:
            self._zero = Poly(self, {})
        return self._zero

    def one(self):
        if self._one is None:
            self._one = self.const(1)
        return self._one

    def const(self, c):
        c = Fraction(c)
        if not c:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, name):
        return self.vars()[self.index[name]]

    def vars(self):
        if self._vars is None:
            n = self.nvars
            self._vars = tuple(
                Poly(self, {tuple(int(i == j) for j in range(n)): _ONE})
                for i in range(n)
            )
        return self._vars

    def monomial(self, exp, coeff=1):
        exp = tuple(exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent {exp!r}")
        coeff = Fraction(coeff)
        if not coeff:
            return self.zero()
        return Poly(self, {exp: coeff})

    def from_terms(self, terms):
        acc = {}
        for exp, c in terms:
            exp = tuple(exp)
            nc = acc.get(exp, _ZERO) + Fraction(c)
            if nc:
                acc[exp] = nc
            else:
                acc.pop(exp, None)
        return Poly(self, acc)

    def parse(self, text):
        return parse_poly(text, self)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


class Poly:
    """Immutable sparse polynomial.  Build via PolyRing, not directly."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # -- inspection ---------------------------------------------------

    def items(self):
        return self._terms.items()

    def support(self):
        return self._terms.keys()

    def coeff(self, exp):
        return self._terms.get(tuple(exp), _ZERO)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def is_term(self):
        return len(self._terms) == 1

    def is_monic_monomial(self):
        return len(self._terms) == 1 and next(iter(self._terms.values())) == 1

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def order(self):
        """Order of vanishing at the origin; None for zero."""
        if not self._terms:
            return None
        return min(sum(e) for e in self._terms)

    def exp(self):
        """Initial exponent: min of the support under key_B."""
        if not self._terms:
            raise ValueError("zero polynomial has no initial exponent")
        return min(self._terms, key=key_B)

    def lead_exp(self, key=key_B):
        """Leading exponent: max of the support under `key`."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading exponent")
        return max(self._terms, key=key)

    def lead_coeff(self, key=key_B):
        return self._terms[self.lead_exp(key)]

    def monic(self, key=key_B):
        """Divide by the leading coefficient."""
        c = self.lead_coeff(key)
        if c == 1:
            return self
        return self * (1 / c)

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            nc = acc.get(e, _ZERO) + c
            if nc:
                acc[e] = nc
            else:
                del acc[e]
        return Poly(self.ring, acc)

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            nc = acc.get(e, _ZERO) - c
            if nc:
                acc[e] = nc
            else:
                del acc[e]
        return Poly(self.ring, acc)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return self.ring.zero()
            return Poly(self.ring, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError("mixed rings")
        acc = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = exp_mul(e1, e2)
                nc = acc.get(e, _ZERO) + c1 * c2
                if nc:
                    acc[e] = nc
                else:
                    del acc[e]
        return Poly(self.ring, acc)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise ValueError("can only divide by a nonzero constant")
            other = other.coeff((0,) * other.ring.nvars)
        other = Fraction(other)
        if not other:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, Poly):
            if self.ring != other.ring:
                raise ValueError("mixed rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- structural operations ----------------------------------------

    def truncate(self, maxdeg):
        """Drop all terms of total degree > maxdeg."""
        return Poly(
            self.ring, {e: c for e, c in self._terms.items() if sum(e) <= maxdeg}
        )

    def homogeneous_part(self, d):
        return Poly(
            self.ring, {e: c for e, c in self._terms.items() if sum(e) == d}
        )

    def derivative(self, var):
        i = self.ring.index[var] if isinstance(var, str) else var
        acc = {}
        for e, c in self._terms.items():
            if e[i]:
                de = e[:i] + (e[i] - 1,) + e[i + 1 :]
                acc[de] = acc.get(de, _ZERO) + c * e[i]
        return Poly(self.ring, {e: c for e, c in acc.items() if c})

    def evaluate(self, point):
        point = [Fraction(a) for a in point]
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        total = _ZERO
        for e, c in self._terms.items():
            v = c
            for a, k in zip(point, e):
                if k:
                    v *= a**k
            total += v
        return total

    def substitute(self, images):
        """Ring map sending each variable to images[name] (a Poly).

        Variables not mentioned map to themselves; all images must live
        in one common ring, which becomes the ring of the result.
        """
        target = None
        for img in images.values():
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise ValueError("images live in different rings")
        if target is None:
            return self
        mapped = []
        for name in self.ring.names:
            if name in images:
                mapped.append(images[name])
            else:
                if name not in target.index:
                    raise ValueError(f"no image for variable {name}")
                mapped.append(target.var(name))
        powers = [{0: target.one()} for _ in mapped]
        result = target.zero()
        for e, c in self._terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = powers[i]
                if k not in cache:
                    top = max(cache)
                    p = cache[top]
                    for j in range(top + 1, k + 1):
                        p = p * mapped[i]
                        cache[j] = p
                term = term * cache[k]
            result = result + term
        return result

    def translate(self, point):
        """Shift coordinates so that `point` becomes the origin."""
        point = [Fraction(a) for a in point]
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong length")
        images = {}
        for name, a in zip(self.ring.names, point):
            if a:
                images[name] = self.ring.var(name) + self.ring.const(a)
        if not images:
            return self
        return self.substitute(images)

    # -- printing -----------------------------------------------------

    def sorted_terms(self):
        """Terms in ascending key_B order (lowest-order term first)."""
        return [(e, self._terms[e]) for e in sorted(self._terms, key=key_B)]

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


def initial_data(f):
    """(initial exponent, initial term, sorted support) of a nonzero poly."""
    e = f.exp()
    term = f.ring.monomial(e, f.coeff(e))
    return e, term, sorted(f.support(), key=key_B)


def format_monomial(ring, exp):
    parts = []
    for name, k in zip(ring.names, exp):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts) if parts else "1"


def format_poly(f):
    """Canonical string form; terms ascend in key_B order."""
    if f.is_zero():
        return "0"
    chunks = []
    for e, c in f.sorted_terms():
        mono = format_monomial(f.ring, e)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not chunks:
            chunks.append(body if c > 0 else f"-{body}")
        else:
            chunks.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(chunks)


class ParseError(ValueError):
    """Raised on malformed polynomial text; carries a 0-based offset."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            op = m.group("op")
            tokens.append(("op", "^" if op == "**" else op, m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.ring = ring
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        # expr := ['+'|'-'] term (('+'|'-') term)*
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        result = self.term()
        if negate:
            result = -result
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                result = result - rhs if val == "-" else result + rhs
            else:
                return result

    def term(self):
        # term := factor (('*'|'/') factor)*
        result = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.factor()
                if val == "*":
                    result = result * rhs
                else:
                    if not rhs.is_constant() or rhs.is_zero():
                        raise ParseError("division only by nonzero constants", pos)
                    result = result / rhs
            else:
                return result

    def factor(self):
        # factor := ['-'|'+'] atom ['^' num]
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.factor()
            return -inner if val == "-" else inner
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val, pos = self.take()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", pos)
            return inner
        raise ParseError(f"unexpected {val!r}" if val else "unexpected end of input", pos)


def parse_poly(text, ring):
    """Parse `text` into a Poly over `ring`.

    Accepts + - * / ^ (or **), parentheses, integer literals and ring
    variable names.  Division is only allowed by nonzero constants, so
    rational coefficients can be written 3/2 * x.  Round trip:
    parse_poly(format_poly(f), ring) == f.
    """
    parser = _Parser(_tokenize(text), ring)
    result = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return result
