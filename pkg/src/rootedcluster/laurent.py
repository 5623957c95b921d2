"""Sparse multivariate Laurent polynomials with integer coefficients.

A polynomial lives in a fixed ambient context of ``nvars`` indeterminates
``x0 .. x{nvars-1}``.  Monomials are exponent tuples of length ``nvars``;
terms with a zero coefficient are never stored, so structural equality is
mathematical equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple[int, ...]
Rational = Union[int, Fraction]


class ContextMismatch(ValueError):
    """Operands live in ambient contexts with different numbers of variables."""


class NotDivisible(ArithmeticError):
    """The numerator is not a multiple of the denominator in Z[x^±1]."""


class EvalAtPole(ZeroDivisionError):
    """A variable carrying a negative exponent was evaluated at zero."""


class ParseError(ValueError):
    pass


def _order_key(m: Monomial) -> tuple[int, Monomial]:
    # graded-lex: total degree first, then lex with x0 > x1 > ...
    return (sum(m), m)


class LaurentPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, int] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise ContextMismatch(
                        f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
                    )
                if coeff:
                    clean[mono] = clean.get(mono, 0) + int(coeff)
                    if not clean[mono]:
                        del clean[mono]
        self.terms = clean
        self._hash = None

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> LaurentPoly:
        return cls(nvars)

    @classmethod
    def const(cls, c: int, nvars: int) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> LaurentPoly:
        return cls.const(1, nvars)

    @classmethod
    def gen(cls, i: int, nvars: int) -> LaurentPoly:
        if not 0 <= i < nvars:
            raise IndexError(f"variable x{i} outside context of {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[int, int], nvars: int, coeff: int = 1) -> LaurentPoly:
        e = [0] * nvars
        for i, k in exponents.items():
            e[i] = k
        return cls(nvars, {tuple(e): coeff})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, int]) -> LaurentPoly:
        # caller guarantees canonical form
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # basic predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, k in enumerate(m) if k}

    def leading_term(self) -> tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_order_key)
        return m, self.terms[m]

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ContextMismatch(f"contexts differ: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials have Laurent inverses")
            (m, c), = self.terms.items()
            if c not in (1, -1):
                raise NotDivisible("coefficient is not a unit")
            return LaurentPoly._raw(self.nvars, {tuple(-a * -k for a in m): c ** -k})
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # equality / hashing ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {to_string(self)!r})"


# exact division -----------------------------------------------------------


def _content(p: LaurentPoly) -> Monomial:
    """Componentwise minimum exponent, i.e. the largest monomial dividing p."""
    return tuple(min(col) for col in zip(*p.terms))


def _shift(terms: Mapping[Monomial, int], by: Monomial, sign: int = 1) -> dict[Monomial, int]:
    return {tuple(a + sign * b for a, b in zip(m, by)): c for m, c in terms.items()}


def _poly_divide(num: dict[Monomial, int], den: dict[Monomial, int]) -> dict[Monomial, int]:
    # single-divisor division under graded-lex; a principal ideal's generator
    # is its own Groebner basis, so a nonzero remainder means no quotient exists
    lead_d = max(den, key=_order_key)
    lc_d = den[lead_d]
    rem = dict(num)
    quot: dict[Monomial, int] = {}
    while rem:
        lead = max(rem, key=_order_key)
        shift = tuple(a - b for a, b in zip(lead, lead_d))
        if any(s < 0 for s in shift):
            raise NotDivisible("leading term not divisible by divisor's leading term")
        c, r = divmod(rem[lead], lc_d)
        if r:
            raise NotDivisible("leading coefficient not divisible over Z")
        quot[shift] = c
        for m, dc in den.items():
            t = tuple(a + b for a, b in zip(m, shift))
            v = rem.get(t, 0) - c * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return quot


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Return ``q`` with ``q * den == num``.

    Raises ZeroDivisionError if ``den`` is zero and NotDivisible when no
    Laurent polynomial quotient with integer coefficients exists.
    """
    den = num._coerce(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.nvars)
    n = num.nvars
    cn, cd = _content(num), _content(den)
    if den.is_monomial():
        (m, c), = den.terms.items()
        out = {}
        for t, a in num.terms.items():
            q, r = divmod(a, c)
            if r:
                raise NotDivisible("coefficient not divisible over Z")
            out[tuple(x - y for x, y in zip(t, m))] = q
        return LaurentPoly._raw(n, out)
    quot = _poly_divide(_shift(num.terms, cn, -1), _shift(den.terms, cd, -1))
    offset = tuple(a - b for a, b in zip(cn, cd))
    return LaurentPoly._raw(n, _shift(quot, offset))


def is_laurent(num: LaurentPoly, den: LaurentPoly) -> bool:
    """True iff the fraction ``num/den`` is a Laurent polynomial."""
    try:
        exact_div(num, den)
    except NotDivisible:
        return False
    return True


# evaluation ---------------------------------------------------------------


def evaluate(p: LaurentPoly, point: Mapping[int, Rational]) -> Fraction:
    """Exact value of ``p`` at ``point`` (index -> rational)."""
    total = Fraction(0)
    for m, c in p.terms.items():
        v = Fraction(c)
        for i, e in enumerate(m):
            if not e:
                continue
            try:
                x = Fraction(point[i])
            except KeyError:
                raise ValueError(f"no value supplied for x{i}") from None
            if e < 0 and x == 0:
                raise EvalAtPole(f"x{i} = 0 appears with exponent {e}")
            v *= x**e
        total += v
    return total


def substitute(p: LaurentPoly, images: Mapping[int, LaurentPoly], nvars: int) -> tuple[LaurentPoly, LaurentPoly]:
    """Apply the ring map ``x_i -> images[i]`` to ``p``.

    Images need not be invertible, so the result is returned as a fraction
    ``(num, den)`` over the target context with ``den`` a product of images.
    """
    one = LaurentPoly.one(nvars)
    if p.is_zero():
        return LaurentPoly.zero(nvars), one
    neg = [max(0, -min(m[i] for m in p.terms)) for i in range(p.nvars)]
    den = one
    for i, k in enumerate(neg):
        if k:
            den = den * images[i] ** k
    num = LaurentPoly.zero(nvars)
    cache: dict[tuple[int, int], LaurentPoly] = {}
    for m, c in p.terms.items():
        t = LaurentPoly.const(c, nvars)
        for i, e in enumerate(m):
            k = e + neg[i]
            if k:
                if (i, k) not in cache:
                    cache[(i, k)] = images[i] ** k
                t = t * cache[(i, k)]
        num = num + t
    return num, den


# text form ----------------------------------------------------------------


def _monomial_str(m: Monomial) -> str:
    return "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(m) if e)


def to_string(p: LaurentPoly) -> str:
    """Canonical text: graded-lex descending, ``x<i>^<e>`` factors joined by ``*``."""
    if p.is_zero():
        return "0"
    parts = []
    for k, m in enumerate(sorted(p.terms, key=_order_key, reverse=True)):
        c = p.terms[m]
        body = _monomial_str(m)
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        if k == 0:
            parts.append(txt if c > 0 else "-" + txt)
        else:
            parts.append((" + " if c > 0 else " - ") + txt)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|x(\d+)|(\^)|(\*)|(/)|(\+)|(-)|(\()|(\)))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    kinds = ("int", "var", "^", "*", "/", "+", "-", "(", ")")
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], nvars: int):
        self.toks = tokens
        self.i = 0
        self.nvars = nvars

    def peek(self) -> str | None:
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            raise ParseError(f"expected {kind!r} at token {self.i}, got {self.peek()!r}")
        val = self.toks[self.i][1]
        self.i += 1
        return val

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take(self.peek()) == "-" else 1
        acc = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.factor()
        while self.peek() in ("*", "/"):
            if self.take(self.peek()) == "*":
                acc = acc * self.factor()
            else:
                acc = exact_div(acc, self.factor())
        return acc

    def factor(self) -> LaurentPoly:
        kind = self.peek()
        if kind == "int":
            return LaurentPoly.const(int(self.take("int")), self.nvars)
        if kind == "var":
            idx = int(self.take("var"))
            base = LaurentPoly.gen(idx, self.nvars)
            if self.peek() == "^":
                self.take("^")
                neg = False
                if self.peek() == "-":
                    self.take("-")
                    neg = True
                e = int(self.take("int"))
                return base ** (-e if neg else e)
            return base
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {kind!r} at position {self.i}")


def parse(text: str, nvars: int | None = None) -> LaurentPoly:
    """Parse polynomial text; ``(num)/(den)`` is evaluated by exact division.

    When ``nvars`` is omitted the context is sized to the largest index seen.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    if nvars is None:
        nvars = max((int(v) + 1 for k, v in tokens if k == "var"), default=0)
    p = _Parser(tokens, nvars)
    out = p.expr()
    if p.i != len(tokens):
        raise ParseError(f"trailing input at token {p.i}")
    return out


def product(factors: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.one(nvars)
    for f in factors:
        out = out * f
    return out
