"""Exact arithmetic for ordinals below epsilon_0 in Cantor normal form.

An ordinal is kept as a tuple of (exponent, coefficient) terms with
strictly decreasing exponents and positive coefficients, so every value
has exactly one representation.  All operations return new values; nothing
is mutated in place.

Integer coding of ordinals uses the Cantor pairing function

    pair(x, y) = (x + y) * (x + y + 1) // 2 + y

with   encode(0) = 0
       encode(w^g * n + rest) = 1 + pair(pair(encode(g), n - 1), encode(rest))

where `rest` is the remainder of the normal form.  `decode` is its exact
inverse and rejects integers that do not describe a canonical form.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Iterator, Tuple, Union

__all__ = [
    "LT", "EQ", "GT",
    "COEFF_LIMIT",
    "Ordinal", "OrdinalIndex",
    "ZERO", "ONE", "OMEGA", "TOP",
    "OrdinalOverflowError", "InvalidIndexError", "OrdinalSyntaxError",
    "from_int", "compare", "std_add", "nat_add", "nat_mul_k",
    "nat_mul_omega", "omega_pow", "tower",
    "encode", "decode", "pair", "unpair",
    "parse_ordinal", "format_ordinal", "is_below",
]

LT, EQ, GT = -1, 0, 1

#: Coefficients are stored as Python integers but a fixed 64-bit signed
#: width is enforced so that overflow is an error instead of silent growth.
COEFF_LIMIT = (1 << 63) - 1

#: Integer index of an ordinal under the documented coding scheme.
OrdinalIndex = int


class OrdinalOverflowError(ArithmeticError):
    """A coefficient left the checked 64-bit range."""


class InvalidIndexError(ValueError):
    """An integer does not decode to a canonical normal form."""


class OrdinalSyntaxError(ValueError):
    """Malformed ordinal text; `position` is the offending offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_coeff(c: int) -> int:
    if not isinstance(c, int) or isinstance(c, bool):
        raise TypeError(f"coefficient must be an int, got {type(c).__name__}")
    if c < 1:
        raise ValueError(f"coefficient must be >= 1, got {c}")
    if c > COEFF_LIMIT:
        raise OrdinalOverflowError(f"coefficient {c} exceeds 64-bit limit")
    return c


class Ordinal:
    """An ordinal below epsilon_0 in Cantor normal form.

    `terms` is a tuple of (exponent, coefficient) pairs with exponents
    strictly decreasing and coefficients in [1, COEFF_LIMIT].  The empty
    tuple is 0.
    """

    __slots__ = ("terms",)

    terms: Tuple[Tuple["Ordinal", int], ...]

    def __init__(self, terms: Iterable[Tuple["Ordinal", int]] = ()):
        terms = tuple((e, c) for e, c in terms)
        for e, c in terms:
            if not isinstance(e, Ordinal):
                raise TypeError("exponents must be Ordinal values")
            _check_coeff(c)
        for i in range(len(terms) - 1):
            if compare(terms[i][0], terms[i + 1][0]) != GT:
                raise ValueError("exponents must be strictly decreasing")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def _raw(cls, terms: Tuple[Tuple["Ordinal", int], ...]) -> "Ordinal":
        # Internal: caller guarantees canonical shape.
        self = object.__new__(cls)
        object.__setattr__(self, "terms", terms)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Ordinal values are immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        """True for 0 and the positive integers (single w^0 term)."""
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def as_int(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is not a finite ordinal")
        return self.terms[0][1] if self.terms else 0

    def degree(self) -> "Ordinal":
        """Leading exponent; 0 for the ordinal 0."""
        return self.terms[0][0] if self.terms else ZERO

    # Total order, delegated to compare().
    def __eq__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return self.terms == other.terms
        return NotImplemented

    def __ne__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return self.terms != other.terms
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return compare(self, other) == LT
        return NotImplemented

    def __le__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return compare(self, other) != GT
        return NotImplemented

    def __gt__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return compare(self, other) == GT
        return NotImplemented

    def __ge__(self, other) -> bool:
        if isinstance(other, Ordinal):
            return compare(self, other) != LT
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Ordinal({format_ordinal(self)!r})"

    def __str__(self) -> str:
        return format_ordinal(self)


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))


def from_int(n: int) -> Ordinal:
    """The finite ordinal n."""
    if n < 0:
        raise ValueError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, _check_coeff(n)),))


class _Top:
    """Sentinel strictly above every Ordinal; usable only in comparisons.

    Stands in for epsilon_0 where a bound "less than epsilon_0" has no
    finite representative.  It is not an Ordinal and no arithmetic
    accepts it.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"


TOP = _Top()

Bound = Union[Ordinal, _Top]


def is_below(a: Ordinal, bound: Bound) -> bool:
    """a < bound, where bound may be TOP (then always true)."""
    if bound is TOP:
        return True
    return compare(a, bound) == LT


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on normal forms: LT, EQ or GT.

    Term lists are compared lexicographically, exponents first (recursively),
    then coefficients; with a common prefix the longer list is larger.
    """
    if a is b:
        return EQ
    ta, tb = a.terms, b.terms
    for (ea, ca), (eb, cb) in zip(ta, tb):
        c = compare(ea, eb)
        if c != EQ:
            return c
        if ca != cb:
            return GT if ca > cb else LT
    if len(ta) == len(tb):
        return EQ
    return GT if len(ta) > len(tb) else LT


def std_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Standard (non-commutative) ordinal sum.

    Terms of `a` with exponent below the leading exponent of `b` are
    absorbed: 1 + w = w.
    """
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead = b.terms[0][0]
    kept = []
    merged = None
    for e, c in a.terms:
        rel = compare(e, lead)
        if rel == GT:
            kept.append((e, c))
        elif rel == EQ:
            merged = c
            break
        else:
            break
    if merged is not None:
        first = (lead, _check_coeff(merged + b.terms[0][1]))
        return Ordinal._raw(tuple(kept) + (first,) + b.terms[1:])
    return Ordinal._raw(tuple(kept) + b.terms)


def nat_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural (Hessenberg) sum: coefficients add over the merged exponents.

    Commutative, associative and strictly monotone in both arguments.
    """
    ta, tb = a.terms, b.terms
    if not ta:
        return b
    if not tb:
        return a
    out = []
    i = j = 0
    while i < len(ta) and j < len(tb):
        ea, ca = ta[i]
        eb, cb = tb[j]
        rel = compare(ea, eb)
        if rel == GT:
            out.append(ta[i])
            i += 1
        elif rel == LT:
            out.append(tb[j])
            j += 1
        else:
            out.append((ea, _check_coeff(ca + cb)))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Ordinal._raw(tuple(out))


def nat_mul_k(a: Ordinal, k: int) -> Ordinal:
    """k-fold natural sum of `a` with itself: every coefficient times k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0 or not a.terms:
        return ZERO
    return Ordinal._raw(tuple((e, _check_coeff(c * k)) for e, c in a.terms))


def nat_mul_omega(a: Ordinal) -> Ordinal:
    """Each exponent incremented by one, coefficients preserved.

    Bounds every nat_mul_k(a, k): for a > 0 the result strictly dominates
    all of them.
    """
    return Ordinal._raw(tuple((std_add(e, ONE), c) for e, c in a.terms))


def omega_pow(a: Ordinal) -> Ordinal:
    """The single-term ordinal w^a."""
    return Ordinal._raw(((a, 1),))


OMEGA = omega_pow(ONE)


def tower(a: Ordinal, k: int) -> Ordinal:
    """k-fold iterated w-exponentiation starting from a."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        a = omega_pow(a)
    return a


# ---------------------------------------------------------------------------
# Integer coding
# ---------------------------------------------------------------------------

def pair(x: int, y: int) -> int:
    """Cantor pairing: (x + y)(x + y + 1)/2 + y."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> Tuple[int, int]:
    """Exact inverse of pair()."""
    w = (isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    y = z - t
    return w - y, y


def encode(a: Ordinal) -> OrdinalIndex:
    """Injective integer index of a normal form."""
    if not a.terms:
        return 0
    (g, n), rest = a.terms[0], Ordinal._raw(a.terms[1:])
    return 1 + pair(pair(encode(g), n - 1), encode(rest))


def decode(i: OrdinalIndex) -> Ordinal:
    """Inverse of encode(); raises InvalidIndexError off the image."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 0:
        raise InvalidIndexError(f"index must be a non-negative int, got {i!r}")
    if i == 0:
        return ZERO
    head, rest_code = unpair(i - 1)
    g_code, n_minus_1 = unpair(head)
    if n_minus_1 + 1 > COEFF_LIMIT:
        raise InvalidIndexError(f"index {i} encodes an oversized coefficient")
    g = decode(g_code)
    rest = decode(rest_code)
    if rest.terms and compare(rest.terms[0][0], g) != LT:
        raise InvalidIndexError(f"index {i} is not in normal form")
    return Ordinal._raw(((g, n_minus_1 + 1),) + rest.terms)


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------
#
# ord  := "0" | term ("+" term)*
# term := base ("*" nat)?
# base := "w" | "w^(" ord ")" | nat
# nat  := [1-9][0-9]*
#
# Whitespace around tokens is ignored.  Non-canonical sums are accepted and
# canonicalized by accumulating with std_add; format always emits canonical
# form, largest exponent first, omitting "*1" and abbreviating w^(1) as "w".

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise OrdinalSyntaxError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        lit = self.text[start:self.pos]
        if not lit:
            raise OrdinalSyntaxError("expected a number", start)
        if lit[0] == "0":
            raise OrdinalSyntaxError("numbers start with a nonzero digit", start)
        return int(lit)


def _parse_ord(s: _Scanner) -> Ordinal:
    if s.peek() == "0":
        s.pos += 1
        return ZERO
    total = _parse_term(s)
    while s.peek() == "+":
        s.pos += 1
        total = std_add(total, _parse_term(s))
    return total


def _parse_term(s: _Scanner) -> Ordinal:
    ch = s.peek()
    if ch == "w":
        s.pos += 1
        if s.peek() == "^":
            s.pos += 1
            s.expect("(")
            exp = _parse_ord(s)
            s.expect(")")
        else:
            exp = ONE
        coeff = 1
    elif ch.isdigit():
        exp = ZERO
        coeff = s.nat()
    else:
        raise OrdinalSyntaxError("expected 'w' or a number", s.pos)
    if s.peek() == "*":
        s.pos += 1
        coeff *= s.nat()
    return Ordinal(((exp, _check_coeff(coeff)),))


def parse_ordinal(text: str) -> Ordinal:
    """Parse the ASCII grammar above; canonicalizes non-canonical input."""
    s = _Scanner(text)
    value = _parse_ord(s)
    s.skip_ws()
    if s.pos != len(text):
        raise OrdinalSyntaxError("trailing input", s.pos)
    return value


def _format_term(e: Ordinal, c: int) -> str:
    if not e.terms:
        return str(c)
    if e == ONE:
        base = "w"
    else:
        base = f"w^({format_ordinal(e)})"
    return base if c == 1 else f"{base}*{c}"


def format_ordinal(a: Ordinal) -> str:
    """Canonical text form; parse_ordinal(format_ordinal(a)) == a."""
    if not a.terms:
        return "0"
    return " + ".join(_format_term(e, c) for e, c in a.terms)


def iter_valid_indexes(limit: int) -> Iterator[Tuple[int, Ordinal]]:
    """Yield (index, ordinal) for every well-formed index below limit."""
    for i in range(limit):
        try:
            yield i, decode(i)
        except InvalidIndexError:
            continue
