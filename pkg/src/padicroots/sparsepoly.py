"""Sparse integer polynomials and the digit-shift/rescale transform.

A polynomial is a tuple of (exponent, coefficient) pairs with strictly
increasing exponents and nonzero coefficients.  Exponents are capped at
2^63 - 1; coefficients are arbitrary-precision.  The zero polynomial is the
empty term tuple (only produced as a derivative sentinel).
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import PAdicContext, ord_int
from .errors import (
    ContentDivisible,
    DivisibilityViolation,
    ExponentOverflow,
    ParseError,
    ZeroConstantTerm,
)

MAX_EXPONENT = 2 ** 63 - 1

MONOMIAL = "monomial"
BINOMIAL = "binomial"
TRINOMIAL = "trinomial"
TETRANOMIAL = "tetranomial"
GENERAL = "general"


@dataclass(frozen=True)
class SparsePoly:
    """Immutable sparse polynomial over Z."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = -1
        for a, c in self.terms:
            if a <= last:
                raise ParseError("exponents must be strictly increasing")
            if a > MAX_EXPONENT:
                raise ExponentOverflow(f"exponent {a} exceeds 2^63 - 1")
            if c == 0:
                raise ParseError("zero coefficients are not stored")
            last = a

    @classmethod
    def from_terms(cls, pairs) -> "SparsePoly":
        """Build from unsorted (exponent, coefficient) pairs, merging duplicates."""
        acc: dict[int, int] = {}
        for a, c in pairs:
            acc[a] = acc.get(a, 0) + c
        return cls(tuple(sorted((a, c) for a, c in acc.items() if c != 0)))

    @classmethod
    def from_dense(cls, coeffs) -> "SparsePoly":
        return cls(tuple((i, c) for i, c in enumerate(coeffs) if c != 0))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return -1
        return self.terms[-1][0]

    @property
    def term_count(self) -> int:
        return len(self.terms)

    @property
    def low_exponent(self) -> int:
        return self.terms[0][0]

    def coefficient(self, a: int) -> int:
        for e, c in self.terms:
            if e == a:
                return c
        return 0

    def classify(self) -> str:
        t = len(self.terms)
        if t == 1:
            return MONOMIAL
        if t == 2:
            return BINOMIAL
        if t == 3:
            return TRINOMIAL
        if t == 4:
            return TETRANOMIAL
        return GENERAL

    def max_abs_coeff(self) -> int:
        return max(abs(c) for _, c in self.terms) if self.terms else 0

    def content_p(self, p: int) -> int:
        """min ord_p over coefficients (the p-part of the content)."""
        if not self.terms:
            return 0
        return min(ord_int(c, p) for _, c in self.terms)

    def scale_coeffs(self, factor: Fraction) -> "SparsePoly":
        """Multiply every coefficient by an exact rational; result must be integral."""
        out = []
        for a, c in self.terms:
            v = factor * c
            if v.denominator != 1:
                raise DivisibilityViolation(f"coefficient {c} * {factor} not integral")
            out.append((a, int(v)))
        return SparsePoly(tuple(out))

    # -- text / JSON round trips ------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for i, (a, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if a == 0:
                body = str(mag)
            elif a == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{a}" if mag == 1 else f"{mag}*x^{a}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def to_json_obj(self) -> dict:
        return {"terms": [[a, str(c)] for a, c in self.terms]}

    def __str__(self) -> str:
        return self.to_text()


_TERM_RE = re.compile(
    r"""^(?P<sign>[+-])?
        (?P<coeff>\d+)?               # optional decimal coefficient
        \*?                           # optional '*'
        (?P<var>x)?                   # optional variable
        (?:\^(?P<exp>\d+))?           # optional exponent
        $""",
    re.VERBOSE,
)


def parse_poly(text: str) -> SparsePoly:
    """Parse ``c1 + c2*x^a2 + ...`` with arbitrary-precision coefficients.

    Accepts implicit coefficients (``x^5``, ``-x``), an optional ``*``, and
    any term order.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    chunks = [c for c in re.split(r"(?=[+-])", s) if c]
    pairs = []
    for chunk in chunks:
        m = _TERM_RE.match(chunk)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ParseError(f"cannot parse term {chunk!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coeff = sign * int(m.group("coeff")) if m.group("coeff") is not None else sign
        if m.group("var") is None:
            if m.group("exp") is not None:
                raise ParseError(f"exponent without variable in {chunk!r}")
            a = 0
        else:
            a = int(m.group("exp")) if m.group("exp") is not None else 1
        if a > MAX_EXPONENT:
            raise ExponentOverflow(f"exponent {a} exceeds 2^63 - 1")
        pairs.append((a, coeff))
    poly = SparsePoly.from_terms(pairs)
    if poly.is_zero:
        raise ParseError("polynomial is identically zero")
    return poly


def parse_poly_json(obj) -> SparsePoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        pairs = [(int(a), int(c)) for a, c in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON polynomial: {exc}") from exc
    return SparsePoly.from_terms(pairs)


# -- evaluation and calculus ----------------------------------------------


def evaluate_mod(f: SparsePoly, x: int, ctx: PAdicContext) -> int:
    """f(x) mod p^k; exponentiation by squaring per term."""
    m = ctx.modulus
    x %= m
    total = 0
    for a, c in f.terms:
        total = (total + c * pow(x, a, m)) % m
    return total


def derivative(f: SparsePoly, order: int = 1) -> SparsePoly:
    """Exact formal derivative of the given order (order 0 is the identity)."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    if order == 0:
        return f
    out = []
    for a, c in f.terms:
        if a < order:
            continue
        for j in range(order):
            c *= a - j
        out.append((a - order, c))
    return SparsePoly(tuple(out))


def taylor_coeffs_mod(f: SparsePoly, zeta: int, ctx: PAdicContext, jmax: int) -> list[int]:
    """Taylor coefficients u_j = f^(j)(zeta)/j! mod p^k for j = 0..jmax.

    u_j = sum_i c_i * C(a_i, j) * zeta^(a_i - j); binomials over huge exponents
    stay cheap because only jmax + 1 columns are needed.
    """
    m = ctx.modulus
    zeta %= m
    out = [0] * (jmax + 1)
    for a, c in f.terms:
        c %= m
        top = min(a, jmax)
        if zeta == 0:
            if a <= jmax:
                out[a] = (out[a] + c) % m
            continue
        # walk j downward so the power of zeta only ever gets multiplied
        power = pow(zeta, a - top, m)
        for j in range(top, -1, -1):
            out[j] = (out[j] + c * (math.comb(a, j) % m) * power) % m
            power = power * zeta % m
    return out


def shift_rescale(f: SparsePoly, digit: int, s: int, ctx: PAdicContext) -> list[int]:
    """Dense coefficients of p^(-s) * f(digit + p*x) mod p^(k-s).

    Precondition: p^s divides every coefficient of f(digit + p*x); this holds
    when s is the digit's s-value.  Coefficients of x^j with j >= k vanish
    mod p^(k-s), so the output has length min(deg f, k-1) + 1.
    """
    p, k = ctx.p, ctx.k
    if not 0 <= s < k:
        raise DivisibilityViolation(f"need 0 <= s < k, got s={s}, k={k}")
    jmax = min(f.degree, k - 1)
    u = taylor_coeffs_mod(f, digit, ctx, jmax)
    mod_out = p ** (k - s)
    ps = p ** s
    out = []
    for j, uj in enumerate(u):
        c = uj * p ** j % ctx.modulus
        if c % ps:
            raise DivisibilityViolation(
                f"coefficient of x^{j} in f({digit} + {p}x) is not divisible by {p}^{s}"
            )
        out.append(c // ps % mod_out)
    while out and out[-1] == 0:
        out.pop()
    return out


def reciprocal(f: SparsePoly) -> SparsePoly:
    """x^deg(f) * f(1/x): exponents a -> deg - a, same coefficients."""
    if f.is_zero or f.terms[0][0] != 0:
        raise ZeroConstantTerm("reciprocal needs f(0) != 0")
    d = f.degree
    return SparsePoly(tuple(sorted((d - a, c) for a, c in f.terms)))


def gcd_exponents(f: SparsePoly) -> tuple[int, SparsePoly]:
    """r = gcd of exponent offsets from the lowest exponent, and fbar with
    f(x) = x^a1 * fbar(x^r)."""
    if f.term_count < 2:
        raise ValueError("need at least two terms")
    a1 = f.terms[0][0]
    r = 0
    for a, _ in f.terms[1:]:
        r = math.gcd(r, a - a1)
    fbar = SparsePoly(tuple(((a - a1) // r, c) for a, c in f.terms))
    return r, fbar


def strip_zero_root(f: SparsePoly) -> tuple[SparsePoly, int]:
    """Divide out x^a1; returns (f / x^a1, a1)."""
    a1 = f.terms[0][0]
    if a1 == 0:
        return f, 0
    return SparsePoly(tuple((a - a1, c) for a, c in f.terms)), a1


def strip_content_p(f: SparsePoly, p: int) -> tuple[SparsePoly, int]:
    """Divide out the p-part of the content; returns (f / p^m, m)."""
    m = f.content_p(p)
    if m == 0:
        return f, 0
    q = p ** m
    return SparsePoly(tuple((a, c // q) for a, c in f.terms)), m


def rescale_for_valuation(f: SparsePoly, p: int, v: int) -> tuple[SparsePoly, int]:
    """Integerized, content-free image of f(p^v x).

    Roots of f with ord_p = v correspond to unit roots of the result.
    Returns (g, shift) with g(x) = p^shift * f(p^v x) exactly.
    """
    if v >= 0:
        pairs = [(a, c * p ** (v * a)) for a, c in f.terms]
        shift = 0
    else:
        top = f.degree
        pairs = [(a, c * p ** ((-v) * (top - a))) for a, c in f.terms]
        shift = -v * top
    g = SparsePoly(tuple(pairs))
    g, m = strip_content_p(g, p)
    if g.is_zero:
        raise ContentDivisible("polynomial vanished after content removal")
    return g, shift - m
