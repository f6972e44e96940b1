"""The adversarial tetranomial family with colliding Z_p roots.

generate(p, h, d) returns the integer tetranomial
p^(2h) x^d - x^2 + 2 p^(h-1) x - p^(2h-2); for even d in [4, e^h] it has
two distinct roots in Z_p agreeing in (h-1)d/2 + h leading base-p digits
while its coefficients stay at O(h) digits.  collision_order constructs
both roots explicitly: substituting x = p^((h-1)d/2 + h) y + p^(h-1) and
rescaling turns the tetranomial into G(y) = (1 + p^w y)^d - y^2 with
w = (h-1)d/2 + 1, which is 1 - y^2 mod p^w, so the roots Hensel-lift from
+-1 (odd p) or from 3 and 5 mod 8 (p = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_prime, ord_int
from .errors import InvalidParams, PrecisionTooLow
from .sparsepoly import SparsePoly


@dataclass(frozen=True)
class TetraFamilyParams:
    p: int
    h: int
    d: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParams(f"{self.p} is not prime")
        if self.h < 3:
            raise InvalidParams("need h >= 3")
        if self.d % 2 or not 4 <= self.d <= int(math.exp(self.h)):
            raise InvalidParams("need d even with 4 <= d <= floor(e^h)")

    @property
    def height(self) -> int:
        return self.p ** (2 * self.h)

    @property
    def shift_exponent(self) -> int:
        """Digit depth of the collision scaling: (h-1)d/2 + h."""
        return (self.h - 1) * self.d // 2 + self.h

    def default_precision(self) -> int:
        return self.shift_exponent + 8


def generate(params: TetraFamilyParams) -> SparsePoly:
    """The integerized family member p^(2h) x^d - x^2 + 2 p^(h-1) x - p^(2h-2)."""
    p, h, d = params.p, params.h, params.d
    return SparsePoly.from_terms(
        [(d, p ** (2 * h)), (2, -1), (1, 2 * p ** (h - 1)), (0, -(p ** (2 * h - 2)))]
    )


def _g_eval(params: TetraFamilyParams, y: int, m: int) -> tuple[int, int]:
    """(G(y), G'(y)) mod m for G(y) = (1 + p^w y)^d - y^2."""
    p, d = params.p, params.d
    w = (params.h - 1) * params.d // 2 + 1
    base = (1 + p ** w * y) % m
    gv = (pow(base, d, m) - y * y) % m
    gdv = (d * p ** w * pow(base, d - 1, m) - 2 * y) % m
    return gv, gdv


def _hensel_on_g(params: TetraFamilyParams, y0: int, k: int) -> int:
    p = params.p
    m = p ** (k + 4)
    y = y0
    for _ in range(k.bit_length() + 6):
        gv, gdv = _g_eval(params, y, m)
        if gv == 0:
            break
        ell = ord_int(gdv, p)
        if ord_int(gv, p) >= k + ell:
            break
        y = (y - (gv // p ** ell) * pow(gdv // p ** ell, -1, m)) % m
    return y % p ** k


@dataclass(frozen=True)
class CollisionReport:
    params: TetraFamilyParams
    precision: int
    root1: int  # residues of the two roots mod p^precision
    root2: int
    collision_order: int  # ord_p(root1 - root2), exact
    derivative_valuation: int  # ord_p of the tetranomial's derivative at the roots
    coefficient_digit_length: int  # base-p digits of the largest coefficient


def collision_order(params: TetraFamilyParams, precision: int | None = None) -> CollisionReport:
    """Construct the two colliding roots and measure their common prefix.

    Requires precision > shift_exponent (the roots agree to that depth);
    raises PrecisionTooLow otherwise or when the difference cannot be
    resolved at the working precision.
    """
    p = params.p
    k = params.default_precision() if precision is None else precision
    if k < params.shift_exponent + 4:
        raise PrecisionTooLow(
            f"need precision >= {params.shift_exponent + 4} to separate the roots"
        )
    starts = (3, 5) if p == 2 else (1, p - 1)
    y1 = _hensel_on_g(params, starts[0], k)
    y2 = _hensel_on_g(params, starts[1], k)
    scale = p ** params.shift_exponent
    m = p ** k
    z1 = (scale * y1 + p ** (params.h - 1)) % m
    z2 = (scale * y2 + p ** (params.h - 1)) % m
    diff = (z1 - z2) % m
    if diff == 0:
        raise PrecisionTooLow("roots indistinguishable at this precision")
    order = ord_int(diff, p)

    F = generate(params)
    probe = p ** (k + 8)
    dF1 = _deriv_eval(F, z1, probe)
    dF2 = _deriv_eval(F, z2, probe)
    if dF1 == 0 or dF2 == 0 or ord_int(dF1, p) != ord_int(dF2, p):
        raise PrecisionTooLow("derivative valuation not resolved; raise the precision")

    # sanity: both roots kill the tetranomial to nearly full working depth
    for z in (z1, z2):
        fv = _eval(F, z, probe)
        slack = ord_int(dF1, p)  # conditioning of the evaluation
        if fv != 0 and ord_int(fv, p) < k - slack:
            raise AssertionError("constructed residue is not a root at working precision")

    return CollisionReport(
        params=params,
        precision=k,
        root1=z1,
        root2=z2,
        collision_order=order,
        derivative_valuation=ord_int(dF1, p),
        coefficient_digit_length=max(
            len(_base_p_digits(abs(c), p)) for _, c in F.terms
        ),
    )


def _eval(f: SparsePoly, x: int, m: int) -> int:
    return sum(c * pow(x, a, m) for a, c in f.terms) % m


def _deriv_eval(f: SparsePoly, x: int, m: int) -> int:
    return sum(a * c * pow(x, a - 1, m) for a, c in f.terms if a) % m


def _base_p_digits(n: int, p: int) -> list[int]:
    if n == 0:
        return [0]
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out
