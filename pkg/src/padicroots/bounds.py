"""Stand-alone calculators for the quantitative bounds used by the solver.

Every O-constant is rendered with the explicit value extracted from the
underlying proof, so the numbers are auditable; outputs are doubles (the
solver's correctness never leans on their tightness, only on them being
conservative, which the oracle suite validates empirically).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# 256 e^2, the base constant of the linear-forms-in-p-adic-logs estimate
C256E2 = 256 * math.e ** 2
# floor for the height factors: 1/(16 e^2)
HEIGHT_FLOOR = 1 / (16 * math.e ** 2)
# log(2) * log(4) * 2^(5/2) * (256 e^2)^3 < 36791093348: the two-term
# specialization of the valuation bound, with the log p factors absorbed
TWO_TERM_VALUATION_CONSTANT = math.log(2) * math.log(4) * 2 ** 2.5 * C256E2 ** 3


def yu_bound(alphas: list[Fraction], bs: list[int], p: int) -> float:
    """Strict upper bound on ord_p(alpha_1^b_1 * ... * alpha_n^b_n - 1).

    Valid whenever the product differs from 1; n >= 2, alphas nonzero
    reduced rationals, bs integers not all zero.
    """
    n = len(alphas)
    if n < 2 or len(bs) != n:
        raise ValueError("need n >= 2 rationals with matching exponent list")
    if any(a == 0 for a in alphas) or all(b == 0 for b in bs):
        raise ValueError("alphas must be nonzero and some b_i nonzero")
    B = max(3, max(abs(b) for b in bs))
    prod = 1.0
    for a in alphas:
        r, s = abs(a.numerator), a.denominator
        prod *= max(math.log(r) if r > 1 else 0.0, math.log(s) if s > 1 else 0.0, HEIGHT_FLOOR)
    return (
        math.log(2)
        * (math.log(2 * n) / math.log(p))
        * n ** 2.5
        * C256E2 ** (n + 1)
        * p
        * (math.log(B) / math.log(p))
        * prod
    )


def two_term_valuation_bound(d: int, H: int, p: int) -> float:
    """Upper bound on ord_p(T^(a3-a2) - 1) for the trinomial critical value.

    The n = 2 specialization with |r_i|, |s_i| <= dH and B = max(d, 3):
    36791093348 * p * log(max(d,3)) * max(log_p(dH), 1/(16 e^2 log p))^2.
    """
    lp = math.log(p)
    height = max(math.log(d * H) / lp, HEIGHT_FLOOR / lp)
    return TWO_TERM_VALUATION_CONSTANT * p * math.log(max(d, 3)) * height ** 2


def mahler_bound(d: int, H: int) -> float:
    """log of the classical minimum root-separation bound over C:
    (1/2) log 3 - (d + 1/2) log(d+1) - (d-1) log H."""
    if d < 2 or H < 1:
        raise ValueError("need d >= 2 and H >= 1")
    return 0.5 * math.log(3) - (d + 0.5) * math.log(d + 1) - (d - 1) * math.log(H)


@dataclass(frozen=True)
class AuxPolys:
    """q(x) = (a3-a2) - a3 x^a2 + a2 x^a3 and its cofactor against (x-1)^2."""

    q: list[int]  # dense, degree abar3
    Q: list[int]  # dense, degree abar3 - 2
    q_at_one_cofactor: int  # Q(1) = abar2*abar3*(abar3-abar2)/2


def aux_polys(abar2: int, abar3: int) -> AuxPolys:
    """Build Q with q = Q * (x-1)^2 verified by exact multiplication."""
    if not (1 <= abar2 < abar3) or math.gcd(abar2, abar3) != 1:
        raise ValueError("need 1 <= abar2 < abar3 coprime")
    diff = abar3 - abar2
    Q = [0] * (abar3 - 1)
    for j in range(1, abar2):  # (a3-a2) * sum j x^(j-1)
        Q[j - 1] += diff * j
    for j in range(abar2 - 1, abar3 - 1):  # a2 * sum (a3-1-j) x^j
        Q[j] += abar2 * (abar3 - 1 - j)
    q = [0] * (abar3 + 1)
    q[0] = diff
    q[abar2] = -abar3
    q[abar3] += abar2
    # exact check: Q(x) * (x^2 - 2x + 1) == q(x)
    conv = [0] * (len(Q) + 2)
    for i, c in enumerate(Q):
        conv[i] += c
        conv[i + 1] -= 2 * c
        conv[i + 2] += c
    if conv != q:
        raise AssertionError("cofactor identity q = Q*(x-1)^2 failed")
    q1 = abar2 * abar3 * diff
    assert q1 % 2 == 0 and sum(Q) == q1 // 2
    return AuxPolys(q=q, Q=Q, q_at_one_cofactor=q1 // 2)


def trinomial_separation_bound(
    d: int,
    H: int,
    p: int,
    degenerate: bool,
    a2: int | None = None,
    r: int = 1,
) -> float:
    """Lower bound on log|z1 - z2|_p over distinct roots z1, z2 in C_p.

    Square-free trinomials: -(log H + M log p + log(p)/(p-1)) with M the
    two-term valuation bound.  With a degenerate root present the bound
    sharpens to the minimum of three explicit desk-checkable pieces:
    the degenerate-vs-simple valuation cap log_p((d-r) d^3 H / (8 r^4)),
    the rational-cofactor chain (heights of c1/((a3-a2) tau^2) and the
    cofactor value at the degenerate point), and the binomial spacing of
    the degenerate roots themselves.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    lp = math.log(p)
    rolle = lp / (p - 1)
    if not degenerate:
        M = two_term_valuation_bound(d, H, p)
        return -(math.log(H) + M * lp + rolle)
    ab3 = max(d // r, 2)
    ab2 = (a2 // r) if a2 else max(ab3 - 1, 1)
    jterm = max(1, ab2 ** 2 * ab3 ** 3 * (ab3 - ab2) ** 2)
    # simple-simple pairs: prefactor height + scaling valuation + cofactor
    b_pair = -(math.log(H) + 2 * math.log(d * H) + math.log(jterm) + rolle)
    # degenerate-simple pairs
    b_degsimple = -math.log(max((d - r) * d ** 3 * H / (8 * r ** 4), 1.0))
    # degenerate-degenerate pairs: spacing of roots of x^r = tau^r, whose
    # encoding has logarithmic height <= d (log d + 2 log H)
    b_degdeg = -(rolle + (d / r) * (math.log(d) + 2 * math.log(max(H, 2))))
    return min(b_pair, b_degsimple, b_degdeg)


def degenerate_valuation_gap_cap(d: int, H: int, r: int) -> float:
    """Cap on |ord_p(z - tau)| between a simple root z and a degenerate
    root tau: log_p((d-r) d^3 H / (8 r^4)) in natural-log form (divide by
    log p for the ord cap at a given prime)."""
    return math.log(max((d - r) * d ** 3 * H / (8 * r ** 4), 1.0))
