"""Roots of c1 + c2 x^d over Q_p: exact counting and certified start points.

The count is 0 or gcd(d, p-1) for odd p (0 or gcd(d, 2) for p = 2), decided
by an integrality test on the coefficient valuations and a single power
test in Z/(p^(2*ell+1)) with ell = ord_p d.  Start points come from a
brute-force coset ladder in F_p*, plus one exact digit-correction step when
p | d, and are refined until they carry at least two certified digits of
their Newton target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import is_prime, ord_int
from .errors import InvalidParams, PrimeTooLarge
from .fp import DESK_PRIME_CAP, binomial_coset_roots
from .newton import ApproximateRoot, certified_residue
from .sparsepoly import SparsePoly

REASON_NO_INTEGRAL_VALUATION = "no-integral-valuation"
REASON_POWER_TEST_FAILED = "power-test-failed"


@dataclass(frozen=True)
class BinomialInput:
    c1: int
    c2: int
    d: int  # nonzero; negative degrees mean c1 + c2 x^d with d < 0
    p: int

    def __post_init__(self):
        if self.c1 == 0 or self.c2 == 0 or self.d == 0:
            raise InvalidParams("need c1, c2, d all nonzero")
        if not is_prime(self.p):
            raise InvalidParams(f"{self.p} is not prime")

    @property
    def height(self) -> int:
        return max(abs(self.c1), abs(self.c2))


@dataclass(frozen=True)
class BinomialSolveResult:
    count: int
    roots: list[ApproximateRoot]
    reason: str | None  # set when count = 0


def _normalized(inp: BinomialInput) -> tuple[int, int, int, bool]:
    """(c1, c2, d, inverted) with d > 0; x^d f(1/x) swaps the coefficients."""
    if inp.d > 0:
        return inp.c1, inp.c2, inp.d, False
    return inp.c2, inp.c1, -inp.d, True


def _feasible(c1: int, c2: int, d: int, p: int) -> tuple[bool, str | None, int, int, int]:
    """Existence test; returns (ok, reason, v1, v2, ell)."""
    v1, v2 = ord_int(c1, p), ord_int(c2, p)
    if (v1 - v2) % d != 0:
        return False, REASON_NO_INTEGRAL_VALUATION, v1, v2, 0
    ell = ord_int(d, p)
    c1u = c1 // p ** v1
    c2u = c2 // p ** v2
    m = p ** (2 * ell + 1)
    t = -c1u * pow(c2u, -1, m) % m
    if p == 2:
        if ell == 0:
            return True, None, v1, v2, ell
        if c1u % 8 != (-c2u) % 8:
            return False, REASON_POWER_TEST_FAILED, v1, v2, ell
        if pow(t, 2 ** (ell - 1), m) != 1:
            return False, REASON_POWER_TEST_FAILED, v1, v2, ell
        return True, None, v1, v2, ell
    gamma = math.gcd(d, p - 1)
    if pow(t, p ** ell * (p - 1) // gamma, m) != 1:
        return False, REASON_POWER_TEST_FAILED, v1, v2, ell
    return True, None, v1, v2, ell


def count_binomial_roots(inp: BinomialInput) -> int:
    """Exact number of roots of c1 + c2 x^d in Q_p."""
    c1, c2, d, _ = _normalized(inp)
    ok, _, _, _, _ = _feasible(c1, c2, d, inp.p)
    if not ok:
        return 0
    return math.gcd(d, inp.p - 1) if inp.p > 2 else math.gcd(d, 2)


def _first_digits(c1u: int, c2u: int, d: int, p: int, cap: int) -> list[int]:
    """Mod-p roots of c1u + c2u x^d via the generator coset ladder (odd p)."""
    gamma = math.gcd(d, p - 1)
    t = -c1u * pow(c2u, -1, p) % p  # x^d = t over F_p*
    n = (p - 1) // gamma
    # invert d/gamma mod (p-1)/gamma, then roots of x^d = t are the
    # gamma-th roots of t^r
    r = pow(d // gamma % n if n > 1 else 0, -1, n) if n > 1 else 0
    c_res = pow(t, r, p) if n > 1 else t
    return binomial_coset_roots(c_res, gamma, p, cap)


def solve_binomial(inp: BinomialInput, cap: int = DESK_PRIME_CAP) -> BinomialSolveResult:
    """Certified approximate roots for all roots of c1 + c2 x^d in Q_p."""
    p = inp.p
    if p > cap:
        raise PrimeTooLarge(f"p = {p} exceeds cap {cap}")
    c1, c2, d, inverted = _normalized(inp)
    ok, reason, v1, v2, ell = _feasible(c1, c2, d, p)
    if not ok:
        return BinomialSolveResult(count=0, roots=[], reason=reason)
    gamma = math.gcd(d, p - 1) if p > 2 else math.gcd(d, 2)
    c1u, c2u = c1 // p ** v1, c2 // p ** v2
    # unit root of c1u + c2u y^d; true root is y * p^((v1 - v2)/d), then
    # inverted when the original degree was negative
    val = (v1 - v2) // d
    target = SparsePoly.from_terms([(0, c1u), (d, c2u)])

    if p == 2:
        digit_roots = [1] if gamma == 1 else [1, 3]
    else:
        digit_roots = _first_digits(c1u, c2u, d, p, cap)
    # enough certified digits that Newton on the (nodal) target gains a full
    # 2^i digits per i iterations: depth + 2 where depth = (ell >= 1)
    want = 3 if ell >= 1 else 2
    roots = []
    for x in digit_roots:
        z = x
        if p > 2 and ell >= 1:
            # exact next-digit correction in Z/p^2: divide the shared p^ell
            # out of f and f' on integer representatives, then one update
            work = p ** (ell + 2)
            fv = (c1u + c2u * pow(x, d, work)) % work
            dv = d * c2u * pow(x, d - 1, work) % work
            z = (x - (fv // p ** ell) * pow(dv // p ** ell, -1, p * p)) % (p * p)
        z, prec = certified_residue(target, p, z, want)
        roots.append(
            ApproximateRoot(
                p=p,
                valuation=val,
                unit_residue=z,
                precision=prec,
                target=target,
                inverted=inverted,
            )
        )
    return BinomialSolveResult(count=len(roots), roots=roots, reason=None)


@dataclass(frozen=True)
class BinomialSeparation:
    """Upper bounds on |log distance| between distinct roots (Archimedean
    and p-adic); the p-adic bound doubles as a root-distance floor."""

    padic: float
    arch: float
    pure_p_power: bool


def separation_binomial(d: int, p: int, H: int) -> BinomialSeparation:
    """|log|z1 - z2|| caps for distinct roots of a degree-d binomial.

    p-adic: (1/d) log H, plus log(p)/(p-1) when d is a pure p-th power
    >= p or when p = 2 divides d.  The p = 2 correction is needed for
    soundness over Q_2: whenever roots exist for even d they come in pairs
    +-u at distance |2u|, e.g. 9 + 7 x^10 has |z1 - z2|_2 = 1/2 while
    (1/10) log 9 < log 2.  Archimedean: log d + (1/d) log H.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    ell = ord_int(d, p)
    pure = d == p ** ell
    padic = math.log(H) / d
    if pure or (p == 2 and d % 2 == 0):
        padic += math.log(p) / (p - 1)
    return BinomialSeparation(padic=padic, arch=math.log(d) + math.log(H) / d, pure_p_power=pure)
