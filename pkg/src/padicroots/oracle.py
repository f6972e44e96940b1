"""Brute-force ground truth for roots in Z/(p^k), Z_p and Q_p.

Deliberately slow and simple.  Root sets mod p^k are enumerated layer by
layer (a root mod p^(j+1) reduces to a root mod p^j), residue classes are
certified alive via Hensel's criterion or pronounced dead when they stop
extending, and roots in Q_p are counted by sweeping the integral candidate
valuations.  Shares nothing with the solver pipeline beyond basic p-adic
arithmetic and the polynomial container.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import ord_int
from .errors import BudgetExceeded, ContentDivisible, CriterionFailed
from .newton_polygon import integral_valuation_candidates
from .sparsepoly import SparsePoly

DEFAULT_BUDGET = 10 ** 8
HARD_K_CAP = 64


def _eval_mod(f: SparsePoly, x: int, m: int) -> int:
    total = 0
    for a, c in f.terms:
        total = (total + c * pow(x, a, m)) % m
    return total


def _eval_deriv_mod(f: SparsePoly, x: int, m: int) -> int:
    total = 0
    for a, c in f.terms:
        if a == 0:
            continue
        total = (total + a * c * pow(x, a - 1, m)) % m
    return total


def roots_mod_pk(f: SparsePoly, p: int, k: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """All x in [0, p^k) with f(x) = 0 mod p^k, by exhaustive layering."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    work = 0
    frontier = []
    for x in range(p):
        work += 1
        if _eval_mod(f, x, p) == 0:
            frontier.append(x)
    for j in range(1, k):
        m = p ** (j + 1)
        nxt = []
        work += len(frontier) * p
        if work > budget:
            raise BudgetExceeded(f"root enumeration work {work} exceeds budget {budget}")
        for r in frontier:
            for t in range(p):
                x = r + t * p ** j
                if _eval_mod(f, x, m) == 0:
                    nxt.append(x)
        frontier = nxt
    return sorted(frontier)


def lift_root(f: SparsePoly, p: int, residue: int, target_k: int) -> int:
    """Hensel lift of a residue satisfying the criterion, to mod p^target_k.

    Each step checks Hensel's postconditions: the residual valuation at
    least doubles (minus ell) and the derivative valuation stays fixed.
    """
    # establish ell = ord_p f'(residue) at a safe working precision
    probe = p ** (target_k + 8)
    dv = _eval_deriv_mod(f, residue, probe)
    if dv == 0:
        raise CriterionFailed("derivative vanishes at working precision")
    ell = ord_int(dv, p)
    fv = _eval_mod(f, residue, probe)
    j0 = (ord_int(fv, p) if fv else target_k + 8) - 2 * ell
    if j0 < 1:
        raise CriterionFailed(
            f"ord f = {ord_int(fv, p) if fv else 'inf'} < 2*{ell} + 1 at the given residue"
        )
    z = residue
    prec = target_k + 2 * ell + 2
    m = p ** prec
    while True:
        fz = _eval_mod(f, z, m)
        if fz == 0:
            break
        jf = ord_int(fz, p) - 2 * ell
        if jf >= target_k:
            break
        dz = _eval_deriv_mod(f, z, m)
        if ord_int(dz, p) != ell:
            raise CriterionFailed("derivative valuation drifted during lifting")
        step = (fz // p ** ell) * pow(dz // p ** ell, -1, m) % m
        z = (z - step) % m
    return z % p ** target_k


@dataclass
class OracleRootSet:
    """Certified picture of the Q_p roots of one polynomial."""

    p: int
    qp_count: int
    zero_root: bool
    unit_roots_by_valuation: dict[int, list[int]] = field(default_factory=dict)
    # (valuation v, residue of the unit part mod p^K, K); degenerate roots
    # carry the encoding binomial instead of f for later lifting
    lifted: list[dict] = field(default_factory=list)
    degenerate_count: int = 0


def _certify_count(
    g: SparsePoly, p: int, skip_prefixes: list[tuple[int, int]], budget: int
) -> tuple[int, list[tuple[int, int]]]:
    """Count Z_p roots of valuation 0 of g by certify-or-die sweeping.

    skip_prefixes are (residue, k) classes known to hold degenerate roots;
    they are removed from the frontier (never certifiable by Hensel).
    Returns (count, certified (residue, k) list).
    """
    certified: list[tuple[int, int]] = []
    frontier = []
    work = 0
    for x in range(1, p):
        work += 1
        if _eval_mod(g, x, p) == 0:
            frontier.append(x)
    k = 1
    while frontier:
        k += 1
        if k > HARD_K_CAP:
            raise BudgetExceeded(f"certification frontier alive past k = {HARD_K_CAP}")
        m = p ** k
        nxt = []
        work += len(frontier) * p
        if work > budget:
            raise BudgetExceeded("certification work exceeded budget")
        for r in frontier:
            for t in range(p):
                x = r + t * p ** (k - 1)
                if _eval_mod(g, x, m) != 0:
                    continue
                if any(x % p ** min(k, kk) == rr % p ** min(k, kk) for rr, kk in skip_prefixes):
                    continue
                fv = _eval_mod(g, x, p ** (2 * k + 2))
                dv = _eval_deriv_mod(g, x, p ** (2 * k + 2))
                ell = ord_int(dv, p) if dv else None
                ordf = ord_int(fv, p) if fv else 2 * k + 2
                # k >= ell + 1 makes the whole class sit inside the Hensel
                # uniqueness ball, so it holds exactly one Z_p root
                if ell is not None and ordf >= 2 * ell + 1 and k >= ell + 1:
                    certified.append((x, k))
                else:
                    nxt.append(x)
        # distinct certified classes at the same level are distinct roots;
        # drop any class refining an already-certified one
        nxt = [
            x
            for x in nxt
            if not any(x % p ** min(k, kk) == rr % p ** min(k, kk) for rr, kk in certified)
        ]
        frontier = nxt
    return len(certified), certified


def _rescale(f: SparsePoly, p: int, v: int) -> SparsePoly:
    """Content-free integerization of f(p^v x) (oracle-local copy)."""
    if v >= 0:
        pairs = [(a, c * p ** (v * a)) for a, c in f.terms]
    else:
        top = f.degree
        pairs = [(a, c * p ** ((-v) * (top - a))) for a, c in f.terms]
    g = SparsePoly(tuple(pairs))
    m = g.content_p(p)
    if m:
        q = p ** m
        g = SparsePoly(tuple((a, c // q) for a, c in g.terms))
    if g.is_zero:
        raise ContentDivisible("rescaled polynomial vanished")
    return g


def _degenerate_binomial(f: SparsePoly) -> tuple[int, Fraction] | None:
    """(r, T) with the degenerate roots of f exactly the roots of x^r = T.

    Only for trinomials with nonzero constant term; None when f has no
    degenerate root in C_p (consistency of the two power relations fails).
    """
    if f.term_count != 3 or f.terms[0][0] != 0:
        return None
    (_, c1), (a2, c2), (a3, c3) = f.terms
    r = math.gcd(a2, a3)
    ab2, ab3 = a2 // r, a3 // r
    A = Fraction(-c1 * a3, (a3 - a2) * c2)  # tau^a2
    B = Fraction(c1 * a2, (a3 - a2) * c3)  # tau^a3
    if A == 0 or B == 0:
        return None
    if A ** ab3 != B ** ab2:
        return None
    g, alpha, beta = _xgcd(a2, a3)
    assert g == r
    T = A ** alpha * B ** beta
    return r, T


def _xgcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def count_qp_roots(f: SparsePoly, p: int, budget: int = DEFAULT_BUDGET) -> OracleRootSet:
    """Count the roots of f in Q_p: valuation sweep + Hensel certification,
    plus the exact-rational sidecar for degenerate trinomial roots."""
    if f.is_zero:
        raise ValueError("zero polynomial")
    body, a1 = f, 0
    if f.terms[0][0] > 0:
        a1 = f.terms[0][0]
        body = SparsePoly(tuple((a - a1, c) for a, c in f.terms))
    result = OracleRootSet(p=p, qp_count=0, zero_root=a1 > 0)
    if a1 > 0:
        result.qp_count += 1
    if body.term_count == 1:
        return result

    # degenerate sidecar (trinomials only; other supported inputs have no
    # nonzero degenerate roots or are handled by the hard cap)
    degen_prefixes_by_val: dict[int, list[tuple[int, int]]] = {}
    enc = _degenerate_binomial(body)
    if enc is not None:
        r, T = enc
        gb = SparsePoly.from_terms([(0, -T.numerator), (r, T.denominator)])
        sub = count_qp_roots(gb, p, budget=budget)
        result.degenerate_count = sub.qp_count
        result.qp_count += sub.qp_count
        for entry in sub.lifted:
            v, res, kk = entry["valuation"], entry["residue"], entry["k"]
            # deep-lift so skip prefixes never swallow a nearby simple root
            res = lift_root(entry["encoding"], p, res, HARD_K_CAP)
            degen_prefixes_by_val.setdefault(v, []).append((res, HARD_K_CAP))
            result.lifted.append(
                {
                    "valuation": v,
                    "residue": res,
                    "k": HARD_K_CAP,
                    "degenerate": True,
                    "encoding": entry["encoding"],
                }
            )

    for v, _mult in integral_valuation_candidates(body, p):
        g = _rescale(body, p, v)
        skip = degen_prefixes_by_val.get(v, [])
        n, certified = _certify_count(g, p, skip, budget)
        result.qp_count += n
        result.unit_roots_by_valuation[v] = [r for r, _ in certified]
        for res, kk in certified:
            result.lifted.append(
                {
                    "valuation": v,
                    "residue": res,
                    "k": kk,
                    "degenerate": False,
                    "encoding": g,
                }
            )
    return result
