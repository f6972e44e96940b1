"""p-adic and Archimedean Newton polygons of sparse polynomials.

The lower hull of {(a_i, ord_p c_i)} encodes root valuations: an edge of
geometric slope sigma carries exactly (horizontal length) roots in C_p of
valuation v = -sigma.  The Archimedean polygon uses y = -log|c_i| and each
edge is annotated with whether its slope is log(3)-isolated from the others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import ord_int
from .sparsepoly import SparsePoly

# Tolerance for float hull construction; near-ties are re-checked exactly
# when feasible and flagged otherwise.
ARCH_EPS = 1e-12

LOG3 = math.log(3.0)


@dataclass(frozen=True)
class LowerEdge:
    """One edge of a lower hull, left to right."""

    slope: Fraction | float
    horizontal_length: int
    left: tuple[int, Fraction | float]
    right: tuple[int, Fraction | float]
    log3_isolated: bool | None = None  # Archimedean only
    collinearity_uncertain: bool = False  # Archimedean only

    @property
    def root_valuation(self) -> Fraction | float:
        """Valuation of the roots this edge carries (v = -slope)."""
        return -self.slope


def _lower_hull(points):
    """Monotone-chain lower hull; points must be sorted by x, distinct x."""
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it is on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def build_padic(f: SparsePoly, p: int) -> list[LowerEdge]:
    """Lower edges of Newt_p(f), collinear points merged, slopes exact."""
    if f.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(a, Fraction(ord_int(c, p))) for a, c in f.terms]
    hull = _lower_hull(pts)
    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        edges.append(
            LowerEdge(
                slope=Fraction(y2 - y1, x2 - x1),
                horizontal_length=x2 - x1,
                left=(x1, y1),
                right=(x2, y2),
            )
        )
    return edges


def _chord_side_exact(f: SparsePoly, i: int, j: int, k: int) -> int | None:
    """Exact position of arch point j relative to the chord (i, k): -1 below,
    0 on, +1 above; None when the exact power comparison is infeasible.

    With y = -log|c|, point j is below the chord iff
    |c_j|^(a_k-a_i) > |c_i|^(a_k-a_j) * |c_k|^(a_j-a_i), decided in exact
    integer arithmetic when the powers stay desk-sized (|c| < 2^63 and
    products under ~10^6 bits).
    """
    (ai, ci), (aj, cj), (ak, ck) = f.terms[i], f.terms[j], f.terms[k]
    if max(abs(ci), abs(cj), abs(ck)) >= 2 ** 63:
        return None
    e1, e2 = aj - ai, ak - ai
    if 64 * (e1 + e2) > 1_000_000:
        return None
    lhs = abs(cj) ** e2
    rhs = abs(ci) ** (e2 - e1) * abs(ck) ** e1
    if lhs > rhs:
        return -1
    return 0 if lhs == rhs else 1


def build_arch(f: SparsePoly) -> list[LowerEdge]:
    """Lower edges of Newt_infinity(f) with log(3)-isolation annotations."""
    if f.is_zero:
        raise ValueError("Newton polygon of the zero polynomial")
    pts = [(a, -math.log(abs(c))) for a, c in f.terms]
    index_of = {a: i for i, (a, _) in enumerate(f.terms)}

    hull = []
    uncertain_after: set[int] = set()
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (y2 - y1) * (pt[0] - x1) - (pt[1] - y1) * (x2 - x1)
            scale = max(1.0, abs(y1), abs(y2), abs(pt[1])) * (pt[0] - x1)
            if cross > ARCH_EPS * scale:
                hull.pop()
            elif cross >= -ARCH_EPS * scale:
                # numerically ambiguous: decide exactly when we can
                side = _chord_side_exact(f, index_of[x1], index_of[x2], index_of[pt[0]])
                if side is None:
                    uncertain_after.add(x1)
                    hull.pop()
                elif side >= 0:
                    hull.pop()
                else:
                    break
            else:
                break
        hull.append(pt)

    edges = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        edges.append(
            LowerEdge(
                slope=(y2 - y1) / (x2 - x1),
                horizontal_length=x2 - x1,
                left=(x1, y1),
                right=(x2, y2),
                collinearity_uncertain=x1 in uncertain_after,
            )
        )
    annotated = []
    for i, e in enumerate(edges):
        isolated = all(
            abs(e.slope - other.slope) >= LOG3 for j, other in enumerate(edges) if j != i
        )
        annotated.append(
            LowerEdge(
                slope=e.slope,
                horizontal_length=e.horizontal_length,
                left=e.left,
                right=e.right,
                log3_isolated=isolated,
                collinearity_uncertain=e.collinearity_uncertain,
            )
        )
    return annotated


def integral_valuation_candidates(f: SparsePoly, p: int) -> list[tuple[int, int]]:
    """(valuation, multiplicity) for every lower edge of integral slope.

    These are the only valuations a root in Q_p can have.
    """
    out = []
    for e in build_padic(f, p):
        v = -e.slope
        if v.denominator == 1:
            out.append((int(v), e.horizontal_length))
    return out
